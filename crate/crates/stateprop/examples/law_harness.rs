//! Run the whole law harness on seeded random instances and print the
//! per-law scoreboard.
//!
//! ```bash
//! cargo run -p stateprop --example law_harness
//! ```

use stateprop::functors::laws::{law_harness, HarnessConfig};

fn main() {
    let config = HarnessConfig::new(100, 42);
    println!(
        "running {} trials at seed {} (at most {} states, {} properties)\n",
        config.trials, config.seed, config.max_states, config.max_properties
    );
    let report = law_harness(&config);
    let width = report
        .outcomes
        .iter()
        .map(|o| o.law.len())
        .max()
        .unwrap_or(0);
    for outcome in &report.outcomes {
        println!(
            "  {:width$}  {:>4} passed  {:>3} failed{}",
            outcome.law,
            outcome.passes,
            outcome.failures,
            if outcome.failing_seeds.is_empty() {
                String::new()
            } else {
                format!("  failing seeds: {:?}", outcome.failing_seeds)
            }
        );
    }
    println!("\nall laws passed: {}", report.all_passed());
    std::process::exit(i32::from(!report.all_passed()));
}
