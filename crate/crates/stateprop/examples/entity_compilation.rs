//! From raw operational data to a property lattice: a state test entity,
//! its test and state implications, the unital-product check, and the
//! compilation into a state property system by quotienting equivalent
//! tests.
//!
//! ```bash
//! cargo run -p stateprop --example entity_compilation
//! ```

use std::collections::{BTreeMap, BTreeSet};

use stateprop::entity::StateTestEntity;
use stateprop::order::ElementId;

fn id(token: &str) -> ElementId {
    ElementId::new(token).unwrap()
}

fn set(items: &[&str]) -> BTreeSet<ElementId> {
    items.iter().map(|s| id(s)).collect()
}

fn fmt(items: &BTreeSet<ElementId>) -> String {
    let inner: Vec<&str> = items.iter().map(|x| x.as_str()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn main() {
    // Two states and five tests. "always" answers yes in every state,
    // "never" in none; "ping" and "probe" are true exactly in the state
    // "up", so they test the same property.
    let eta: BTreeMap<_, _> = [
        (id("up"), set(&["always", "ping", "probe"])),
        (id("down"), set(&["always", "alarm"])),
    ]
    .into();
    let entity = StateTestEntity::new(
        vec![id("up"), id("down")],
        vec![
            id("always"),
            id("never"),
            id("ping"),
            id("probe"),
            id("alarm"),
        ],
        &eta,
    )
    .unwrap();

    println!("truesets:");
    for t in entity.tests() {
        println!("  {t:6} true in {}", fmt(&entity.trueset(t).unwrap()));
    }

    println!("\nsome implications:");
    for (a, b) in [("ping", "always"), ("always", "ping"), ("ping", "probe")] {
        println!(
            "  {a} < {b}: {}",
            entity.test_implication(&id(a), &id(b)).unwrap()
        );
    }

    println!(
        "\nunit tests: {}, zero tests: {}",
        fmt(&entity.unit_tests()),
        fmt(&entity.zero_tests()),
    );
    println!("unital product entity: {}", entity.is_unital_product());

    let compiled = entity.compile().expect("entity is unital product");
    let system = &compiled.system;
    println!(
        "\ncompiled lattice ({} properties from {} tests):",
        system.lattice().len(),
        entity.tests().len()
    );
    for a in system.lattice().elements() {
        let members: Vec<&str> = compiled
            .class_of
            .iter()
            .filter(|(_, rep)| *rep == a)
            .map(|(t, _)| t.as_str())
            .collect();
        println!("  class {a:6} = {{{}}}", members.join(", "));
    }
    println!(
        "top = {}, bottom = {}",
        system.lattice().top(),
        system.lattice().bottom()
    );

    println!("\nactual properties per state:");
    for p in system.states() {
        println!("  xi({p}) = {}", fmt(&system.actual_properties(p)));
    }

    println!(
        "\ncompiled system valid: {}, state determined: {} (eta injective: {})",
        system.is_valid(),
        system.is_state_determined(),
        entity.is_state_determined(),
    );
}
