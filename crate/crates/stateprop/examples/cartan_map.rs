//! Build a small state property system by hand and inspect it: validation,
//! the Cartan map, the derived state preorder and the strongest actual
//! property of each state.
//!
//! ```bash
//! cargo run -p stateprop --example cartan_map
//! ```

use std::collections::{BTreeMap, BTreeSet};

use stateprop::order::{ElementId, Lattice, Relation};
use stateprop::spsys::StatePropertySystem;

fn id(token: &str) -> ElementId {
    ElementId::new(token).unwrap()
}

fn fmt(items: &BTreeSet<ElementId>) -> String {
    let inner: Vec<&str> = items.iter().map(|x| x.as_str()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn main() {
    // The property lattice: a diamond 0 < wet, warm < I.
    let elements = vec![id("0"), id("wet"), id("warm"), id("I")];
    let mut pairs: Vec<(ElementId, ElementId)> =
        elements.iter().map(|x| (x.clone(), x.clone())).collect();
    for (lo, hi) in [
        ("0", "wet"),
        ("0", "warm"),
        ("0", "I"),
        ("wet", "I"),
        ("warm", "I"),
    ] {
        pairs.push((id(lo), id(hi)));
    }
    let lattice = Lattice::validate(&Relation::new(elements, pairs).unwrap()).unwrap();

    // Three states: rain makes wet actual, sun makes warm actual, fog
    // makes neither.
    let set = |items: &[&str]| -> BTreeSet<ElementId> { items.iter().map(|s| id(s)).collect() };
    let xi: BTreeMap<_, _> = [
        (id("rain"), set(&["wet", "I"])),
        (id("sun"), set(&["warm", "I"])),
        (id("fog"), set(&["I"])),
    ]
    .into();
    let system =
        StatePropertySystem::new(vec![id("rain"), id("sun"), id("fog")], lattice, &xi).unwrap();

    let violations = system.violations();
    println!("validation: {} violations", violations.len());
    for v in &violations {
        println!("  {v}");
    }

    println!("\nCartan map (property -> states where it is actual):");
    for a in system.lattice().elements() {
        println!("  {a:6} -> {}", fmt(&system.cartan(a).unwrap()));
    }

    println!("\nderived state preorder (p < q pairs, reflexive pairs omitted):");
    let preorder = system.state_preorder();
    for (p, q) in preorder.pairs() {
        if p != q {
            println!("  {p} < {q}");
        }
    }
    if preorder.pairs().iter().all(|(p, q)| p == q) {
        println!("  (discrete: all states incomparable)");
    }

    println!("\nstrongest actual property of each state:");
    for p in system.states() {
        println!("  {p:5} -> {}", system.strongest_property(p));
    }

    println!("\nstate determined: {}", system.is_state_determined());
}
