//! The based-lattice presentation: embed the states of a determined system
//! into its property lattice as an order-generating base, go back via
//! principal filters, and watch the round trip land exactly where it
//! started.
//!
//! ```bash
//! cargo run -p stateprop --example based_lattices
//! ```

use std::collections::{BTreeMap, BTreeSet};

use stateprop::functors::{filter_system, state_base, unit, BasedCompleteLattice};
use stateprop::order::{ElementId, Lattice, Relation};
use stateprop::spsys::StatePropertySystem;

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
    // A determined system over the diamond 0 < left, right < I.
    let ids = vec![id("0"), id("left"), id("right"), id("I")];
    let mut pairs: Vec<(ElementId, ElementId)> =
        ids.iter().map(|x| (x.clone(), x.clone())).collect();
    for (lo, hi) in [
        ("0", "left"),
        ("0", "right"),
        ("0", "I"),
        ("left", "I"),
        ("right", "I"),
    ] {
        pairs.push((id(lo), id(hi)));
    }
    let lattice = Lattice::validate(&Relation::new(ids, pairs).unwrap()).unwrap();
    let xi: BTreeMap<_, _> = [
        (id("a"), set(&["left", "I"])),
        (id("b"), set(&["right", "I"])),
        (id("c"), set(&["I"])),
    ]
    .into();
    let system = StatePropertySystem::new(vec![id("a"), id("b"), id("c")], lattice, &xi).unwrap();
    assert!(system.is_valid() && system.is_state_determined());

    // Forward: the base is the set of strongest actual properties.
    let based = state_base(&system);
    println!("base (strongest properties): {}", fmt(&based.base()));
    println!("based lattice valid: {}", based.is_valid());

    // Order generation: every element is the join of base elements below.
    for a in based.lattice().elements() {
        let below: Vec<ElementId> = based
            .base()
            .into_iter()
            .filter(|x| based.lattice().leq(x, a))
            .collect();
        let join = based.lattice().join(below.iter());
        println!(
            "  {a} = join of {:?} = {join}",
            below.iter().map(|x| x.as_str()).collect::<Vec<_>>()
        );
        assert_eq!(join, a);
    }

    // Back: states are base elements, actuality is the principal filter.
    let recovered = filter_system(&based);
    println!("\nfilter system states: {:?}", recovered.states());
    for p in recovered.states() {
        println!("  xi({p}) = {}", fmt(&recovered.actual_properties(p)));
    }

    // The round trip on the based side is the identity on the nose.
    let round = state_base(&filter_system(&based));
    println!("\nbased round trip is the identity: {}", round == based);

    // On the system side it is an isomorphism: the unit renames each state
    // to its strongest property.
    let eta = unit(&system).unwrap();
    println!(
        "unit is a valid isomorphism: {}",
        eta.is_valid() && eta.is_isomorphism()
    );
    for p in system.states() {
        println!("  {p} -> {}", eta.apply_state(p));
    }

    // A base that fails to generate is rejected with a witness.
    let skimpy = BasedCompleteLattice::new(system.lattice().clone(), &set(&["I"])).unwrap();
    println!("\nbase {{I}} alone:");
    for v in skimpy.violations() {
        println!("  {v}");
    }
}
