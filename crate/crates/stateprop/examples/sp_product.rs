//! The binary product of two systems: pair states, pair nonzero
//! properties over a fresh bottom, project back out, and verify by
//! exhaustive enumeration that every cone factors uniquely through it.
//!
//! ```bash
//! cargo run -p stateprop --example sp_product
//! ```

use std::collections::{BTreeMap, BTreeSet};

use stateprop::order::{ElementId, Lattice, Relation};
use stateprop::product::{mediating_morphism, sp_product, verify_universal_property};
use stateprop::spsys::{SpMorphism, StatePropertySystem};

fn id(token: &str) -> ElementId {
    ElementId::new(token).unwrap()
}

fn set(items: &[&str]) -> BTreeSet<ElementId> {
    items.iter().map(|s| id(s)).collect()
}

/// A one-state system over the two-chain.
fn tiny(state: &str) -> StatePropertySystem {
    let ids = vec![id("0"), id("I")];
    let pairs = [(id("0"), id("0")), (id("I"), id("I")), (id("0"), id("I"))];
    let lattice = Lattice::validate(&Relation::new(ids, pairs).unwrap()).unwrap();
    let xi: BTreeMap<_, _> = [(id(state), set(&["I"]))].into();
    StatePropertySystem::new(vec![id(state)], lattice, &xi).unwrap()
}

fn main() {
    let left = tiny("u");
    let right = tiny("v");
    let witness = sp_product(&[left.clone(), right.clone()]).unwrap();

    println!("product states: {:?}", witness.product.states());
    println!(
        "product properties: {:?} (nonzero pairs plus a fresh bottom)",
        witness.product.lattice().elements()
    );
    println!(
        "product valid: {}, projections valid: {}",
        witness.product.is_valid(),
        witness.projections.iter().all(SpMorphism::is_valid)
    );

    println!("\nfirst projection:");
    for (p, image) in witness.projections[0].state_graph() {
        println!("  state    {p} -> {image}");
    }
    for (a, image) in witness.projections[0].property_graph() {
        println!("  property {a} -> {image}");
    }

    // A cone from another tiny system: map its single state onto each
    // factor's state.
    let apex = tiny("w");
    let cone = |target: &StatePropertySystem, target_state: &str| {
        let m: BTreeMap<_, _> = [(id("w"), id(target_state))].into();
        let n: BTreeMap<_, _> = [(id("0"), id("0")), (id("I"), id("I"))].into();
        SpMorphism::new(apex.clone(), target.clone(), &m, &n).unwrap()
    };
    let f1 = cone(&left, "u");
    let f2 = cone(&right, "v");

    let mediating = mediating_morphism(&witness, &f1, &f2).unwrap();
    println!("\nmediating morphism state map:");
    for (p, image) in mediating.state_graph() {
        println!("  {p} -> {image}");
    }
    println!(
        "projection equations hold: {}",
        mediating.then(&witness.projections[0]).unwrap() == f1
            && mediating.then(&witness.projections[1]).unwrap() == f2
    );

    // Exhaustive uniqueness: enumerate every candidate pair of maps of the
    // right arities and count the valid morphisms satisfying both
    // projection equations.
    let check = verify_universal_property(&witness, &f1, &f2).unwrap();
    println!(
        "\nexhaustive check: {} survivor(s), equals mediating morphism: {}",
        check.survivors, check.matches_mediating
    );
    assert!(check.holds());
}
