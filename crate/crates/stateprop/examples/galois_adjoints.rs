//! Galois connections by brute force: when a lattice map has a lower or an
//! upper adjoint, how the adjoint is computed, and why it is unique.
//!
//! ```bash
//! cargo run -p stateprop --example galois_adjoints
//! ```

use std::collections::BTreeMap;

use stateprop::galois::{adjunction_witness, lower_adjoint, upper_adjoint};
use stateprop::generator::all_total_maps;
use stateprop::order::{ElementId, Lattice, LatticeMap, Relation};

fn id(token: &str) -> ElementId {
    ElementId::new(token).unwrap()
}

fn chain(names: &[&str]) -> Lattice {
    let ids: Vec<ElementId> = names.iter().map(|s| id(s)).collect();
    let mut pairs = Vec::new();
    for (i, x) in ids.iter().enumerate() {
        for y in &ids[i..] {
            pairs.push((x.clone(), y.clone()));
        }
    }
    Lattice::validate(&Relation::new(ids, pairs).unwrap()).unwrap()
}

fn show(map: &LatticeMap) -> String {
    map.graph()
        .iter()
        .map(|(x, y)| format!("{x} -> {y}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() {
    let three = chain(&["0", "mid", "top"]);
    let two = chain(&["lo", "hi"]);

    // Collapse the three-chain onto the two-chain from the middle up.
    let graph: BTreeMap<_, _> = [
        (id("0"), id("lo")),
        (id("mid"), id("hi")),
        (id("top"), id("hi")),
    ]
    .into();
    let n = LatticeMap::new(three.clone(), two.clone(), &graph).unwrap();
    println!("n: {}", show(&n));
    println!(
        "preserves meets: {}, preserves joins: {}",
        n.preserves_meets(),
        n.preserves_joins()
    );

    let n_star = lower_adjoint(&n).expect("meet preservation grants a lower adjoint");
    println!("lower adjoint n*: {}", show(&n_star));
    println!(
        "adjunction holds: {}",
        adjunction_witness(&n, &n_star).unwrap().is_none()
    );

    // Round trip: the upper adjoint of the lower adjoint is n again.
    let back = upper_adjoint(&n_star).unwrap();
    println!("upper adjoint of n* equals n: {}", back == n);

    // Uniqueness by sheer enumeration: of all total maps backwards, only
    // n* satisfies the adjunction law against n.
    let passing: Vec<LatticeMap> = all_total_maps(&two, &three)
        .into_iter()
        .filter(|d| adjunction_witness(&n, d).unwrap().is_none())
        .collect();
    println!(
        "total maps two -> three: {}, of which adjoint to n: {}",
        all_total_maps(&two, &three).len(),
        passing.len()
    );
    assert_eq!(passing, vec![n_star]);

    // A map without a lower adjoint: break meet preservation by sending
    // the empty meet (top) below the target's top.
    let graph: BTreeMap<_, _> = [
        (id("0"), id("lo")),
        (id("mid"), id("lo")),
        (id("top"), id("lo")),
    ]
    .into();
    let constant = LatticeMap::new(three, two, &graph).unwrap();
    println!(
        "\nconstant-to-bottom map: lower adjoint exists: {}, witness subset: {:?}",
        lower_adjoint(&constant).is_some(),
        constant
            .meet_preservation_witness()
            .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    );
    println!(
        "but it preserves joins, so the upper adjoint exists: {}",
        upper_adjoint(&constant).is_some()
    );
}
