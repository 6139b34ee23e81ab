//! The closure-space side of the story: turn a closure space into a state
//! property system and back, byte for byte, and exhibit the canonical
//! isomorphism for the other direction of the round trip.
//!
//! ```bash
//! cargo run -p stateprop --example closure_equivalence
//! ```

use std::collections::BTreeSet;

use stateprop::closure::ClosureSpace;
use stateprop::document::{canonical_serialize, closure_space_body, Document};
use stateprop::functors::{cartan_space, counit, membership_system};
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
    // The Sierpinski space: y's closure reaches x, x's does not reach y.
    let space = ClosureSpace::new(
        vec![id("x"), id("y")],
        vec![set(&[]), set(&["x"]), set(&["x", "y"])],
    )
    .unwrap();
    println!("space is valid: {}", space.violations().is_empty());
    println!("space is T0: {}\n", space.is_t0());

    // Forward: properties are the closed sets, actuality is membership.
    let system = membership_system(&space);
    println!("membership system over {:?}:", space.points());
    for p in system.states() {
        println!("  xi({p}) = {}", fmt(&system.actual_properties(p)));
    }

    // Back: the Cartan images of those properties are the closed sets.
    let back = cartan_space(&system);
    let original = canonical_serialize(&Document::ClosureSpace(closure_space_body(&space)));
    let returned = canonical_serialize(&Document::ClosureSpace(closure_space_body(&back)));
    println!("\nround trip byte-identical: {}", original == returned);

    // The other round trip is an isomorphism rather than an identity: the
    // counit renames each property to its Cartan image.
    let epsilon = counit(&system);
    println!(
        "counit is a valid morphism: {}, an isomorphism: {}",
        epsilon.is_valid(),
        epsilon.is_isomorphism()
    );
    println!("counit property map (target property -> closed-set name):");
    for (a, image) in epsilon.property_graph() {
        println!("  {a} -> {image}");
    }

    // T0 on the space side is exactly state determination on the system
    // side.
    println!(
        "\nT0 ({}) matches state determination ({})",
        space.is_t0(),
        system.is_state_determined()
    );
}
