//! The binary product of state property systems.
//!
//! States multiply componentwise. Properties are the pairs of nonzero
//! factor properties together with a single fresh zero: pairs with a zero
//! component are never materialized, they all collapse to the fresh bottom.
//! The projections pair the componentwise state projection with an
//! injection of factor properties, and every cone through the factors
//! routes uniquely through the product; the verifier checks that uniqueness
//! by exhaustive enumeration on small instances.
//!
//! Read backwards (in the opposite orientation of every arrow) the same
//! construction is a coproduct; no separate machinery is needed, and the
//! tests exercise the projections as injections under arrow reversal.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::error::StructuralError;
use crate::order::{ElementId, Lattice, Relation};
use crate::spsys::{SpMorphism, StatePropertySystem};

/// Separator for pair-encoded ids; forbidden in the ids of product factors.
pub const PAIR_SEPARATOR: char = '⊗';

/// A constructed product: the product system, the two projections (source
/// is always the product), and the two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWitness {
    pub product: StatePropertySystem,
    pub projections: [SpMorphism; 2],
    pub factors: [StatePropertySystem; 2],
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProductError {
    #[error("{0}")]
    Structural(#[from] StructuralError),
    #[error("the two cone morphisms must share their source system")]
    SourceMismatch,
    #[error("cone morphism {index} does not target factor {index}")]
    FactorMismatch { index: usize },
    #[error(
        "instance too large for exhaustive verification: \
         {states_q} cone states (max {max_states_q}), \
         {props_q} cone properties (max {max_props_q}), \
         {state_maps} candidate state maps (max {max_state_maps}), \
         {property_maps} candidate property maps (max {max_property_maps})"
    )]
    TooLarge {
        states_q: usize,
        max_states_q: usize,
        props_q: usize,
        max_props_q: usize,
        state_maps: u128,
        max_state_maps: u128,
        property_maps: u128,
        max_property_maps: u128,
    },
}

pub(crate) fn pair_id(a: &ElementId, b: &ElementId) -> ElementId {
    ElementId::new(format!("{a}{PAIR_SEPARATOR}{b}")).expect("pair ids are nonempty")
}

fn zero_id() -> ElementId {
    ElementId::new("0").expect("nonempty")
}

fn check_separator_free(s: &StatePropertySystem) -> Result<(), StructuralError> {
    for x in s.states().iter().chain(s.lattice().elements()) {
        if x.as_str().contains(PAIR_SEPARATOR) {
            return Err(StructuralError::ReservedCharacter(x.clone()));
        }
    }
    Ok(())
}

/// Builds the product of exactly two systems with its projections.
///
/// The product lattice consists of the pairs of nonzero factor properties
/// under the componentwise order, below all of which sits one fresh bottom
/// element `0`; meets follow the componentwise rule unless a component
/// collapses to a factor bottom, in which case the whole meet is `0`.
pub fn sp_product(factors: &[StatePropertySystem; 2]) -> Result<ProductWitness, StructuralError> {
    let [s1, s2] = factors;
    check_separator_free(s1)?;
    check_separator_free(s2)?;
    let (l1, l2) = (s1.lattice(), s2.lattice());
    let zero = zero_id();

    let nonzero1: Vec<&ElementId> = l1.elements().iter().filter(|a| *a != l1.bottom()).collect();
    let nonzero2: Vec<&ElementId> = l2.elements().iter().filter(|a| *a != l2.bottom()).collect();

    let mut elements = vec![zero.clone()];
    let mut pair_of = BTreeMap::new();
    for a1 in &nonzero1 {
        for a2 in &nonzero2 {
            let id = pair_id(a1, a2);
            pair_of.insert(id.clone(), ((*a1).clone(), (*a2).clone()));
            elements.push(id);
        }
    }
    let mut pairs = Vec::new();
    for x in &elements {
        pairs.push((zero.clone(), x.clone()));
    }
    for (xa, (a1, a2)) in &pair_of {
        for (xb, (b1, b2)) in &pair_of {
            if l1.leq(a1, b1) && l2.leq(a2, b2) {
                pairs.push((xa.clone(), xb.clone()));
            }
        }
    }
    let lattice = Lattice::validate(&Relation::new(elements, pairs)?)
        .expect("the componentwise order with a fresh bottom is a complete lattice");

    let mut states = Vec::new();
    let mut xi = BTreeMap::new();
    for p1 in s1.states() {
        for p2 in s2.states() {
            let state = pair_id(p1, p2);
            let actual: BTreeSet<ElementId> = pair_of
                .iter()
                .filter(|(_, (a1, a2))| s1.has_property(p1, a1) && s2.has_property(p2, a2))
                .map(|(id, _)| id.clone())
                .collect();
            states.push(state.clone());
            xi.insert(state, actual);
        }
    }
    let product = StatePropertySystem::new(states, lattice, &xi)?;
    debug_assert!(product.is_valid(), "the product of valid systems is valid");

    let projections = [
        projection(&product, s1, s2, &pair_of, 0)?,
        projection(&product, s1, s2, &pair_of, 1)?,
    ];
    debug_assert!(projections.iter().all(SpMorphism::is_valid));
    Ok(ProductWitness {
        product,
        projections,
        factors: [s1.clone(), s2.clone()],
    })
}

fn projection(
    product: &StatePropertySystem,
    s1: &StatePropertySystem,
    s2: &StatePropertySystem,
    pair_of: &BTreeMap<ElementId, (ElementId, ElementId)>,
    index: usize,
) -> Result<SpMorphism, StructuralError> {
    let (this, other) = if index == 0 { (s1, s2) } else { (s2, s1) };
    let mut m = BTreeMap::new();
    for p1 in s1.states() {
        for p2 in s2.states() {
            let component = if index == 0 { p1 } else { p2 };
            m.insert(pair_id(p1, p2), component.clone());
        }
    }
    // iota: a nonzero factor property pairs with the other factor's top;
    // the factor bottom goes to the fresh zero.
    let mut n = BTreeMap::new();
    for a in this.lattice().elements() {
        let image = if a == this.lattice().bottom() {
            zero_id()
        } else if index == 0 {
            pair_id(a, other.lattice().top())
        } else {
            pair_id(other.lattice().top(), a)
        };
        debug_assert!(image == zero_id() || pair_of.contains_key(&image));
        n.insert(a.clone(), image);
    }
    SpMorphism::new(product.clone(), this.clone(), &m, &n)
}

/// The unique morphism from a cone `(f1: Q -> S1, f2: Q -> S2)` through the
/// product: states map componentwise, a pair property maps to the meet of
/// its components' images, and the fresh zero maps to the cone's bottom.
pub fn mediating_morphism(
    witness: &ProductWitness,
    f1: &SpMorphism,
    f2: &SpMorphism,
) -> Result<SpMorphism, ProductError> {
    if f1.source() != f2.source() {
        return Err(ProductError::SourceMismatch);
    }
    if f1.target() != &witness.factors[0] {
        return Err(ProductError::FactorMismatch { index: 1 });
    }
    if f2.target() != &witness.factors[1] {
        return Err(ProductError::FactorMismatch { index: 2 });
    }
    let q = f1.source();
    let mut m = BTreeMap::new();
    for p in q.states() {
        m.insert(p.clone(), pair_id(f1.apply_state(p), f2.apply_state(p)));
    }
    let mut n = BTreeMap::new();
    for x in witness.product.lattice().elements() {
        let image = if x == witness.product.lattice().bottom() {
            q.lattice().bottom().clone()
        } else {
            let (a1, a2) =
                split_pair(witness, x).ok_or_else(|| StructuralError::UnknownElement {
                    id: x.clone(),
                    context: "product property (expected a pair encoding)".into(),
                })?;
            q.lattice()
                .meet_pair(f1.apply_property(&a1), f2.apply_property(&a2))
                .clone()
        };
        n.insert(x.clone(), image);
    }
    let mediating = SpMorphism::new(q.clone(), witness.product.clone(), &m, &n)?;
    debug_assert!(mediating.is_valid());
    Ok(mediating)
}

/// Recovers the factor components of a pair-encoded product property;
/// None when the id is not a pair over the two factor lattices.
fn split_pair(witness: &ProductWitness, x: &ElementId) -> Option<(ElementId, ElementId)> {
    let s = x.as_str();
    let sep = s.find(PAIR_SEPARATOR)?;
    let a1 = ElementId::new(&s[..sep]).ok()?;
    let a2 = ElementId::new(&s[sep + PAIR_SEPARATOR.len_utf8()..]).ok()?;
    if !witness.factors[0].lattice().contains(&a1) || !witness.factors[1].lattice().contains(&a2) {
        return None;
    }
    Some((a1, a2))
}

/// Outcome of the exhaustive universal-property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCheck {
    /// How many valid morphisms satisfy both projection equations.
    pub survivors: usize,
    /// The survivor, when it is unique.
    pub unique_survivor: Option<SpMorphism>,
    /// Whether the unique survivor equals the mediating morphism.
    pub matches_mediating: bool,
}

impl UniversalCheck {
    pub fn holds(&self) -> bool {
        self.survivors == 1 && self.matches_mediating
    }
}

const MAX_CONE_STATES: usize = 3;
const MAX_CONE_PROPS: usize = 5;
const MAX_STATE_MAPS: u128 = 4_096;
const MAX_PROPERTY_MAPS: u128 = 1 << 20;

/// Enumerates every function pair of the right arities, filters the valid
/// morphisms satisfying both projection equations and reports the
/// survivors. Instances beyond the size bounds are refused with the sizes
/// spelled out.
pub fn verify_universal_property(
    witness: &ProductWitness,
    f1: &SpMorphism,
    f2: &SpMorphism,
) -> Result<UniversalCheck, ProductError> {
    let mediating = mediating_morphism(witness, f1, f2)?;
    let q = f1.source();
    let p = &witness.product;
    let states_q = q.states().len();
    let props_q = q.lattice().len();
    let state_maps = (p.states().len() as u128).pow(states_q as u32);
    let property_maps = (props_q as u128).pow(p.lattice().len() as u32);
    if states_q > MAX_CONE_STATES
        || props_q > MAX_CONE_PROPS
        || state_maps > MAX_STATE_MAPS
        || property_maps > MAX_PROPERTY_MAPS
    {
        return Err(ProductError::TooLarge {
            states_q,
            max_states_q: MAX_CONE_STATES,
            props_q,
            max_props_q: MAX_CONE_PROPS,
            state_maps,
            max_state_maps: MAX_STATE_MAPS,
            property_maps,
            max_property_maps: MAX_PROPERTY_MAPS,
        });
    }

    // The projection equations factor componentwise: the state part
    // constrains m alone, the property part n alone.
    let m_candidates: Vec<Vec<usize>> = all_maps(states_q, p.states().len())
        .into_iter()
        .filter(|m| {
            (0..2).all(|i| {
                let proj = &witness.projections[i];
                let fi = [f1, f2][i];
                (0..states_q).all(|s| proj.state_indices()[m[s]] == fi.state_indices()[s])
            })
        })
        .collect();
    let n_candidates: Vec<Vec<usize>> = all_maps(p.lattice().len(), props_q)
        .into_iter()
        .filter(|n| {
            (0..2).all(|i| {
                let proj = &witness.projections[i];
                let fi = [f1, f2][i];
                proj.property_indices()
                    .iter()
                    .zip(fi.property_indices())
                    .all(|(&iota_a, &ni_a)| n[iota_a] == ni_a)
            })
        })
        .collect();

    let mut survivors = 0usize;
    let mut unique_survivor = None;
    for m in &m_candidates {
        for n in &n_candidates {
            let candidate = SpMorphism::from_indices(q.clone(), p.clone(), m.clone(), n.clone());
            if candidate.is_valid() {
                survivors += 1;
                unique_survivor = Some(candidate);
            }
        }
    }
    if survivors != 1 {
        unique_survivor = None;
    }
    let matches_mediating = unique_survivor.as_ref() == Some(&mediating);
    Ok(UniversalCheck {
        survivors,
        unique_survivor,
        matches_mediating,
    })
}

fn all_maps(domain: usize, codomain: usize) -> Vec<Vec<usize>> {
    let total = (codomain as u128).pow(domain as u32);
    (0..total)
        .map(|mut code| {
            (0..domain)
                .map(|_| {
                    let j = (code % codomain as u128) as usize;
                    code /= codomain as u128;
                    j
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::id;
    use crate::testutil::s2;

    fn set(items: &[&str]) -> BTreeSet<ElementId> {
        items.iter().map(|s| id(s)).collect()
    }

    fn two_chain_system(state: &str) -> StatePropertySystem {
        let rel = Relation::new(
            vec![id("0"), id("I")],
            [(id("0"), id("0")), (id("I"), id("I")), (id("0"), id("I"))],
        )
        .unwrap();
        let xi: BTreeMap<_, _> = [(id(state), set(&["I"]))].into();
        StatePropertySystem::new(vec![id(state)], Lattice::validate(&rel).unwrap(), &xi).unwrap()
    }

    /// Diamond lattice 0 < a, b < I with one state making each midpoint
    /// actual. Gives pairs whose meet collapses to zero.
    fn diamond_system() -> StatePropertySystem {
        let rel = Relation::new(
            vec![id("0"), id("a"), id("b"), id("I")],
            [
                (id("0"), id("0")),
                (id("a"), id("a")),
                (id("b"), id("b")),
                (id("I"), id("I")),
                (id("0"), id("a")),
                (id("0"), id("b")),
                (id("0"), id("I")),
                (id("a"), id("I")),
                (id("b"), id("I")),
            ],
        )
        .unwrap();
        let xi: BTreeMap<_, _> =
            [(id("pa"), set(&["a", "I"])), (id("pb"), set(&["b", "I"]))].into();
        StatePropertySystem::new(
            vec![id("pa"), id("pb")],
            Lattice::validate(&rel).unwrap(),
            &xi,
        )
        .unwrap()
    }

    #[test]
    fn product_of_two_chains_is_a_two_chain() {
        let w = sp_product(&[two_chain_system("u"), two_chain_system("v")]).unwrap();
        assert_eq!(w.product.lattice().len(), 2);
        assert_eq!(w.product.states(), &[pair_id(&id("u"), &id("v"))]);
        assert!(w.product.is_valid());
        assert!(w.projections.iter().all(SpMorphism::is_valid));
    }

    #[test]
    fn product_of_s2_with_itself_has_four_states_and_five_properties() {
        let w = sp_product(&[s2(), s2()]).unwrap();
        assert_eq!(w.product.states().len(), 4);
        assert_eq!(w.product.lattice().len(), 2 * 2 + 1);
        assert!(w.product.is_valid());
        assert!(w.projections.iter().all(SpMorphism::is_valid));
        // The actual sets multiply componentwise over nonzero pairs.
        for p1 in s2().states() {
            for p2 in s2().states() {
                let actual = w.product.actual_properties(&pair_id(p1, p2));
                let expected: BTreeSet<ElementId> = s2()
                    .actual_properties(p1)
                    .iter()
                    .flat_map(|a1| {
                        s2().actual_properties(p2)
                            .iter()
                            .map(|a2| pair_id(a1, a2))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                assert_eq!(actual, expected);
            }
        }
    }

    #[test]
    fn meets_follow_the_zero_collapse_rule() {
        let w = sp_product(&[s2(), s2()]).unwrap();
        let l = w.product.lattice();
        assert_eq!(
            l.meet_pair(&pair_id(&id("a"), &id("I")), &pair_id(&id("I"), &id("a"))),
            &pair_id(&id("a"), &id("a"))
        );

        // A factor pair meeting at a factor bottom collapses to fresh zero.
        let wd = sp_product(&[diamond_system(), s2()]).unwrap();
        let ld = wd.product.lattice();
        assert_eq!(
            ld.meet_pair(&pair_id(&id("a"), &id("I")), &pair_id(&id("b"), &id("I"))),
            ld.bottom()
        );
        assert_eq!(ld.bottom(), &id("0"));
    }

    #[test]
    fn product_meets_match_the_componentwise_case_split() {
        // Internal consistency: the order-derived meet equals the formula.
        let w = sp_product(&[diamond_system(), s2()]).unwrap();
        let l = w.product.lattice();
        let (l1, l2) = (w.factors[0].lattice(), w.factors[1].lattice());
        for x in l.elements() {
            for y in l.elements() {
                let expected = match (split_pair(&w, x), split_pair(&w, y)) {
                    (Some((a1, a2)), Some((b1, b2))) => {
                        let m1 = l1.meet_pair(&a1, &b1);
                        let m2 = l2.meet_pair(&a2, &b2);
                        if m1 == l1.bottom() || m2 == l2.bottom() {
                            id("0")
                        } else {
                            pair_id(m1, m2)
                        }
                    }
                    _ => id("0"),
                };
                assert_eq!(l.meet_pair(x, y), &expected);
            }
        }
        // Joins are componentwise outright.
        for x in l.elements() {
            for y in l.elements() {
                if let (Some((a1, a2)), Some((b1, b2))) = (split_pair(&w, x), split_pair(&w, y)) {
                    let expected = pair_id(l1.join_pair(&a1, &b1), l2.join_pair(&a2, &b2));
                    assert_eq!(l.join_pair(x, y), &expected);
                }
            }
        }
    }

    #[test]
    fn reserved_separator_in_a_factor_is_rejected() {
        let rel = Relation::new(
            vec![id("0"), id("I⊗I")],
            [
                (id("0"), id("0")),
                (id("I⊗I"), id("I⊗I")),
                (id("0"), id("I⊗I")),
            ],
        )
        .unwrap();
        let xi: BTreeMap<_, _> = [(id("u"), set(&["I⊗I"]))].into();
        let bad =
            StatePropertySystem::new(vec![id("u")], Lattice::validate(&rel).unwrap(), &xi).unwrap();
        let err = sp_product(&[bad, two_chain_system("v")]).unwrap_err();
        assert!(matches!(err, StructuralError::ReservedCharacter(_)));
    }

    #[test]
    fn mediating_morphism_through_the_identity_cone() {
        // Q = S1 = S2 = s2, f1 = id, f2 = a collapse endomorphism.
        let s = s2();
        let w = sp_product(&[s.clone(), s.clone()]).unwrap();
        let f1 = SpMorphism::identity(&s);
        let m: BTreeMap<_, _> = [(id("p"), id("q")), (id("q"), id("q"))].into();
        let n: BTreeMap<_, _> = [(id("0"), id("0")), (id("a"), id("0")), (id("I"), id("I"))].into();
        let f2 = SpMorphism::new(s.clone(), s.clone(), &m, &n).unwrap();
        let med = mediating_morphism(&w, &f1, &f2).unwrap();
        assert!(med.is_valid());
        for p in s.states() {
            assert_eq!(
                med.apply_state(p),
                &pair_id(f1.apply_state(p), f2.apply_state(p))
            );
        }
        // Projection equations (diagram order: mediating, then projection).
        assert_eq!(med.then(&w.projections[0]).unwrap(), f1);
        assert_eq!(med.then(&w.projections[1]).unwrap(), f2);
    }

    #[test]
    fn degenerate_factor_absorbs_in_the_mediating_property_map() {
        let s = s2();
        let t = two_chain_system("v");
        let w = sp_product(&[s.clone(), t.clone()]).unwrap();
        // Cone from s2: identity to the first factor, the constant morphism
        // to the degenerate second factor.
        let f1 = SpMorphism::identity(&s);
        let m: BTreeMap<_, _> = [(id("p"), id("v")), (id("q"), id("v"))].into();
        let n: BTreeMap<_, _> = [(id("0"), id("0")), (id("I"), id("I"))].into();
        let f2 = SpMorphism::new(s.clone(), t, &m, &n).unwrap();
        assert!(f2.is_valid());
        let med = mediating_morphism(&w, &f1, &f2).unwrap();
        // n(a1 ⊗ I2) = n1(a1) because n2(I2) = I absorbs in the meet.
        for a1 in s.lattice().elements() {
            if a1 == s.lattice().bottom() {
                continue;
            }
            assert_eq!(
                med.apply_property(&pair_id(a1, &id("I"))),
                f1.apply_property(a1)
            );
        }
    }

    #[test]
    fn universal_property_on_a_tiny_instance() {
        let w = sp_product(&[two_chain_system("u"), two_chain_system("v")]).unwrap();
        let q = two_chain_system("w");
        let to = |tgt: &StatePropertySystem, tgt_state: &str| {
            let m: BTreeMap<_, _> = [(id("w"), id(tgt_state))].into();
            let n: BTreeMap<_, _> = [(id("0"), id("0")), (id("I"), id("I"))].into();
            SpMorphism::new(q.clone(), tgt.clone(), &m, &n).unwrap()
        };
        let f1 = to(&w.factors[0], "u");
        let f2 = to(&w.factors[1], "v");
        let check = verify_universal_property(&w, &f1, &f2).unwrap();
        assert_eq!(check.survivors, 1);
        assert!(check.matches_mediating);
        assert!(check.holds());
    }

    #[test]
    fn candidate_differing_on_the_zero_image_is_rejected() {
        // The mediating morphism with n(0) redirected upward is not a
        // morphism: n(0) = 0' is forced.
        let s = s2();
        let w = sp_product(&[s.clone(), s.clone()]).unwrap();
        let f1 = SpMorphism::identity(&s);
        let f2 = SpMorphism::identity(&s);
        let med = mediating_morphism(&w, &f1, &f2).unwrap();
        let mut n = med.property_graph();
        n.insert(id("0"), id("a"));
        let tampered =
            SpMorphism::new(s.clone(), w.product.clone(), &med.state_graph(), &n).unwrap();
        assert!(!tampered.is_valid());
    }

    #[test]
    fn too_large_instances_are_refused_with_a_size_report() {
        use crate::closure::ClosureSpace;
        use crate::functors::membership_system;

        // A cone source with eight properties: the discrete family on three
        // points, seen as a membership system.
        let discrete = ClosureSpace::generated_by(
            vec![id("x"), id("y"), id("z")],
            vec![set(&["x", "y"]), set(&["x", "z"]), set(&["y", "z"])],
        )
        .unwrap();
        assert_eq!(discrete.set_count(), 8);
        let q = membership_system(&discrete);

        let s = s2();
        let w = sp_product(&[s.clone(), s.clone()]).unwrap();
        // Constant cone morphisms onto the state q of s2 (whose actual set
        // is {I}): top goes to top, everything else to bottom.
        let m: BTreeMap<_, _> = q.states().iter().map(|p| (p.clone(), id("q"))).collect();
        let n: BTreeMap<_, _> = s
            .lattice()
            .elements()
            .iter()
            .map(|a| {
                let image = if a == s.lattice().top() {
                    q.lattice().top().clone()
                } else {
                    q.lattice().bottom().clone()
                };
                (a.clone(), image)
            })
            .collect();
        let f = SpMorphism::new(q.clone(), s.clone(), &m, &n).unwrap();
        assert!(f.is_valid());
        let err = verify_universal_property(&w, &f, &f);
        match err {
            Err(ProductError::TooLarge { props_q, .. }) => assert!(props_q > MAX_CONE_PROPS),
            other => panic!("expected a size refusal, got {other:?}"),
        }
    }

    #[test]
    fn projections_behave_as_injections_under_arrow_reversal() {
        // Reversing arrows swaps the roles of m and n: the projection's
        // property map embeds each factor lattice into the product lattice,
        // injectively away from nothing (the factor bottom goes to the
        // fresh zero, everything else to a distinct pair).
        let w = sp_product(&[s2(), s2()]).unwrap();
        for proj in &w.projections {
            let images: BTreeSet<ElementId> = proj
                .target()
                .lattice()
                .elements()
                .iter()
                .map(|a| proj.apply_property(a).clone())
                .collect();
            assert_eq!(images.len(), proj.target().lattice().len());
        }
    }
}
