//! The passages between the three presentations.
//!
//! Four structure maps are implemented, on objects and on morphisms:
//!
//! * [`cartan_space`] — from a state property system to the closure space
//!   of its Cartan images (a morphism goes to its state map);
//! * [`membership_system`] — from a closure space to the system whose
//!   properties are the closed sets (a continuous map goes to the pair of
//!   itself and its preimage function);
//! * [`state_base`] — from a state property system to the based complete
//!   lattice generated by its strongest actual properties (a morphism goes
//!   to the lower adjoint of its property map);
//! * [`filter_system`] — from a based complete lattice back to a state
//!   property system via principal filters (a morphism goes to its base
//!   restriction paired with its upper adjoint).
//!
//! Round trips through the closure space side and through the based side
//! are identities on the nose; the other two composites are naturally
//! isomorphic to the identity via [`counit`] and [`unit`]. The [`laws`]
//! submodule checks all of this on randomized instances.

pub mod laws;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::closure::{encode_set_id, ClosureSpace, PointMap};
use crate::error::StructuralError;
use crate::galois::{lower_adjoint, upper_adjoint};
use crate::order::{bits, ElementId, Lattice, LatticeMap};
use crate::spsys::{SpMorphism, StatePropertySystem};

/// A complete lattice with a distinguished order-generating base that does
/// not contain bottom. The base plays the role of the state set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedCompleteLattice {
    lattice: Lattice,
    base: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BclViolation {
    /// Bottom lies in the base.
    BottomInBase,
    /// This element is not the join of the base elements below it.
    NotOrderGenerating { element: ElementId },
}

impl fmt::Display for BclViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BclViolation::BottomInBase => write!(f, "bottom lies in the base"),
            BclViolation::NotOrderGenerating { element } => {
                write!(f, "{element} is not the join of the base elements below it")
            }
        }
    }
}

impl BasedCompleteLattice {
    /// Carriers are nonempty throughout the crate, so the base must be too;
    /// this keeps the filter-system passage total on valid inputs.
    pub fn new(lattice: Lattice, base: &BTreeSet<ElementId>) -> Result<Self, StructuralError> {
        if base.is_empty() {
            return Err(StructuralError::EmptyCarrier);
        }
        let mut mask = 0u64;
        for x in base {
            let i = lattice
                .try_idx(x)
                .ok_or_else(|| StructuralError::UnknownElement {
                    id: x.clone(),
                    context: "base".into(),
                })?;
            mask |= 1 << i;
        }
        Ok(BasedCompleteLattice {
            lattice,
            base: mask,
        })
    }

    pub(crate) fn from_mask(lattice: Lattice, base: u64) -> Self {
        BasedCompleteLattice { lattice, base }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn base(&self) -> BTreeSet<ElementId> {
        self.lattice.mask_to_set(self.base)
    }

    pub fn base_contains(&self, x: &ElementId) -> bool {
        self.lattice
            .try_idx(x)
            .is_some_and(|i| self.base & (1 << i) != 0)
    }

    pub fn violations(&self) -> Vec<BclViolation> {
        let mut out = Vec::new();
        if self.base & (1 << self.lattice.bottom_idx()) != 0 {
            out.push(BclViolation::BottomInBase);
        }
        for i in 0..self.lattice.len() {
            let below = self.base & self.lattice.down_mask(i);
            if self.lattice.join_mask(below) != i {
                out.push(BclViolation::NotOrderGenerating {
                    element: self.lattice.element_at(i).clone(),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// A morphism of based complete lattices `(Σ', L') -> (Σ, L)`: a function
/// on the underlying lattices, in the direction of the arrow, that carries
/// the source base into the target base and preserves all joins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BclMorphism {
    source: BasedCompleteLattice,
    target: BasedCompleteLattice,
    map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BclMorphismViolation {
    /// A base element whose image leaves the target base.
    BaseEscapes {
        element: ElementId,
        image: ElementId,
    },
    /// A subset whose join is not preserved.
    JoinNotPreserved { subset: BTreeSet<ElementId> },
}

impl fmt::Display for BclMorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BclMorphismViolation::BaseEscapes { element, image } => {
                write!(
                    f,
                    "base element {element} maps to {image}, outside the base"
                )
            }
            BclMorphismViolation::JoinNotPreserved { subset } => {
                let items: Vec<&str> = subset.iter().map(|x| x.as_str()).collect();
                write!(f, "join of {{{}}} is not preserved", items.join(", "))
            }
        }
    }
}

impl BclMorphism {
    pub fn new(
        source: BasedCompleteLattice,
        target: BasedCompleteLattice,
        graph: &std::collections::BTreeMap<ElementId, ElementId>,
    ) -> Result<Self, StructuralError> {
        let f = LatticeMap::new(source.lattice.clone(), target.lattice.clone(), graph)?;
        let map = (0..source.lattice.len()).map(|i| f.apply_idx(i)).collect();
        Ok(BclMorphism {
            source,
            target,
            map,
        })
    }

    pub(crate) fn from_indices(
        source: BasedCompleteLattice,
        target: BasedCompleteLattice,
        map: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(map.len(), source.lattice.len());
        BclMorphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(b: &BasedCompleteLattice) -> Self {
        BclMorphism {
            source: b.clone(),
            target: b.clone(),
            map: (0..b.lattice.len()).collect(),
        }
    }

    pub fn source(&self) -> &BasedCompleteLattice {
        &self.source
    }

    pub fn target(&self) -> &BasedCompleteLattice {
        &self.target
    }

    pub fn apply(&self, x: &ElementId) -> &ElementId {
        self.target
            .lattice
            .element_at(self.map[self.source.lattice.idx(x)])
    }

    pub fn graph(&self) -> std::collections::BTreeMap<ElementId, ElementId> {
        self.source
            .lattice
            .elements()
            .iter()
            .zip(&self.map)
            .map(|(x, &j)| (x.clone(), self.target.lattice.element_at(j).clone()))
            .collect()
    }

    /// The underlying map between the two lattices.
    pub fn lattice_map(&self) -> LatticeMap {
        LatticeMap::from_indices(
            self.source.lattice.clone(),
            self.target.lattice.clone(),
            self.map.clone(),
        )
    }

    pub fn then(&self, next: &BclMorphism) -> Result<BclMorphism, StructuralError> {
        if self.target != next.source {
            return Err(StructuralError::EndpointMismatch(
                "composed morphisms must share the middle lattice".into(),
            ));
        }
        Ok(BclMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&i| next.map[i]).collect(),
        })
    }

    /// Base preservation plus join preservation (all subsets at small
    /// sizes, pairwise plus bottom above that).
    pub fn violations(&self) -> Vec<BclMorphismViolation> {
        let mut out = Vec::new();
        for i in bits(self.source.base) {
            if self.target.base & (1 << self.map[i]) == 0 {
                out.push(BclMorphismViolation::BaseEscapes {
                    element: self.source.lattice.element_at(i).clone(),
                    image: self.target.lattice.element_at(self.map[i]).clone(),
                });
            }
        }
        if let Some(subset) = self.lattice_map().join_preservation_witness() {
            out.push(BclMorphismViolation::JoinNotPreserved { subset });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// The closure space of Cartan images: points are the states, closed sets
/// are the sets of states in which some property is actual. Distinctness of
/// the images (injectivity of the Cartan map) is asserted; it holds for
/// every valid system.
pub fn cartan_space(s: &StatePropertySystem) -> ClosureSpace {
    let masks: BTreeSet<u64> = (0..s.lattice().len()).map(|j| s.cartan_mask(j)).collect();
    assert_eq!(
        masks.len(),
        s.lattice().len(),
        "Cartan map of a valid system is injective"
    );
    ClosureSpace::from_masks(s.states().to_vec(), masks)
}

/// A morphism's state map as a point map between the Cartan spaces. For a
/// valid morphism the result is continuous.
pub fn cartan_space_map(f: &SpMorphism) -> PointMap {
    PointMap::from_indices(
        cartan_space(f.source()),
        cartan_space(f.target()),
        f.state_indices().to_vec(),
    )
}

/// The state property system of a closure space: the property lattice is
/// the family of closed sets ordered by inclusion (meets are intersections)
/// and a state's actual properties are the closed sets containing it.
///
/// Closed sets become property ids through an escaped, injective encoding
/// of their member lists. Panics if the space has more than 64 closed sets.
pub fn membership_system(c: &ClosureSpace) -> StatePropertySystem {
    let set_ids: Vec<ElementId> = c
        .set_masks()
        .iter()
        .map(|&m| encode_set_id(&c.mask_to_set(m)))
        .collect();
    let mut pairs = BTreeSet::new();
    for (i, &a) in c.set_masks().iter().enumerate() {
        for (j, &b) in c.set_masks().iter().enumerate() {
            if a & b == a {
                pairs.insert((set_ids[i].clone(), set_ids[j].clone()));
            }
        }
    }
    let rel = crate::order::Relation::new(set_ids.clone(), pairs)
        .expect("closed-set encodings are distinct and at most 64");
    let lattice = Lattice::validate(&rel)
        .expect("an intersection-closed family ordered by inclusion is a complete lattice");
    let xi: Vec<u64> = (0..c.points().len())
        .map(|i| {
            let mut mask = 0u64;
            for (k, &set) in c.set_masks().iter().enumerate() {
                if set & (1 << i) != 0 {
                    mask |= 1 << lattice.idx(&set_ids[k]);
                }
            }
            mask
        })
        .collect();
    StatePropertySystem::from_masks(c.points().to_vec(), lattice, xi)
}

/// A continuous map as a morphism of the membership systems: the map itself
/// on states, the preimage function on properties. Panics if the map is not
/// continuous.
pub fn membership_system_map(m: &PointMap) -> SpMorphism {
    let source = membership_system(m.source());
    let target = membership_system(m.target());
    // Property indices follow the sorted encodings, not the mask order.
    let mut property_map = vec![usize::MAX; target.lattice().len()];
    for &set in m.target().set_masks() {
        let tgt = target
            .lattice()
            .idx(&encode_set_id(&m.target().mask_to_set(set)));
        let pre = m.preimage_mask(set);
        assert!(
            m.source().contains_mask(pre),
            "preimage of a closed set must be closed: the map is not continuous"
        );
        property_map[tgt] = source
            .lattice()
            .idx(&encode_set_id(&m.source().mask_to_set(pre)));
    }
    let state_map = m.index_graph().to_vec();
    SpMorphism::from_indices(source, target, state_map, property_map)
}

/// The canonical isomorphism from the closure round trip back to the
/// original system: identity on states, the Cartan map on properties.
pub fn counit(s: &StatePropertySystem) -> SpMorphism {
    let gf = membership_system(&cartan_space(s));
    let n: Vec<usize> = (0..s.lattice().len())
        .map(|j| {
            let image = s.cartan_mask(j);
            gf.lattice()
                .idx(&encode_set_id(&mask_to_state_set(s, image)))
        })
        .collect();
    let m = (0..s.states().len()).collect();
    SpMorphism::from_indices(gf, s.clone(), m, n)
}

fn mask_to_state_set(s: &StatePropertySystem, mask: u64) -> BTreeSet<ElementId> {
    bits(mask).map(|i| s.states()[i].clone()).collect()
}

/// The based complete lattice of a system: the property lattice based on
/// the strongest actual properties of the states.
pub fn state_base(s: &StatePropertySystem) -> BasedCompleteLattice {
    let mut base = 0u64;
    for i in 0..s.states().len() {
        base |= 1 << s.lattice().meet_mask(s.xi_mask(i));
    }
    let b = BasedCompleteLattice::from_mask(s.lattice().clone(), base);
    debug_assert!(b.is_valid(), "strongest properties form a valid base");
    b
}

/// A morphism's property map turned around: the lower adjoint of `n` is a
/// morphism of the based lattices, in the same direction as the original
/// morphism. Panics unless `n` preserves meets, which holds for every valid
/// morphism.
pub fn state_base_map(f: &SpMorphism) -> BclMorphism {
    let n_star = lower_adjoint(&f.property_lattice_map())
        .expect("the property map of a valid morphism preserves meets");
    let map = (0..f.source().lattice().len())
        .map(|i| n_star.apply_idx(i))
        .collect();
    BclMorphism::from_indices(state_base(f.source()), state_base(f.target()), map)
}

/// The principal-filter system of a based complete lattice: states are the
/// base elements and a state's actual properties are everything above it.
/// The result is always state determined.
pub fn filter_system(b: &BasedCompleteLattice) -> StatePropertySystem {
    let states: Vec<ElementId> = b.base().into_iter().collect();
    let xi: Vec<u64> = states
        .iter()
        .map(|p| b.lattice().up_mask(b.lattice().idx(p)))
        .collect();
    StatePropertySystem::from_masks(states, b.lattice().clone(), xi)
}

/// A based-lattice morphism as a morphism of the filter systems: the base
/// restriction forward on states, the upper adjoint backward on properties.
/// Panics on an invalid morphism (base escape or broken joins).
pub fn filter_system_map(f: &BclMorphism) -> SpMorphism {
    let source = filter_system(f.source());
    let target = filter_system(f.target());
    let state_map: Vec<usize> = source
        .states()
        .iter()
        .map(|p| {
            let image = f.apply(p);
            target
                .try_state_idx(image)
                .expect("a valid morphism carries the base into the base")
        })
        .collect();
    let f_star = upper_adjoint(&f.lattice_map()).expect("a valid morphism preserves joins");
    let property_map = (0..f.target().lattice().len())
        .map(|i| f_star.apply_idx(i))
        .collect();
    SpMorphism::from_indices(source, target, state_map, property_map)
}

/// Refusal returned by [`unit`] on systems that are not state determined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("system is not state determined: states {0} and {1} share their actual set")]
pub struct NotStateDetermined(pub ElementId, pub ElementId);

/// The canonical isomorphism from a state-determined system to its based
/// round trip: the strongest-property embedding on states, the identity on
/// properties.
pub fn unit(s: &StatePropertySystem) -> Result<SpMorphism, NotStateDetermined> {
    if let Some((p, q)) = s.state_determination_witness() {
        return Err(NotStateDetermined(p, q));
    }
    let kh = filter_system(&state_base(s));
    let state_map: Vec<usize> = (0..s.states().len())
        .map(|i| {
            let strongest = s.lattice().element_at(s.lattice().meet_mask(s.xi_mask(i)));
            kh.try_state_idx(strongest)
                .expect("strongest properties are the states of the round trip")
        })
        .collect();
    let property_map: Vec<usize> = (0..s.lattice().len()).collect();
    Ok(SpMorphism::from_indices(
        s.clone(),
        kh,
        state_map,
        property_map,
    ))
}

/// The three equivalent readings of state determination, each with its own
/// witness: injectivity of the actuality map, antisymmetry of the derived
/// preorder, and the T0 axiom for the Cartan space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminationBattery {
    pub xi_witness: Option<(ElementId, ElementId)>,
    pub antisymmetry_witness: Option<(ElementId, ElementId)>,
    pub t0_witness: Option<(ElementId, ElementId)>,
}

impl DeterminationBattery {
    /// All three checks give the same verdict.
    pub fn agrees(&self) -> bool {
        let votes = [
            self.xi_witness.is_none(),
            self.antisymmetry_witness.is_none(),
            self.t0_witness.is_none(),
        ];
        votes.iter().all(|&v| v == votes[0])
    }

    pub fn is_determined(&self) -> bool {
        self.xi_witness.is_none()
    }
}

pub fn determination_battery(s: &StatePropertySystem) -> DeterminationBattery {
    let pre = s.state_preorder();
    let antisymmetry_witness = s
        .states()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            s.states()[i + 1..]
                .iter()
                .map(move |q| (p.clone(), q.clone()))
        })
        .find(|(p, q)| pre.related(p, q) && pre.related(q, p));
    DeterminationBattery {
        xi_witness: s.state_determination_witness(),
        antisymmetry_witness,
        t0_witness: cartan_space(s).t0_witness(),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::order::{id, Relation};
    use crate::testutil::{chain3, s2};

    fn set(items: &[&str]) -> BTreeSet<ElementId> {
        items.iter().map(|s| id(s)).collect()
    }

    fn sierpinski() -> ClosureSpace {
        ClosureSpace::new(
            vec![id("x"), id("y")],
            vec![set(&[]), set(&["x"]), set(&["x", "y"])],
        )
        .unwrap()
    }

    #[test]
    fn cartan_space_of_s2_is_the_sierpinski_shape() {
        let c = cartan_space(&s2());
        assert!(c.violations().is_empty());
        assert_eq!(c.points(), s2().states());
        let sets = c.closed_sets();
        assert_eq!(sets, vec![set(&[]), set(&["p"]), set(&["p", "q"])]);
    }

    #[test]
    fn constant_actuality_gives_the_indiscrete_family() {
        let rel = Relation::new(
            vec![id("0"), id("I")],
            [(id("0"), id("0")), (id("I"), id("I")), (id("0"), id("I"))],
        )
        .unwrap();
        let lattice = crate::order::Lattice::validate(&rel).unwrap();
        let xi: BTreeMap<_, _> = [(id("p"), set(&["I"])), (id("q"), set(&["I"]))].into();
        let s = StatePropertySystem::new(vec![id("p"), id("q")], lattice, &xi).unwrap();
        assert!(s.is_valid());
        let c = cartan_space(&s);
        assert_eq!(c.closed_sets(), vec![set(&[]), set(&["p", "q"])]);
    }

    #[test]
    fn cartan_space_map_of_a_valid_morphism_is_continuous() {
        let f = SpMorphism::identity(&s2());
        assert!(cartan_space_map(&f).is_continuous());
    }

    #[test]
    fn membership_system_of_sierpinski() {
        let s = membership_system(&sierpinski());
        assert!(s.is_valid());
        assert_eq!(s.lattice().len(), 3);
        assert_eq!(s.actual_properties(&id("x")), set(&["{x}", "{x,y}"]));
        assert_eq!(s.actual_properties(&id("y")), set(&["{x,y}"]));
        assert!(s.is_state_determined());
    }

    #[test]
    fn membership_system_of_the_indiscrete_space_is_not_determined() {
        let indiscrete =
            ClosureSpace::new(vec![id("x"), id("y")], vec![set(&[]), set(&["x", "y"])]).unwrap();
        let s = membership_system(&indiscrete);
        assert!(s.is_valid());
        assert!(!s.is_state_determined());
        assert_eq!(s.actual_properties(&id("x")), s.actual_properties(&id("y")));
    }

    #[test]
    fn closure_round_trip_is_the_identity() {
        for c in [
            sierpinski(),
            ClosureSpace::generated_by(
                vec![id("a"), id("b"), id("c")],
                vec![set(&["a"]), set(&["b", "c"])],
            )
            .unwrap(),
        ] {
            assert_eq!(cartan_space(&membership_system(&c)), c);
        }
    }

    #[test]
    fn closure_round_trip_fixes_continuous_maps() {
        let s = sierpinski();
        let m = PointMap::identity(&s);
        assert_eq!(cartan_space_map(&membership_system_map(&m)), m);
    }

    #[test]
    fn counit_of_s2_is_the_cartan_isomorphism() {
        let e = counit(&s2());
        assert!(e.is_valid());
        assert!(e.is_isomorphism());
        let n = e.property_graph();
        assert_eq!(n[&id("0")], id("{}"));
        assert_eq!(n[&id("a")], id("{p}"));
        assert_eq!(n[&id("I")], id("{p,q}"));
        // Identity on states.
        for p in s2().states() {
            assert_eq!(e.apply_state(p), p);
        }
    }

    #[test]
    fn counit_naturality_square_commutes() {
        // A collapse endomorphism of S2.
        let s = s2();
        let m: BTreeMap<_, _> = [(id("p"), id("q")), (id("q"), id("q"))].into();
        let n: BTreeMap<_, _> = [(id("0"), id("0")), (id("a"), id("0")), (id("I"), id("I"))].into();
        let f = SpMorphism::new(s.clone(), s, &m, &n).unwrap();
        let gf_f = membership_system_map(&cartan_space_map(&f));
        let left = gf_f.then(&counit(f.target())).unwrap();
        let right = counit(f.source()).then(&f).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn state_base_of_s2() {
        let b = state_base(&s2());
        assert!(b.is_valid());
        assert_eq!(b.base(), set(&["I", "a"]));
        assert_eq!(b.base().len(), s2().states().len());
    }

    #[test]
    fn state_base_of_identity_is_identity() {
        let f = SpMorphism::identity(&s2());
        let h = state_base_map(&f);
        assert_eq!(h, BclMorphism::identity(&state_base(&s2())));
    }

    #[test]
    fn filter_system_recovers_s2_up_to_renaming() {
        let b = BasedCompleteLattice::new(chain3(), &set(&["a", "I"])).unwrap();
        assert!(b.is_valid());
        let k = filter_system(&b);
        assert!(k.is_valid());
        assert!(k.is_state_determined());
        assert_eq!(k.states(), &[id("I"), id("a")]);
        assert_eq!(k.actual_properties(&id("a")), set(&["a", "I"]));
        assert_eq!(k.actual_properties(&id("I")), set(&["I"]));
    }

    #[test]
    fn base_of_top_alone_forces_the_two_chain() {
        let rel = Relation::new(
            vec![id("0"), id("I")],
            [(id("0"), id("0")), (id("I"), id("I")), (id("0"), id("I"))],
        )
        .unwrap();
        let two = crate::order::Lattice::validate(&rel).unwrap();
        let b = BasedCompleteLattice::new(two, &set(&["I"])).unwrap();
        assert!(b.is_valid());
        let k = filter_system(&b);
        assert_eq!(k.states().len(), 1);
        assert_eq!(k.actual_properties(&id("I")), set(&["I"]));

        // The same base inside the three-chain fails order generation at a.
        let b = BasedCompleteLattice::new(chain3(), &set(&["I"])).unwrap();
        assert_eq!(
            b.violations(),
            vec![BclViolation::NotOrderGenerating { element: id("a") }]
        );
    }

    #[test]
    fn based_round_trip_is_the_identity() {
        let b = BasedCompleteLattice::new(chain3(), &set(&["a", "I"])).unwrap();
        assert_eq!(state_base(&filter_system(&b)), b);
    }

    #[test]
    fn unit_of_s2_is_an_isomorphism() {
        let eta = unit(&s2()).unwrap();
        assert!(eta.is_valid());
        assert!(eta.is_isomorphism());
        assert_eq!(eta.apply_state(&id("p")), &id("a"));
        assert_eq!(eta.apply_state(&id("q")), &id("I"));
        // Identity on properties.
        for a in s2().lattice().elements() {
            assert_eq!(eta.apply_property(a), a);
        }
    }

    #[test]
    fn unit_of_a_filter_system_is_identity_like() {
        let b = BasedCompleteLattice::new(chain3(), &set(&["a", "I"])).unwrap();
        let k = filter_system(&b);
        let eta = unit(&k).unwrap();
        for p in k.states() {
            assert_eq!(eta.apply_state(p), p);
        }
    }

    #[test]
    fn unit_refuses_undetermined_systems() {
        let xi: BTreeMap<_, _> = [(id("p"), set(&["I"])), (id("q"), set(&["I"]))].into();
        let rel = Relation::new(
            vec![id("0"), id("I")],
            [(id("0"), id("0")), (id("I"), id("I")), (id("0"), id("I"))],
        )
        .unwrap();
        let s = StatePropertySystem::new(
            vec![id("p"), id("q")],
            crate::order::Lattice::validate(&rel).unwrap(),
            &xi,
        )
        .unwrap();
        assert_eq!(unit(&s).unwrap_err(), NotStateDetermined(id("p"), id("q")));
    }

    #[test]
    fn bcl_morphism_checks() {
        let b = BasedCompleteLattice::new(chain3(), &set(&["a", "I"])).unwrap();
        assert!(BclMorphism::identity(&b).is_valid());

        let h = state_base_map(&SpMorphism::identity(&s2()));
        assert!(h.is_valid());

        // Send the base element a to 0: escapes the base and breaks joins.
        let graph: BTreeMap<_, _> =
            [(id("0"), id("0")), (id("a"), id("0")), (id("I"), id("I"))].into();
        let bad = BclMorphism::new(b.clone(), b, &graph).unwrap();
        let violations = bad.violations();
        assert!(violations
            .iter()
            .any(|v| matches!(v, BclMorphismViolation::BaseEscapes { .. })));
    }

    #[test]
    fn battery_agrees_on_both_kinds_of_system() {
        let determined = s2();
        let battery = determination_battery(&determined);
        assert!(battery.agrees());
        assert!(battery.is_determined());

        let xi: BTreeMap<_, _> = [
            (id("p"), set(&["a", "I"])),
            (id("q"), set(&["I"])),
            (id("q2"), set(&["I"])),
        ]
        .into();
        let dup =
            StatePropertySystem::new(vec![id("p"), id("q"), id("q2")], chain3(), &xi).unwrap();
        let battery = determination_battery(&dup);
        assert!(battery.agrees());
        assert!(!battery.is_determined());
        assert!(battery.t0_witness.is_some());
    }
}
