//! State property systems and their morphisms.
//!
//! A state property system couples a state set with a complete lattice of
//! properties through the actuality map `xi`. The preorder on states is
//! always derived from `xi` (states compare by reverse inclusion of their
//! actual-property sets), never stored, so it cannot drift out of sync.
//!
//! Morphisms are pairs `(m, n)` with `m` running forward on states and `n`
//! running *backward* on properties; the two are linked by the covariance
//! law `a in xi(m(p')) iff n(a) in xi'(p')`. The backward direction of `n`
//! is the most error-prone detail in this whole structure, so the morphism
//! constructor detects and rejects flipped property maps explicitly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::StructuralError;
use crate::order::{
    bits, canonical_carrier, ElementId, Lattice, LatticeMap, Relation, SUBSET_CHECK_LIMIT,
};

/// States, a complete lattice of properties, and the actuality map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePropertySystem {
    states: Vec<ElementId>,
    lattice: Lattice,
    /// `xi[i]` is the mask of properties actual in state `i`.
    xi: Vec<u64>,
}

/// A violated state-property-system law, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpsViolation {
    /// The top property is not actual in this state.
    TopMissing { state: ElementId },
    /// The bottom property is actual in this state.
    BottomPresent { state: ElementId },
    /// A subset of the actual properties whose meet is not actual.
    MeetEscapes {
        state: ElementId,
        subset: BTreeSet<ElementId>,
        meet: ElementId,
    },
    /// The lattice claims `a < b` but actuality does not propagate at the
    /// witness state.
    OrderedButNotImplied {
        a: ElementId,
        b: ElementId,
        witness: ElementId,
    },
    /// Actuality of `a` implies actuality of `b` in every state, yet the
    /// lattice does not order `a < b`.
    ImpliedButNotOrdered { a: ElementId, b: ElementId },
}

impl fmt::Display for SpsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpsViolation::TopMissing { state } => {
                write!(f, "top is not actual in state {state}")
            }
            SpsViolation::BottomPresent { state } => {
                write!(f, "bottom is actual in state {state}")
            }
            SpsViolation::MeetEscapes {
                state,
                subset,
                meet,
            } => {
                let items: Vec<&str> = subset.iter().map(|x| x.as_str()).collect();
                write!(
                    f,
                    "meet {meet} of {{{}}} escapes the actual set of state {state}",
                    items.join(", ")
                )
            }
            SpsViolation::OrderedButNotImplied { a, b, witness } => write!(
                f,
                "{a} < {b} in the lattice but {a} is actual and {b} is not in state {witness}"
            ),
            SpsViolation::ImpliedButNotOrdered { a, b } => write!(
                f,
                "actuality of {a} implies actuality of {b} in every state, but {a} < {b} fails"
            ),
        }
    }
}

impl StatePropertySystem {
    pub fn new(
        states: Vec<ElementId>,
        lattice: Lattice,
        xi: &BTreeMap<ElementId, BTreeSet<ElementId>>,
    ) -> Result<Self, StructuralError> {
        let states = canonical_carrier(states)?;
        for key in xi.keys() {
            if states.binary_search(key).is_err() {
                return Err(StructuralError::UnknownElement {
                    id: key.clone(),
                    context: "actuality map domain".into(),
                });
            }
        }
        let mut masks = Vec::with_capacity(states.len());
        for p in &states {
            let props = xi.get(p).ok_or_else(|| StructuralError::MissingEntry {
                id: p.clone(),
                context: "actuality map".into(),
            })?;
            let mut mask = 0u64;
            for a in props {
                let i = lattice
                    .try_idx(a)
                    .ok_or_else(|| StructuralError::UnknownElement {
                        id: a.clone(),
                        context: "actuality map image".into(),
                    })?;
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        Ok(StatePropertySystem {
            states,
            lattice,
            xi: masks,
        })
    }

    pub(crate) fn from_masks(states: Vec<ElementId>, lattice: Lattice, xi: Vec<u64>) -> Self {
        debug_assert_eq!(states.len(), xi.len());
        StatePropertySystem {
            states,
            lattice,
            xi,
        }
    }

    pub fn states(&self) -> &[ElementId] {
        &self.states
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The actual-property set `xi(p)`.
    pub fn actual_properties(&self, p: &ElementId) -> BTreeSet<ElementId> {
        let i = self.state_idx(p);
        self.lattice.mask_to_set(self.xi[i])
    }

    pub fn has_property(&self, p: &ElementId, a: &ElementId) -> bool {
        let i = self.state_idx(p);
        let j = self.lattice.idx(a);
        self.xi[i] & (1 << j) != 0
    }

    pub fn xi_map(&self) -> BTreeMap<ElementId, BTreeSet<ElementId>> {
        self.states
            .iter()
            .zip(&self.xi)
            .map(|(p, &m)| (p.clone(), self.lattice.mask_to_set(m)))
            .collect()
    }

    /// Checks the four defining laws. The state comparison is read as
    /// non-strict inclusion of actual sets; the strict reading would break
    /// reflexivity of the derived preorder.
    pub fn violations(&self) -> Vec<SpsViolation> {
        let mut out = Vec::new();
        let top = self.lattice.top_idx();
        let bottom = self.lattice.bottom_idx();
        for (i, &mask) in self.xi.iter().enumerate() {
            if mask & (1 << top) == 0 {
                out.push(SpsViolation::TopMissing {
                    state: self.states[i].clone(),
                });
            }
            if mask & (1 << bottom) != 0 {
                out.push(SpsViolation::BottomPresent {
                    state: self.states[i].clone(),
                });
            }
            if let Some((subset, meet)) = self.meet_escape(mask) {
                out.push(SpsViolation::MeetEscapes {
                    state: self.states[i].clone(),
                    subset: self.lattice.mask_to_set(subset),
                    meet: self.lattice.element_at(meet).clone(),
                });
            }
        }
        // Property-order soundness, both directions.
        let n = self.lattice.len();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let ordered = self.lattice.leq_idx(a, b);
                let implied_witness = (0..self.states.len())
                    .find(|&i| self.xi[i] & (1 << a) != 0 && self.xi[i] & (1 << b) == 0);
                match (ordered, implied_witness) {
                    (true, Some(i)) => out.push(SpsViolation::OrderedButNotImplied {
                        a: self.lattice.element_at(a).clone(),
                        b: self.lattice.element_at(b).clone(),
                        witness: self.states[i].clone(),
                    }),
                    (false, None) => out.push(SpsViolation::ImpliedButNotOrdered {
                        a: self.lattice.element_at(a).clone(),
                        b: self.lattice.element_at(b).clone(),
                    }),
                    _ => {}
                }
            }
        }
        out
    }

    /// First subset of `mask` whose meet falls outside `mask`, if any.
    /// Exhaustive over subsets for small actual sets, pairwise above that
    /// (sufficient by finite induction once top membership is checked
    /// separately).
    fn meet_escape(&self, mask: u64) -> Option<(u64, usize)> {
        if mask.count_ones() as usize <= SUBSET_CHECK_LIMIT {
            let mut sub = mask;
            loop {
                if sub != 0 {
                    let m = self.lattice.meet_mask(sub);
                    if mask & (1 << m) == 0 {
                        return Some((sub, m));
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
            None
        } else {
            for i in bits(mask) {
                for j in bits(mask) {
                    if i < j {
                        let m = self.lattice.meet_idx(i, j);
                        if mask & (1 << m) == 0 {
                            return Some(((1 << i) | (1 << j), m));
                        }
                    }
                }
            }
            None
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// The Cartan map: the set of states in which `a` is actual.
    pub fn cartan(&self, a: &ElementId) -> Result<BTreeSet<ElementId>, StructuralError> {
        let j = self
            .lattice
            .try_idx(a)
            .ok_or_else(|| StructuralError::UnknownElement {
                id: a.clone(),
                context: "Cartan map argument".into(),
            })?;
        let mask = self.cartan_mask(j);
        Ok(bits(mask).map(|i| self.states[i].clone()).collect())
    }

    /// States in which property index `j` is actual, as a state mask.
    pub(crate) fn cartan_mask(&self, j: usize) -> u64 {
        let mut out = 0u64;
        for (i, &m) in self.xi.iter().enumerate() {
            if m & (1 << j) != 0 {
                out |= 1 << i;
            }
        }
        out
    }

    /// The derived state preorder: `p < q` iff `xi(q)` is a subset of
    /// `xi(p)`. Always reflexive and transitive.
    pub fn state_preorder(&self) -> Relation {
        let mut pairs = BTreeSet::new();
        for (i, &mi) in self.xi.iter().enumerate() {
            for (j, &mj) in self.xi.iter().enumerate() {
                if mi & mj == mj {
                    pairs.insert((self.states[i].clone(), self.states[j].clone()));
                }
            }
        }
        Relation::new(self.states.clone(), pairs).expect("states form a valid carrier")
    }

    /// None when `xi` is injective; otherwise a pair of distinct states
    /// with identical actual-property sets.
    pub fn state_determination_witness(&self) -> Option<(ElementId, ElementId)> {
        for i in 0..self.states.len() {
            for j in i + 1..self.states.len() {
                if self.xi[i] == self.xi[j] {
                    return Some((self.states[i].clone(), self.states[j].clone()));
                }
            }
        }
        None
    }

    pub fn is_state_determined(&self) -> bool {
        self.state_determination_witness().is_none()
    }

    /// The strongest actual property of `p`: the meet of `xi(p)`. For a
    /// valid system it is itself actual and never bottom.
    pub fn strongest_property(&self, p: &ElementId) -> &ElementId {
        let i = self.state_idx(p);
        self.lattice.element_at(self.lattice.meet_mask(self.xi[i]))
    }

    pub(crate) fn state_idx(&self, p: &ElementId) -> usize {
        match self.states.binary_search(p) {
            Ok(i) => i,
            Err(_) => panic!("state `{p}` is not in this system"),
        }
    }

    pub(crate) fn try_state_idx(&self, p: &ElementId) -> Option<usize> {
        self.states.binary_search(p).ok()
    }

    pub(crate) fn xi_mask(&self, i: usize) -> u64 {
        self.xi[i]
    }
}

/// A morphism of state property systems: `m` forward on states, `n`
/// backward on properties (from the *target* lattice into the *source*
/// lattice), linked by covariance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpMorphism {
    source: StatePropertySystem,
    target: StatePropertySystem,
    /// Source state index to target state index.
    state_map: Vec<usize>,
    /// Target property index to source property index.
    property_map: Vec<usize>,
}

/// A failure of the covariance law or one of its derived consequences.
/// The derived entries can only fire when covariance itself fails
/// somewhere; they are reported separately because their witnesses are
/// usually smaller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// `a in xi(m(p'))` and `n(a) in xi'(p')` disagree at this pair.
    Covariance {
        property: ElementId,
        state: ElementId,
    },
    /// `n` fails to preserve the meet of this subset.
    MeetNotPreserved { subset: BTreeSet<ElementId> },
    /// `n(I)` is not the top of the source lattice.
    TopNotPreserved,
    /// `n(0)` is not the bottom of the source lattice.
    BottomNotPreserved,
    /// `m` is not monotone for the derived state preorders.
    StateMapNotMonotone { p: ElementId, q: ElementId },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::Covariance { property, state } => {
                write!(f, "covariance fails at property {property}, state {state}")
            }
            MorphismViolation::MeetNotPreserved { subset } => {
                let items: Vec<&str> = subset.iter().map(|x| x.as_str()).collect();
                write!(
                    f,
                    "n does not preserve the meet of {{{}}}",
                    items.join(", ")
                )
            }
            MorphismViolation::TopNotPreserved => write!(f, "n does not send top to top"),
            MorphismViolation::BottomNotPreserved => {
                write!(f, "n does not send bottom to bottom")
            }
            MorphismViolation::StateMapNotMonotone { p, q } => {
                write!(f, "m is not monotone at {p} < {q}")
            }
        }
    }
}

impl SpMorphism {
    /// Builds a morphism from explicit graphs. `m` must be total on the
    /// source states, `n` total on the *target* properties; a property map
    /// keyed by the source lattice instead is rejected with a dedicated
    /// error, because that direction confusion is otherwise very hard to
    /// debug.
    pub fn new(
        source: StatePropertySystem,
        target: StatePropertySystem,
        m: &BTreeMap<ElementId, ElementId>,
        n: &BTreeMap<ElementId, ElementId>,
    ) -> Result<Self, StructuralError> {
        let mut state_map = Vec::with_capacity(source.states.len());
        for p in &source.states {
            let q = m.get(p).ok_or_else(|| StructuralError::MissingEntry {
                id: p.clone(),
                context: "state map".into(),
            })?;
            let j = target
                .try_state_idx(q)
                .ok_or_else(|| StructuralError::UnknownElement {
                    id: q.clone(),
                    context: "state map image".into(),
                })?;
            state_map.push(j);
        }
        for key in m.keys() {
            if source.try_state_idx(key).is_none() {
                return Err(StructuralError::UnknownElement {
                    id: key.clone(),
                    context: "state map domain".into(),
                });
            }
        }
        let reversed_would_work = || {
            source.lattice != target.lattice
                && source
                    .lattice
                    .elements()
                    .iter()
                    .all(|a| n.get(a).is_some_and(|b| target.lattice.contains(b)))
                && n.keys().all(|a| source.lattice.contains(a))
        };
        let mut property_map = Vec::with_capacity(target.lattice.len());
        for a in target.lattice.elements() {
            let b = match n.get(a) {
                Some(b) => b,
                None if reversed_would_work() => return Err(StructuralError::PropertyMapReversed),
                None => {
                    return Err(StructuralError::MissingEntry {
                        id: a.clone(),
                        context: "property map (runs target lattice to source lattice)".into(),
                    })
                }
            };
            let j = source
                .lattice
                .try_idx(b)
                .ok_or_else(|| StructuralError::UnknownElement {
                    id: b.clone(),
                    context: "property map image".into(),
                })?;
            property_map.push(j);
        }
        for key in n.keys() {
            if target.lattice.try_idx(key).is_none() {
                if reversed_would_work() {
                    return Err(StructuralError::PropertyMapReversed);
                }
                return Err(StructuralError::UnknownElement {
                    id: key.clone(),
                    context: "property map domain".into(),
                });
            }
        }
        Ok(SpMorphism {
            source,
            target,
            state_map,
            property_map,
        })
    }

    pub(crate) fn from_indices(
        source: StatePropertySystem,
        target: StatePropertySystem,
        state_map: Vec<usize>,
        property_map: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(state_map.len(), source.states.len());
        debug_assert_eq!(property_map.len(), target.lattice.len());
        SpMorphism {
            source,
            target,
            state_map,
            property_map,
        }
    }

    pub fn identity(s: &StatePropertySystem) -> Self {
        SpMorphism {
            source: s.clone(),
            target: s.clone(),
            state_map: (0..s.states.len()).collect(),
            property_map: (0..s.lattice.len()).collect(),
        }
    }

    pub fn source(&self) -> &StatePropertySystem {
        &self.source
    }

    pub fn target(&self) -> &StatePropertySystem {
        &self.target
    }

    pub fn apply_state(&self, p: &ElementId) -> &ElementId {
        let i = self.source.state_idx(p);
        &self.target.states[self.state_map[i]]
    }

    pub fn apply_property(&self, a: &ElementId) -> &ElementId {
        let j = self.target.lattice.idx(a);
        self.source.lattice.element_at(self.property_map[j])
    }

    pub fn state_graph(&self) -> BTreeMap<ElementId, ElementId> {
        self.source
            .states
            .iter()
            .zip(&self.state_map)
            .map(|(p, &j)| (p.clone(), self.target.states[j].clone()))
            .collect()
    }

    pub fn property_graph(&self) -> BTreeMap<ElementId, ElementId> {
        self.target
            .lattice
            .elements()
            .iter()
            .zip(&self.property_map)
            .map(|(a, &j)| (a.clone(), self.source.lattice.element_at(j).clone()))
            .collect()
    }

    /// The property map as a standalone lattice map (target lattice to
    /// source lattice).
    pub fn property_lattice_map(&self) -> LatticeMap {
        LatticeMap::from_indices(
            self.target.lattice.clone(),
            self.source.lattice.clone(),
            self.property_map.clone(),
        )
    }

    pub(crate) fn state_indices(&self) -> &[usize] {
        &self.state_map
    }

    pub(crate) fn property_indices(&self) -> &[usize] {
        &self.property_map
    }

    /// Empty report iff covariance holds at every (property, state) pair.
    /// The derived consequences (meet preservation of `n`, top and bottom
    /// preservation, monotonicity of `m`) are checked as well; a failure
    /// there always indicates a covariance failure.
    pub fn violations(&self) -> Vec<MorphismViolation> {
        let mut out = Vec::new();
        for (j, a) in self.target.lattice.elements().iter().enumerate() {
            let na = self.property_map[j];
            for (i, p) in self.source.states.iter().enumerate() {
                let lhs = self.target.xi[self.state_map[i]] & (1 << j) != 0;
                let rhs = self.source.xi[i] & (1 << na) != 0;
                if lhs != rhs {
                    out.push(MorphismViolation::Covariance {
                        property: a.clone(),
                        state: p.clone(),
                    });
                }
            }
        }
        let n = self.property_lattice_map();
        if let Some(subset) = n.meet_preservation_witness() {
            out.push(MorphismViolation::MeetNotPreserved { subset });
        }
        if self.property_map[self.target.lattice.top_idx()] != self.source.lattice.top_idx() {
            out.push(MorphismViolation::TopNotPreserved);
        }
        if self.property_map[self.target.lattice.bottom_idx()] != self.source.lattice.bottom_idx() {
            out.push(MorphismViolation::BottomNotPreserved);
        }
        for (i, &mi) in self.source.xi.iter().enumerate() {
            for (j, &mj) in self.source.xi.iter().enumerate() {
                if mi & mj == mj {
                    // p < q in the derived preorder; images must compare too.
                    let (a, b) = (self.state_map[i], self.state_map[j]);
                    if self.target.xi[a] & self.target.xi[b] != self.target.xi[b] {
                        out.push(MorphismViolation::StateMapNotMonotone {
                            p: self.source.states[i].clone(),
                            q: self.source.states[j].clone(),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Composition in diagram order: `self: A -> B` then `next: B -> C`
    /// gives `A -> C`. State maps compose forward, property maps backward.
    pub fn then(&self, next: &SpMorphism) -> Result<SpMorphism, StructuralError> {
        if self.target != next.source {
            return Err(StructuralError::EndpointMismatch(
                "composed morphisms must share the middle system".into(),
            ));
        }
        Ok(SpMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            state_map: self.state_map.iter().map(|&i| next.state_map[i]).collect(),
            property_map: next
                .property_map
                .iter()
                .map(|&j| self.property_map[j])
                .collect(),
        })
    }

    /// The inverse pair `(m⁻¹, n⁻¹)` when both maps are bijections, which
    /// is exactly when this morphism is an isomorphism.
    pub fn inverse(&self) -> Option<SpMorphism> {
        let m_inv = invert(&self.state_map, self.target.states.len())?;
        let n_inv = invert(&self.property_map, self.source.lattice.len())?;
        Some(SpMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            state_map: m_inv,
            property_map: n_inv,
        })
    }

    /// True iff `m` and `n` are bijections. Requires a valid morphism; the
    /// constructed inverse is validated before returning true.
    pub fn is_isomorphism(&self) -> bool {
        match self.inverse() {
            Some(inv) => {
                assert!(
                    inv.is_valid(),
                    "inverse of a valid bijective morphism must be a morphism"
                );
                true
            }
            None => false,
        }
    }
}

fn invert(map: &[usize], codomain: usize) -> Option<Vec<usize>> {
    if map.len() != codomain {
        return None;
    }
    let mut inv = vec![usize::MAX; codomain];
    for (i, &j) in map.iter().enumerate() {
        if inv[j] != usize::MAX {
            return None;
        }
        inv[j] = i;
    }
    Some(inv)
}
