//! Finite preorders, posets and complete lattices.
//!
//! Orders are stored extensionally as a set of related pairs over a small
//! carrier. Validation is a pure check: nothing is repaired or closed on the
//! caller's behalf. A [`Relation`] is an unvalidated candidate; a [`Lattice`]
//! can only be obtained through [`Lattice::validate`], after which every
//! meet and join is total and precomputed.
//!
//! Carriers are canonical: element lists are kept sorted, so structural
//! equality of two lattices is equality of their serialized form. All types
//! are immutable after construction and safe to share across threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{StructuralError, MAX_CARRIER};

/// Subset-quantified checks enumerate all subsets up to this carrier size and
/// fall back to the pairwise-plus-unit form (sufficient on finite lattices)
/// above it.
pub const SUBSET_CHECK_LIMIT: usize = 12;

/// Name of an element within one carrier set.
///
/// Tokens are nonempty strings compared by exact equality. Uniqueness is per
/// structure, enforced when carriers are built.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(token: impl Into<String>) -> Result<Self, StructuralError> {
        let token = token.into();
        if token.is_empty() {
            return Err(StructuralError::EmptyToken);
        }
        Ok(ElementId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Convenience constructor for literal ids; panics on an empty token.
pub fn id(token: &str) -> ElementId {
    ElementId::new(token).expect("nonempty element token")
}

/// Sorts, checks for duplicates and enforces the carrier size limit.
pub(crate) fn canonical_carrier(
    mut elements: Vec<ElementId>,
) -> Result<Vec<ElementId>, StructuralError> {
    if elements.is_empty() {
        return Err(StructuralError::EmptyCarrier);
    }
    if elements.len() > MAX_CARRIER {
        return Err(StructuralError::CarrierTooLarge(elements.len()));
    }
    elements.sort();
    for w in elements.windows(2) {
        if w[0] == w[1] {
            return Err(StructuralError::DuplicateElement(w[0].clone()));
        }
    }
    Ok(elements)
}

/// A binary relation on a finite carrier: the candidate form of a preorder,
/// poset or complete lattice. `(x, y)` in the pair set means `x < y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    elements: Vec<ElementId>,
    pairs: BTreeSet<(ElementId, ElementId)>,
}

/// A violated order law, with the witnessing elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderViolation {
    /// `(x, x)` is missing.
    Reflexivity { element: ElementId },
    /// `(x, via)` and `(via, z)` are present but `(x, z)` is not.
    Transitivity {
        x: ElementId,
        via: ElementId,
        z: ElementId,
    },
    /// Both `(x, y)` and `(y, x)` are present for distinct x, y.
    Antisymmetry { x: ElementId, y: ElementId },
    /// No element is above every other.
    NoTop,
    /// The pair has no greatest lower bound.
    NoMeet { x: ElementId, y: ElementId },
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderViolation::Reflexivity { element } => {
                write!(f, "missing reflexive pair ({element}, {element})")
            }
            OrderViolation::Transitivity { x, via, z } => {
                write!(f, "transitivity violation ({x}, {z}) via {via}")
            }
            OrderViolation::Antisymmetry { x, y } => {
                write!(f, "antisymmetry violation between {x} and {y}")
            }
            OrderViolation::NoTop => write!(f, "no top"),
            OrderViolation::NoMeet { x, y } => {
                write!(f, "pair ({x}, {y}) has no greatest lower bound")
            }
        }
    }
}

impl Relation {
    pub fn new(
        elements: Vec<ElementId>,
        pairs: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Self, StructuralError> {
        let elements = canonical_carrier(elements)?;
        let mut set = BTreeSet::new();
        for (x, y) in pairs {
            for e in [&x, &y] {
                if elements.binary_search(e).is_err() {
                    return Err(StructuralError::UnknownElement {
                        id: e.clone(),
                        context: "relation pair".into(),
                    });
                }
            }
            set.insert((x, y));
        }
        Ok(Relation {
            elements,
            pairs: set,
        })
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn pairs(&self) -> &BTreeSet<(ElementId, ElementId)> {
        &self.pairs
    }

    pub fn related(&self, x: &ElementId, y: &ElementId) -> bool {
        self.pairs.contains(&(x.clone(), y.clone()))
    }

    /// Every reflexivity and transitivity violation, scanned exhaustively.
    pub fn preorder_violations(&self) -> Vec<OrderViolation> {
        let mut out = Vec::new();
        for x in &self.elements {
            if !self.related(x, x) {
                out.push(OrderViolation::Reflexivity { element: x.clone() });
            }
        }
        for (x, y) in &self.pairs {
            for (y2, z) in &self.pairs {
                if y == y2 && !self.related(x, z) {
                    out.push(OrderViolation::Transitivity {
                        x: x.clone(),
                        via: y.clone(),
                        z: z.clone(),
                    });
                }
            }
        }
        out
    }

    /// Preorder violations plus antisymmetry violations.
    pub fn poset_violations(&self) -> Vec<OrderViolation> {
        let mut out = self.preorder_violations();
        for (x, y) in &self.pairs {
            if x < y && self.related(y, x) {
                out.push(OrderViolation::Antisymmetry {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
        out
    }

    pub fn is_preorder(&self) -> bool {
        self.preorder_violations().is_empty()
    }

    pub fn is_poset(&self) -> bool {
        self.poset_violations().is_empty()
    }

    /// Report for the complete-lattice check: a top element must exist and
    /// every pair must have a meet, which on a finite poset suffices for all
    /// meets and joins to exist. If the relation is not even a poset those
    /// violations are reported instead.
    pub fn complete_lattice_violations(&self) -> Vec<OrderViolation> {
        let poset = self.poset_violations();
        if !poset.is_empty() {
            return poset;
        }
        let mut out = Vec::new();
        let n = self.elements.len();
        let down: Vec<u64> = (0..n)
            .map(|i| {
                let mut m = 0u64;
                for (j, y) in self.elements.iter().enumerate() {
                    if self.related(y, &self.elements[i]) {
                        m |= 1 << j;
                    }
                }
                m
            })
            .collect();
        let full = full_mask(n);
        if !down.contains(&full) {
            out.push(OrderViolation::NoTop);
        }
        for i in 0..n {
            for j in i..n {
                let lb = down[i] & down[j];
                let has_glb = bits(lb).any(|k| down[k] & lb == lb);
                if !has_glb {
                    out.push(OrderViolation::NoMeet {
                        x: self.elements[i].clone(),
                        y: self.elements[j].clone(),
                    });
                }
            }
        }
        out
    }

    pub fn is_complete_lattice(&self) -> bool {
        self.complete_lattice_violations().is_empty()
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of the set bits of `m`, ascending.
pub(crate) fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m & (1 << i) != 0)
}

/// A validated finite complete lattice.
///
/// Meets and joins of pairs are precomputed at validation time; meets and
/// joins of arbitrary subsets fold over those tables, with the empty subset
/// going to top and bottom respectively. Joins are derived from meets:
/// the join of a set is the meet of its common upper bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    elements: Vec<ElementId>,
    /// `up[i]` masks the elements above `i` (inclusive).
    up: Vec<u64>,
    /// `down[i]` masks the elements below `i` (inclusive).
    down: Vec<u64>,
    meet_tbl: Vec<usize>,
    join_tbl: Vec<usize>,
    top: usize,
    bottom: usize,
}

impl Lattice {
    /// Checks the full ladder (preorder, poset, top, pairwise meets) and
    /// builds the operation tables. Violations are returned in full.
    pub fn validate(rel: &Relation) -> Result<Self, Vec<OrderViolation>> {
        let violations = rel.complete_lattice_violations();
        if !violations.is_empty() {
            return Err(violations);
        }
        let elements = rel.elements().to_vec();
        let n = elements.len();
        let mut up = vec![0u64; n];
        let mut down = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if rel.related(&elements[i], &elements[j]) {
                    up[i] |= 1 << j;
                    down[j] |= 1 << i;
                }
            }
        }
        let full = full_mask(n);
        let top = (0..n).find(|&i| down[i] == full).expect("top checked");
        let mut meet_tbl = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let lb = down[i] & down[j];
                let glb = bits(lb)
                    .find(|&k| down[k] & lb == lb)
                    .expect("pairwise meet checked");
                meet_tbl[i * n + j] = glb;
            }
        }
        // Birkhoff: the join of a pair is the meet of its common upper bounds.
        let mut join_tbl = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let ub = up[i] & up[j];
                let mut acc = top;
                for k in bits(ub) {
                    acc = meet_tbl[acc * n + k];
                }
                join_tbl[i * n + j] = acc;
            }
        }
        let bottom = {
            let mut acc = top;
            for k in 0..n {
                acc = meet_tbl[acc * n + k];
            }
            acc
        };
        Ok(Lattice {
            elements,
            up,
            down,
            meet_tbl,
            join_tbl,
            top,
            bottom,
        })
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &ElementId) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn top(&self) -> &ElementId {
        &self.elements[self.top]
    }

    pub fn bottom(&self) -> &ElementId {
        &self.elements[self.bottom]
    }

    pub fn leq(&self, x: &ElementId, y: &ElementId) -> bool {
        let (i, j) = (self.idx(x), self.idx(y));
        self.up[i] & (1 << j) != 0
    }

    pub fn meet_pair(&self, x: &ElementId, y: &ElementId) -> &ElementId {
        let k = self.meet_idx(self.idx(x), self.idx(y));
        &self.elements[k]
    }

    pub fn join_pair(&self, x: &ElementId, y: &ElementId) -> &ElementId {
        let k = self.join_idx(self.idx(x), self.idx(y));
        &self.elements[k]
    }

    /// Greatest lower bound of a subset; the empty meet is top.
    pub fn meet<'a>(&self, set: impl IntoIterator<Item = &'a ElementId>) -> &ElementId {
        let mut acc = self.top;
        for x in set {
            acc = self.meet_idx(acc, self.idx(x));
        }
        &self.elements[acc]
    }

    /// Least upper bound of a subset; the empty join is bottom.
    pub fn join<'a>(&self, set: impl IntoIterator<Item = &'a ElementId>) -> &ElementId {
        let mut acc = self.bottom;
        for x in set {
            acc = self.join_idx(acc, self.idx(x));
        }
        &self.elements[acc]
    }

    /// The relation this lattice was validated from, as the full pair set.
    pub fn relation(&self) -> Relation {
        let mut pairs = BTreeSet::new();
        for i in 0..self.len() {
            for j in bits(self.up[i]) {
                pairs.insert((self.elements[i].clone(), self.elements[j].clone()));
            }
        }
        Relation {
            elements: self.elements.clone(),
            pairs,
        }
    }

    pub(crate) fn idx(&self, x: &ElementId) -> usize {
        match self.elements.binary_search(x) {
            Ok(i) => i,
            Err(_) => panic!("element `{x}` is not in this lattice"),
        }
    }

    pub(crate) fn try_idx(&self, x: &ElementId) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub(crate) fn element_at(&self, i: usize) -> &ElementId {
        &self.elements[i]
    }

    pub(crate) fn top_idx(&self) -> usize {
        self.top
    }

    pub(crate) fn bottom_idx(&self) -> usize {
        self.bottom
    }

    pub(crate) fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up[i] & (1 << j) != 0
    }

    pub(crate) fn up_mask(&self, i: usize) -> u64 {
        self.up[i]
    }

    pub(crate) fn down_mask(&self, i: usize) -> u64 {
        self.down[i]
    }

    pub(crate) fn meet_idx(&self, i: usize, j: usize) -> usize {
        self.meet_tbl[i * self.elements.len() + j]
    }

    pub(crate) fn join_idx(&self, i: usize, j: usize) -> usize {
        self.join_tbl[i * self.elements.len() + j]
    }

    /// Meet over the elements picked out by `mask`; empty mask gives top.
    pub(crate) fn meet_mask(&self, mask: u64) -> usize {
        let mut acc = self.top;
        for k in bits(mask) {
            acc = self.meet_idx(acc, k);
        }
        acc
    }

    /// Join over the elements picked out by `mask`; empty mask gives bottom.
    pub(crate) fn join_mask(&self, mask: u64) -> usize {
        let mut acc = self.bottom;
        for k in bits(mask) {
            acc = self.join_idx(acc, k);
        }
        acc
    }

    pub(crate) fn mask_to_set(&self, mask: u64) -> BTreeSet<ElementId> {
        bits(mask).map(|i| self.elements[i].clone()).collect()
    }
}

/// A total map between two lattices, stored with its endpoints.
///
/// Monotonicity and meet/join preservation are checks, not construction
/// invariants, so candidate maps (for adjunction searches and generators)
/// use the same type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    source: Lattice,
    target: Lattice,
    graph: Vec<usize>,
}

impl LatticeMap {
    pub fn new(
        source: Lattice,
        target: Lattice,
        graph: &BTreeMap<ElementId, ElementId>,
    ) -> Result<Self, StructuralError> {
        for key in graph.keys() {
            if !source.contains(key) {
                return Err(StructuralError::UnknownElement {
                    id: key.clone(),
                    context: "lattice map domain".into(),
                });
            }
        }
        let mut idx_graph = Vec::with_capacity(source.len());
        for x in source.elements() {
            let y = graph.get(x).ok_or_else(|| StructuralError::MissingEntry {
                id: x.clone(),
                context: "lattice map".into(),
            })?;
            let j = target
                .try_idx(y)
                .ok_or_else(|| StructuralError::UnknownElement {
                    id: y.clone(),
                    context: "lattice map image".into(),
                })?;
            idx_graph.push(j);
        }
        Ok(LatticeMap {
            source,
            target,
            graph: idx_graph,
        })
    }

    pub(crate) fn from_indices(source: Lattice, target: Lattice, graph: Vec<usize>) -> Self {
        debug_assert_eq!(graph.len(), source.len());
        debug_assert!(graph.iter().all(|&j| j < target.len()));
        LatticeMap {
            source,
            target,
            graph,
        }
    }

    pub fn identity(l: &Lattice) -> Self {
        LatticeMap {
            source: l.clone(),
            target: l.clone(),
            graph: (0..l.len()).collect(),
        }
    }

    pub fn source(&self) -> &Lattice {
        &self.source
    }

    pub fn target(&self) -> &Lattice {
        &self.target
    }

    pub fn apply(&self, x: &ElementId) -> &ElementId {
        self.target.element_at(self.graph[self.source.idx(x)])
    }

    pub(crate) fn apply_idx(&self, i: usize) -> usize {
        self.graph[i]
    }

    pub fn graph(&self) -> BTreeMap<ElementId, ElementId> {
        self.source
            .elements()
            .iter()
            .zip(&self.graph)
            .map(|(x, &j)| (x.clone(), self.target.element_at(j).clone()))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.graph.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|i| {
            bits(self.source.up_mask(i)).all(|j| self.target.leq_idx(self.graph[i], self.graph[j]))
        })
    }

    /// Composition in diagram order: `self` first, then `next`.
    pub fn then(&self, next: &LatticeMap) -> Result<LatticeMap, StructuralError> {
        if self.target != next.source {
            return Err(StructuralError::EndpointMismatch(
                "composed lattice maps must share the middle lattice".into(),
            ));
        }
        Ok(LatticeMap {
            source: self.source.clone(),
            target: next.target.clone(),
            graph: self.graph.iter().map(|&i| next.graph[i]).collect(),
        })
    }

    /// `f(meet S) = meet f(S)` for every subset when the source is small,
    /// otherwise for all pairs plus the empty subset (top to top), which is
    /// sufficient on finite lattices.
    pub fn preserves_meets(&self) -> bool {
        self.meet_preservation_witness().is_none()
    }

    /// The first failing subset, if meet preservation fails.
    pub fn meet_preservation_witness(&self) -> Option<BTreeSet<ElementId>> {
        let n = self.source.len();
        if n <= SUBSET_CHECK_LIMIT {
            for mask in 0..=full_mask(n) {
                if !self.meet_ok(mask) {
                    return Some(self.source.mask_to_set(mask));
                }
            }
            None
        } else {
            if !self.meet_ok(0) {
                return Some(BTreeSet::new());
            }
            for i in 0..n {
                for j in i..n {
                    let mask = (1 << i) | (1 << j);
                    if !self.meet_ok(mask) {
                        return Some(self.source.mask_to_set(mask));
                    }
                }
            }
            None
        }
    }

    pub fn preserves_joins(&self) -> bool {
        self.join_preservation_witness().is_none()
    }

    /// The first failing subset, if join preservation fails.
    pub fn join_preservation_witness(&self) -> Option<BTreeSet<ElementId>> {
        let n = self.source.len();
        if n <= SUBSET_CHECK_LIMIT {
            for mask in 0..=full_mask(n) {
                if !self.join_ok(mask) {
                    return Some(self.source.mask_to_set(mask));
                }
            }
            None
        } else {
            if !self.join_ok(0) {
                return Some(BTreeSet::new());
            }
            for i in 0..n {
                for j in i..n {
                    let mask = (1 << i) | (1 << j);
                    if !self.join_ok(mask) {
                        return Some(self.source.mask_to_set(mask));
                    }
                }
            }
            None
        }
    }

    fn meet_ok(&self, mask: u64) -> bool {
        let lhs = self.graph[self.source.meet_mask(mask)];
        let mut rhs = self.target.top_idx();
        for k in bits(mask) {
            rhs = self.target.meet_idx(rhs, self.graph[k]);
        }
        lhs == rhs
    }

    fn join_ok(&self, mask: u64) -> bool {
        let lhs = self.graph[self.source.join_mask(mask)];
        let mut rhs = self.target.bottom_idx();
        for k in bits(mask) {
            rhs = self.target.join_idx(rhs, self.graph[k]);
        }
        lhs == rhs
    }
}
