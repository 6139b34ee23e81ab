//! Finite closure spaces and continuity of point maps.
//!
//! A closure space is a point set together with an intersection-closed
//! family of "closed" subsets that contains both the full set and the empty
//! set. Subsets are canonical (sorted, deduplicated), so equality of spaces
//! is structural equality.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::StructuralError;
use crate::order::{bits, canonical_carrier, full_mask, ElementId};

/// A finite closure space: points plus the family of closed subsets.
///
/// Construction checks structure only (known points, no duplicates);
/// the closure-system laws are checked by [`ClosureSpace::violations`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSpace {
    points: Vec<ElementId>,
    /// Closed subsets as bit masks over `points`, in ascending mask order.
    sets: Vec<u64>,
}

/// A violated closure-system law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureViolation {
    /// The full point set is not a member of the family.
    FullSetMissing,
    /// The empty set is not a member of the family.
    EmptySetMissing,
    /// Two members whose intersection is not a member.
    IntersectionMissing {
        first: BTreeSet<ElementId>,
        second: BTreeSet<ElementId>,
    },
}

impl std::fmt::Display for ClosureViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn fmt_set(s: &BTreeSet<ElementId>) -> String {
            let items: Vec<&str> = s.iter().map(|x| x.as_str()).collect();
            format!("{{{}}}", items.join(", "))
        }
        match self {
            ClosureViolation::FullSetMissing => write!(f, "Z is not closed"),
            ClosureViolation::EmptySetMissing => write!(f, "the empty set is not closed"),
            ClosureViolation::IntersectionMissing { first, second } => write!(
                f,
                "intersection of {} and {} is not closed",
                fmt_set(first),
                fmt_set(second)
            ),
        }
    }
}

impl ClosureSpace {
    pub fn new(
        points: Vec<ElementId>,
        closed_sets: Vec<BTreeSet<ElementId>>,
    ) -> Result<Self, StructuralError> {
        let points = canonical_carrier(points)?;
        let mut sets = Vec::with_capacity(closed_sets.len());
        for set in &closed_sets {
            let mask = set_to_mask(&points, set, "closed set")?;
            sets.push(mask);
        }
        sets.sort_unstable();
        for w in sets.windows(2) {
            if w[0] == w[1] {
                let dup = bits(w[0]).map(|i| points[i].clone()).collect();
                return Err(StructuralError::DuplicateElement(encode_set_id(&dup)));
            }
        }
        Ok(ClosureSpace { points, sets })
    }

    /// Closes an arbitrary family under pairwise intersections and adds the
    /// full and empty sets. The result always validates.
    pub fn generated_by(
        points: Vec<ElementId>,
        family: Vec<BTreeSet<ElementId>>,
    ) -> Result<Self, StructuralError> {
        let points = canonical_carrier(points)?;
        let full = full_mask(points.len());
        let mut sets: BTreeSet<u64> = [0, full].into();
        for set in &family {
            sets.insert(set_to_mask(&points, set, "generating set")?);
        }
        loop {
            let mut fresh = Vec::new();
            for &a in &sets {
                for &b in &sets {
                    let c = a & b;
                    if !sets.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            sets.extend(fresh);
        }
        Ok(ClosureSpace {
            points,
            sets: sets.into_iter().collect(),
        })
    }

    pub fn points(&self) -> &[ElementId] {
        &self.points
    }

    pub fn closed_sets(&self) -> Vec<BTreeSet<ElementId>> {
        self.sets.iter().map(|&m| self.mask_to_set(m)).collect()
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn contains_set(&self, set: &BTreeSet<ElementId>) -> bool {
        match set_to_mask(&self.points, set, "queried set") {
            Ok(mask) => self.sets.binary_search(&mask).is_ok(),
            Err(_) => false,
        }
    }

    /// Empty report iff the family contains Z and the empty set and is
    /// closed under pairwise intersection (which, finitely, gives closure
    /// under intersections of every nonempty subfamily).
    pub fn violations(&self) -> Vec<ClosureViolation> {
        let mut out = Vec::new();
        if self.sets.binary_search(&self.full()).is_err() {
            out.push(ClosureViolation::FullSetMissing);
        }
        if self.sets.binary_search(&0).is_err() {
            out.push(ClosureViolation::EmptySetMissing);
        }
        for (i, &a) in self.sets.iter().enumerate() {
            for &b in &self.sets[i + 1..] {
                if self.sets.binary_search(&(a & b)).is_err() {
                    out.push(ClosureViolation::IntersectionMissing {
                        first: self.mask_to_set(a),
                        second: self.mask_to_set(b),
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// The least closed superset of `subset`: the intersection of every
    /// closed set containing it. Panics if `subset` mentions unknown points.
    pub fn closure_of(&self, subset: &BTreeSet<ElementId>) -> BTreeSet<ElementId> {
        let mask =
            set_to_mask(&self.points, subset, "closure argument").unwrap_or_else(|e| panic!("{e}"));
        self.mask_to_set(self.closure_mask(mask))
    }

    pub(crate) fn closure_mask(&self, mask: u64) -> u64 {
        let mut acc = self.full();
        for &g in &self.sets {
            if g & mask == mask {
                acc &= g;
            }
        }
        acc
    }

    /// None when the space is T0; otherwise a pair of distinct points with
    /// the same singleton closure.
    pub fn t0_witness(&self) -> Option<(ElementId, ElementId)> {
        let n = self.points.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.closure_mask(1 << i) == self.closure_mask(1 << j) {
                    return Some((self.points[i].clone(), self.points[j].clone()));
                }
            }
        }
        None
    }

    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    pub(crate) fn point_idx(&self, p: &ElementId) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub(crate) fn from_masks(points: Vec<ElementId>, sets: BTreeSet<u64>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]), "points sorted");
        ClosureSpace {
            points,
            sets: sets.into_iter().collect(),
        }
    }

    pub(crate) fn full(&self) -> u64 {
        full_mask(self.points.len())
    }

    pub(crate) fn set_masks(&self) -> &[u64] {
        &self.sets
    }

    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        self.sets.binary_search(&mask).is_ok()
    }

    pub(crate) fn mask_to_set(&self, mask: u64) -> BTreeSet<ElementId> {
        bits(mask).map(|i| self.points[i].clone()).collect()
    }
}

pub(crate) fn set_to_mask(
    carrier: &[ElementId],
    set: &BTreeSet<ElementId>,
    context: &str,
) -> Result<u64, StructuralError> {
    let mut mask = 0u64;
    for x in set {
        let i = carrier
            .binary_search(x)
            .map_err(|_| StructuralError::UnknownElement {
                id: x.clone(),
                context: context.into(),
            })?;
        mask |= 1 << i;
    }
    Ok(mask)
}

/// Canonical id for a set of existing ids, used where whole subsets become
/// elements of a fresh structure: "{}", "{p}", "{p,q}". Braces, commas and
/// backslashes inside member ids are escaped, so the encoding is injective
/// for arbitrary ids.
pub(crate) fn encode_set_id(set: &BTreeSet<ElementId>) -> ElementId {
    let mut out = String::from("{");
    for (i, x) in set.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        for c in x.as_str().chars() {
            if matches!(c, '{' | '}' | ',' | '\\') {
                out.push('\\');
            }
            out.push(c);
        }
    }
    out.push('}');
    ElementId::new(out).expect("encoded id is nonempty")
}

/// A total map between the points of two closure spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMap {
    source: ClosureSpace,
    target: ClosureSpace,
    map: Vec<usize>,
}

impl PointMap {
    pub fn new(
        source: ClosureSpace,
        target: ClosureSpace,
        graph: &BTreeMap<ElementId, ElementId>,
    ) -> Result<Self, StructuralError> {
        for key in graph.keys() {
            if source.point_idx(key).is_none() {
                return Err(StructuralError::UnknownElement {
                    id: key.clone(),
                    context: "point map domain".into(),
                });
            }
        }
        let mut map = Vec::with_capacity(source.points.len());
        for p in &source.points {
            let q = graph.get(p).ok_or_else(|| StructuralError::MissingEntry {
                id: p.clone(),
                context: "point map".into(),
            })?;
            let j = target
                .point_idx(q)
                .ok_or_else(|| StructuralError::UnknownElement {
                    id: q.clone(),
                    context: "point map image".into(),
                })?;
            map.push(j);
        }
        Ok(PointMap {
            source,
            target,
            map,
        })
    }

    pub(crate) fn from_indices(
        source: ClosureSpace,
        target: ClosureSpace,
        map: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(map.len(), source.points.len());
        PointMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(space: &ClosureSpace) -> Self {
        PointMap {
            source: space.clone(),
            target: space.clone(),
            map: (0..space.points.len()).collect(),
        }
    }

    pub fn source(&self) -> &ClosureSpace {
        &self.source
    }

    pub fn target(&self) -> &ClosureSpace {
        &self.target
    }

    pub fn apply(&self, p: &ElementId) -> &ElementId {
        let i = self
            .source
            .point_idx(p)
            .unwrap_or_else(|| panic!("point `{p}` is not in the source space"));
        &self.target.points[self.map[i]]
    }

    pub fn graph(&self) -> BTreeMap<ElementId, ElementId> {
        self.source
            .points
            .iter()
            .zip(&self.map)
            .map(|(p, &j)| (p.clone(), self.target.points[j].clone()))
            .collect()
    }

    pub(crate) fn index_graph(&self) -> &[usize] {
        &self.map
    }

    /// Preimage of a mask over target points, as a mask over source points.
    pub(crate) fn preimage_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        for (i, &j) in self.map.iter().enumerate() {
            if mask & (1 << j) != 0 {
                out |= 1 << i;
            }
        }
        out
    }

    /// Forward image of a mask over source points.
    #[cfg(test)]
    pub(crate) fn image_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        for i in bits(mask) {
            out |= 1 << self.map[i];
        }
        out
    }

    /// None when the map is continuous; otherwise the first closed set of
    /// the target whose preimage is not closed in the source.
    pub fn continuity_witness(&self) -> Option<BTreeSet<ElementId>> {
        for &g in &self.target.sets {
            if !self.source.contains_mask(self.preimage_mask(g)) {
                return Some(self.target.mask_to_set(g));
            }
        }
        None
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity_witness().is_none()
    }

    /// Composition in diagram order: `self` first, then `next`.
    pub fn then(&self, next: &PointMap) -> Result<PointMap, StructuralError> {
        if self.target != next.source {
            return Err(StructuralError::EndpointMismatch(
                "composed point maps must share the middle space".into(),
            ));
        }
        Ok(PointMap {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&i| next.map[i]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::id;

    fn set(items: &[&str]) -> BTreeSet<ElementId> {
        items.iter().map(|s| id(s)).collect()
    }

    /// Points {x, y}, closed sets {}, {x}, {x,y}.
    pub(crate) fn sierpinski() -> ClosureSpace {
        ClosureSpace::new(
            vec![id("x"), id("y")],
            vec![set(&[]), set(&["x"]), set(&["x", "y"])],
        )
        .unwrap()
    }

    fn indiscrete2() -> ClosureSpace {
        ClosureSpace::new(vec![id("x"), id("y")], vec![set(&[]), set(&["x", "y"])]).unwrap()
    }

    #[test]
    fn sierpinski_is_valid() {
        assert!(sierpinski().violations().is_empty());
    }

    #[test]
    fn indiscrete_is_valid() {
        assert!(indiscrete2().violations().is_empty());
    }

    #[test]
    fn dropping_the_empty_set_is_reported() {
        let space = ClosureSpace::new(
            vec![id("x"), id("y")],
            vec![set(&["x"]), set(&["y"]), set(&["x", "y"])],
        )
        .unwrap();
        let violations = space.violations();
        assert!(violations.contains(&ClosureViolation::EmptySetMissing));
        // {x} and {y} intersect in the (missing) empty set.
        assert!(violations
            .iter()
            .any(|v| matches!(v, ClosureViolation::IntersectionMissing { .. })));
    }

    #[test]
    fn unknown_point_in_a_set_is_structural() {
        let err = ClosureSpace::new(vec![id("x")], vec![set(&["z"])]).unwrap_err();
        assert!(matches!(err, StructuralError::UnknownElement { .. }));
    }

    #[test]
    fn closure_examples() {
        let s = sierpinski();
        assert_eq!(s.closure_of(&set(&["y"])), set(&["x", "y"]));
        assert_eq!(s.closure_of(&set(&[])), set(&[]));
        assert_eq!(s.closure_of(&set(&["x"])), set(&["x"]));
        for closed in s.closed_sets() {
            assert_eq!(s.closure_of(&closed), closed);
        }
    }

    #[test]
    fn t0_examples() {
        assert!(sierpinski().is_t0());
        let (a, b) = indiscrete2().t0_witness().unwrap();
        assert_eq!((a, b), (id("x"), id("y")));
        let point = ClosureSpace::new(vec![id("x")], vec![set(&[]), set(&["x"])]).unwrap();
        assert!(point.is_t0());
    }

    #[test]
    fn closure_operator_laws_hold_on_every_subset() {
        for space in [sierpinski(), indiscrete2(), three_point()] {
            let n = space.points().len();
            for mask in 0..=full_mask(n) {
                let y = space.mask_to_set(mask);
                let cl = space.closure_of(&y);
                // Extensive and a member of the family.
                assert!(y.is_subset(&cl));
                assert!(space.contains_set(&cl));
                // Idempotent.
                assert_eq!(space.closure_of(&cl), cl);
                // Monotone against every superset.
                for sup in 0..=full_mask(n) {
                    if sup & mask == mask {
                        let cl_sup = space.closure_of(&space.mask_to_set(sup));
                        assert!(cl.is_subset(&cl_sup));
                    }
                }
            }
            // Fixed points of cl are exactly the closed sets.
            for mask in 0..=full_mask(n) {
                let y = space.mask_to_set(mask);
                assert_eq!(space.contains_set(&y), space.closure_of(&y) == y);
            }
        }
    }

    fn three_point() -> ClosureSpace {
        ClosureSpace::generated_by(
            vec![id("a"), id("b"), id("c")],
            vec![set(&["a"]), set(&["a", "b"])],
        )
        .unwrap()
    }

    #[test]
    fn generated_family_always_validates() {
        let space = three_point();
        assert!(space.violations().is_empty());
        assert!(space.contains_set(&set(&[])));
        assert!(space.contains_set(&set(&["a", "b", "c"])));
    }

    #[test]
    fn identity_and_constant_maps_are_continuous() {
        let s = sierpinski();
        assert!(PointMap::identity(&s).is_continuous());
        let c = ClosureSpace::new(vec![id("z")], vec![set(&[]), set(&["z"])]).unwrap();
        let graph: BTreeMap<_, _> = [(id("x"), id("z")), (id("y"), id("z"))].into();
        let constant = PointMap::new(s, c, &graph).unwrap();
        assert!(constant.is_continuous());
    }

    #[test]
    fn indiscrete_to_sierpinski_identity_carrier_is_discontinuous() {
        let graph: BTreeMap<_, _> = [(id("x"), id("x")), (id("y"), id("y"))].into();
        let m = PointMap::new(indiscrete2(), sierpinski(), &graph).unwrap();
        assert_eq!(m.continuity_witness(), Some(set(&["x"])));
    }

    #[test]
    fn continuity_matches_the_pointwise_closure_oracle() {
        // m continuous iff m(cl'(Y)) is contained in cl(m(Y)) for every Y.
        let spaces = [sierpinski(), indiscrete2(), three_point()];
        for src in &spaces {
            for tgt in &spaces {
                let n_src = src.points().len();
                let n_tgt = tgt.points().len();
                let total = n_tgt.pow(n_src as u32);
                for code in 0..total {
                    let mut c = code;
                    let map: Vec<usize> = (0..n_src)
                        .map(|_| {
                            let j = c % n_tgt;
                            c /= n_tgt;
                            j
                        })
                        .collect();
                    let m = PointMap::from_indices(src.clone(), tgt.clone(), map);
                    let oracle = (0..=full_mask(n_src)).all(|y| {
                        let lhs = m.image_mask(src.closure_mask(y));
                        let rhs = tgt.closure_mask(m.image_mask(y));
                        lhs & rhs == lhs
                    });
                    assert_eq!(m.is_continuous(), oracle);
                }
            }
        }
    }
}
