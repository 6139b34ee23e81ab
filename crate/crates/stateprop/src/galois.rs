//! Galois connections between finite complete lattices.
//!
//! A pair `(g, d)` with `g: L -> L'` and `d: L' -> L` is an adjunction when
//! `a' < g(a)` and `d(a') < a` agree for every pair. Each side determines
//! the other: a meet-preserving map has a unique lower adjoint and a
//! join-preserving map a unique upper adjoint, both written out by direct
//! evaluation of the defining meet/join formulas. No cleverness: the
//! formulas are evaluated by brute force at desk scale.

use thiserror::Error;

use crate::error::StructuralError;
use crate::order::{ElementId, LatticeMap};

/// A checked adjunction; `upper: L -> L'` and `lower: L' -> L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisConnection {
    upper: LatticeMap,
    lower: LatticeMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("the two maps do not run between the same pair of lattices")]
    CarrierMismatch,
    #[error("not an adjunction: fails at ({a}, {a_prime})")]
    NotAdjoint { a: ElementId, a_prime: ElementId },
}

impl GaloisConnection {
    /// Checks the adjunction law exhaustively over both carriers.
    pub fn new(upper: LatticeMap, lower: LatticeMap) -> Result<Self, GaloisError> {
        match adjunction_witness(&upper, &lower) {
            Err(_) => Err(GaloisError::CarrierMismatch),
            Ok(Some((a, a_prime))) => Err(GaloisError::NotAdjoint { a, a_prime }),
            Ok(None) => Ok(GaloisConnection { upper, lower }),
        }
    }

    pub fn upper(&self) -> &LatticeMap {
        &self.upper
    }

    pub fn lower(&self) -> &LatticeMap {
        &self.lower
    }
}

/// None when `(upper, lower)` is an adjunction; otherwise the first pair
/// `(a, a')` at which `a' < upper(a)` and `lower(a') < a` disagree.
pub fn adjunction_witness(
    upper: &LatticeMap,
    lower: &LatticeMap,
) -> Result<Option<(ElementId, ElementId)>, StructuralError> {
    if upper.source() != lower.target() || upper.target() != lower.source() {
        return Err(StructuralError::EndpointMismatch(
            "upper must run L -> L' and lower L' -> L over the same lattices".into(),
        ));
    }
    let l = upper.source();
    let l_prime = upper.target();
    for (i, a) in l.elements().iter().enumerate() {
        for (j, a_prime) in l_prime.elements().iter().enumerate() {
            let lhs = l_prime.leq_idx(j, upper.apply_idx(i));
            let rhs = l.leq_idx(lower.apply_idx(j), i);
            if lhs != rhs {
                return Ok(Some((a.clone(), a_prime.clone())));
            }
        }
    }
    Ok(None)
}

/// The lower adjoint of `n: L -> L'`, which exists exactly when `n`
/// preserves meets: `n*(a') = meet of {a : a' < n(a)}`. The constructed
/// pair is re-checked against the adjunction law before it is returned.
pub fn lower_adjoint(n: &LatticeMap) -> Option<LatticeMap> {
    if !n.preserves_meets() {
        return None;
    }
    let l = n.source();
    let l_prime = n.target();
    let graph: Vec<usize> = (0..l_prime.len())
        .map(|j| {
            let mut acc = l.top_idx();
            for i in 0..l.len() {
                if l_prime.leq_idx(j, n.apply_idx(i)) {
                    acc = l.meet_idx(acc, i);
                }
            }
            acc
        })
        .collect();
    let star = LatticeMap::from_indices(l_prime.clone(), l.clone(), graph);
    assert_eq!(
        adjunction_witness(n, &star).expect("carriers match by construction"),
        None,
        "lower adjoint of a meet-preserving map must satisfy the adjunction law"
    );
    Some(star)
}

/// The upper adjoint of `f: L' -> L`, which exists exactly when `f`
/// preserves joins: `f*(a) = join of {a' : f(a') < a}`.
pub fn upper_adjoint(f: &LatticeMap) -> Option<LatticeMap> {
    if !f.preserves_joins() {
        return None;
    }
    let l_prime = f.source();
    let l = f.target();
    let graph: Vec<usize> = (0..l.len())
        .map(|i| {
            let mut acc = l_prime.bottom_idx();
            for j in 0..l_prime.len() {
                if l.leq_idx(f.apply_idx(j), i) {
                    acc = l_prime.join_idx(acc, j);
                }
            }
            acc
        })
        .collect();
    let star = LatticeMap::from_indices(l.clone(), l_prime.clone(), graph);
    assert_eq!(
        adjunction_witness(&star, f).expect("carriers match by construction"),
        None,
        "upper adjoint of a join-preserving map must satisfy the adjunction law"
    );
    Some(star)
}
