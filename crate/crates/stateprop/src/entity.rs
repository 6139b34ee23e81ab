//! The operational layer: state test entities and their compilation into
//! state property systems.
//!
//! An entity records which yes/no tests are certain in which states. Tests
//! compare by inclusion of their truesets, states by reverse inclusion of
//! their true-test sets; both are preorders. When the test set carries a
//! unit test, a zero test and a product test for every family, the quotient
//! of tests by trueset equality is a complete lattice and the entity
//! compiles to a state property system.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::error::StructuralError;
use crate::order::{bits, canonical_carrier, full_mask, ElementId, Lattice, Relation};
use crate::spsys::StatePropertySystem;

/// States, tests and the state-test function eta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateTestEntity {
    states: Vec<ElementId>,
    tests: Vec<ElementId>,
    /// `eta[i]` is the mask of tests true in state `i`.
    eta: Vec<u64>,
}

/// Transpose of eta: for each test, the set of states in which it is true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruesetIndex {
    map: BTreeMap<ElementId, BTreeSet<ElementId>>,
}

impl TruesetIndex {
    pub fn get(&self, test: &ElementId) -> Option<&BTreeSet<ElementId>> {
        self.map.get(test)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ElementId, &BTreeSet<ElementId>)> {
        self.map.iter()
    }
}

/// Why an entity fails to be a unital product entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntityViolation {
    /// No test is true in every state.
    NoUnitTest,
    /// No test is true in no state.
    NoZeroTest,
    /// The intersection of these two truesets is not the trueset of any
    /// test, so the pair has no product test.
    UnrealizedIntersection { first: ElementId, second: ElementId },
}

impl fmt::Display for EntityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntityViolation::NoUnitTest => write!(f, "no unit test"),
            EntityViolation::NoZeroTest => write!(f, "no zero test"),
            EntityViolation::UnrealizedIntersection { first, second } => {
                write!(f, "no test realizes the product of {first} and {second}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("entity is not a unital product entity: {}",
        .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotUnitalProduct(Vec<EntityViolation>),
}

/// Result of compiling an entity: the property system plus the quotient map
/// sending each test to the id of its equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledEntity {
    pub system: StatePropertySystem,
    pub class_of: BTreeMap<ElementId, ElementId>,
}

impl StateTestEntity {
    pub fn new(
        states: Vec<ElementId>,
        tests: Vec<ElementId>,
        eta: &BTreeMap<ElementId, BTreeSet<ElementId>>,
    ) -> Result<Self, StructuralError> {
        let states = canonical_carrier(states)?;
        let tests = if tests.is_empty() {
            tests
        } else {
            canonical_carrier(tests)?
        };
        for key in eta.keys() {
            if states.binary_search(key).is_err() {
                return Err(StructuralError::UnknownElement {
                    id: key.clone(),
                    context: "state test function domain".into(),
                });
            }
        }
        let mut masks = Vec::with_capacity(states.len());
        for p in &states {
            let trues = eta.get(p).ok_or_else(|| StructuralError::MissingEntry {
                id: p.clone(),
                context: "state test function".into(),
            })?;
            let mut mask = 0u64;
            for t in trues {
                let i = tests
                    .binary_search(t)
                    .map_err(|_| StructuralError::UnknownElement {
                        id: t.clone(),
                        context: "state test function image".into(),
                    })?;
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        Ok(StateTestEntity {
            states,
            tests,
            eta: masks,
        })
    }

    pub fn states(&self) -> &[ElementId] {
        &self.states
    }

    pub fn tests(&self) -> &[ElementId] {
        &self.tests
    }

    /// The set of tests true in state `p`.
    pub fn true_tests(&self, p: &ElementId) -> BTreeSet<ElementId> {
        let i = self.state_idx(p);
        bits(self.eta[i]).map(|k| self.tests[k].clone()).collect()
    }

    pub fn eta_map(&self) -> BTreeMap<ElementId, BTreeSet<ElementId>> {
        self.states
            .iter()
            .map(|p| (p.clone(), self.true_tests(p)))
            .collect()
    }

    /// The states in which `test` is true.
    pub fn trueset(&self, test: &ElementId) -> Result<BTreeSet<ElementId>, StructuralError> {
        let k = self.test_idx(test)?;
        let mask = self.trueset_mask(k);
        Ok(bits(mask).map(|i| self.states[i].clone()).collect())
    }

    pub fn trueset_index(&self) -> TruesetIndex {
        TruesetIndex {
            map: self
                .tests
                .iter()
                .map(|t| (t.clone(), self.trueset(t).unwrap()))
                .collect(),
        }
    }

    /// Test implication: alpha < beta iff beta is true whenever alpha is.
    pub fn test_implication(
        &self,
        alpha: &ElementId,
        beta: &ElementId,
    ) -> Result<bool, StructuralError> {
        let a = self.trueset_mask(self.test_idx(alpha)?);
        let b = self.trueset_mask(self.test_idx(beta)?);
        Ok(a & b == a)
    }

    /// State implication: p < q iff every test true in q is true in p.
    pub fn state_implication(&self, p: &ElementId, q: &ElementId) -> Result<bool, StructuralError> {
        let ep = self.eta[self.state_idx(p)];
        let eq = self.eta[self.state_idx(q)];
        Ok(ep & eq == eq)
    }

    /// The test implication as a relation; a preorder by construction.
    pub fn test_preorder(&self) -> Result<Relation, StructuralError> {
        let mut pairs = BTreeSet::new();
        for (i, a) in self.tests.iter().enumerate() {
            let ta = self.trueset_mask(i);
            for (j, b) in self.tests.iter().enumerate() {
                let tb = self.trueset_mask(j);
                if ta & tb == ta {
                    pairs.insert((a.clone(), b.clone()));
                }
            }
        }
        Relation::new(self.tests.clone(), pairs)
    }

    /// The state implication as a relation; a preorder by construction.
    pub fn state_preorder(&self) -> Relation {
        let mut pairs = BTreeSet::new();
        for (i, p) in self.states.iter().enumerate() {
            for (j, q) in self.states.iter().enumerate() {
                if self.eta[i] & self.eta[j] == self.eta[j] {
                    pairs.insert((p.clone(), q.clone()));
                }
            }
        }
        Relation::new(self.states.clone(), pairs).expect("states form a valid carrier")
    }

    /// Any test whose trueset is the intersection of the family's truesets
    /// (the whole state set for the empty family). Ties resolve to the
    /// lexicographically least test, so the answer is deterministic.
    pub fn find_product_test(
        &self,
        family: &BTreeSet<ElementId>,
    ) -> Result<Option<ElementId>, StructuralError> {
        let mut want = full_mask(self.states.len());
        for t in family {
            want &= self.trueset_mask(self.test_idx(t)?);
        }
        Ok(self.test_with_trueset(want))
    }

    /// Tests true in every state.
    pub fn unit_tests(&self) -> BTreeSet<ElementId> {
        let full = full_mask(self.states.len());
        self.tests_with(|m| m == full)
    }

    /// Tests true in no state.
    pub fn zero_tests(&self) -> BTreeSet<ElementId> {
        self.tests_with(|m| m == 0)
    }

    /// Empty report iff a unit test and a zero test exist and the trueset
    /// family is closed under pairwise intersection, which finitely covers
    /// every nonempty family; the empty family is covered by the unit test.
    pub fn unital_product_violations(&self) -> Vec<EntityViolation> {
        let mut out = Vec::new();
        if self.unit_tests().is_empty() {
            out.push(EntityViolation::NoUnitTest);
        }
        if self.zero_tests().is_empty() {
            out.push(EntityViolation::NoZeroTest);
        }
        'pairs: for i in 0..self.tests.len() {
            for j in i + 1..self.tests.len() {
                let inter = self.trueset_mask(i) & self.trueset_mask(j);
                if self.test_with_trueset(inter).is_none() {
                    out.push(EntityViolation::UnrealizedIntersection {
                        first: self.tests[i].clone(),
                        second: self.tests[j].clone(),
                    });
                    break 'pairs;
                }
            }
        }
        out
    }

    pub fn is_unital_product(&self) -> bool {
        self.unital_product_violations().is_empty()
    }

    /// Whether eta is injective.
    pub fn state_determination_witness(&self) -> Option<(ElementId, ElementId)> {
        for i in 0..self.states.len() {
            for j in i + 1..self.states.len() {
                if self.eta[i] == self.eta[j] {
                    return Some((self.states[i].clone(), self.states[j].clone()));
                }
            }
        }
        None
    }

    pub fn is_state_determined(&self) -> bool {
        self.state_determination_witness().is_none()
    }

    /// Quotients the tests by trueset equality, orders the classes by
    /// trueset inclusion and assembles the state property system. Each
    /// class is named after its lexicographically least member.
    pub fn compile(&self) -> Result<CompiledEntity, CompileError> {
        let violations = self.unital_product_violations();
        if !violations.is_empty() {
            return Err(CompileError::NotUnitalProduct(violations));
        }
        // Trueset -> representative (first hit wins; tests are sorted).
        let mut rep_of: BTreeMap<u64, usize> = BTreeMap::new();
        for k in 0..self.tests.len() {
            rep_of.entry(self.trueset_mask(k)).or_insert(k);
        }
        let class_of: BTreeMap<ElementId, ElementId> = (0..self.tests.len())
            .map(|k| {
                let rep = rep_of[&self.trueset_mask(k)];
                (self.tests[k].clone(), self.tests[rep].clone())
            })
            .collect();
        let reps: Vec<ElementId> = rep_of.values().map(|&k| self.tests[k].clone()).collect();
        let mut pairs = BTreeSet::new();
        for (&ta, &ka) in &rep_of {
            for (&tb, &kb) in &rep_of {
                if ta & tb == ta {
                    pairs.insert((self.tests[ka].clone(), self.tests[kb].clone()));
                }
            }
        }
        let rel = Relation::new(reps, pairs).expect("class representatives are distinct");
        let lattice = Lattice::validate(&rel)
            .expect("trueset quotient of a unital product entity is a complete lattice");
        let xi: BTreeMap<ElementId, BTreeSet<ElementId>> = self
            .states
            .iter()
            .map(|p| {
                let classes = self
                    .true_tests(p)
                    .iter()
                    .map(|t| class_of[t].clone())
                    .collect();
                (p.clone(), classes)
            })
            .collect();
        let system = StatePropertySystem::new(self.states.clone(), lattice, &xi)
            .expect("compiled carriers are structurally sound");
        debug_assert!(system.is_valid(), "compiled system must satisfy the laws");
        Ok(CompiledEntity { system, class_of })
    }

    fn tests_with(&self, pred: impl Fn(u64) -> bool) -> BTreeSet<ElementId> {
        (0..self.tests.len())
            .filter(|&k| pred(self.trueset_mask(k)))
            .map(|k| self.tests[k].clone())
            .collect()
    }

    fn test_with_trueset(&self, want: u64) -> Option<ElementId> {
        (0..self.tests.len())
            .find(|&k| self.trueset_mask(k) == want)
            .map(|k| self.tests[k].clone())
    }

    pub(crate) fn trueset_mask(&self, k: usize) -> u64 {
        let mut out = 0u64;
        for (i, &m) in self.eta.iter().enumerate() {
            if m & (1 << k) != 0 {
                out |= 1 << i;
            }
        }
        out
    }

    fn state_idx(&self, p: &ElementId) -> usize {
        match self.states.binary_search(p) {
            Ok(i) => i,
            Err(_) => panic!("state `{p}` is not in this entity"),
        }
    }

    fn test_idx(&self, t: &ElementId) -> Result<usize, StructuralError> {
        self.tests
            .binary_search(t)
            .map_err(|_| StructuralError::UnknownElement {
                id: t.clone(),
                context: "test lookup".into(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::id;

    fn set(items: &[&str]) -> BTreeSet<ElementId> {
        items.iter().map(|s| id(s)).collect()
    }

    /// States {p, q}; tests tau (always true), delta (never true),
    /// alpha (true only in p).
    fn e1() -> StateTestEntity {
        let eta: BTreeMap<_, _> =
            [(id("p"), set(&["tau", "alpha"])), (id("q"), set(&["tau"]))].into();
        StateTestEntity::new(
            vec![id("p"), id("q")],
            vec![id("tau"), id("delta"), id("alpha")],
            &eta,
        )
        .unwrap()
    }

    #[test]
    fn test_implication_examples() {
        let e = e1();
        assert!(e.test_implication(&id("alpha"), &id("alpha")).unwrap());
        assert!(e.test_implication(&id("alpha"), &id("tau")).unwrap());
        assert!(!e.test_implication(&id("tau"), &id("alpha")).unwrap());
        assert!(e.test_implication(&id("alpha"), &id("nope")).is_err());
    }

    #[test]
    fn state_implication_examples() {
        let e = e1();
        assert!(e.state_implication(&id("p"), &id("p")).unwrap());
        assert!(e.state_implication(&id("p"), &id("q")).unwrap());
        assert!(!e.state_implication(&id("q"), &id("p")).unwrap());
    }

    #[test]
    fn both_implications_are_preorders() {
        let e = e1();
        assert!(e.test_preorder().unwrap().is_preorder());
        assert!(e.state_preorder().is_preorder());
    }

    #[test]
    fn product_test_examples() {
        let e = e1();
        assert_eq!(
            e.find_product_test(&set(&["tau", "alpha"])).unwrap(),
            Some(id("alpha"))
        );
        assert_eq!(e.find_product_test(&set(&[])).unwrap(), Some(id("tau")));
        assert_eq!(
            e.find_product_test(&set(&["alpha", "delta"])).unwrap(),
            Some(id("delta"))
        );
    }

    #[test]
    fn product_test_is_an_infimum_up_to_equivalence() {
        let e = e1();
        let pre = e.test_preorder().unwrap();
        for family in [set(&["tau", "alpha"]), set(&["alpha", "delta"]), set(&[])] {
            let prod = e.find_product_test(&family).unwrap().unwrap();
            // A lower bound of the family...
            for t in &family {
                assert!(pre.related(&prod, t));
            }
            // ...above every other lower bound.
            for t in e.tests() {
                if family.iter().all(|f| pre.related(t, f)) {
                    assert!(pre.related(t, &prod));
                }
            }
        }
    }

    #[test]
    fn unit_and_zero_classification() {
        let e = e1();
        assert_eq!(e.unit_tests(), set(&["tau"]));
        assert_eq!(e.zero_tests(), set(&["delta"]));

        let eta: BTreeMap<_, _> = [(id("p"), set(&["b"])), (id("q"), set(&[]))].into();
        let no_unit = StateTestEntity::new(vec![id("p"), id("q")], vec![id("b")], &eta).unwrap();
        assert!(no_unit.unit_tests().is_empty());

        let eta: BTreeMap<_, _> = [(id("p"), set(&["b", "c"]))].into();
        let all_true = StateTestEntity::new(vec![id("p")], vec![id("b"), id("c")], &eta).unwrap();
        assert_eq!(all_true.unit_tests(), set(&["b", "c"]));
        assert!(all_true.zero_tests().is_empty());
    }

    #[test]
    fn unital_product_examples() {
        assert!(e1().is_unital_product());

        // Drop delta: the empty trueset is gone.
        let eta: BTreeMap<_, _> =
            [(id("p"), set(&["tau", "alpha"])), (id("q"), set(&["tau"]))].into();
        let no_zero =
            StateTestEntity::new(vec![id("p"), id("q")], vec![id("tau"), id("alpha")], &eta)
                .unwrap();
        assert_eq!(
            no_zero.unital_product_violations(),
            vec![EntityViolation::NoZeroTest]
        );

        // One always-true and one always-false test.
        let eta: BTreeMap<_, _> = [(id("p"), set(&["u"]))].into();
        let tiny = StateTestEntity::new(vec![id("p")], vec![id("u"), id("z")], &eta).unwrap();
        assert!(tiny.is_unital_product());
    }

    #[test]
    fn pairwise_unital_check_agrees_with_the_exponential_oracle() {
        // Oracle: every nonempty family of tests has a realized intersection.
        let entities = [e1(), {
            let eta: BTreeMap<_, _> = [
                (id("p"), set(&["t1", "t2"])),
                (id("q"), set(&["t2", "t3"])),
                (id("r"), set(&["t3"])),
            ]
            .into();
            StateTestEntity::new(
                vec![id("p"), id("q"), id("r")],
                vec![id("t1"), id("t2"), id("t3")],
                &eta,
            )
            .unwrap()
        }];
        for e in entities {
            let n = e.tests().len();
            let truesets: Vec<u64> = (0..n).map(|k| e.trueset_mask(k)).collect();
            let realized: BTreeSet<u64> = truesets.iter().copied().collect();
            let all_families_realized = (1..1u64 << n).all(|mask| {
                let inter =
                    bits(mask).fold(full_mask(e.states().len()), |acc, k| acc & truesets[k]);
                realized.contains(&inter)
            });
            let has_unit = !e.unit_tests().is_empty();
            let has_zero = !e.zero_tests().is_empty();
            assert_eq!(
                e.is_unital_product(),
                all_families_realized && has_unit && has_zero
            );
        }
    }

    #[test]
    fn compile_e1_gives_the_three_chain_system() {
        let compiled = e1().compile().unwrap();
        let s = &compiled.system;
        assert!(s.is_valid());
        // Classes: delta -> {}, alpha -> {p}, tau -> {p, q}, a chain.
        assert_eq!(s.lattice().len(), 3);
        assert_eq!(s.lattice().bottom(), &id("delta"));
        assert_eq!(s.lattice().top(), &id("tau"));
        assert!(s.lattice().leq(&id("delta"), &id("alpha")));
        assert!(s.lattice().leq(&id("alpha"), &id("tau")));
        assert_eq!(s.actual_properties(&id("p")), set(&["alpha", "tau"]));
        assert_eq!(s.actual_properties(&id("q")), set(&["tau"]));
        assert_eq!(compiled.class_of[&id("alpha")], id("alpha"));
    }

    #[test]
    fn equivalent_tests_share_a_class() {
        let eta: BTreeMap<_, _> = [
            (id("p"), set(&["tau", "alpha", "beta"])),
            (id("q"), set(&["tau"])),
        ]
        .into();
        let e = StateTestEntity::new(
            vec![id("p"), id("q")],
            vec![id("tau"), id("delta"), id("alpha"), id("beta")],
            &eta,
        )
        .unwrap();
        let compiled = e.compile().unwrap();
        // Four tests, three distinct truesets.
        assert_eq!(compiled.system.lattice().len(), 3);
        assert_eq!(compiled.class_of[&id("beta")], id("alpha"));
        assert_eq!(compiled.class_of[&id("alpha")], id("alpha"));
    }

    #[test]
    fn product_test_class_is_the_lattice_meet() {
        let e = e1();
        let compiled = e.compile().unwrap();
        let l = compiled.system.lattice();
        let tests: Vec<ElementId> = e.tests().to_vec();
        for a in &tests {
            for b in &tests {
                let family: BTreeSet<ElementId> = [a.clone(), b.clone()].into();
                let prod = e.find_product_test(&family).unwrap().unwrap();
                let expected = l.meet_pair(&compiled.class_of[a], &compiled.class_of[b]);
                assert_eq!(&compiled.class_of[&prod], expected);
            }
        }
    }

    #[test]
    fn suprema_exist_and_match_compiled_joins() {
        // The supremum of a family is the product of its common upper
        // bounds; compare with the compiled lattice's join.
        let e = e1();
        let compiled = e.compile().unwrap();
        let l = compiled.system.lattice();
        let pre = e.test_preorder().unwrap();
        for a in e.tests() {
            for b in e.tests() {
                let uppers: BTreeSet<ElementId> = e
                    .tests()
                    .iter()
                    .filter(|u| pre.related(a, u) && pre.related(b, u))
                    .cloned()
                    .collect();
                let sup = e.find_product_test(&uppers).unwrap().unwrap();
                let expected = l.join_pair(&compiled.class_of[a], &compiled.class_of[b]);
                assert_eq!(&compiled.class_of[&sup], expected);
            }
        }
    }

    #[test]
    fn state_determination_matches_eta_injectivity() {
        let e = e1();
        let compiled = e.compile().unwrap();
        assert_eq!(
            e.is_state_determined(),
            compiled.system.is_state_determined()
        );

        let eta: BTreeMap<_, _> = [(id("p"), set(&["tau"])), (id("q"), set(&["tau"]))].into();
        let dup = StateTestEntity::new(vec![id("p"), id("q")], vec![id("tau"), id("delta")], &eta)
            .unwrap();
        assert!(!dup.is_state_determined());
        let compiled = dup.compile().unwrap();
        assert!(!compiled.system.is_state_determined());
        assert_eq!(
            dup.state_determination_witness(),
            compiled.system.state_determination_witness()
        );
    }

    #[test]
    fn compile_refuses_non_unital_entities() {
        let eta: BTreeMap<_, _> = [(id("p"), set(&["b"])), (id("q"), set(&[]))].into();
        let e = StateTestEntity::new(vec![id("p"), id("q")], vec![id("b")], &eta).unwrap();
        let err = e.compile().unwrap_err();
        let CompileError::NotUnitalProduct(report) = err;
        assert!(report.contains(&EntityViolation::NoUnitTest));
        assert!(report.contains(&EntityViolation::NoZeroTest));
    }
}
