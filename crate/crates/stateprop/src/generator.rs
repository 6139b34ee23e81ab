//! Seeded random and exhaustive instance generators.
//!
//! All randomness flows through ChaCha8 (a named, portable generator), so a
//! seed pins every generated instance across platforms and runs. Random
//! structures are built to be valid by construction: closure spaces come
//! from closing a random family, systems from the membership construction,
//! morphisms from continuous maps built by contracting points, based
//! lattices from strongest-property bases. Exhaustive enumerations of small
//! lattices and maps back the brute-force oracles.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closure::{ClosureSpace, PointMap};
use crate::document::{self, Document};
use crate::entity::StateTestEntity;
use crate::functors::{
    membership_system, membership_system_map, state_base, state_base_map, BasedCompleteLattice,
    BclMorphism,
};
use crate::order::{bits, full_mask, ElementId, Lattice, LatticeMap, Relation};
use crate::spsys::{SpMorphism, StatePropertySystem};

/// What to generate and how big it may get. Identical configs produce
/// identical output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub kind: GenKind,
    pub max_states: usize,
    pub max_properties: usize,
    pub max_tests: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Lattice,
    ClosureSpace,
    Sps,
    SpMorphism,
    Entity,
    Bcl,
    BclMorphism,
    LatticeMap,
}

impl GeneratorConfig {
    pub fn new(seed: u64, kind: GenKind) -> Self {
        GeneratorConfig {
            seed,
            kind,
            max_states: 5,
            max_properties: 12,
            max_tests: 8,
        }
    }
}

/// Generates one document of the configured kind. Output always passes the
/// corresponding validator.
pub fn generate(config: &GeneratorConfig) -> Document {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let states = config.max_states.max(1);
    let props = config.max_properties.max(2);
    let tests = config.max_tests.max(2);
    match config.kind {
        GenKind::Lattice => Document::Lattice(document::lattice_body(&gen_lattice(
            &mut rng, states, props,
        ))),
        GenKind::ClosureSpace => Document::ClosureSpace(document::closure_space_body(
            &gen_closure_space(&mut rng, states, props),
        )),
        GenKind::Sps => Document::Sps(document::sps_body(&gen_sps(&mut rng, states, props))),
        GenKind::SpMorphism => Document::SpMorphism(document::sp_morphism_body(&gen_sp_morphism(
            &mut rng, states, props,
        ))),
        GenKind::Entity => {
            Document::Entity(document::entity_body(&gen_entity(&mut rng, states, tests)))
        }
        GenKind::Bcl => Document::Bcl(document::bcl_body(&gen_bcl(&mut rng, states, props))),
        GenKind::BclMorphism => Document::BclMorphism(document::bcl_morphism_body(
            &gen_bcl_morphism(&mut rng, states, props),
        )),
        GenKind::LatticeMap => {
            let source = gen_lattice(&mut rng, states, props);
            let target = gen_lattice(&mut rng, states, props);
            let map = gen_monotone_map(&mut rng, &source, &target);
            Document::LatticeMap(document::lattice_map_body(&map))
        }
    }
}

fn numbered(prefix: &str, i: usize) -> ElementId {
    ElementId::new(format!("{prefix}{i}")).expect("nonempty")
}

/// A random closure space: a random generating family closed under
/// intersections plus the full and empty sets. Resamples until the family
/// fits `max_sets`, falling back to the indiscrete family.
pub fn gen_closure_space(rng: &mut impl Rng, max_points: usize, max_sets: usize) -> ClosureSpace {
    let n = rng.random_range(1..=max_points.max(1));
    let points: Vec<ElementId> = (0..n).map(|i| numbered("z", i)).collect();
    let full = full_mask(n);
    for _ in 0..32 {
        let generators = rng.random_range(0..=3usize);
        let family: Vec<_> = (0..generators)
            .map(|_| {
                let mask = rng.random::<u64>() & full;
                bits(mask).map(|i| points[i].clone()).collect()
            })
            .collect();
        let space = ClosureSpace::generated_by(points.clone(), family)
            .expect("generated points are distinct");
        if space.set_count() <= max_sets.max(2) {
            return space;
        }
    }
    ClosureSpace::generated_by(points, Vec::new()).expect("indiscrete family always fits")
}

/// The T0 quotient: points with equal singleton closures collapse onto one
/// representative. The returned map runs from the input space onto the
/// quotient, is continuous and surjective, and the quotient is T0.
pub fn kolmogorov_quotient(space: &ClosureSpace) -> PointMap {
    let n = space.points().len();
    let closures: Vec<u64> = (0..n).map(|i| space.closure_mask(1 << i)).collect();
    // Representative of each class: the first point with that closure.
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        match reps.iter().position(|&r| closures[r] == closures[i]) {
            Some(c) => class_of.push(c),
            None => {
                reps.push(i);
                class_of.push(reps.len() - 1);
            }
        }
    }
    let target_points: Vec<ElementId> = reps.iter().map(|&r| space.points()[r].clone()).collect();
    contraction_of(space, target_points, class_of)
}

/// Builds the target space induced by a surjective point assignment: a
/// target set is closed exactly when its preimage is closed.
fn contraction_of(
    source: &ClosureSpace,
    target_points: Vec<ElementId>,
    assignment: Vec<usize>,
) -> PointMap {
    let k = target_points.len();
    // Re-sort target points and re-index the assignment accordingly.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| target_points[a].cmp(&target_points[b]));
    let mut rank = vec![0usize; k];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        rank[old_idx] = new_idx;
    }
    let points: Vec<ElementId> = order
        .iter()
        .map(|&old_idx| target_points[old_idx].clone())
        .collect();
    let map: Vec<usize> = assignment.into_iter().map(|c| rank[c]).collect();
    let mut sets = std::collections::BTreeSet::new();
    for t in 0..=full_mask(k) {
        let mut pre = 0u64;
        for (i, &c) in map.iter().enumerate() {
            if t & (1 << c) != 0 {
                pre |= 1 << i;
            }
        }
        if source.contains_mask(pre) {
            sets.insert(t);
        }
    }
    let target = ClosureSpace::from_masks(points, sets);
    debug_assert!(target.is_valid());
    PointMap::from_indices(source.clone(), target, map)
}

/// A random surjective continuous map out of `source`, built by merging
/// points and carrying the finest compatible family on the image.
pub fn gen_contraction(rng: &mut impl Rng, source: &ClosureSpace) -> PointMap {
    let n = source.points().len();
    let k = rng.random_range(1..=n);
    // Surjective assignment: the first k points hit each class once.
    let mut assignment: Vec<usize> = (0..n)
        .map(|i| if i < k { i } else { rng.random_range(0..k) })
        .collect();
    // Shuffle which source points carry the forced classes.
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        assignment.swap(i, j);
    }
    // Renumber classes surjectively in order of first appearance.
    let mut seen: Vec<usize> = Vec::new();
    for class in &mut assignment {
        match seen.iter().position(|&s| s == *class) {
            Some(pos) => *class = pos,
            None => {
                seen.push(*class);
                *class = seen.len() - 1;
            }
        }
    }
    let target_points: Vec<ElementId> = (0..seen.len()).map(|i| numbered("w", i)).collect();
    contraction_of(source, target_points, assignment)
}

/// A random continuous map: an identity, a contraction, a constant map or
/// a composite of two contractions.
pub fn gen_continuous_map(rng: &mut impl Rng, max_points: usize, max_sets: usize) -> PointMap {
    let source = gen_closure_space(rng, max_points, max_sets);
    match rng.random_range(0..4u8) {
        0 => PointMap::identity(&source),
        1 => gen_contraction(rng, &source),
        2 => {
            let target = gen_closure_space(rng, max_points, max_sets);
            let hit = rng.random_range(0..target.points().len());
            let map = vec![hit; source.points().len()];
            PointMap::from_indices(source, target, map)
        }
        _ => {
            let first = gen_contraction(rng, &source);
            let second = gen_contraction(rng, first.target());
            first.then(&second).expect("shared middle space")
        }
    }
}

/// A composable pair of continuous maps.
pub fn gen_composable_continuous_maps(
    rng: &mut impl Rng,
    max_points: usize,
    max_sets: usize,
) -> (PointMap, PointMap) {
    let source = gen_closure_space(rng, max_points, max_sets);
    let first = gen_contraction(rng, &source);
    let second = gen_contraction(rng, first.target());
    (first, second)
}

/// A random system: the membership system of a random space, sometimes
/// with a duplicated state so that non-state-determined instances appear.
pub fn gen_sps(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> StatePropertySystem {
    let space = gen_closure_space(rng, max_states, max_properties);
    let s = membership_system(&space);
    if s.states().len() < max_states && rng.random_bool(0.5) {
        with_duplicated_state(rng, &s)
    } else {
        s
    }
}

/// Copies one state's actuality row under a fresh name. The result is
/// always a valid system and never state determined.
pub fn with_duplicated_state(rng: &mut impl Rng, s: &StatePropertySystem) -> StatePropertySystem {
    let original = &s.states()[rng.random_range(0..s.states().len())];
    let mut fresh = format!("{original}_d");
    while s.states().iter().any(|p| p.as_str() == fresh) {
        fresh.push('d');
    }
    let fresh = ElementId::new(fresh).expect("nonempty");
    let mut states = s.states().to_vec();
    states.push(fresh.clone());
    let mut xi = s.xi_map();
    xi.insert(fresh, s.actual_properties(original));
    let out = StatePropertySystem::new(states, s.lattice().clone(), &xi)
        .expect("duplicated carrier stays structurally sound");
    debug_assert!(!out.is_state_determined());
    out
}

/// A random state-determined system: the membership system of a T0 space.
pub fn gen_state_determined_sps(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> StatePropertySystem {
    let space = gen_closure_space(rng, max_states, max_properties);
    let quotient = kolmogorov_quotient(&space);
    let s = membership_system(quotient.target());
    debug_assert!(s.is_state_determined());
    s
}

/// A random system guaranteed to fail state determination, with a witness.
pub fn gen_non_state_determined_sps(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> StatePropertySystem {
    let space = gen_closure_space(rng, max_states.saturating_sub(1).max(1), max_properties);
    with_duplicated_state(rng, &membership_system(&space))
}

/// A random morphism: the membership image of a random continuous map.
pub fn gen_sp_morphism(rng: &mut impl Rng, max_states: usize, max_properties: usize) -> SpMorphism {
    membership_system_map(&gen_continuous_map(rng, max_states, max_properties))
}

/// A composable pair of morphisms.
pub fn gen_composable_sp_morphisms(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> (SpMorphism, SpMorphism) {
    let (f, g) = gen_composable_continuous_maps(rng, max_states, max_properties);
    (membership_system_map(&f), membership_system_map(&g))
}

/// A random morphism between state-determined systems: a continuous map
/// descends to the T0 quotients, and its membership image lands in the
/// state-determined fragment.
pub fn gen_sp0_morphism(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> SpMorphism {
    let c = gen_continuous_map(rng, max_states, max_properties);
    membership_system_map(&descend_to_quotients(&c))
}

/// A composable pair of morphisms between state-determined systems. The
/// quotient of the shared middle space is deterministic, so the descended
/// maps stay composable.
pub fn gen_composable_sp0_morphisms(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> (SpMorphism, SpMorphism) {
    let (f, g) = gen_composable_continuous_maps(rng, max_states, max_properties);
    (
        membership_system_map(&descend_to_quotients(&f)),
        membership_system_map(&descend_to_quotients(&g)),
    )
}

/// The map induced between the T0 quotients of source and target: points
/// with equal closures map to points with equal closures, so the
/// assignment of representatives is well defined and continuous.
fn descend_to_quotients(m: &PointMap) -> PointMap {
    let qs = kolmogorov_quotient(m.source());
    let qt = kolmogorov_quotient(m.target());
    let mut graph = BTreeMap::new();
    for p in m.source().points() {
        graph.insert(qs.apply(p).clone(), qt.apply(m.apply(p)).clone());
    }
    let induced = PointMap::new(qs.target().clone(), qt.target().clone(), &graph)
        .expect("representatives cover the quotient");
    debug_assert!(induced.is_continuous());
    induced
}

/// A random based complete lattice: the strongest-property base of a
/// random state-determined system.
pub fn gen_bcl(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> BasedCompleteLattice {
    state_base(&gen_state_determined_sps(rng, max_states, max_properties))
}

/// A random morphism of based complete lattices.
pub fn gen_bcl_morphism(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> BclMorphism {
    state_base_map(&gen_sp0_morphism(rng, max_states, max_properties))
}

/// A composable pair of based-lattice morphisms.
pub fn gen_composable_bcl_morphisms(
    rng: &mut impl Rng,
    max_states: usize,
    max_properties: usize,
) -> (BclMorphism, BclMorphism) {
    let (f, g) = gen_composable_sp0_morphisms(rng, max_states, max_properties);
    (state_base_map(&f), state_base_map(&g))
}

/// A random complete lattice: an intersection-closed family under
/// inclusion, relabeled onto plain element names.
pub fn gen_lattice(rng: &mut impl Rng, max_points: usize, max_size: usize) -> Lattice {
    let space = gen_closure_space(rng, max_points, max_size);
    let masks = space.set_masks();
    let elements: Vec<ElementId> = (0..masks.len()).map(|i| numbered("x", i)).collect();
    let mut pairs = Vec::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            if a & b == a {
                pairs.push((elements[i].clone(), elements[j].clone()));
            }
        }
    }
    Lattice::validate(&Relation::new(elements, pairs).expect("fresh names are distinct"))
        .expect("an intersection-closed family under inclusion is a complete lattice")
}

/// A uniform-ish random monotone map: images are chosen along a linear
/// extension of the source, each one above the join of the images already
/// forced below it.
pub fn gen_monotone_map(rng: &mut impl Rng, source: &Lattice, target: &Lattice) -> LatticeMap {
    let n = source.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Fewer elements below means earlier in the extension.
    order.sort_by_key(|&i| source.down_mask(i).count_ones());
    let mut graph = vec![usize::MAX; n];
    for &i in &order {
        let mut bound = target.bottom_idx();
        for j in bits(source.down_mask(i)) {
            if j != i {
                bound = target.join_idx(bound, graph[j]);
            }
        }
        let candidates: Vec<usize> = bits(target.up_mask(bound)).collect();
        graph[i] = candidates[rng.random_range(0..candidates.len())];
    }
    let map = LatticeMap::from_indices(source.clone(), target.clone(), graph);
    debug_assert!(map.is_monotone());
    map
}

/// A random unital product entity: truesets are drawn from an
/// intersection-closed family over the states, so unit, zero and all
/// product tests exist; when room remains, an equivalent duplicate test is
/// sometimes added to exercise the quotient.
pub fn gen_entity(rng: &mut impl Rng, max_states: usize, max_tests: usize) -> StateTestEntity {
    let n = rng.random_range(1..=max_states.max(1));
    let states: Vec<ElementId> = (0..n).map(|i| numbered("p", i)).collect();
    let space = loop {
        let candidate = gen_closure_space(rng, n, max_tests.max(2));
        if candidate.points().len() == n && candidate.set_count() <= max_tests.max(2) {
            break candidate;
        }
    };
    let mut truesets: Vec<u64> = space.set_masks().to_vec();
    if truesets.len() < max_tests && rng.random_bool(0.4) {
        let dup = truesets[rng.random_range(0..truesets.len())];
        truesets.push(dup);
    }
    let tests: Vec<ElementId> = (0..truesets.len()).map(|i| numbered("t", i)).collect();
    let eta: BTreeMap<_, _> = states
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let trues = truesets
                .iter()
                .enumerate()
                .filter(|(_, &m)| m & (1 << i) != 0)
                .map(|(k, _)| tests[k].clone())
                .collect();
            (p.clone(), trues)
        })
        .collect();
    let entity = StateTestEntity::new(states, tests, &eta).expect("fresh names are distinct");
    debug_assert!(entity.is_unital_product());
    entity
}

/// An isomorphism from `s` onto a freshly relabeled copy.
pub fn relabeled_iso(rng: &mut impl Rng, s: &StatePropertySystem) -> SpMorphism {
    let salt = rng.random_range(0..1_000_000u32);
    let rename =
        |prefix: &str, i: usize| ElementId::new(format!("{prefix}{salt}_{i}")).expect("nonempty");
    let state_names: BTreeMap<ElementId, ElementId> = s
        .states()
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), rename("r", i)))
        .collect();
    let prop_names: BTreeMap<ElementId, ElementId> = s
        .lattice()
        .elements()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), rename("y", i)))
        .collect();
    let rel = s.lattice().relation();
    let renamed_rel = Relation::new(
        rel.elements()
            .iter()
            .map(|a| prop_names[a].clone())
            .collect(),
        rel.pairs()
            .iter()
            .map(|(a, b)| (prop_names[a].clone(), prop_names[b].clone())),
    )
    .expect("renaming preserves distinctness");
    let lattice = Lattice::validate(&renamed_rel).expect("renaming preserves the order");
    let xi: BTreeMap<_, _> = s
        .states()
        .iter()
        .map(|p| {
            let props = s
                .actual_properties(p)
                .iter()
                .map(|a| prop_names[a].clone())
                .collect();
            (state_names[p].clone(), props)
        })
        .collect();
    let target = StatePropertySystem::new(state_names.values().cloned().collect(), lattice, &xi)
        .expect("renaming preserves structure");
    // n runs backward: from the renamed lattice to the original.
    let n: BTreeMap<_, _> = prop_names
        .iter()
        .map(|(a, y)| (y.clone(), a.clone()))
        .collect();
    let iso =
        SpMorphism::new(s.clone(), target, &state_names, &n).expect("renaming graphs are total");
    debug_assert!(iso.is_valid() && iso.is_isomorphism());
    iso
}

/// Every complete lattice on at most `max_size` canonically named
/// elements, by exhaustive enumeration of the candidate orders.
pub fn all_lattices(max_size: usize) -> Vec<Lattice> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        let elements: Vec<ElementId> = (0..n).map(|i| numbered("e", i)).collect();
        let off_diagonal: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        for choice in 0..(1u64 << off_diagonal.len()) {
            let mut pairs: Vec<(ElementId, ElementId)> = (0..n)
                .map(|i| (elements[i].clone(), elements[i].clone()))
                .collect();
            for (bit, &(i, j)) in off_diagonal.iter().enumerate() {
                if choice & (1 << bit) != 0 {
                    pairs.push((elements[i].clone(), elements[j].clone()));
                }
            }
            let rel = Relation::new(elements.clone(), pairs).expect("known elements");
            if let Ok(lattice) = Lattice::validate(&rel) {
                out.push(lattice);
            }
        }
    }
    out
}

/// Every total map between the two carriers.
pub fn all_total_maps(source: &Lattice, target: &Lattice) -> Vec<LatticeMap> {
    let n = source.len();
    let k = target.len();
    let total = (k as u128).pow(n as u32);
    (0..total)
        .map(|mut code| {
            let graph: Vec<usize> = (0..n)
                .map(|_| {
                    let j = (code % k as u128) as usize;
                    code /= k as u128;
                    j
                })
                .collect();
            LatticeMap::from_indices(source.clone(), target.clone(), graph)
        })
        .collect()
}

/// Every monotone map between the two carriers.
pub fn all_monotone_maps(source: &Lattice, target: &Lattice) -> Vec<LatticeMap> {
    all_total_maps(source, target)
        .into_iter()
        .filter(LatticeMap::is_monotone)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::canonical_serialize;

    #[test]
    fn identical_configs_produce_identical_bytes() {
        for kind in [
            GenKind::Lattice,
            GenKind::ClosureSpace,
            GenKind::Sps,
            GenKind::SpMorphism,
            GenKind::Entity,
            GenKind::Bcl,
            GenKind::BclMorphism,
            GenKind::LatticeMap,
        ] {
            let config = GeneratorConfig::new(1, kind);
            let a = canonical_serialize(&generate(&config));
            let b = canonical_serialize(&generate(&config));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn generated_structures_pass_their_validators() {
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert!(gen_closure_space(&mut rng, 5, 16).is_valid());
            assert!(gen_sps(&mut rng, 5, 16).is_valid());
            assert!(gen_sp_morphism(&mut rng, 4, 12).is_valid());
            assert!(gen_bcl(&mut rng, 4, 12).is_valid());
            assert!(gen_bcl_morphism(&mut rng, 4, 12).is_valid());
            assert!(gen_entity(&mut rng, 4, 8).is_unital_product());
            let l1 = gen_lattice(&mut rng, 3, 8);
            let l2 = gen_lattice(&mut rng, 3, 8);
            assert!(gen_monotone_map(&mut rng, &l1, &l2).is_monotone());
            assert!(gen_continuous_map(&mut rng, 4, 12).is_continuous());
        }
    }

    #[test]
    fn quotient_is_t0_and_the_projection_is_continuous() {
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let space = gen_closure_space(&mut rng, 5, 16);
            let q = kolmogorov_quotient(&space);
            assert!(q.target().is_t0());
            assert!(q.is_continuous());
            if space.is_t0() {
                assert_eq!(q.source(), q.target());
            }
        }
    }

    #[test]
    fn determined_and_undetermined_generators_deliver_what_they_promise() {
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert!(gen_state_determined_sps(&mut rng, 5, 16).is_state_determined());
            let dup = gen_non_state_determined_sps(&mut rng, 5, 16);
            assert!(dup.state_determination_witness().is_some());
            assert!(dup.is_valid());
        }
    }

    #[test]
    fn sp0_morphisms_connect_determined_systems() {
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = gen_sp0_morphism(&mut rng, 4, 12);
            assert!(f.is_valid());
            assert!(f.source().is_state_determined());
            assert!(f.target().is_state_determined());
        }
    }

    #[test]
    fn small_lattice_catalog_has_the_expected_counts() {
        // 1 singleton, 2 labeled two-chains, 6 labeled three-chains.
        assert_eq!(all_lattices(1).len(), 1);
        assert_eq!(all_lattices(2).len(), 3);
        assert_eq!(all_lattices(3).len(), 9);
    }

    #[test]
    fn composable_generators_share_their_middle() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (f, g) = gen_composable_sp_morphisms(&mut rng, 4, 12);
            assert!(f.then(&g).is_ok());
            let (f, g) = gen_composable_sp0_morphisms(&mut rng, 4, 12);
            assert!(f.then(&g).is_ok());
            let (f, g) = gen_composable_bcl_morphisms(&mut rng, 4, 12);
            assert!(f.then(&g).is_ok());
        }
    }
}
