//! JSON document formats and canonical serialization.
//!
//! Every structure has a kind-tagged wire form. Parsing checks structure
//! only (unknown ids, duplicates, missing map entries) and normalizes the
//! element order; the algebraic laws are the business of each module's
//! validator. Canonical serialization sorts keys, element lists and set
//! members, so equal structures produce identical bytes and the on-the-nose
//! round-trip laws are decidable by byte comparison.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closure::ClosureSpace;
use crate::entity::StateTestEntity;
use crate::error::StructuralError;
use crate::functors::{BasedCompleteLattice, BclMorphism};
use crate::order::{ElementId, Lattice, LatticeMap, OrderViolation, Relation};
use crate::product::ProductWitness;
use crate::spsys::{SpMorphism, StatePropertySystem};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Lattice(LatticeBody),
    ClosureSpace(ClosureSpaceBody),
    Sps(SpsBody),
    SpMorphism(SpMorphismBody),
    Entity(EntityBody),
    Bcl(BclBody),
    BclMorphism(BclMorphismBody),
    LatticeMap(LatticeMapBody),
    Witness(WitnessBody),
    Report(serde_json::Value),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBody {
    pub elements: Vec<String>,
    /// The full reflexive-transitive relation; non-closed input is rejected
    /// by the validator rather than repaired here.
    pub leq: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSpaceBody {
    pub points: Vec<String>,
    pub closed_sets: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpsBody {
    pub states: Vec<String>,
    pub lattice: LatticeBody,
    pub xi: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpMorphismBody {
    pub source: SpsBody,
    pub target: SpsBody,
    pub m: BTreeMap<String, String>,
    pub n: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityBody {
    pub states: Vec<String>,
    pub tests: Vec<String>,
    pub eta: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BclBody {
    pub lattice: LatticeBody,
    pub base: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BclMorphismBody {
    pub source: BclBody,
    pub target: BclBody,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMapBody {
    pub source: LatticeBody,
    pub target: LatticeBody,
    pub graph: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBody {
    pub product: SpsBody,
    /// Exactly two projections, onto the first and second factor.
    pub projections: Vec<SpMorphismBody>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("{0}")]
    Structural(#[from] StructuralError),
}

/// Conversion into a law-validated domain value can fail structurally or
/// because an embedded lattice does not satisfy the complete-lattice laws.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("{0}")]
    Structural(#[from] StructuralError),
    #[error("embedded order is not a complete lattice: {}",
        .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidLattice(Vec<OrderViolation>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::ClosureSpace(_) => "closure_space",
            Document::Sps(_) => "sps",
            Document::SpMorphism(_) => "sp_morphism",
            Document::Entity(_) => "entity",
            Document::Bcl(_) => "bcl",
            Document::BclMorphism(_) => "bcl_morphism",
            Document::LatticeMap(_) => "lattice_map",
            Document::Witness(_) => "witness",
            Document::Report(_) => "report",
        }
    }
}

/// Parses UTF-8 JSON into a structurally checked, normalized document.
pub fn parse_document(bytes: &[u8]) -> Result<Document, DocumentError> {
    let mut doc: Document =
        serde_json::from_slice(bytes).map_err(|e| DocumentError::Json(e.to_string()))?;
    structural_check(&doc)?;
    normalize(&mut doc);
    Ok(doc)
}

/// Deterministic bytes: object keys, element lists and set members all come
/// out sorted. Serializing, reparsing and serializing again is a fixed
/// point.
pub fn canonical_serialize(doc: &Document) -> Vec<u8> {
    let mut doc = doc.clone();
    normalize(&mut doc);
    let value = serde_json::to_value(&doc).expect("documents are plain data");
    serde_json::to_vec(&value).expect("serialization of a JSON value cannot fail")
}

fn normalize(doc: &mut Document) {
    fn lattice(b: &mut LatticeBody) {
        b.elements.sort();
        b.leq.sort();
        b.leq.dedup();
    }
    fn closure(b: &mut ClosureSpaceBody) {
        b.points.sort();
        for set in &mut b.closed_sets {
            set.sort();
        }
        b.closed_sets.sort();
    }
    fn sps(b: &mut SpsBody) {
        b.states.sort();
        lattice(&mut b.lattice);
        for props in b.xi.values_mut() {
            props.sort();
        }
    }
    fn bcl(b: &mut BclBody) {
        lattice(&mut b.lattice);
        b.base.sort();
    }
    fn entity(b: &mut EntityBody) {
        b.states.sort();
        b.tests.sort();
        for tests in b.eta.values_mut() {
            tests.sort();
        }
    }
    fn sp_morphism(b: &mut SpMorphismBody) {
        sps(&mut b.source);
        sps(&mut b.target);
    }
    match doc {
        Document::Lattice(b) => lattice(b),
        Document::ClosureSpace(b) => closure(b),
        Document::Sps(b) => sps(b),
        Document::SpMorphism(b) => sp_morphism(b),
        Document::Entity(b) => entity(b),
        Document::Bcl(b) => bcl(b),
        Document::BclMorphism(b) => {
            bcl(&mut b.source);
            bcl(&mut b.target);
        }
        Document::LatticeMap(b) => {
            lattice(&mut b.source);
            lattice(&mut b.target);
        }
        Document::Witness(b) => {
            sps(&mut b.product);
            for p in &mut b.projections {
                sp_morphism(p);
            }
        }
        Document::Report(_) => {}
    }
}

// --- structural checks on the wire form ---------------------------------
//
// These run at parse time and deliberately do not require embedded lattices
// to satisfy any law, so that `validate` can still load and report on
// law-breaking documents.

fn check_ids<'a>(items: &'a [String], what: &str) -> Result<BTreeSet<&'a str>, StructuralError> {
    let mut seen = BTreeSet::new();
    for item in items {
        ElementId::new(item.clone())?;
        if !seen.insert(item.as_str()) {
            return Err(StructuralError::DuplicateElement(
                ElementId::new(item.clone()).expect("nonempty checked"),
            ));
        }
    }
    if seen.is_empty() && what != "tests" {
        return Err(StructuralError::EmptyCarrier);
    }
    Ok(seen)
}

fn check_member(
    item: &str,
    carrier: &BTreeSet<&str>,
    context: &str,
) -> Result<(), StructuralError> {
    if !carrier.contains(item) {
        return Err(StructuralError::UnknownElement {
            id: ElementId::new(item.to_owned())
                .unwrap_or_else(|_| ElementId::new("<empty>").expect("placeholder id")),
            context: context.into(),
        });
    }
    Ok(())
}

fn check_total_map(
    map: &BTreeMap<String, String>,
    domain: &BTreeSet<&str>,
    codomain: &BTreeSet<&str>,
    context: &str,
) -> Result<(), StructuralError> {
    for x in domain {
        let y = map.get(*x).ok_or_else(|| StructuralError::MissingEntry {
            id: ElementId::new((*x).to_owned()).expect("carrier ids are nonempty"),
            context: context.into(),
        })?;
        check_member(y, codomain, &format!("{context} image"))?;
    }
    for key in map.keys() {
        check_member(key, domain, &format!("{context} domain"))?;
    }
    Ok(())
}

fn lattice_check(b: &LatticeBody) -> Result<(), StructuralError> {
    let carrier = check_ids(&b.elements, "elements")?;
    for (x, y) in &b.leq {
        check_member(x, &carrier, "leq pair")?;
        check_member(y, &carrier, "leq pair")?;
    }
    Ok(())
}

fn closure_check(b: &ClosureSpaceBody) -> Result<(), StructuralError> {
    let carrier = check_ids(&b.points, "points")?;
    let mut seen = BTreeSet::new();
    for set in &b.closed_sets {
        let mut members = BTreeSet::new();
        for p in set {
            check_member(p, &carrier, "closed set")?;
            if !members.insert(p.as_str()) {
                return Err(StructuralError::DuplicateElement(
                    ElementId::new(p.clone()).expect("nonempty checked"),
                ));
            }
        }
        if !seen.insert(members.clone()) {
            return Err(StructuralError::DuplicateElement(
                crate::closure::encode_set_id(
                    &set.iter()
                        .map(|p| ElementId::new(p.clone()).expect("nonempty checked"))
                        .collect(),
                ),
            ));
        }
    }
    Ok(())
}

fn sps_check(b: &SpsBody) -> Result<(), StructuralError> {
    lattice_check(&b.lattice)?;
    let states = check_ids(&b.states, "states")?;
    let props: BTreeSet<&str> = b.lattice.elements.iter().map(|s| s.as_str()).collect();
    for p in &states {
        let actual = b.xi.get(*p).ok_or_else(|| StructuralError::MissingEntry {
            id: ElementId::new((*p).to_owned()).expect("carrier ids are nonempty"),
            context: "actuality map".into(),
        })?;
        for a in actual {
            check_member(a, &props, "actuality map")?;
        }
    }
    for key in b.xi.keys() {
        check_member(key, &states, "actuality map domain")?;
    }
    Ok(())
}

fn sp_morphism_check(b: &SpMorphismBody) -> Result<(), StructuralError> {
    sps_check(&b.source)?;
    sps_check(&b.target)?;
    let src_states: BTreeSet<&str> = b.source.states.iter().map(|s| s.as_str()).collect();
    let tgt_states: BTreeSet<&str> = b.target.states.iter().map(|s| s.as_str()).collect();
    check_total_map(&b.m, &src_states, &tgt_states, "state map")?;
    let src_props: BTreeSet<&str> = b
        .source
        .lattice
        .elements
        .iter()
        .map(|s| s.as_str())
        .collect();
    let tgt_props: BTreeSet<&str> = b
        .target
        .lattice
        .elements
        .iter()
        .map(|s| s.as_str())
        .collect();
    if check_total_map(&b.n, &tgt_props, &src_props, "property map").is_err()
        && src_props != tgt_props
        && check_total_map(&b.n, &src_props, &tgt_props, "property map").is_ok()
    {
        return Err(StructuralError::PropertyMapReversed);
    }
    check_total_map(&b.n, &tgt_props, &src_props, "property map")
}

fn entity_check(b: &EntityBody) -> Result<(), StructuralError> {
    let states = check_ids(&b.states, "states")?;
    let tests = check_ids(&b.tests, "tests")?;
    for p in &states {
        let trues = b.eta.get(*p).ok_or_else(|| StructuralError::MissingEntry {
            id: ElementId::new((*p).to_owned()).expect("carrier ids are nonempty"),
            context: "state test function".into(),
        })?;
        for t in trues {
            check_member(t, &tests, "state test function")?;
        }
    }
    for key in b.eta.keys() {
        check_member(key, &states, "state test function domain")?;
    }
    Ok(())
}

fn bcl_check(b: &BclBody) -> Result<(), StructuralError> {
    lattice_check(&b.lattice)?;
    let carrier: BTreeSet<&str> = b.lattice.elements.iter().map(|s| s.as_str()).collect();
    check_ids(&b.base, "base")?;
    for x in &b.base {
        check_member(x, &carrier, "base")?;
    }
    Ok(())
}

fn structural_check(doc: &Document) -> Result<(), StructuralError> {
    match doc {
        Document::Lattice(b) => lattice_check(b),
        Document::ClosureSpace(b) => closure_check(b),
        Document::Sps(b) => sps_check(b),
        Document::SpMorphism(b) => sp_morphism_check(b),
        Document::Entity(b) => entity_check(b),
        Document::Bcl(b) => bcl_check(b),
        Document::BclMorphism(b) => {
            bcl_check(&b.source)?;
            bcl_check(&b.target)?;
            let src: BTreeSet<&str> = b
                .source
                .lattice
                .elements
                .iter()
                .map(|s| s.as_str())
                .collect();
            let tgt: BTreeSet<&str> = b
                .target
                .lattice
                .elements
                .iter()
                .map(|s| s.as_str())
                .collect();
            check_total_map(&b.map, &src, &tgt, "lattice map")
        }
        Document::LatticeMap(b) => {
            lattice_check(&b.source)?;
            lattice_check(&b.target)?;
            let src: BTreeSet<&str> = b.source.elements.iter().map(|s| s.as_str()).collect();
            let tgt: BTreeSet<&str> = b.target.elements.iter().map(|s| s.as_str()).collect();
            check_total_map(&b.graph, &src, &tgt, "lattice map")
        }
        Document::Witness(b) => {
            sps_check(&b.product)?;
            if b.projections.len() != 2 {
                return Err(StructuralError::EndpointMismatch(format!(
                    "a product witness carries exactly two projections, got {}",
                    b.projections.len()
                )));
            }
            for p in &b.projections {
                sp_morphism_check(p)?;
            }
            Ok(())
        }
        Document::Report(_) => Ok(()),
    }
}

// --- wire to domain -------------------------------------------------------

fn ids(items: &[String]) -> Result<Vec<ElementId>, StructuralError> {
    items.iter().cloned().map(ElementId::new).collect()
}

fn id_set(items: &[String]) -> Result<BTreeSet<ElementId>, StructuralError> {
    items.iter().cloned().map(ElementId::new).collect()
}

fn id_map(
    map: &BTreeMap<String, String>,
) -> Result<BTreeMap<ElementId, ElementId>, StructuralError> {
    map.iter()
        .map(|(k, v)| Ok((ElementId::new(k.clone())?, ElementId::new(v.clone())?)))
        .collect()
}

pub fn lattice_relation(b: &LatticeBody) -> Result<Relation, StructuralError> {
    let mut pairs = Vec::with_capacity(b.leq.len());
    for (x, y) in &b.leq {
        pairs.push((ElementId::new(x.clone())?, ElementId::new(y.clone())?));
    }
    Relation::new(ids(&b.elements)?, pairs)
}

pub fn lattice_domain(b: &LatticeBody) -> Result<Lattice, DomainError> {
    let rel = lattice_relation(b)?;
    Lattice::validate(&rel).map_err(DomainError::InvalidLattice)
}

pub fn closure_space_domain(b: &ClosureSpaceBody) -> Result<ClosureSpace, StructuralError> {
    let sets = b
        .closed_sets
        .iter()
        .map(|s| id_set(s))
        .collect::<Result<Vec<_>, _>>()?;
    ClosureSpace::new(ids(&b.points)?, sets)
}

pub fn sps_domain(b: &SpsBody) -> Result<StatePropertySystem, DomainError> {
    let lattice = lattice_domain(&b.lattice)?;
    let xi =
        b.xi.iter()
            .map(|(k, v)| Ok((ElementId::new(k.clone())?, id_set(v)?)))
            .collect::<Result<BTreeMap<_, _>, StructuralError>>()?;
    Ok(StatePropertySystem::new(ids(&b.states)?, lattice, &xi)?)
}

pub fn sp_morphism_domain(b: &SpMorphismBody) -> Result<SpMorphism, DomainError> {
    let source = sps_domain(&b.source)?;
    let target = sps_domain(&b.target)?;
    Ok(SpMorphism::new(
        source,
        target,
        &id_map(&b.m)?,
        &id_map(&b.n)?,
    )?)
}

pub fn entity_domain(b: &EntityBody) -> Result<StateTestEntity, StructuralError> {
    let eta = b
        .eta
        .iter()
        .map(|(k, v)| Ok((ElementId::new(k.clone())?, id_set(v)?)))
        .collect::<Result<BTreeMap<_, _>, StructuralError>>()?;
    StateTestEntity::new(ids(&b.states)?, ids(&b.tests)?, &eta)
}

pub fn bcl_domain(b: &BclBody) -> Result<BasedCompleteLattice, DomainError> {
    let lattice = lattice_domain(&b.lattice)?;
    Ok(BasedCompleteLattice::new(lattice, &id_set(&b.base)?)?)
}

pub fn bcl_morphism_domain(b: &BclMorphismBody) -> Result<BclMorphism, DomainError> {
    let source = bcl_domain(&b.source)?;
    let target = bcl_domain(&b.target)?;
    Ok(BclMorphism::new(source, target, &id_map(&b.map)?)?)
}

pub fn lattice_map_domain(b: &LatticeMapBody) -> Result<LatticeMap, DomainError> {
    let source = lattice_domain(&b.source)?;
    let target = lattice_domain(&b.target)?;
    Ok(LatticeMap::new(source, target, &id_map(&b.graph)?)?)
}

pub fn witness_domain(b: &WitnessBody) -> Result<ProductWitness, DomainError> {
    let product = sps_domain(&b.product)?;
    if b.projections.len() != 2 {
        return Err(StructuralError::EndpointMismatch(
            "a product witness carries exactly two projections".into(),
        )
        .into());
    }
    let first = sp_morphism_domain(&b.projections[0])?;
    let second = sp_morphism_domain(&b.projections[1])?;
    for proj in [&first, &second] {
        if proj.source() != &product {
            return Err(StructuralError::EndpointMismatch(
                "projection source must be the product system".into(),
            )
            .into());
        }
    }
    let factors = [first.target().clone(), second.target().clone()];
    Ok(ProductWitness {
        product,
        projections: [first, second],
        factors,
    })
}

// --- domain to wire -------------------------------------------------------

fn strings<'a>(items: impl IntoIterator<Item = &'a ElementId>) -> Vec<String> {
    items.into_iter().map(|x| x.as_str().to_owned()).collect()
}

fn string_map(map: &BTreeMap<ElementId, ElementId>) -> BTreeMap<String, String> {
    map.iter()
        .map(|(k, v)| (k.as_str().to_owned(), v.as_str().to_owned()))
        .collect()
}

pub fn lattice_body(l: &Lattice) -> LatticeBody {
    let rel = l.relation();
    LatticeBody {
        elements: strings(rel.elements()),
        leq: rel
            .pairs()
            .iter()
            .map(|(x, y)| (x.as_str().to_owned(), y.as_str().to_owned()))
            .collect(),
    }
}

pub fn closure_space_body(c: &ClosureSpace) -> ClosureSpaceBody {
    let mut closed_sets: Vec<Vec<String>> = c.closed_sets().iter().map(strings).collect();
    closed_sets.sort();
    ClosureSpaceBody {
        points: strings(c.points()),
        closed_sets,
    }
}

pub fn sps_body(s: &StatePropertySystem) -> SpsBody {
    SpsBody {
        states: strings(s.states()),
        lattice: lattice_body(s.lattice()),
        xi: s
            .xi_map()
            .iter()
            .map(|(p, props)| (p.as_str().to_owned(), strings(props)))
            .collect(),
    }
}

pub fn sp_morphism_body(f: &SpMorphism) -> SpMorphismBody {
    SpMorphismBody {
        source: sps_body(f.source()),
        target: sps_body(f.target()),
        m: string_map(&f.state_graph()),
        n: string_map(&f.property_graph()),
    }
}

pub fn entity_body(e: &StateTestEntity) -> EntityBody {
    EntityBody {
        states: strings(e.states()),
        tests: strings(e.tests()),
        eta: e
            .eta_map()
            .iter()
            .map(|(p, tests)| (p.as_str().to_owned(), strings(tests)))
            .collect(),
    }
}

pub fn bcl_body(b: &BasedCompleteLattice) -> BclBody {
    BclBody {
        lattice: lattice_body(b.lattice()),
        base: strings(&b.base()),
    }
}

pub fn bcl_morphism_body(f: &BclMorphism) -> BclMorphismBody {
    BclMorphismBody {
        source: bcl_body(f.source()),
        target: bcl_body(f.target()),
        map: string_map(&f.graph()),
    }
}

pub fn lattice_map_body(m: &LatticeMap) -> LatticeMapBody {
    LatticeMapBody {
        source: lattice_body(m.source()),
        target: lattice_body(m.target()),
        graph: string_map(&m.graph()),
    }
}

pub fn witness_body(w: &ProductWitness) -> WitnessBody {
    WitnessBody {
        product: sps_body(&w.product),
        projections: w.projections.iter().map(sp_morphism_body).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::s2;

    fn s2_json() -> String {
        r#"{
            "kind": "sps",
            "states": ["q", "p"],
            "lattice": {
                "elements": ["I", "a", "0"],
                "leq": [["0","0"],["a","a"],["I","I"],["0","a"],["a","I"],["0","I"]]
            },
            "xi": {"p": ["I", "a"], "q": ["I"]}
        }"#
        .to_owned()
    }

    #[test]
    fn parse_serialize_round_trip_is_idempotent() {
        let doc = parse_document(s2_json().as_bytes()).unwrap();
        let once = canonical_serialize(&doc);
        let reparsed = parse_document(&once).unwrap();
        assert_eq!(canonical_serialize(&reparsed), once);
        assert_eq!(reparsed, doc);
    }

    #[test]
    fn parsed_sps_matches_the_domain_fixture() {
        let doc = parse_document(s2_json().as_bytes()).unwrap();
        let Document::Sps(body) = &doc else {
            panic!("expected an sps document")
        };
        assert_eq!(sps_domain(body).unwrap(), s2());
    }

    #[test]
    fn permuted_but_equal_documents_serialize_identically() {
        let a = r#"{"kind":"closure_space","points":["y","x"],"closed_sets":[["x","y"],[],["x"]]}"#;
        let b = r#"{"kind":"closure_space","points":["x","y"],"closed_sets":[[],["x"],["y","x"]]}"#;
        let da = parse_document(a.as_bytes()).unwrap();
        let db = parse_document(b.as_bytes()).unwrap();
        assert_eq!(canonical_serialize(&da), canonical_serialize(&db));
    }

    #[test]
    fn unknown_kind_is_a_parse_error() {
        let err = parse_document(br#"{"kind":"nope"}"#).unwrap_err();
        assert!(matches!(err, DocumentError::Json(_)));
    }

    #[test]
    fn xi_referencing_an_unknown_property_is_a_shape_error() {
        let bad = r#"{
            "kind": "sps",
            "states": ["p"],
            "lattice": {"elements": ["0","I"], "leq": [["0","0"],["I","I"],["0","I"]]},
            "xi": {"p": ["ghost"]}
        }"#;
        let err = parse_document(bad.as_bytes()).unwrap_err();
        let DocumentError::Structural(StructuralError::UnknownElement { id, .. }) = err else {
            panic!("expected a structural error, got {err:?}")
        };
        assert_eq!(id.as_str(), "ghost");
    }

    #[test]
    fn duplicate_element_is_a_shape_error() {
        let bad = r#"{"kind":"lattice","elements":["a","a"],"leq":[["a","a"]]}"#;
        let err = parse_document(bad.as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            DocumentError::Structural(StructuralError::DuplicateElement(_))
        ));
    }

    #[test]
    fn law_breaking_lattice_still_parses() {
        // Structure is fine; the order is not transitively closed. The
        // parser accepts it, the validator rejects it.
        let doc = parse_document(
            br#"{"kind":"lattice","elements":["a","b","c"],
                 "leq":[["a","a"],["b","b"],["c","c"],["a","b"],["b","c"]]}"#,
        )
        .unwrap();
        let Document::Lattice(body) = &doc else {
            panic!()
        };
        assert!(matches!(
            lattice_domain(body),
            Err(DomainError::InvalidLattice(_))
        ));
    }

    #[test]
    fn domain_round_trip_through_the_wire_form() {
        let s = s2();
        let body = sps_body(&s);
        assert_eq!(sps_domain(&body).unwrap(), s);
    }
}
