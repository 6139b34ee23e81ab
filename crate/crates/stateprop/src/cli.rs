//! The JSON-document command line.
//!
//! Every verb reads kind-tagged JSON documents, validates the payload
//! before computing, and writes one canonical JSON report or document to
//! standard output. Exit codes: 0 for success or a passing verdict, 1 for
//! a law or validation failure, 2 for structural or usage errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::closure::ClosureSpace;
use crate::document::{
    self, canonical_serialize, parse_document, Document, DocumentError, DomainError,
};
use crate::functors::laws::{law_harness, HarnessConfig};
use crate::functors::{self, cartan_space, filter_system, membership_system, state_base, unit};
use crate::galois::{lower_adjoint, upper_adjoint};
use crate::generator::{generate, GenKind, GeneratorConfig};
use crate::order::ElementId;
use crate::product::{mediating_morphism, sp_product, verify_universal_property, ProductError};
use crate::spsys::{SpMorphism, StatePropertySystem};

#[derive(Parser)]
#[command(
    name = "stateprop",
    about = "Finite state property systems, closure spaces and based complete lattices",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against its validator and report every violation.
    Validate { file: PathBuf },
    /// Convert between the three object presentations.
    Convert {
        #[arg(long, value_enum)]
        to: ConvertTarget,
        file: PathBuf,
    },
    /// The Cartan map of a system: one property or the full table.
    Cartan {
        file: PathBuf,
        #[arg(long)]
        property: Option<String>,
    },
    /// Test the T0 separation property of a closure space.
    T0 { file: PathBuf },
    /// Check a morphism document (sp_morphism, bcl_morphism or lattice_map).
    CheckMorphism { file: PathBuf },
    /// Compose two morphism documents (first, then second).
    Compose { first: PathBuf, second: PathBuf },
    /// Compute the lower or upper adjoint of a lattice map.
    Adjoint {
        #[arg(long)]
        lower: bool,
        #[arg(long)]
        upper: bool,
        file: PathBuf,
    },
    /// Operations on state test entities.
    Entity {
        #[command(subcommand)]
        command: EntityCommand,
    },
    /// The product of two systems, with its projections.
    Product { first: PathBuf, second: PathBuf },
    /// Exhaustively verify the product's universal property for a cone.
    VerifyUniversal {
        witness: PathBuf,
        f1: PathBuf,
        f2: PathBuf,
    },
    /// Assert the round-trip laws on one input document.
    Roundtrip { file: PathBuf },
    /// Generate a random document from a seed.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_states: usize,
        #[arg(long, default_value_t = 12)]
        max_properties: usize,
        #[arg(long, default_value_t = 8)]
        max_tests: usize,
    },
    /// Run the law harness over seeded random instances.
    Laws {
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_states: usize,
        #[arg(long = "max-props", default_value_t = 16)]
        max_properties: usize,
    },
}

#[derive(Subcommand)]
enum EntityCommand {
    /// Compile a unital product entity into a state property system.
    Compile { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertTarget {
    Cls,
    Sps,
    Bcl,
}

enum CliFailure {
    /// Structural or usage problem; exit 2.
    Structural(String),
    /// Law or validation failure with a report; exit 1.
    Validation(Value),
}

impl From<DocumentError> for CliFailure {
    fn from(e: DocumentError) -> Self {
        CliFailure::Structural(e.to_string())
    }
}

impl From<crate::error::StructuralError> for CliFailure {
    fn from(e: crate::error::StructuralError) -> Self {
        CliFailure::Structural(e.to_string())
    }
}

type CmdOutput = (Document, i32);
type CmdResult = Result<CmdOutput, CliFailure>;

/// Parses `argv` and runs one command; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (doc, code) = match execute(cli.command) {
        Ok(output) => output,
        Err(CliFailure::Structural(msg)) => (Document::Report(json!({ "error": msg })), 2),
        Err(CliFailure::Validation(report)) => (Document::Report(report), 1),
    };
    let mut bytes = canonical_serialize(&doc);
    bytes.push(b'\n');
    use std::io::Write;
    let _ = std::io::stdout().write_all(&bytes);
    code
}

fn load(path: &Path) -> Result<Document, CliFailure> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliFailure::Structural(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_document(&bytes)?)
}

fn domain_failure(e: DomainError) -> CliFailure {
    match e {
        DomainError::Structural(s) => CliFailure::Structural(s.to_string()),
        DomainError::InvalidLattice(violations) => CliFailure::Validation(json!({
            "valid": false,
            "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })),
    }
}

fn strings<T: std::fmt::Display>(items: &[T]) -> Vec<String> {
    items.iter().map(|v| v.to_string()).collect()
}

fn invalid(kind: &str, violations: Vec<String>) -> CliFailure {
    CliFailure::Validation(json!({
        "document_kind": kind,
        "valid": false,
        "violations": violations,
    }))
}

fn valid_sps(body: &document::SpsBody) -> Result<StatePropertySystem, CliFailure> {
    let s = document::sps_domain(body).map_err(domain_failure)?;
    let violations = s.violations();
    if violations.is_empty() {
        Ok(s)
    } else {
        Err(invalid("sps", strings(&violations)))
    }
}

fn valid_closure_space(body: &document::ClosureSpaceBody) -> Result<ClosureSpace, CliFailure> {
    let c = document::closure_space_domain(body)?;
    let violations = c.violations();
    if violations.is_empty() {
        Ok(c)
    } else {
        Err(invalid("closure_space", strings(&violations)))
    }
}

/// The membership construction turns each closed set into a property, so
/// the family must fit the carrier limit.
fn fits_as_lattice(c: &ClosureSpace) -> Result<(), CliFailure> {
    if c.set_count() > crate::error::MAX_CARRIER {
        return Err(CliFailure::Structural(format!(
            "the family has {} closed sets; at most {} can become properties",
            c.set_count(),
            crate::error::MAX_CARRIER
        )));
    }
    Ok(())
}

fn valid_bcl(body: &document::BclBody) -> Result<functors::BasedCompleteLattice, CliFailure> {
    let b = document::bcl_domain(body).map_err(domain_failure)?;
    let violations = b.violations();
    if violations.is_empty() {
        Ok(b)
    } else {
        Err(invalid("bcl", strings(&violations)))
    }
}

fn valid_sp_morphism(body: &document::SpMorphismBody) -> Result<SpMorphism, CliFailure> {
    let f = document::sp_morphism_domain(body).map_err(domain_failure)?;
    let mut violations = strings(&f.source().violations());
    violations.extend(strings(&f.target().violations()));
    violations.extend(strings(&f.violations()));
    if violations.is_empty() {
        Ok(f)
    } else {
        Err(invalid("sp_morphism", violations))
    }
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::Validate { file } => validate(&load(&file)?),
        Command::Convert { to, file } => convert(to, &load(&file)?),
        Command::Cartan { file, property } => cartan(&load(&file)?, property.as_deref()),
        Command::T0 { file } => t0(&load(&file)?),
        Command::CheckMorphism { file } => check_morphism(&load(&file)?),
        Command::Compose { first, second } => compose(&load(&first)?, &load(&second)?),
        Command::Adjoint { lower, upper, file } => adjoint(lower, upper, &load(&file)?),
        Command::Entity {
            command: EntityCommand::Compile { file },
        } => entity_compile(&load(&file)?),
        Command::Product { first, second } => product(&load(&first)?, &load(&second)?),
        Command::VerifyUniversal { witness, f1, f2 } => {
            verify_universal(&load(&witness)?, &load(&f1)?, &load(&f2)?)
        }
        Command::Roundtrip { file } => roundtrip(&load(&file)?),
        Command::Gen {
            kind,
            seed,
            max_states,
            max_properties,
            max_tests,
        } => gen(&kind, seed, max_states, max_properties, max_tests),
        Command::Laws {
            trials,
            seed,
            max_states,
            max_properties,
        } => {
            let mut config = HarnessConfig::new(trials, seed);
            config.max_states = max_states.clamp(1, 6);
            config.max_properties = max_properties.clamp(2, 20);
            let report = law_harness(&config);
            let code = i32::from(!report.all_passed());
            let value = serde_json::to_value(&report).expect("law reports serialize");
            Ok((Document::Report(value), code))
        }
    }
}

fn verdict(kind: &str, violations: Vec<String>) -> CmdOutput {
    let code = i32::from(!violations.is_empty());
    (
        Document::Report(json!({
            "document_kind": kind,
            "valid": violations.is_empty(),
            "violations": violations,
        })),
        code,
    )
}

fn validate(doc: &Document) -> CmdResult {
    let out = match doc {
        Document::Lattice(b) => {
            let rel = document::lattice_relation(b)?;
            verdict("lattice", strings(&rel.complete_lattice_violations()))
        }
        Document::ClosureSpace(b) => {
            let c = document::closure_space_domain(b)?;
            verdict("closure_space", strings(&c.violations()))
        }
        Document::Sps(b) => match document::sps_domain(b) {
            Ok(s) => verdict("sps", strings(&s.violations())),
            Err(DomainError::InvalidLattice(v)) => verdict("sps", strings(&v)),
            Err(DomainError::Structural(e)) => return Err(e.into()),
        },
        Document::SpMorphism(b) => match document::sp_morphism_domain(b) {
            Ok(f) => {
                let mut violations = strings(&f.source().violations());
                violations.extend(strings(&f.target().violations()));
                violations.extend(strings(&f.violations()));
                verdict("sp_morphism", violations)
            }
            Err(DomainError::InvalidLattice(v)) => verdict("sp_morphism", strings(&v)),
            Err(DomainError::Structural(e)) => return Err(e.into()),
        },
        Document::Entity(b) => {
            let e = document::entity_domain(b)?;
            let unital = e.unital_product_violations();
            (
                Document::Report(json!({
                    "document_kind": "entity",
                    "valid": true,
                    "violations": [],
                    "unital_product": unital.is_empty(),
                    "unital_product_violations": strings(&unital),
                })),
                0,
            )
        }
        Document::Bcl(b) => match document::bcl_domain(b) {
            Ok(bcl) => verdict("bcl", strings(&bcl.violations())),
            Err(DomainError::InvalidLattice(v)) => verdict("bcl", strings(&v)),
            Err(DomainError::Structural(e)) => return Err(e.into()),
        },
        Document::BclMorphism(b) => match document::bcl_morphism_domain(b) {
            Ok(f) => {
                let mut violations = strings(&f.source().violations());
                violations.extend(strings(&f.target().violations()));
                violations.extend(strings(&f.violations()));
                verdict("bcl_morphism", violations)
            }
            Err(DomainError::InvalidLattice(v)) => verdict("bcl_morphism", strings(&v)),
            Err(DomainError::Structural(e)) => return Err(e.into()),
        },
        Document::LatticeMap(b) => match document::lattice_map_domain(b) {
            Ok(m) => {
                let violations = if m.is_monotone() {
                    Vec::new()
                } else {
                    vec!["map is not monotone".to_owned()]
                };
                verdict("lattice_map", violations)
            }
            Err(DomainError::InvalidLattice(v)) => verdict("lattice_map", strings(&v)),
            Err(DomainError::Structural(e)) => return Err(e.into()),
        },
        Document::Witness(b) => {
            let w = document::witness_domain(b).map_err(domain_failure)?;
            let mut violations = strings(&w.product.violations());
            for p in &w.projections {
                violations.extend(strings(&p.violations()));
            }
            verdict("witness", violations)
        }
        Document::Report(_) => verdict("report", Vec::new()),
    };
    Ok(out)
}

fn convert(to: ConvertTarget, doc: &Document) -> CmdResult {
    let out = match (doc, to) {
        (Document::Sps(b), ConvertTarget::Cls) => {
            Document::ClosureSpace(document::closure_space_body(&cartan_space(&valid_sps(b)?)))
        }
        (Document::Sps(b), ConvertTarget::Bcl) => {
            Document::Bcl(document::bcl_body(&state_base(&valid_sps(b)?)))
        }
        (Document::Sps(b), ConvertTarget::Sps) => Document::Sps(b.clone()),
        (Document::ClosureSpace(b), ConvertTarget::Sps) => {
            let c = valid_closure_space(b)?;
            fits_as_lattice(&c)?;
            Document::Sps(document::sps_body(&membership_system(&c)))
        }
        (Document::ClosureSpace(b), ConvertTarget::Bcl) => {
            let c = valid_closure_space(b)?;
            fits_as_lattice(&c)?;
            Document::Bcl(document::bcl_body(&state_base(&membership_system(&c))))
        }
        (Document::ClosureSpace(b), ConvertTarget::Cls) => Document::ClosureSpace(b.clone()),
        (Document::Bcl(b), ConvertTarget::Sps) => {
            Document::Sps(document::sps_body(&filter_system(&valid_bcl(b)?)))
        }
        (Document::Bcl(b), ConvertTarget::Cls) => Document::ClosureSpace(
            document::closure_space_body(&cartan_space(&filter_system(&valid_bcl(b)?))),
        ),
        (Document::Bcl(b), ConvertTarget::Bcl) => Document::Bcl(b.clone()),
        _ => {
            return Err(CliFailure::Structural(format!(
                "cannot convert a {} document",
                doc.kind()
            )))
        }
    };
    Ok((out, 0))
}

fn cartan(doc: &Document, property: Option<&str>) -> CmdResult {
    let Document::Sps(body) = doc else {
        return Err(CliFailure::Structural(format!(
            "cartan expects an sps document, got {}",
            doc.kind()
        )));
    };
    let s = valid_sps(body)?;
    let table = |a: &ElementId| -> Result<Vec<String>, CliFailure> {
        let states = s.cartan(a)?;
        Ok(states.iter().map(|p| p.as_str().to_owned()).collect())
    };
    let value = match property {
        Some(p) => {
            let a = ElementId::new(p.to_owned())?;
            json!({ "property": p, "states": table(&a)? })
        }
        None => {
            let mut map = serde_json::Map::new();
            for a in s.lattice().elements() {
                map.insert(a.as_str().to_owned(), json!(table(a)?));
            }
            json!({ "cartan": map })
        }
    };
    Ok((Document::Report(value), 0))
}

fn t0(doc: &Document) -> CmdResult {
    let Document::ClosureSpace(body) = doc else {
        return Err(CliFailure::Structural(format!(
            "t0 expects a closure_space document, got {}",
            doc.kind()
        )));
    };
    let c = valid_closure_space(body)?;
    let out = match c.t0_witness() {
        None => (Document::Report(json!({ "t0": true })), 0),
        Some((p, q)) => (
            Document::Report(json!({
                "t0": false,
                "witness": [p.as_str(), q.as_str()],
            })),
            1,
        ),
    };
    Ok(out)
}

fn check_morphism(doc: &Document) -> CmdResult {
    match doc {
        Document::SpMorphism(_) | Document::BclMorphism(_) | Document::LatticeMap(_) => {
            validate(doc)
        }
        _ => Err(CliFailure::Structural(format!(
            "check-morphism expects a morphism document, got {}",
            doc.kind()
        ))),
    }
}

fn compose(first: &Document, second: &Document) -> CmdResult {
    let out = match (first, second) {
        (Document::SpMorphism(a), Document::SpMorphism(b)) => {
            let f = valid_sp_morphism(a)?;
            let g = valid_sp_morphism(b)?;
            Document::SpMorphism(document::sp_morphism_body(&f.then(&g)?))
        }
        (Document::BclMorphism(a), Document::BclMorphism(b)) => {
            let f = document::bcl_morphism_domain(a).map_err(domain_failure)?;
            let g = document::bcl_morphism_domain(b).map_err(domain_failure)?;
            Document::BclMorphism(document::bcl_morphism_body(&f.then(&g)?))
        }
        (Document::LatticeMap(a), Document::LatticeMap(b)) => {
            let f = document::lattice_map_domain(a).map_err(domain_failure)?;
            let g = document::lattice_map_domain(b).map_err(domain_failure)?;
            Document::LatticeMap(document::lattice_map_body(&f.then(&g)?))
        }
        _ => {
            return Err(CliFailure::Structural(format!(
                "compose expects two morphism documents of the same kind, got {} and {}",
                first.kind(),
                second.kind()
            )))
        }
    };
    Ok((out, 0))
}

fn adjoint(lower: bool, upper: bool, doc: &Document) -> CmdResult {
    if lower == upper {
        return Err(CliFailure::Structural(
            "pass exactly one of --lower and --upper".into(),
        ));
    }
    let Document::LatticeMap(body) = doc else {
        return Err(CliFailure::Structural(format!(
            "adjoint expects a lattice_map document, got {}",
            doc.kind()
        )));
    };
    let map = document::lattice_map_domain(body).map_err(domain_failure)?;
    let (result, witness) = if lower {
        (
            lower_adjoint(&map),
            map.meet_preservation_witness()
                .map(|s| s.iter().map(|x| x.as_str().to_owned()).collect::<Vec<_>>()),
        )
    } else {
        (
            upper_adjoint(&map),
            map.join_preservation_witness()
                .map(|s| s.iter().map(|x| x.as_str().to_owned()).collect::<Vec<_>>()),
        )
    };
    let out = match result {
        Some(adj) => (Document::LatticeMap(document::lattice_map_body(&adj)), 0),
        None => (
            Document::Report(json!({
                "exists": false,
                "witness_subset": witness,
                "reason": if lower {
                    "map does not preserve meets"
                } else {
                    "map does not preserve joins"
                },
            })),
            0,
        ),
    };
    Ok(out)
}

fn entity_compile(doc: &Document) -> CmdResult {
    let Document::Entity(body) = doc else {
        return Err(CliFailure::Structural(format!(
            "entity compile expects an entity document, got {}",
            doc.kind()
        )));
    };
    let entity = document::entity_domain(body)?;
    match entity.compile() {
        Ok(compiled) => {
            let sps_doc = Document::Sps(document::sps_body(&compiled.system));
            let quotient: serde_json::Map<String, Value> = compiled
                .class_of
                .iter()
                .map(|(t, c)| (t.as_str().to_owned(), json!(c.as_str())))
                .collect();
            Ok((
                Document::Report(json!({
                    "sps": serde_json::to_value(&sps_doc).expect("documents serialize"),
                    "quotient": quotient,
                })),
                0,
            ))
        }
        Err(crate::entity::CompileError::NotUnitalProduct(violations)) => {
            Err(CliFailure::Validation(json!({
                "compiled": false,
                "violations": strings(&violations),
            })))
        }
    }
}

fn product(first: &Document, second: &Document) -> CmdResult {
    let (Document::Sps(a), Document::Sps(b)) = (first, second) else {
        return Err(CliFailure::Structural(format!(
            "product expects two sps documents, got {} and {}",
            first.kind(),
            second.kind()
        )));
    };
    let witness = sp_product(&[valid_sps(a)?, valid_sps(b)?])?;
    Ok((Document::Witness(document::witness_body(&witness)), 0))
}

fn verify_universal(witness: &Document, f1: &Document, f2: &Document) -> CmdResult {
    let Document::Witness(w) = witness else {
        return Err(CliFailure::Structural(format!(
            "verify-universal expects a witness document, got {}",
            witness.kind()
        )));
    };
    let (Document::SpMorphism(a), Document::SpMorphism(b)) = (f1, f2) else {
        return Err(CliFailure::Structural(
            "verify-universal expects two sp_morphism cone documents".into(),
        ));
    };
    let w = document::witness_domain(w).map_err(domain_failure)?;
    let f1 = valid_sp_morphism(a)?;
    let f2 = valid_sp_morphism(b)?;
    let check = match verify_universal_property(&w, &f1, &f2) {
        Ok(check) => check,
        Err(e @ ProductError::TooLarge { .. }) => {
            return Err(CliFailure::Structural(e.to_string()))
        }
        Err(e) => return Err(CliFailure::Structural(e.to_string())),
    };
    let mediating =
        mediating_morphism(&w, &f1, &f2).map_err(|e| CliFailure::Structural(e.to_string()))?;
    let code = i32::from(!check.holds());
    Ok((
        Document::Report(json!({
            "survivors": check.survivors,
            "matches_mediating": check.matches_mediating,
            "holds": check.holds(),
            "mediating": serde_json::to_value(Document::SpMorphism(
                document::sp_morphism_body(&mediating),
            ))
            .expect("documents serialize"),
        })),
        code,
    ))
}

fn roundtrip(doc: &Document) -> CmdResult {
    use crate::functors::laws as checks;
    let mut results: Vec<(String, Result<(), String>)> = Vec::new();
    match doc {
        Document::ClosureSpace(b) => {
            let c = valid_closure_space(b)?;
            fits_as_lattice(&c)?;
            results.push((
                "closure round trip on objects".into(),
                checks::check_closure_round_trip(&c),
            ));
            results.push((
                "counit is an isomorphism".into(),
                checks::check_counit(&membership_system(&c)),
            ));
            results.push((
                "T0 matches state determination".into(),
                checks::check_t0_correspondence(&c),
            ));
        }
        Document::Sps(b) => {
            let s = valid_sps(b)?;
            results.push(("counit is an isomorphism".into(), checks::check_counit(&s)));
            results.push((
                "closure round trip on objects".into(),
                checks::check_closure_round_trip(&cartan_space(&s)),
            ));
            if s.is_state_determined() {
                results.push(("unit is an isomorphism".into(), checks::check_unit(&s)));
                results.push((
                    "based round trip on objects".into(),
                    checks::check_based_round_trip(&state_base(&s)),
                ));
            }
            results.push((
                "state determination battery agrees".into(),
                checks::check_battery(&s),
            ));
        }
        Document::Bcl(b) => {
            let bcl = valid_bcl(b)?;
            results.push((
                "based round trip on objects".into(),
                checks::check_based_round_trip(&bcl),
            ));
            let k = filter_system(&bcl);
            results.push(("unit is an isomorphism".into(), checks::check_unit(&k)));
            let eta = unit(&k).expect("filter systems are state determined");
            results.push((
                "unit of a filter system is identity-like".into(),
                if k.states().iter().all(|p| eta.apply_state(p) == p) {
                    Ok(())
                } else {
                    Err("unit moved a state of a filter system".into())
                },
            ));
        }
        _ => {
            return Err(CliFailure::Structural(format!(
                "roundtrip expects an object document (closure_space, sps or bcl), got {}",
                doc.kind()
            )))
        }
    }
    let all_passed = results.iter().all(|(_, r)| r.is_ok());
    let laws: Vec<Value> = results
        .into_iter()
        .map(|(law, r)| {
            json!({
                "law": law,
                "passed": r.is_ok(),
                "failure": r.err(),
            })
        })
        .collect();
    Ok((
        Document::Report(json!({ "all_passed": all_passed, "laws": laws })),
        i32::from(!all_passed),
    ))
}

fn gen(
    kind: &str,
    seed: u64,
    max_states: usize,
    max_properties: usize,
    max_tests: usize,
) -> CmdResult {
    let kind = match kind {
        "lattice" => GenKind::Lattice,
        "closure_space" => GenKind::ClosureSpace,
        "sps" => GenKind::Sps,
        "sp_morphism" => GenKind::SpMorphism,
        "entity" => GenKind::Entity,
        "bcl" => GenKind::Bcl,
        "bcl_morphism" => GenKind::BclMorphism,
        "lattice_map" => GenKind::LatticeMap,
        other => {
            return Err(CliFailure::Structural(format!(
                "unknown generator kind `{other}`"
            )))
        }
    };
    let config = GeneratorConfig {
        seed,
        kind,
        max_states: max_states.clamp(1, 6),
        max_properties: max_properties.clamp(2, 20),
        max_tests: max_tests.clamp(2, 10),
    };
    Ok((generate(&config), 0))
}
