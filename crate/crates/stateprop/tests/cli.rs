//! End-to-end runs of the command-line binary: exit codes, JSON reports
//! and the round-trip laws in wire form.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_stateprop")
}

fn run(args: &[&str]) -> (i32, Value) {
    let output = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    let code = output.status.code().expect("no signal");
    let stdout = String::from_utf8(output.stdout).expect("utf-8 output");
    let value = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).unwrap_or_else(|e| {
            panic!("non-JSON output ({e}): {stdout}");
        })
    };
    (code, value)
}

fn run_raw(args: &[&str]) -> (i32, String) {
    let output = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).expect("utf-8 output"),
    )
}

struct Fixtures {
    dir: tempfile::TempDir,
}

impl Fixtures {
    fn new() -> Self {
        Fixtures {
            dir: tempfile::tempdir().expect("tempdir"),
        }
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).expect("write fixture");
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn s2_json() -> &'static str {
    r#"{"kind":"sps","states":["p","q"],
        "lattice":{"elements":["0","a","I"],
                   "leq":[["0","0"],["a","a"],["I","I"],["0","a"],["a","I"],["0","I"]]},
        "xi":{"p":["a","I"],"q":["I"]}}"#
}

fn sierpinski_json() -> &'static str {
    r#"{"kind":"closure_space","points":["x","y"],"closed_sets":[[],["x"],["x","y"]]}"#
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn validate_accepts_a_valid_system() {
    let fx = Fixtures::new();
    let file = fx.write("s2.json", s2_json());
    let (code, report) = run(&["validate", path_str(&file)]);
    assert_eq!(code, 0, "report: {report}");
    assert_eq!(report["valid"], Value::Bool(true));
}

#[test]
fn validate_rejects_a_non_closed_order_with_exit_one() {
    let fx = Fixtures::new();
    let file = fx.write(
        "bad.json",
        r#"{"kind":"lattice","elements":["a","b","c"],
            "leq":[["a","a"],["b","b"],["c","c"],["a","b"],["b","c"]]}"#,
    );
    let (code, report) = run(&["validate", path_str(&file)]);
    assert_eq!(code, 1);
    assert_eq!(report["valid"], Value::Bool(false));
    let violations = report["violations"].as_array().unwrap();
    assert!(violations
        .iter()
        .any(|v| v.as_str().unwrap().contains("transitivity")));
}

#[test]
fn unknown_kind_is_a_structural_error_with_exit_two() {
    let fx = Fixtures::new();
    let file = fx.write("nope.json", r#"{"kind":"nope"}"#);
    let (code, report) = run(&["validate", path_str(&file)]);
    assert_eq!(code, 2);
    assert!(report["error"].as_str().unwrap().contains("nope"));
}

#[test]
fn missing_file_is_a_structural_error() {
    let fx = Fixtures::new();
    let (code, _) = run(&["validate", path_str(&fx.path("absent.json"))]);
    assert_eq!(code, 2);
}

#[test]
fn usage_error_exits_two() {
    let fx = Fixtures::new();
    let file = fx.write("s2.json", s2_json());
    let (code, _) = run_raw(&["adjoint", path_str(&file)]);
    assert_eq!(code, 2);
}

#[test]
fn roundtrip_on_sierpinski_passes_all_laws() {
    let fx = Fixtures::new();
    let file = fx.write("sierpinski.json", sierpinski_json());
    let (code, report) = run(&["roundtrip", path_str(&file)]);
    assert_eq!(code, 0, "report: {report}");
    assert_eq!(report["all_passed"], Value::Bool(true));
}

#[test]
fn laws_run_passes_with_full_counts() {
    let (code, report) = run(&["laws", "--trials", "100", "--seed", "42"]);
    assert_eq!(code, 0, "report: {report}");
    let outcomes = report["outcomes"].as_array().unwrap();
    assert!(!outcomes.is_empty());
    for outcome in outcomes {
        assert_eq!(outcome["passes"], Value::from(100));
        assert_eq!(outcome["failures"], Value::from(0));
    }
}

#[test]
fn gen_is_deterministic_and_generates_valid_documents() {
    let fx = Fixtures::new();
    for kind in [
        "lattice",
        "closure_space",
        "sps",
        "entity",
        "bcl",
        "sp_morphism",
    ] {
        let (code, first) = run_raw(&["gen", "--kind", kind, "--seed", "7"]);
        assert_eq!(code, 0);
        let (_, second) = run_raw(&["gen", "--kind", kind, "--seed", "7"]);
        assert_eq!(first, second, "generation must be byte-deterministic");
        let file = fx.write(&format!("{kind}.json"), &first);
        let (code, report) = run(&["validate", path_str(&file)]);
        assert_eq!(code, 0, "generated {kind} failed validation: {report}");
    }
}

#[test]
fn convert_round_trip_is_byte_identical() {
    let fx = Fixtures::new();
    let s2 = fx.write("s2.json", s2_json());
    let (code, cls) = run_raw(&["convert", "--to", "cls", path_str(&s2)]);
    assert_eq!(code, 0);
    let cls_file = fx.write("cls.json", &cls);
    let (code, sps) = run_raw(&["convert", "--to", "sps", path_str(&cls_file)]);
    assert_eq!(code, 0);
    let sps_file = fx.write("sps.json", &sps);
    let (code, cls_again) = run_raw(&["convert", "--to", "cls", path_str(&sps_file)]);
    assert_eq!(code, 0);
    assert_eq!(cls, cls_again, "closure round trip must be byte-exact");

    let (code, bcl) = run_raw(&["convert", "--to", "bcl", path_str(&s2)]);
    assert_eq!(code, 0);
    let bcl_file = fx.write("bcl.json", &bcl);
    let (code, _) = run(&["validate", path_str(&bcl_file)]);
    assert_eq!(code, 0);
}

#[test]
fn cartan_reports_the_state_sets() {
    let fx = Fixtures::new();
    let s2 = fx.write("s2.json", s2_json());
    let (code, report) = run(&["cartan", path_str(&s2), "--property", "a"]);
    assert_eq!(code, 0);
    assert_eq!(report["states"], serde_json::json!(["p"]));
    let (code, report) = run(&["cartan", path_str(&s2)]);
    assert_eq!(code, 0);
    assert_eq!(report["cartan"]["I"], serde_json::json!(["p", "q"]));
    assert_eq!(report["cartan"]["0"], serde_json::json!([]));
}

#[test]
fn t0_verdicts_and_witnesses() {
    let fx = Fixtures::new();
    let good = fx.write("sierpinski.json", sierpinski_json());
    let (code, report) = run(&["t0", path_str(&good)]);
    assert_eq!(code, 0);
    assert_eq!(report["t0"], Value::Bool(true));

    let bad = fx.write(
        "indiscrete.json",
        r#"{"kind":"closure_space","points":["x","y"],"closed_sets":[[],["x","y"]]}"#,
    );
    let (code, report) = run(&["t0", path_str(&bad)]);
    assert_eq!(code, 1);
    assert_eq!(report["t0"], Value::Bool(false));
    assert_eq!(report["witness"], serde_json::json!(["x", "y"]));
}

fn chain_collapse_map_json() -> &'static str {
    r#"{"kind":"lattice_map",
        "source":{"elements":["0","a","I"],
                  "leq":[["0","0"],["a","a"],["I","I"],["0","a"],["a","I"],["0","I"]]},
        "target":{"elements":["0'","I'"],"leq":[["0'","0'"],["I'","I'"],["0'","I'"]]},
        "graph":{"0":"0'","a":"I'","I":"I'"}}"#
}

#[test]
fn adjoint_lower_computes_the_expected_graph() {
    let fx = Fixtures::new();
    let map = fx.write("map.json", chain_collapse_map_json());
    let (code, doc) = run(&["adjoint", "--lower", path_str(&map)]);
    assert_eq!(code, 0);
    assert_eq!(doc["kind"], "lattice_map");
    assert_eq!(doc["graph"]["0'"], "0");
    assert_eq!(doc["graph"]["I'"], "a");
}

#[test]
fn adjoint_absent_reports_the_witness_subset() {
    // The collapse map does not preserve joins (a v 0 stays below I but the
    // empty join goes wrong way around); ask for the upper adjoint.
    let fx = Fixtures::new();
    let map = fx.write("map.json", chain_collapse_map_json());
    let (code, report) = run(&["adjoint", "--upper", path_str(&map)]);
    assert_eq!(code, 0);
    if report["kind"] == "lattice_map" {
        // The collapse map preserves joins, so probe a genuinely
        // non-join-preserving map instead.
        let bad = fx.write(
            "bad_map.json",
            r#"{"kind":"lattice_map",
                "source":{"elements":["0","a","b","I"],
                          "leq":[["0","0"],["a","a"],["b","b"],["I","I"],
                                 ["0","a"],["0","b"],["0","I"],["a","I"],["b","I"]]},
                "target":{"elements":["0","a","b","I"],
                          "leq":[["0","0"],["a","a"],["b","b"],["I","I"],
                                 ["0","a"],["0","b"],["0","I"],["a","I"],["b","I"]]},
                "graph":{"0":"0","a":"0","b":"0","I":"I"}}"#,
        );
        let (code, report) = run(&["adjoint", "--upper", path_str(&bad)]);
        assert_eq!(code, 0);
        assert_eq!(report["exists"], Value::Bool(false));
        assert!(report["witness_subset"].is_array());
    }
}

#[test]
fn entity_compile_emits_the_system_and_the_quotient() {
    let fx = Fixtures::new();
    let entity = fx.write(
        "e1.json",
        r#"{"kind":"entity","states":["p","q"],"tests":["tau","delta","alpha"],
            "eta":{"p":["tau","alpha"],"q":["tau"]}}"#,
    );
    let (code, report) = run(&["entity", "compile", path_str(&entity)]);
    assert_eq!(code, 0, "report: {report}");
    assert_eq!(report["sps"]["kind"], "sps");
    assert_eq!(report["quotient"]["alpha"], "alpha");
    assert_eq!(report["quotient"]["tau"], "tau");
    // Compiled output is itself a valid document.
    let sps = fx.write("compiled.json", &report["sps"].to_string());
    let (code, _) = run(&["validate", path_str(&sps)]);
    assert_eq!(code, 0);
}

#[test]
fn entity_compile_refuses_non_unital_input_with_exit_one() {
    let fx = Fixtures::new();
    let entity = fx.write(
        "bad.json",
        r#"{"kind":"entity","states":["p","q"],"tests":["b"],"eta":{"p":["b"],"q":[]}}"#,
    );
    let (code, report) = run(&["entity", "compile", path_str(&entity)]);
    assert_eq!(code, 1);
    assert_eq!(report["compiled"], Value::Bool(false));
    let violations = report["violations"].as_array().unwrap();
    assert!(violations
        .iter()
        .any(|v| v.as_str().unwrap().contains("unit")));
}

#[test]
fn product_and_universal_verification_end_to_end() {
    let fx = Fixtures::new();
    let a = fx.write(
        "a.json",
        r#"{"kind":"sps","states":["u"],
            "lattice":{"elements":["0","I"],"leq":[["0","0"],["I","I"],["0","I"]]},
            "xi":{"u":["I"]}}"#,
    );
    let b = fx.write(
        "b.json",
        r#"{"kind":"sps","states":["v"],
            "lattice":{"elements":["0","I"],"leq":[["0","0"],["I","I"],["0","I"]]},
            "xi":{"v":["I"]}}"#,
    );
    let (code, witness) = run(&["product", path_str(&a), path_str(&b)]);
    assert_eq!(code, 0, "witness: {witness}");
    assert_eq!(witness["kind"], "witness");
    let witness_file = fx.write("witness.json", &witness.to_string());

    // The projections themselves form a cone; the mediating morphism must
    // come out as the identity and be the unique survivor.
    for (i, name) in ["p1.json", "p2.json"].iter().enumerate() {
        let mut body = witness["projections"][i].clone();
        body["kind"] = "sp_morphism".into();
        fx.write(name, &body.to_string());
    }
    let (code, report) = run(&[
        "verify-universal",
        path_str(&witness_file),
        path_str(&fx.path("p1.json")),
        path_str(&fx.path("p2.json")),
    ]);
    assert_eq!(code, 0, "report: {report}");
    assert_eq!(report["holds"], Value::Bool(true));
    assert_eq!(report["survivors"], Value::from(1));
}

#[test]
fn check_morphism_handles_every_morphism_kind() {
    let fx = Fixtures::new();
    for kind in ["sp_morphism", "bcl_morphism", "lattice_map"] {
        let (code, doc) = run_raw(&["gen", "--kind", kind, "--seed", "11"]);
        assert_eq!(code, 0);
        let file = fx.write(&format!("{kind}.json"), &doc);
        let (code, report) = run(&["check-morphism", path_str(&file)]);
        assert_eq!(code, 0, "generated {kind} failed its check: {report}");
        assert_eq!(report["valid"], Value::Bool(true));
    }
    // Generated morphisms rarely compose with themselves; endpoint
    // mismatches must come back as structural errors, not panics.
    let (_, doc) = run_raw(&["gen", "--kind", "bcl_morphism", "--seed", "12"]);
    let file = fx.write("bclm.json", &doc);
    let (code, _) = run(&["compose", path_str(&file), path_str(&file)]);
    assert!(code == 0 || code == 2);
}

#[test]
fn oversized_family_is_refused_gracefully_on_convert() {
    // The discrete family on 7 points is a perfectly valid closure space
    // with 128 closed sets, which is too many to become lattice elements.
    let points: Vec<String> = (0..7).map(|i| format!("z{i}")).collect();
    let mut sets: Vec<Vec<String>> = Vec::new();
    for mask in 0u32..(1 << 7) {
        sets.push(
            points
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| p.clone())
                .collect(),
        );
    }
    let doc = serde_json::json!({
        "kind": "closure_space",
        "points": points,
        "closed_sets": sets,
    });
    let fx = Fixtures::new();
    let file = fx.write("discrete7.json", &doc.to_string());
    let (code, report) = run(&["validate", path_str(&file)]);
    assert_eq!(code, 0, "the discrete family is a valid space: {report}");
    let (code, report) = run(&["convert", "--to", "sps", path_str(&file)]);
    assert_eq!(code, 2, "conversion must refuse, not panic: {report}");
    assert!(report["error"].as_str().unwrap().contains("128"));
}

#[test]
fn compose_identity_morphisms() {
    let fx = Fixtures::new();
    let identity = format!(
        r#"{{"kind":"sp_morphism",
             "source":{body},"target":{body},
             "m":{{"p":"p","q":"q"}},
             "n":{{"0":"0","a":"a","I":"I"}}}}"#,
        body = s2_json().replace(r#"{"kind":"sps","#, r#"{"#),
    );
    let file = fx.write("id.json", &identity);
    let (code, report) = run(&["check-morphism", path_str(&file)]);
    assert_eq!(code, 0, "report: {report}");
    let (code, composed) = run(&["compose", path_str(&file), path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(composed["kind"], "sp_morphism");
    assert_eq!(composed["m"]["p"], "p");
    assert_eq!(composed["n"]["a"], "a");
}
