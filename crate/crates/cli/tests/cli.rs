use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use dsfaces_cli::{run, Outcome, EXIT_CAP, EXIT_FAILURE, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn dsfaces(args: &str) -> Outcome {
    run(std::iter::once("dsfaces").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = dsfaces(args);
    assert!(out.code == EXIT_OK || out.code == EXIT_FAILURE, "{args}: {out:?}");
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}\n{}", out.stdout))
}

fn schemas_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn face_file(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn matrix_s2_as_csv() {
    let out = dsfaces("matrix S --m 2 --format csv");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "1,-2,1\n0,1,-1\n0,0,1\n");
}

#[test]
fn matrix_u4_dump() {
    let v = json("matrix U --m 4");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.as_array().unwrap().iter().enumerate() {
            assert_eq!(x.as_str().unwrap(), if i + j == 4 { "1" } else { "0" });
        }
    }
}

#[test]
fn vectors_of_square_and_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let square = face_file(&dir, "square.json", r#"{"m": 2, "faces": [[], [1], [2], [1, 2]]}"#);
    let v = json(&format!("vectors --faces {square}"));
    assert_eq!(v["ds"], false);
    assert_eq!(v["long_h"], serde_json::json!([1, 0, 0]));

    let boundary = face_file(&dir, "boundary.json", r#"{"m": 2, "faces": [[], [1], [2]]}"#);
    let v = json(&format!("vectors --faces {boundary}"));
    assert_eq!(v["ds"], true);
    assert_eq!(v["long_h"], serde_json::json!([1, 0, -1]));
    assert_eq!(v["long_f"], serde_json::json!([1, 2, 0]));
    assert_eq!(v["size"], 1);
}

#[test]
fn malformed_face_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("outside.json", r#"{"m": 2, "faces": [[3]]}"#),
        ("dup.json", r#"{"m": 2, "faces": [[1], [1]]}"#),
        ("repeat.json", r#"{"m": 2, "faces": [[1, 1]]}"#),
        ("extra.json", r#"{"m": 2, "faces": [], "x": 1}"#),
        ("garbage.json", "not json"),
    ] {
        let p = face_file(&dir, name, body);
        let out = dsfaces(&format!("vectors --faces {p}"));
        assert_eq!(out.code, EXIT_INPUT, "{name}: {out:?}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.starts_with("error:"));
    }
    assert_eq!(dsfaces("vectors --faces /nonexistent/x.json").code, EXIT_INPUT);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        "matrix Q --m 3",
        "matrix S --m 1",
        "enumerate --m 3 --class odd",
        "enumerate --m 3 --workers 0",
        "verify --suite nope --m 3",
        "verify --m 6..2",
        "contains Pf --m 3 --point 0,0,0,0",
        "contains Qf --m 2 --point 1,2",
        "coords --basis Fup --m 2 --vector 1,x,0",
        "spaces --m 2 --format csv",
        "frobnicate",
    ] {
        assert_eq!(dsfaces(args).code, EXIT_INPUT, "{args}");
    }
}

#[test]
fn help_is_not_an_error() {
    let out = dsfaces("--help");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("table4"));
}

#[test]
fn enumerate_examples() {
    let v = json("enumerate --m 2 --class matching");
    assert_eq!(v["count"], 3);
    assert_eq!(v["points"], serde_json::json!([[0, 1, 1], [1, 0, 0], [1, 1, 1]]));

    let v = json("enumerate --m 3 --class matching --count-only");
    assert_eq!(v["count"], 1);
    assert!(v.get("points").is_none());

    let v = json("enumerate --m 2 --class matching --multiplicities");
    assert_eq!(v["total_multiplicity"], "5");
}

#[test]
fn enumerate_csv_has_coordinate_header() {
    let out = dsfaces("enumerate --m 2 --class all --format csv");
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "x0,x1,x2");
    assert_eq!(lines.len(), 1 + 5);
}

#[test]
fn lattice_matches_figure_examples() {
    let v = json("lattice --m 2");
    assert_eq!(v["points"], serde_json::json!([[0, 0, 0], [0, 1, 1], [1, 0, 0], [1, 1, 1]]));
    let v = json("lattice --m 2 --h");
    assert_eq!(v["points"], serde_json::json!([[0, 0, 0], [0, 1, 0], [1, -2, 1], [1, -1, 1]]));
}

#[test]
fn table4_small_rows() {
    let out = dsfaces("table4 --max-m 4");
    assert_eq!(out.code, EXIT_OK);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let got: Vec<(u64, u64, u64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["col1"].as_u64().unwrap(), r["col2"].as_u64().unwrap(), r["col3"].as_u64().unwrap()))
        .collect();
    assert_eq!(got, [(3, 1, 5), (1, 7, 9), (19, 5, 25)]);
    assert_eq!(v["all_match"], true);

    let text = dsfaces("table4 --max-m 4 --format text").stdout;
    assert_eq!(text.lines().count(), 4);
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn verify_examples() {
    let out = dsfaces("verify --suite oracle --m 4");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);

    let out = dsfaces("verify --suite tables --m 5 --corrected");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);

    let out = dsfaces("verify --suite all --m 2..6 --corrected");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
}

/// With the formulas exactly as printed the suites fail, and only on the
/// two known misprints.
#[test]
fn printed_formulas_fail_only_on_known_misprints() {
    for args in ["verify --suite tables --m 5", "verify --suite all --m 2..6"] {
        let out = dsfaces(args);
        assert_eq!(out.code, EXIT_FAILURE, "{args}");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let failures = v["failures"].as_array().unwrap();
        assert!(!failures.is_empty());
        for f in failures {
            let item = f["item"].as_str().unwrap();
            assert!(
                item == "table1: kappa(fbar,Fdown)" || item == "rank1: rank-1 projector entry (f)",
                "unexpected failure {f}"
            );
            for key in ["suite", "m", "indices", "expected", "got"] {
                assert!(f.get(key).is_some());
            }
        }
    }
}

#[test]
fn dumps_that_compare_closed_forms() {
    assert_eq!(dsfaces("table1 --m 4 --vector h").code, EXIT_OK);
    assert_eq!(dsfaces("table1 --m 4 --vector f --basis Fdown").code, EXIT_FAILURE);
    assert_eq!(dsfaces("table1 --m 4 --corrected").code, EXIT_OK);
    assert_eq!(dsfaces("projector h --m 4 --rank1 2").code, EXIT_OK);
    assert_eq!(dsfaces("projector f --m 4 --rank1 2").code, EXIT_FAILURE);
    assert_eq!(dsfaces("projector f --m 4 --rank1 2 --corrected").code, EXIT_OK);
    assert_eq!(dsfaces("norms --m 6").code, EXIT_OK);
    assert_eq!(dsfaces("charpoly --m 7").code, EXIT_OK);
    assert_eq!(dsfaces("genfun --m 4").code, EXIT_OK);
    assert_eq!(dsfaces("oracle --m 3 --kind powerset").code, EXIT_OK);
}

#[test]
fn oracle_above_cap_exits_3() {
    let out = dsfaces("oracle --m 8");
    assert_eq!(out.code, EXIT_CAP);
    assert!(out.stderr.contains("candidate vectors"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.csv");
    let out = dsfaces(&format!("matrix S --m 2 --format csv --output {}", p.display()));
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(p).unwrap(), "1,-2,1\n0,1,-1\n0,0,1\n");
}

#[test]
fn byte_identical_across_worker_counts() {
    for base in [
        "enumerate --m 7 --class all",
        "enumerate --m 6 --class opposite --multiplicities",
        "lattice --m 7 --h",
        "table4 --max-m 8",
    ] {
        for fmt in ["json", "csv", "text"] {
            let one = dsfaces(&format!("{base} --workers 1 --format {fmt}"));
            if one.code == EXIT_INPUT {
                continue;
            }
            for w in [2, 3, 8] {
                let many = dsfaces(&format!("{base} --workers {w} --format {fmt}"));
                assert_eq!(one.code, many.code);
                assert!(one.stdout == many.stdout, "{base} --format {fmt} differs at {w} workers");
            }
            assert_eq!(one.stdout, dsfaces(&format!("{base} --workers 1 --format {fmt}")).stdout);
        }
    }
}

const SCHEMA_SAMPLES: &[&str] = &[
    "matrix S_inv --m 3",
    "charpoly --m 5",
    "basis Hdown --m 4",
    "coords --basis Fdown --m 3 --vector 1,3,3,1/2",
    "table1 --m 3",
    "spaces --m 4",
    "projector f --m 4",
    "projector h --m 3 --rank1 1",
    "norms --m 5",
    "contains Qf --m 2 --point 1,1,1",
    "contains Qh --m 2 --point 1/2,0,1/2",
    "enumerate --m 4 --class all --multiplicities",
    "enumerate --m 5 --class opposite --count-only",
    "lattice --m 3 --bounds 1,2,2,1",
    "lattice --m 4 --h",
    "table4 --max-m 5",
    "oracle --m 4 --kind powerset",
    "oracle --m 3",
    "genfun --m 3",
    "verify --suite spectra --m 2..3",
    "verify --suite all --m 2..3",
];

#[test]
fn every_json_report_validates_against_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let faces = face_file(&dir, "f.json", r#"{"m": 3, "faces": [[], [1], [2], [1, 3]]}"#);
    let empty = face_file(&dir, "e.json", r#"{"m": 3, "faces": []}"#);
    let extra = [format!("vectors --faces {faces}"), format!("vectors --faces {empty}")];
    let mut covered = BTreeSet::new();
    for args in SCHEMA_SAMPLES.iter().map(|s| s.to_string()).chain(extra) {
        let v = json(&args);
        let command = v["command"].as_str().unwrap().to_string();
        let path = schemas_dir().join(format!("{command}.schema.json"));
        let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let validator = jsonschema::validator_for(&schema).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args}: {errors:?}");
        covered.insert(command);
    }
    // Every shipped command schema is exercised.
    let shipped: BTreeSet<String> = std::fs::read_dir(schemas_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter_map(|n| n.strip_suffix(".schema.json").map(String::from))
        .filter(|n| n != "face_system")
        .collect();
    assert_eq!(covered, shipped);
}

#[test]
fn face_system_documents_validate() {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schemas_dir().join("face_system.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let doc = dsfaces::FaceSystem::simplex_boundary(3, 4).to_doc();
    assert!(validator.is_valid(&serde_json::to_value(doc).unwrap()));
    assert!(!validator.is_valid(&serde_json::json!({"m": 2})));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dsfaces"))
}

#[test]
fn binary_exit_codes_and_cap_override() {
    let out = binary().args(["enumerate", "--m", "4", "--count-only"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));

    let out = binary()
        .args(["enumerate", "--m", "4", "--count-only"])
        .env("DSFACES_MAX_M", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CAP));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("estimated cost"), "{err}");

    let out = binary().args(["table4", "--max-m", "11"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CAP));

    let out = binary()
        .args(["enumerate", "--m", "4"])
        .env("DSFACES_MAX_M", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
}

#[test]
fn binary_workers_from_environment() {
    let plain = binary().args(["enumerate", "--m", "6", "--class", "all"]).output().unwrap();
    let env = binary()
        .args(["enumerate", "--m", "6", "--class", "all"])
        .env("DSFACES_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(plain.status.code(), Some(EXIT_OK));
    assert_eq!(plain.stdout, env.stdout);

    let bad = binary()
        .args(["enumerate", "--m", "6"])
        .env("DSFACES_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
}
