//! End-to-end checks of the command line contract, run in process.

use std::path::{Path, PathBuf};

use serde_json::Value;

use super::{execute, Invocation};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn motive(name: &str) -> String {
    root().join("motives").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Invocation {
    execute(std::iter::once("tensor-periods").chain(args.iter().copied()))
}

fn exit_code(args: &[&str]) -> u8 {
    run(args).code
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", out.stderr));
    (i32::from(out.code), v)
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("schema").join(name)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn inspect_examples() {
    let (code, v) = json(&["inspect", &motive("H_ell.json")]);
    assert_eq!(code, 0);
    let t = &v["tasks"][0];
    assert_eq!((t["d_plus"].as_u64(), t["d_minus"].as_u64()), (Some(1), Some(1)));
    assert_eq!(t["critical"], true);

    let (code, v) = json(&["inspect", &motive("H_fat.json")]);
    assert_eq!(code, 0);
    let t = &v["tasks"][0];
    assert_eq!((t["d_plus"].as_u64(), t["d_minus"].as_u64()), (Some(4), Some(1)));
    assert_eq!(t["epsilon"], "+");
}

#[test]
fn invalid_motive_exits_2_with_position() {
    let out = run(&["inspect", &motive("bad.json")]);
    assert_eq!(out.code, 2);
    let err = &out.stderr;
    assert!(err.contains("bad.json:4:3:"), "{err}");
    assert!(out.stdout.is_empty());

    let dir = std::env::temp_dir().join(format!("tp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\n  \"label\": \"x\",\n  \"weight\": one\n}\n").unwrap();
    let out = run(&["inspect", broken.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("broken.json:3:"), "{}", out.stderr);
    assert_eq!(exit_code(&["inspect", "no/such/motive"]), 2);
}

#[test]
fn tensor_examples() {
    let (code, v) = json(&["tensor", &motive("H_ell.json"), &motive("H_sym.json")]);
    assert_eq!(code, 0);
    let t = &v["tasks"][0];
    assert_eq!((t["tensor"]["q_plus"].as_u64(), t["tensor"]["q_minus"].as_u64()), (Some(2), Some(2)));
    assert_eq!(t["a_plus"], serde_json::json!([2, 1]));
    assert_eq!(t["a_minus"], serde_json::json!([2, 1]));
    assert_eq!(t["predicted_case"]["case_tag"]["tag"], "EvenOddI");

    let (code, v) = json(&["tensor", "H_ell", "H_ell"]);
    assert_eq!(code, 0);
    assert_eq!(v["tasks"][0]["critical"], false);
    assert!(v["tasks"][0]["notes"][0].as_str().unwrap().contains("not critical"));

    let (code, v) = json(&["tensor", &motive("H_spread.json"), &motive("H_sym.json")]);
    assert_eq!(code, 0);
    let case = &v["tasks"][0]["predicted_case"];
    assert_eq!(case["case_tag"]["tag"], "BothOdd");
    assert_eq!(case["localization"], serde_json::json!([2, 2]));
}

#[test]
fn verify_examples() {
    let (code, v) = json(&["verify", &motive("H_ell.json"), &motive("H_sym.json"), "--mode", "exact"]);
    assert_eq!(code, 0);
    let t = &v["tasks"][0];
    assert_eq!(t["passed"], true);
    assert!(t["identity_checked"].as_str().unwrap().contains("det Z⁺"));
    assert!(t["constant"].is_string());

    let (code, v) = json(&["verify", "H_ell", "H_sym", "--check-wrong-case"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);

    let (code, v) = json(&["verify", "H_ell", "--sum", "H_sym,H_artin-,H_ell3"]);
    assert_eq!(code, 0);
    assert_eq!(v["tasks"][0]["case"]["exponents"][0]["exponent"], 0);
    assert_eq!(v["tasks"][0]["summands"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_hypothesis_errors_exit_2() {
    assert_eq!(exit_code(&["verify", "H_ell", "H_ell"]), 2);
    assert_eq!(exit_code(&["verify", "H_4", "H_ell3"]), 2);
    assert_eq!(exit_code(&["verify", "H_ell", "H_sym", "--trials", "3"]), 2);
    assert_eq!(exit_code(&["verify", "H_ell", "--sum", "H_sym,H_ell"]), 2);
    assert_eq!(exit_code(&["verify", "H_ell", "H_sym", "--mode", "fast"]), 2);
}

#[test]
fn dirichlet_examples() {
    let (code, v) = json(&["dirichlet", "--disc", "-4", "--max-m", "3"]);
    assert_eq!(code, 0);
    let rows = v["tasks"][0]["rows"].as_array().unwrap();
    let got: Vec<(u64, &str)> = rows.iter().map(|r| (r["m"].as_u64().unwrap(), r["rational"].as_str().unwrap())).collect();
    assert_eq!(got, [(1, "1/2"), (3, "1/16")]);

    let (code, v) = json(&["dirichlet", "--disc", "-4", "--disc2", "5", "--max-m", "9"]);
    assert_eq!(code, 0);
    assert!(v["tasks"][0]["rows"].as_array().unwrap().iter().all(|r| r["pass"] == true));

    assert_eq!(exit_code(&["dirichlet", "--disc", "9"]), 2);
    assert_eq!(exit_code(&["dirichlet", "--disc", "-4", "--disc2", "-8"]), 2);
}

#[test]
fn out_flag_and_text_projection() {
    let dir = std::env::temp_dir().join(format!("tp-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("report.json");
    let out = run(&["--output", "json", "--out", file.to_str().unwrap(), "tensor", "H_ell", "H_sym"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["command"], "tensor");

    let text = run(&["tensor", "H_ell", "H_sym"]).stdout;
    assert!(text.contains("q± = (2, 2)"), "{text}");
    assert!(text.contains("EvenOddI"));
}

#[test]
fn seeds_are_threaded_and_reports_are_stable() {
    let a = run(&["--output", "json", "--seed", "3", "verify", "H_ell", "H_sym"]).stdout;
    let b = run(&["--output", "json", "--seed", "3", "verify", "H_ell", "H_sym"]).stdout;
    let c = run(&["--output", "json", "--seed", "4", "verify", "H_ell", "H_sym"]).stdout;
    assert_eq!(a, b);
    assert_ne!(a, c);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 3);
}

#[test]
fn shipped_motives_match_schema() {
    let v = schema("motive.schema.json");
    let mut n = 0;
    for entry in std::fs::read_dir(root().join("motives")).unwrap() {
        let path = entry.unwrap().path();
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_valid(&v, &doc);
        n += 1;
    }
    assert!(n >= 12);
    assert!(!v.is_valid(&serde_json::json!({"label": "x", "weight": 1, "hodge": [], "extra": 0})));
}

#[test]
fn every_report_kind_matches_schema() {
    let v = schema("report.schema.json");
    let runs: [&[&str]; 7] = [
        &["inspect", "H_ell", "H_fat", "H_artin-"],
        &["tensor", "H_spread", "H_sym"],
        &["tensor", "H_ell", "H_ell"],
        &["verify", "H_ell", "H_sym", "--mode", "exact"],
        &["verify", "H_ell", "--sum", "H_sym,H_artin-,H_ell3"],
        &["verify", "H_ell", "H_sym", "--check-wrong-case"],
        &["dirichlet", "--disc", "-4", "--disc2", "5", "--max-m", "5"],
    ];
    for args in runs {
        let (_, doc) = json(args);
        assert_valid(&v, &doc);
    }
    let (_, mut doc) = json(&["verify", "H_ell", "H_sym"]);
    doc["tasks"][0]["constant"] = serde_json::json!(1.5);
    assert!(!v.is_valid(&doc));
    doc.as_object_mut().unwrap().remove("passed");
    assert!(!v.is_valid(&doc));
}
