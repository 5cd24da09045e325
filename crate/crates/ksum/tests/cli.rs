use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn ksum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksum")).args(args).output().expect("ksum runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn schema() -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}");
    }
}

#[test]
fn field_record() {
    let v = json(&ksum(&["field", "--p", "2", "--n", "3"]));
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 0, 1]));
    assert_eq!(v["basis_traces"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["largest_proper_subfield"], 2);
    let v = json(&ksum(&["field", "--p", "7", "--n", "1"]));
    assert_eq!(v["largest_proper_subfield"], 1);
}

#[test]
fn kloosterman_record() {
    let v = json(&ksum(&["kloosterman", "--p", "5", "--n", "1", "--u", "1", "--v", "1"]));
    assert_eq!(v["histogram"], serde_json::json!([2, 0, 1, 1, 0]));
    assert!((v["value"]["re"].as_f64().unwrap() - 0.381966).abs() < 1e-6);
    let v = json(&ksum(&["kloosterman", "--p", "3", "--n", "3", "--u", "0,0,0", "--v", "0,0,0"]));
    assert_eq!(v["integer"], 26);
    let v = json(&ksum(&["kloosterman", "--p", "2", "--n", "3", "--a", "0,0,0", "--u", "1,0,0", "--v", "1,0,0"]));
    assert_eq!(v["trivial_character"], true);
}

#[test]
fn usage_and_config_errors_exit_2() {
    for args in [
        vec!["nonsense"],
        vec!["field", "--p", "6", "--n", "2"],
        vec!["verify", "weil", "--p", "3", "--n", "7"],
        vec!["kloosterman", "--p", "2", "--n", "3", "--u", "2,0,0", "--v", "0"],
        vec!["energy", "--p", "2", "--n", "3", "--set-spec", "literal:1,0,0;3,0,0"],
        vec!["dsum", "--p", "2", "--n", "3", "--A", "basis=[1,0,0", "--B", "basis=[]"],
        vec!["verify", "thm1", "--p", "3", "--n", "3", "--dim-l", "4", "--dim-m", "4"],
    ] {
        let out = ksum(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn energy_record_matches_hand_count() {
    let v = json(&ksum(&["energy", "--p", "7", "--n", "1", "--set-spec", "literal:1;2;3"]));
    assert_eq!(v["set_energy"], 19);
    assert_eq!(v["set_energy_oracle"], 19);
    assert_eq!(v["cauchy_ok"], true);
    let v = json(&ksum(&["energy", "--p", "3", "--n", "3", "--set-spec", "subspace:[1,0,0;0,1,0]"]));
    assert_eq!(v["set_energy"], 729);
    assert_eq!(v["subspace_ok"], true);
    assert!(v["cauchy_ok"].is_null());
}

#[test]
fn verify_reports_validate_and_replay() {
    let schema = schema();
    let thm1 = json(&ksum(&["verify", "thm1", "--p", "3", "--n", "3", "--mode", "sample:30"]));
    assert_valid(&schema, &thm1);
    assert_eq!(thm1["assertable"], true);
    let row = &thm1["rows"][7];
    let dsum = json(&ksum(&[
        "dsum",
        "--p",
        "3",
        "--n",
        "3",
        "--A",
        row["A"].as_str().unwrap(),
        "--B",
        row["B"].as_str().unwrap(),
    ]));
    let re = dsum["reduced"]["re"].as_f64().unwrap();
    let im = dsum["reduced"]["im"].as_f64().unwrap();
    assert_eq!(re.hypot(im), row["abs_sum"].as_f64().unwrap());
    assert_eq!(dsum["critical_size"], row["critical_size"]);
    assert!((dsum["direct"]["re"].as_f64().unwrap() - re).abs() < 1e-6);

    let thm2 = json(&ksum(&["--seed", "5", "verify", "thm2", "--p", "2", "--n", "5", "--mode", "sample:5"]));
    assert_valid(&schema, &thm2);
    let row = &thm2["rows"][12];
    let seed = row["weight_seed"].as_u64().unwrap().to_string();
    let size = row["v_size"].as_u64().unwrap().to_string();
    let wsum = json(&ksum(&[
        "--seed",
        &seed,
        "wsum",
        "--p",
        "2",
        "--n",
        "5",
        "--A",
        row["A"].as_str().unwrap(),
        "--weights",
        row["scheme"].as_str().unwrap(),
        "--support-size",
        &size,
    ]));
    let w = &wsum["weighted"];
    assert_eq!(w["re"].as_f64().unwrap().hypot(w["im"].as_f64().unwrap()), row["abs_sum"].as_f64().unwrap());
    let o = &wsum["oracle"];
    assert!((o["re"].as_f64().unwrap() - w["re"].as_f64().unwrap()).abs() < 1e-6);

    let energy = json(&ksum(&["verify", "energy", "--p", "3", "--n", "3", "--mode", "sample:10"]));
    assert_valid(&schema, &energy);
    let row = energy["rows"].as_array().unwrap().iter().find(|r| r["kind"] == "critical").expect("critical row");
    let rec = json(&ksum(&["energy", "--p", "3", "--n", "3", "--set-spec", row["set_spec"].as_str().unwrap()]));
    assert_eq!(rec["inverse_energy"], row["inverse_energy"]);

    for check in ["weil", "reduction"] {
        let r = json(&ksum(&["verify", check, "--p", "2", "--n", "4"]));
        assert_valid(&schema, &r);
        assert_eq!(r["check"], check);
        assert_eq!(r["summary"]["passed"], true);
    }
}

#[test]
fn report_only_statements_are_never_assertable() {
    let r = json(&ksum(&["verify", "thm2", "--p", "3", "--n", "3", "--mode", "sample:4"]));
    for s in r["summary"]["statements"].as_array().unwrap() {
        let name = s["name"].as_str().unwrap();
        assert_eq!(s["assertable"], !name.contains("ratio"), "{name}");
    }
    assert!(r["meta"]["walltime_ms"].is_null());
    let timed = json(&ksum(&["--timing", "verify", "weil", "--p", "2", "--n", "3"]));
    assert!(timed["meta"]["walltime_ms"].is_u64());
}

#[test]
fn output_is_independent_of_worker_count_and_repeatable() {
    let args = |jobs: &'static str| {
        ["--jobs", jobs, "--seed", "11", "verify", "energy", "--p", "5", "--n", "3", "--mode", "sample:30"]
    };
    let a = ksum(&args("1"));
    let b = ksum(&args("3"));
    let c = ksum(&args("1"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let other = ksum(&["--seed", "12", "verify", "energy", "--p", "5", "--n", "3", "--mode", "sample:30"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn out_path_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let out = ksum(&["weil", "--p", "2", "--n", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["k00"], 7);

    let csv = ksum(&["--format", "csv", "verify", "reduction", "--p", "2", "--n", "3", "--mode", "sample:4"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("kind,A,B,a_size,b_size,direct,reduced"));
}
