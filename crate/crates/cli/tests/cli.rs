use std::path::Path;
use std::process::{Command, Output};

use rgc_core::linalg::sms::from_sms;
use rgc_core::properad::{Family, GraphComplex};
use serde_json::Value;

fn rgc(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgc")).args(args).env("RGC_CACHE_DIR", cache).output().expect("rgc runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.code().is_some_and(|c| c <= 1), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn rows(v: &Value) -> Vec<Vec<Value>> {
    v["payload"]["tables"][0]["rows"].as_array().unwrap().iter().map(|r| r.as_array().unwrap().clone()).collect()
}

/// `(degree, dim)` of the exact nonzero cohomology rows.
fn classes(v: &Value) -> Vec<(i64, u64)> {
    rows(v).iter().filter(|r| r[8] == true && r[7].as_u64().unwrap() > 0).map(|r| (r[5].as_i64().unwrap(), r[7].as_u64().unwrap())).collect()
}

#[test]
fn basis_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&rgc(dir.path(), &["basis", "--family", "tw", "--d", "2", "--g", "0", "--m", "1", "--n", "2", "--k", "0"]));
    assert_eq!(v["schema"], "rgc-report/1");
    assert_eq!(rows(&v)[0][5], 1);
    let v = json(&rgc(dir.path(), &["basis", "--family", "chgrav", "--d", "2", "--g", "0", "--m", "1", "--n", "1", "--k", "1"]));
    assert_eq!(rows(&v)[0][5], 0);
    let v = json(&rgc(dir.path(), &["basis", "--family", "st", "--d", "1", "--g", "0", "--m", "1", "--n", "4", "--k", "1"]));
    let r = &rows(&v)[0];
    let (size, ambient, ideal) = (r[5].as_u64().unwrap(), r[6].as_u64().unwrap(), r[7].as_u64().unwrap());
    assert!(ideal > 0 && size <= ambient - ideal, "{r:?}");
}

#[test]
fn cohomology_examples() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&rgc(dir.path(), &["cohomology", "--d", "2", "--g", "0", "--m", "1", "--n", "2", "--kmax", "3"]));
    assert_eq!(classes(&v), vec![(-1, 1)]);
    let v = json(&rgc(dir.path(), &["cohomology", "--d", "2", "--g", "1", "--m", "1", "--n", "0", "--kmax", "4"]));
    assert_eq!(classes(&v), vec![(1, 1)]);
    // with labelled boundaries every odd number of black vertices carries a class
    let v = json(&rgc(dir.path(), &["cohomology", "--d", "1", "--g", "0", "--m", "2", "--n", "0", "--kmax", "8"]));
    assert_eq!(classes(&v), vec![(1, 1), (3, 1), (5, 1), (7, 1)]);
    let p = json(&rgc(dir.path(), &["--coeff", "p:101", "cohomology", "--d", "1", "--g", "0", "--m", "2", "--n", "0", "--kmax", "8"]));
    assert_eq!(classes(&p), classes(&v));
}

#[test]
fn expected_values_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("expected.csv");
    std::fs::write(&file, "d,g,m,n,degree,dim\n2,0,1,2,-1,1\n").unwrap();
    let args = ["cohomology", "--d", "2", "--g", "0", "--m", "1", "--n", "2", "--kmax", "3", "--expected", file.to_str().unwrap()];
    let out = rgc(dir.path(), &args);
    assert!(out.status.success());
    assert_eq!(json(&out)["payload"]["matches_expected"], true);
    std::fs::write(&file, "2,0,1,2,-1,2\n").unwrap();
    let out = rgc(dir.path(), &args);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["payload"]["matches_expected"], false);
}

#[test]
fn cache_is_reused_and_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["basis", "--family", "tw", "--d", "0..1", "--g", "0", "--m", "1..2", "--n", "2", "--k", "0..2", "--list"];
    let first = json(&rgc(dir.path(), &args));
    let second = json(&rgc(dir.path(), &args));
    assert!(first["run"]["cache_misses"].as_u64().unwrap() > 0);
    assert_eq!(second["run"]["cache_misses"], 0);
    assert!(second["run"]["cache_hits"].as_u64().unwrap() > 0);
    assert_eq!(first["payload"].to_string(), second["payload"].to_string());
    let fresh = json(&rgc(dir.path(), &[&["--no-cache"], &args[..]].concat()));
    assert_eq!(first["payload"], fresh["payload"]);
}

#[test]
fn corrupt_cache_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["basis", "--d", "1", "--m", "1", "--n", "2", "--k", "1"];
    json(&rgc(dir.path(), &args));
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), "not a graph\n").unwrap();
    }
    let out = rgc(dir.path(), &args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt cache"));
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let out = rgc(dir.path(), &["verify", "--suite", "lob", "--trials", "200", "--dim", "4"]);
    assert!(out.status.success());
    assert!(rows(&json(&out)).iter().all(|r| r[3] == true));
    let out = rgc(dir.path(), &["verify", "--suite", "delta2", "--d", "0..3", "--kmax", "2", "--emax", "3"]);
    assert!(out.status.success());
    let out = rgc(dir.path(), &["verify", "--suite", "st-classes", "--d", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = rows(&json(&out));
    assert_eq!((r[0][2].as_u64(), &r[0][3]), (Some(1), &Value::Bool(false)));
    assert_eq!((r[1][2].as_u64(), &r[1][3]), (Some(4), &Value::Bool(true)));
}

#[test]
fn string_operations() {
    let dir = tempfile::tempdir().unwrap();
    let out = rgc(dir.path(), &["string-ops", "--algebra", "surface(1)", "--graph", "bracket", "--class", "1 ; a1*,a1*,b1*", "--class", "1 ; b1*", "--cutoff", "5"]);
    let v = json(&out);
    assert_eq!(v["payload"]["output"], serde_json::json!(["2 ; a1*,b1*"]));
    assert_eq!(v["payload"]["output_degree"], 0);
    let out = rgc(dir.path(), &["string-ops", "--algebra", "surface(1)", "--graph", "bracket", "--class", "1 ; a1*,b1*,w*", "--class", "1 ; a1*"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("input 1 is not a cycle"));
}

#[test]
fn algebra_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cp2.alg");
    std::fs::write(&file, "degree 4\nbasis 1:0 x:2 x^2:4\nproduct x x = x^2\nproduct x x^2 = 0\nproduct x^2 x^2 = 0\norientation x^2 = 1\n").unwrap();
    let out = rgc(dir.path(), &["verify", "--suite", "mc", "--algebra", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    std::fs::write(&file, "degree 4\nbasis 1:0 x:2 x^2:4\nproduct x x = x^2\nproduct x x^2 = 0\nproduct x^2 x^2 = 0\n").unwrap();
    let out = rgc(dir.path(), &["verify", "--suite", "mc", "--algebra", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out");
    let out = rgc(dir.path(), &["export", "--family", "tw", "--d", "1", "--g", "0", "--m", "1", "--n", "2", "--kmax", "2", "--out", target.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(target.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["schema"], "rgc-report/1");
    let cx = GraphComplex::build(Family::TwRGra, 1, 0, 1, 2, 2).unwrap();
    for k in 0..2 {
        let text = std::fs::read_to_string(target.join(format!("tw_d1_g0_m1_n2_k{k}.sms"))).unwrap();
        assert!(text.ends_with("0 0 0\n"));
        assert_eq!(from_sms(&text).unwrap().triplets(), cx.complex.diffs[k].triplets());
    }
    let basis = std::fs::read_to_string(target.join("tw_d1_g0_m1_n2_k1.basis")).unwrap();
    assert_eq!(basis.lines().count(), cx.complex.dims[1]);
}

#[test]
fn bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(rgc(dir.path(), &["--coeff", "p:7,7", "basis"]).status.code(), Some(2));
    assert_eq!(rgc(dir.path(), &["--format", "sms", "basis"]).status.code(), Some(2));
    assert_eq!(rgc(dir.path(), &["basis", "--m", "-1"]).status.code(), Some(2));
}
