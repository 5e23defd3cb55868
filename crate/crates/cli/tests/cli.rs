//! Exit codes and file formats of the `cdc` binary.

use std::path::Path;
use std::process::{Command, Output};

fn cdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn bound_values() {
    let o = cdc(&["bound", "--theorem", "cor2", "--q", "2", "--delta", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["value"], "16865174");
    let o = cdc(&["bound", "--theorem", "new-3", "--q", "3", "--n", "15", "--k", "6", "--delta", "3"]);
    assert_eq!(json(&o)["value"], "150102543990846750");
    let o = cdc(&["bound", "--theorem", "upper", "--q", "2", "--n", "5", "--k", "2", "--delta", "2"]);
    assert_eq!(json(&o)["value"], "9");
    let o = cdc(&["bound", "--theorem", "cdc45", "--q", "3", "--n", "13"]);
    assert_eq!(json(&o)["value"], "1879773300800662");
}

#[test]
fn bound_exit_codes() {
    let o = cdc(&["bound", "--theorem", "parallel", "--q", "2", "--n", "5", "--k", "3", "--delta", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cdc(&["bound", "--theorem", "cor2", "--q", "6", "--delta", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cdc(&["bound", "--theorem", "nope", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cdc(&["bound", "--theorem", "upper", "--q", "2", "--n", "12", "--k", "4", "--delta", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = cdc(&["bound", "--theorem", "upper", "--q", "2", "--n", "12", "--k", "4", "--delta", "3", "--aq-term", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["value"], "65545");
}

#[test]
fn tables_check_against_golden() {
    for t in ["1", "2", "3"] {
        let o = cdc(&["table", "--table", t, "--check"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let o = cdc(&["table", "--table", "3"]);
    assert_eq!(json(&o).as_array().unwrap().len(), 42);
    let o = cdc(&["table", "--table", "1", "--rows", "q=4,n=15"]);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert_eq!(rows[0]["value"], "4722384778841908199452");
    assert_eq!(cdc(&["table", "--table", "4"]).status.code(), Some(2));
    assert_eq!(cdc(&["table", "--table", "1", "--rows", "x=1"]).status.code(), Some(2));
}

#[test]
fn tampered_golden_fails_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.json");
    let o = cdc(&["table", "--table", "3"]);
    let mut rows = json(&o);
    rows[5]["value"] = serde_json::Value::String("12345".into());
    std::fs::write(&path, serde_json::to_string(&rows).unwrap()).unwrap();
    let o = cdc(&["table", "--table", "3", "--check", "--golden", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 mismatches"));
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> (String, serde_json::Value) {
    let out = dir.join(name);
    let out = out.to_str().unwrap().to_string();
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &out]);
    let o = cdc(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    (out, json(&o))
}

#[test]
fn construct_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (path, s) = construct(dir.path(), "new.code", &["--method", "new", "--q", "2", "--n", "8", "--k", "4", "--delta", "2"]);
    assert_eq!(s["count"], 4642);
    assert_eq!(s["matches_bound"], true);
    let o = cdc(&["verify", "--in", &path, "--min-distance", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = json(&o);
    assert_eq!((rep["pass"].clone(), rep["certified"].clone(), rep["min_observed"].clone()), (true.into(), true.into(), 4.into()));
    let o = cdc(&["verify", "--in", &path, "--min-distance", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["counterexample"]["distance"], 4);
    let a = cdc(&["verify", "--in", &path, "--sample", "2000", "--seed", "9"]);
    let b = cdc(&["verify", "--in", &path, "--sample", "2000", "--seed", "9"]);
    let strip = |o: &Output| {
        let mut v = json(o);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(strip(&a)["certified"], false);
}

#[test]
fn construct_lifted_and_parallel() {
    let dir = tempfile::tempdir().unwrap();
    let (_, s) = construct(dir.path(), "l.code", &["--method", "lifted", "--q", "2", "--n", "8", "--k", "4", "--delta", "2"]);
    assert_eq!(s["count"], 4096);
    let (path, s) = construct(dir.path(), "p.code", &["--method", "parallel", "--q", "4", "--n", "4", "--k", "2", "--delta", "1"]);
    assert_eq!(s["matches_bound"], true);
    let o = cdc(&["verify", "--in", &path]);
    assert_eq!(o.status.code(), Some(0));
    // k < 2 delta forces the coset GRMC.
    let (path, s) = construct(dir.path(), "c.code", &["--method", "parallel", "--q", "2", "--n", "6", "--k", "3", "--delta", "2"]);
    assert_eq!(s["count"].as_u64().unwrap(), 64 + 7);
    assert_eq!(cdc(&["verify", "--in", &path]).status.code(), Some(0));
    let o = cdc(&["construct", "--method", "lifted", "--q", "2", "--n", "8", "--k", "4", "--delta", "2", "--cap", "100", "--out", "/dev/null"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.code");
    std::fs::write(&path, "format: cdc-code/1\nq: 2\nn: 4\nk: 2\nd: 2\ncount: 1\n\n1 1 0 0\n1 0 0 0\n").unwrap();
    let o = cdc(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 8"));
    let o = cdc(&["verify", "--in", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ratio_table() {
    let o = cdc(&["ratio", "--q", "2", "--delta-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2\t4642\t4797\t0.967688\t4642/4797"));
    assert!(text.contains("3\t16865174\t16877657\t0.999260\t16865174/16877657"));
    assert!(text.trim_end().ends_with("non_increasing_f\ttrue"));
    assert_eq!(cdc(&["ratio", "--q", "2", "--delta-max", "1"]).status.code(), Some(2));
}

#[test]
fn code_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (path, _) = construct(dir.path(), "gf4.code", &["--method", "lifted", "--q", "4", "--n", "6", "--k", "3", "--delta", "2"]);
    let code = cdc_core::io::read_code_file(Path::new(&path)).unwrap();
    assert_eq!(code.len(), 4096);
    let again = dir.path().join("again.code");
    cdc_core::io::write_code_file(&code, &again).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("format: cdc-code/1\nq: 4\np: 2\ne: 2\nmodulus: 1 1 1\n"));
}
