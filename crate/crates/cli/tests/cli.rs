use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcoh")).args(args).env_remove("PCOH_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    let line = text.lines().last().expect("an error line");
    serde_json::from_str(line).unwrap_or_else(|e| panic!("{e}: {text}"))
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name).display().to_string()
}

#[test]
fn info_reports_the_fingerprint() {
    let o = pcoh(&["info", "D8"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("rank: 2\n"), "{s}");
    assert!(s.contains("center rank: 1\n"), "{s}");
    assert!(s.contains("p-central: false\n"), "{s}");
}

#[test]
fn invariants_of_q8() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q8.json");
    let o = pcoh(&["invariants", "Q8", "--degree", "8", "--json", out.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["d0"], 3);
    assert_eq!(v["d1"], 5);
    assert_eq!(v["type"], serde_json::json!([4]));
    assert_eq!(v["certified"]["d1"], true);
    for key in ["group_id", "p", "order", "rank", "center_rank", "p_central", "e", "h", "e_prime", "e_double_prime", "cess_nonzero", "truncation_degree"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn non_p_central_report_has_null_d1() {
    let o = pcoh(&["invariants", "D8", "--degree", "6"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["d1"].is_null());
    assert_eq!(v["e_prime"], -1);
    assert_eq!(v["cess_nonzero"], false);
}

#[test]
fn table_rows_match_the_reports() {
    let o = pcoh(&["table", "Q8", "Z4", "SD16"]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header.join(","), "order,id,type,e,h,d0,d1,e_prime,e_dprime,p_central,certified");
    let rows: Vec<Vec<String>> = rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    assert_eq!(rows[0], ["8", "Q8", "[4]", "3", "2", "3", "5", "3", "3", "true", "true"]);
    assert_eq!(rows[1], ["4", "Z4", "[2]", "1", "1", "1", "2", "1", "1", "true", "true"]);
    assert_eq!(rows[2], ["16", "SD16", "[4]", "3", "2", "2", "", "2", "2", "false", "true"]);
    // each row agrees with the JSON report at the same degree bound
    for (row, id) in rows.iter().zip(["Q8", "Z4", "SD16"]) {
        // default bound for orders up to 32
        let v: Value = serde_json::from_str(&stdout(&pcoh(&["invariants", id, "--degree", "10"]))).unwrap();
        let field = |k: &str| if v[k].is_null() { String::new() } else { v[k].to_string() };
        assert_eq!(row[3], field("e"));
        assert_eq!(row[5], field("d0"));
        assert_eq!(row[6], field("d1"));
        assert_eq!(row[7], field("e_prime"));
        assert_eq!(row[8], field("e_double_prime"));
        assert_eq!(row[9], field("p_central"));
    }
}

#[test]
fn supplied_presentation_in_a_table() {
    let id = format!("64#108={}", data("64_108.pcp"));
    let o = pcoh(&["table", &id]);
    assert!(o.status.success(), "{o:?}");
    let s = stdout(&o);
    assert!(s.contains("64,64#108,\"[8,2]\",8,4,7,,7,7,false,true"), "{s}");
}

#[test]
fn cess_of_sd16() {
    let o = pcoh(&["cess", "SD16", "--degree", "8"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("cess nonzero: true (certified: true)"), "{s}");
    assert!(s.contains("e': 2 (certified: true"), "{s}");
    assert!(s.contains("\n1\t1\t1\t1\n"), "{s}");
}

#[test]
fn cohomology_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = pcoh(&["cohomology", "W2", "--degree", "6", "--cache", d]);
    assert!(first.status.success());
    assert!(String::from_utf8_lossy(&first.stderr).contains("cache stored"));
    let second = Command::new(env!("CARGO_BIN_EXE_pcoh"))
        .args(["cohomology", "W2", "--degree", "6"])
        .env("PCOH_CACHE_DIR", d)
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hit"));
    assert_eq!(stdout(&first), stdout(&second));
    let s = stdout(&first);
    assert!(s.contains("\n2\t5\t5\n"), "{s}");
    assert!(s.contains("\n6\t22\t0\n"), "{s}");
}

#[test]
fn failures_are_json_with_nonzero_exit() {
    let o = pcoh(&["info", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "catalog");

    let o = pcoh(&["invariants", "Q8"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "usage");

    let o = pcoh(&["--budget", "50", "cohomology", "W2", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "computation");

    let o = pcoh(&["table", "Q8", "64#108=/nonexistent.pcp"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "catalog");
}

#[test]
fn verify_quick_reports_every_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.json");
    let o = pcoh(&["verify", "--suite", "quick", "--json", out.to_str().unwrap()]);
    let s = stdout(&o);
    for n in 1..=7 {
        assert!(s.contains(&format!("criterion {n}: ")), "{s}");
    }
    assert!(!s.contains("criterion 8: "));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
    // exit status mirrors the outcomes
    let failed: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["checks"].as_array().unwrap().iter().any(|k| k["passed"] == false))
        .map(|c| c["number"].as_u64().unwrap())
        .collect();
    if failed.is_empty() {
        assert!(o.status.success());
    } else {
        assert_eq!(o.status.code(), Some(1));
        assert_eq!(error_json(&o)["failed"], serde_json::json!(failed));
    }
}

#[test]
fn verify_without_a_presentation_skips_criterion_9() {
    let o = pcoh(&["verify", "--suite", "full"]);
    let s = stdout(&o);
    assert!(s.contains("criterion 9: SKIP"), "{s}");
}
