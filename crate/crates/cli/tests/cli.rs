use std::process::{Command, Output};

use serde_json::Value;

fn glr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glr-fock")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = glr(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

#[test]
fn act_applies_words() {
    assert_eq!(ok(&["act", "--partition", "1", "--word", "P_1(-2)", "--state", "0:[]"]).trim(), "{(0:[1,1]): -1/2, (0:[2]): 1/2}");
    assert_eq!(ok(&["act", "--partition", "2", "--word", "F_0", "--state", "0:[]"]).trim(), "{(0:[1]): 1}");
    assert_eq!(ok(&["act", "--partition", "2", "--word", "H_0", "--state", "vacuum"]).trim(), "{(0:[]): 1}");
    // Both models agree, and words apply rightmost first.
    for model in ["geo", "alg"] {
        let out = ok(&["act", "--partition", "1,1", "--model", model, "--word", "F_1 F_0", "--state", "vacuum"]);
        let reversed = ok(&["act", "--partition", "1,1", "--model", model, "--word", "F_0 F_1", "--state", "vacuum"]);
        assert_ne!(out, reversed, "{model}");
        assert_eq!(reversed.trim(), "{}", "F_1 kills the vacuum");
    }
}

#[test]
fn act_json_round_trips_through_the_library() {
    let text = ok(&["act", "--partition", "1", "--word", "P_1(-3)", "--format", "json"]);
    let v = glr_fock::fock::FockVector::from_json(text.trim()).unwrap();
    assert_eq!(v.len(), 3);
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        &["act", "--word", "Q_1", "--state", "vacuum"][..],
        &["act", "--word", "P_1(1)", "--state", "0:[2] | 0:[]"],
        &["act", "--word", "E_0", "--state", "vacuum"],
        &["act", "--partition", "0,1", "--word", "L_1"],
        &["verify", "--checks", "clifford,nope"],
        &["matrix", "--op", "P_1(1)", "--block", "garbage"],
        &["matrix", "--partition", "1,1", "--op", "P_1(1)", "--block", "c=0;E=1->0"],
        &["convert", "--to", "boson", "not a state"],
        &["--bogus-flag"],
    ] {
        assert_eq!(glr(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unsorted_partition_is_sorted_with_a_warning() {
    let out = glr(&["act", "--partition", "2,1", "--word", "L_0", "--state", "1:[] | -1:[1]"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sorted to (1,2)"));
}

#[test]
fn verify_reports_and_exit_codes() {
    ok(&["verify", "--partition", "2,1", "--max-energy", "4", "--charge-window", "1", "--checks", "clifford,geo-vs-alg"]);
    let text = ok(&["verify", "--partition", "2", "--max-energy", "2", "--checks", "all", "--format", "json"]);
    let reports: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), glr_fock::verify::CHECKS.len());
    assert!(reports.iter().all(|r| r["passed"] == Value::Bool(true) && r["skipped"] == 0));
    assert!(text.starts_with("{\"check\":\"clifford\",\"statement\":"), "stable field order");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--partition", "3", "--max-energy", "20", "--checks", "efh-counting", "--seed", "5", "--format", "json"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn matrix_dumps_and_transposes() {
    let up: Value = serde_json::from_str(&ok(&["matrix", "--op", "P_1(-1)", "--block", "c=0;E=0->1", "--format", "json"])).unwrap();
    assert_eq!(up["entries"], serde_json::json!([[0, 0, "1"]]));
    let raw = ok(&["matrix", "--op", "P_1(-1)", "--block", "c=0;E=0->1", "--format", "json"]);
    assert!(raw.starts_with("{\"block\":"), "{raw}");

    let down: Value =
        serde_json::from_str(&ok(&["matrix", "--op", "P_1(1)", "--block", "c=0;E=2->1", "--format", "json"])).unwrap();
    let up: Value =
        serde_json::from_str(&ok(&["matrix", "--op", "P_1(-1)", "--block", "c=0;E=1->2", "--format", "json"])).unwrap();
    assert_eq!(down["rows"], up["cols"]);
    assert_eq!(down["cols"], up["rows"]);
    let flip = |v: &Value| -> Vec<(u64, u64, String)> {
        let mut out: Vec<_> = v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e[1].as_u64().unwrap(), e[0].as_u64().unwrap(), e[2].as_str().unwrap().to_string()))
            .collect();
        out.sort();
        out
    };
    let same = |v: &Value| -> Vec<(u64, u64, String)> {
        let mut out: Vec<_> = v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap(), e[2].as_str().unwrap().to_string()))
            .collect();
        out.sort();
        out
    };
    assert_eq!(flip(&down), same(&up));

    let empty: Value =
        serde_json::from_str(&ok(&["matrix", "--partition", "2", "--op", "E_1", "--block", "c=0;E=0->0", "--format", "json"])).unwrap();
    assert_eq!(empty["entries"], serde_json::json!([]));
}

#[test]
fn char_tables() {
    let s1: Vec<Value> =
        serde_json::from_str(&ok(&["char", "--max-energy", "5", "--charge-window", "0", "--format", "json"])).unwrap();
    let dims: Vec<u64> = s1.iter().map(|c| c["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 1, 2, 3, 5, 7]);
    let s2: Vec<Value> = serde_json::from_str(&ok(&[
        "char", "--partition", "1,1", "--max-energy", "4", "--charge-window", "0", "--format", "json",
    ]))
    .unwrap();
    let dims: Vec<u64> = s2.iter().map(|c| c["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 2, 5, 10, 20]);
    let empty = ok(&["char", "--max-energy", "0", "--charge-window", "0", "--format", "json"]);
    assert_eq!(empty.trim(), r#"[{"energy":0,"charges":[0],"dim":1}]"#);
}

#[test]
fn convert_both_ways() {
    assert_eq!(ok(&["convert", "--to", "fermion", "q^0 * p[2]"]).trim(), "{(0:[1,1]): -1, (0:[2]): 1}");
    assert_eq!(ok(&["convert", "--to", "boson", "0:[1]"]).trim(), "{(q^0 * p[1]): 1}");
    let there = ok(&["convert", "--to", "boson", "{(0:[2,1]): 3/2, (1:[1]): -1}"]);
    let back = ok(&["convert", "--to", "fermion", there.trim()]);
    assert_eq!(back.trim(), "{(0:[2,1]): 3/2, (1:[1]): -1}");
}

#[test]
fn notes_flag_prints_conventions() {
    let text = ok(&["--paper-notes"]);
    assert!(text.lines().count() >= 4);
    assert!(text.contains("leg"));
    assert!(text.contains("r_l - 1"));
}
