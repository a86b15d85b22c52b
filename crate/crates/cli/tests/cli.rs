use std::process::{Command, Output};

use serde_json::Value;
use wmds_core::{GTPattern, GaussValue, HTable};

fn wmds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmds")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn pattern_count() {
    let out = wmds(&["patterns", "--rank", "2", "--l", "0,0", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "16\n");
}

#[test]
fn rank_one_table() {
    let out = wmds(&["hcoeff", "--rank", "1", "--l", "1", "--n", "1"]);
    assert!(out.status.success());
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let table = HTable::from_json(&json).unwrap();
    let q = GaussValue::q_pow(1, 1);
    assert!(table.value(&[0]).is_one());
    assert_eq!(table.value(&[1]), &q - &GaussValue::one(1));
    assert_eq!(table.value(&[2]), -&q);
    assert_eq!(table.entries.len(), 3);
}

#[test]
fn stable_verification_passes() {
    let out = wmds(&["verify", "stable", "--rank", "2", "--l", "0,0", "--n", "3", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["checked"], 8);
    assert_eq!(json["mismatches"], Value::Array(vec![]));
}

#[test]
fn other_verifications_pass() {
    for args in [
        &["verify", "hamel-king", "--l", "1,0"][..],
        &["verify", "lemma3", "--l", "1,0,0"],
        &["verify", "lemma4", "--l", "0,1"],
        &["verify", "gauss", "--n", "3", "--p", "7"],
        &["verify", "cs", "--l", "0,1"],
    ] {
        let out = wmds(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "stable", "--l", "0,0", "--n", "3", "--p", "11"][..],
        &["verify", "stable", "--l", "0,0", "--n", "1"],
        &["hcoeff", "--l", "0", "--n", "3", "--numeric"],
        &["hcoeff", "--rank", "2", "--l", "0", "--n", "1"],
        &["patterns"],
        &["patterns", "--rank", "x"],
        &["euler", "--m", "1,1,1", "--bound", "1000"],
    ] {
        let out = wmds(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["patterns", "--l", "1,0"][..],
        &["tableaux", "--l", "0,1", "--format", "csv"],
        &["hcoeff", "--l", "0,0", "--n", "3", "--p", "7", "--numeric"],
        &["character", "--l", "1,1", "--format", "text"],
        &["euler", "--m", "4,3", "--bound", "8"],
    ] {
        assert_eq!(wmds(args).stdout, wmds(args).stdout, "{args:?}");
    }
}

#[test]
fn patterns_roundtrip() {
    let out = wmds(&["patterns", "--l", "0,1"]);
    let text = stdout(&out);
    let patterns: Vec<GTPattern> = serde_json::from_str(&text).unwrap();
    assert_eq!(patterns.len(), 35);
    assert_eq!(serde_json::to_string(&patterns).unwrap() + "\n", text);
}

#[test]
fn worked_pattern_roundtrip() {
    let json = r#"{"rank":5,"a":[[9,6,5,3,2],[7,5,4,2],[5,3,1],[4,2],[3]],"b":[[7,6,5,3,2],[5,4,3,1],[4,2,1],[3,2],[1]]}"#;
    let p: GTPattern = serde_json::from_str(json).unwrap();
    assert_eq!(serde_json::to_string(&p).unwrap(), json);
    assert_eq!(p.weight(), vec![1, -1, 1, 1, -3]);
}

#[test]
fn character_and_tableaux() {
    let out = wmds(&["character", "--l", "0", "--format", "csv"]);
    assert_eq!(stdout(&out), "e_1,e_t,e_q,coeff\n0,0,0,1\n");
    let out = wmds(&["character", "--l", "1", "--format", "csv"]);
    assert_eq!(stdout(&out), "e_1,e_t,e_q,coeff\n-1,0,0,1\n1,0,0,1\n");
    let out = wmds(&["tableaux", "--l", "0"]);
    let json: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json.len(), 2);
    assert_eq!(json[0]["tableau"]["rows"][0][0], "1_");
}

#[test]
fn euler_table() {
    let out = wmds(&["euler", "--m", "1", "--bound", "6", "--format", "csv"]);
    assert_eq!(stdout(&out), "c_1,value\n1,1\n2,-1\n3,-1\n4,0\n5,-1\n6,1\n");
}
