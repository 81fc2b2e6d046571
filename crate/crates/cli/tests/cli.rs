use std::process::{Command, Output};

use serde_json::Value;

fn op7(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_op7")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = op7(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn test_command_verdicts() {
    let v = json(&["test", "--q", "13", "x^7+2x", "--property", "op"]);
    assert_eq!(v["results"][0]["verdict"], false);
    let v = json(&["test", "--q", "13", "3x^7+7x", "--property", "op"]);
    assert_eq!(v["results"][0]["verdict"], true);
    let v = json(&["test", "--q", "13", "x", "--property", "pp"]);
    assert_eq!(v["results"][0]["verdict"], true);
    let v = json(&["test", "--q", "13", "x^7+6x"]);
    assert_eq!(v["results"][0]["family"], 2);
    assert_eq!(v["results"][0]["exceptional"], false);
}

#[test]
fn classify_command() {
    let v = json(&["classify", "--q", "13", "x^7+6x"]);
    assert_eq!(v["results"][0]["tuple"], "(0, 0, 0, 0, 6)");
    let v = json(&["classify", "--q", "13", "x^7+5x"]);
    assert_eq!(v["results"][0]["family"], "not a PP");
    let v = json(&["classify", "--q", "13", "5x^7+3x^6+x^5+2x^3+7x+11"]);
    assert!(v["results"][0]["family"].is_number() || v["results"][0]["family"] == "not a PP");
    let v = json(&["classify", "--q", "49", "3x^7+3tx+5"]);
    assert_eq!(v["results"][0]["family"], 3);
    assert!(v["results"][0]["canonical"].is_null());
}

#[test]
fn pairs_fixtures_and_agreement() {
    let v = json(&["pairs", "--q", "13", "--family", "1", "--method", "both"]);
    assert_eq!(v["totals"]["methods_agree"], true);
    let mut got: Vec<&str> = v["results"][0]["pairs"].as_array().unwrap().iter().map(|p| p.as_str().unwrap()).collect();
    let mut want = vec!["(2,5)", "(1,10)", "(1,3)", "(1,5)", "(2,9)", "(2,8)", "(2,10)", "(1,7)"];
    want.sort();
    got.sort();
    assert_eq!(got, want);
    let v = json(&["pairs", "--q", "23", "--all"]);
    assert_eq!(v["totals"]["pair_total"], 0);
    let v = json(&["pairs", "--q", "17", "--family", "4", "--method", "table"]);
    assert_eq!(v["results"][0]["pair_count"], 8);
}

#[test]
fn enumerate_counts() {
    for (q, total) in [("13", 6422), ("25", 60000), ("23", 0)] {
        let v = json(&["enumerate", "--q", q, "--count-only"]);
        assert_eq!(v["totals"]["op_total"], total, "q={}", q);
    }
    let v = json(&["enumerate", "--q", "11", "--count-only"]);
    assert_eq!(v["totals"]["op_total"], 7260);
    assert_eq!(v["totals"]["exceptional_pairs"], 20);
}

#[test]
fn enumerate_emits_every_op() {
    let dir = std::env::temp_dir().join(format!("op7-emit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ops13.txt");
    let v = json(&["enumerate", "--q", "13", "--emit", path.to_str().unwrap()]);
    assert_eq!(v["totals"]["emitted"], 6422);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: std::collections::HashSet<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6422);
    let first = text.lines().next().unwrap();
    let o = op7(&["test", "--q", "13", "--property", "op", first]);
    assert!(stdout(&o).contains("verdict: true"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn census_command_and_budget() {
    let v = json(&["census", "--q", "8", "--canonical"]);
    assert_eq!(v["totals"]["count"], 0);
    assert_eq!(v["results"][0]["candidates"], 7 * 8u64.pow(6));
    let o = op7(&["census", "--q", "17", "--canonical", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("386201104"));
}

#[test]
fn verify_single_field() {
    let o = op7(&["verify", "--suite", "reference", "--field", "23"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("q=23 nonexistence  status: PASS"));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(op7(&["test", "--q", "13", "x^^2"]).status.code(), Some(2));
    assert_eq!(op7(&["test", "x^7"]).status.code(), Some(2));
    assert_eq!(op7(&["test", "--q", "13", "--p", "13", "x"]).status.code(), Some(2));
    assert_eq!(op7(&["pairs", "--q", "37"]).status.code(), Some(2));
    assert_eq!(op7(&["bogus"]).status.code(), Some(2));
}

#[test]
fn field_selectors_agree() {
    let a = json(&["pairs", "--q", "25", "--family", "3"]);
    let b = json(&["pairs", "--p", "5", "--r", "2", "--modulus", "2,4,1", "--family", "3"]);
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let v = json(&["enumerate", "--q", "19", "--count-only"]);
    let text = stdout(&op7(&["enumerate", "--q", "19", "--count-only"]));
    for key in ["pair_total", "op_total", "exceptional_pairs", "exceptional_op_total"] {
        let line = text.lines().find(|l| l.starts_with(&format!("{}:", key))).unwrap();
        let n: u64 = line.split(": ").nth(1).unwrap().parse().unwrap();
        assert_eq!(Value::from(n), v["totals"][key], "{}", key);
    }
}

#[test]
fn output_independent_of_workers() {
    let run = |w: &str| {
        let mut v = json(&["pairs", "--q", "19", "--all", "--workers", w]);
        v["timings"] = Value::Null;
        v
    };
    assert_eq!(run("1"), run("4"));
}
