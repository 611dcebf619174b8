use std::io::Write;
use std::process::{Command, Output, Stdio};

use itertools::Itertools;
use serde_json::Value;

use hecke_star::{DecreasingFactorization, SetValuedTableau, Tableau};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hecke-star"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SKEW: &str = r#"{"notation":"french","outer":[2,2],"inner":[1],"rows":[[[1,2]],[[2,3],[3]]]}"#;

#[test]
fn help_and_usage_errors() {
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
    for sub in ["enumerate", "insert", "residue", "uncrowd", "graph", "expand", "verify"] {
        assert_eq!(run(&[sub, "--help"], "").status.code(), Some(0), "{sub}");
    }
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["expand", "--word", "12", "--vars", "2", "--bogus"], "").status.code(), Some(2));
    assert_eq!(run(&["expand", "--word", "12", "--perm", "21", "--vars", "2"], "").status.code(), Some(2));
}

#[test]
fn validation_errors_exit_2() {
    // not decreasing
    assert_eq!(run(&["residue", "--invert"], "(12)").status.code(), Some(2));
    assert_eq!(run(&["uncrowd"], "{not json").status.code(), Some(2));
    // braid inside: no ⋆-crystal
    let o = run(&["graph", "--seed", "()(21)(32)(32)", "--crystal", "star"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not fully commutative"));
    assert_eq!(run(&["verify", "--theorem", "nonsense"], "").status.code(), Some(2));
}

#[test]
fn expand_formats() {
    let text = stdout(&run(&["expand", "--word", "12132", "--vars", "4", "--max-beta", "2"], ""));
    assert!(text.contains("# s221 + 2*β*s222 + 3*β*s2211 + 6*β^2*s2221"), "{text}");
    let csv = stdout(&run(&["expand", "--word", "12132", "--vars", "4", "--max-beta", "2", "--format", "csv"], ""));
    assert_eq!(csv, "beta,partition,coefficient\n0,2 2 1,1\n1,2 2 2,2\n1,2 2 1 1,3\n2,2 2 2 1,6\n");
    // both methods agree on a fully-commutative element
    let both = stdout(&run(&["expand", "--perm", "2143", "--vars", "3", "--max-beta", "2", "--method", "both"], ""));
    assert!(both.contains("s2 + s11"), "{both}");
}

#[test]
fn json_outputs_round_trip() {
    let fs = stdout(&run(&["enumerate", "--perm", "2143", "--m", "3", "--max-excess", "1", "--format", "json"], ""));
    let parsed: Vec<DecreasingFactorization> = serde_json::from_str(&fs).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), fs.trim_end());
    let text = stdout(&run(&["enumerate", "--perm", "2143", "--m", "3", "--max-excess", "1"], ""));
    assert_eq!(text.lines().collect_vec(), parsed.iter().map(|f| f.to_string()).collect_vec());

    let t = stdout(&run(&["residue", "--invert", "--shape", "2,2/1"], "(21)(31)(3)"));
    let parsed: SetValuedTableau = serde_json::from_str(&t).unwrap();
    assert_eq!(parsed, serde_json::from_str::<SetValuedTableau>(SKEW).unwrap());
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), t.trim_end());

    let f = stdout(&run(&["residue", "--format", "json"], SKEW));
    let parsed: DecreasingFactorization = serde_json::from_str(&f).unwrap();
    assert_eq!(parsed.to_string(), "(21)(31)(3)");
}

#[test]
fn residue_round_trip_through_the_binary() {
    let f = stdout(&run(&["residue"], SKEW));
    assert_eq!(f.trim(), "(21)(31)(3)");
    let t = stdout(&run(&["residue", "--invert", "--shape", "2,2/1"], &f));
    assert_eq!(stdout(&run(&["residue"], &t)), f);
}

#[test]
fn star_insert_worked_biword() {
    let out = stdout(&run(&["insert", "--algo", "star", "--trace"], "4 4 2 2 1 1\n4 2 4 2 3 1\n"));
    let v: Value = serde_json::from_str(&out).unwrap();
    let p: Tableau = serde_json::from_value(v["P"].clone()).unwrap();
    let q: Tableau = serde_json::from_value(v["Q"].clone()).unwrap();
    assert_eq!(p.rows(), &[vec![1, 2, 4], vec![1, 4], vec![3]]);
    assert_eq!(q.rows(), &[vec![1, 1, 2], vec![2, 4], vec![4]]);
    assert_eq!(v["trace"][5], serde_json::json!([[1, 3], [2, 2]]));
    // the same input as a factorization
    let again = stdout(&run(&["insert", "--algo", "star", "--trace", "--n", "5"], "()(42)()(42)(31)"));
    assert_eq!(again, out);
}

#[test]
fn hecke_insert_records_multisets() {
    let out = stdout(&run(&["insert", "--algo", "hecke"], "(21)(41)"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["Q"]["rows"], serde_json::json!([[[1], [1]], [[2, 2]]]));
    assert!(v.get("trace").is_none());
}

#[test]
fn uncrowd_outputs_p_and_q() {
    let out = stdout(&run(&["uncrowd"], SKEW));
    let v: Value = serde_json::from_str(&out).unwrap();
    let p: Tableau = serde_json::from_value(v["P"].clone()).unwrap();
    let q: Tableau = serde_json::from_value(v["Q"].clone()).unwrap();
    assert_eq!(p.rows(), &[vec![1], vec![2, 2], vec![3, 3]]);
    // one new cell per extra entry, labelled by the row it came from
    assert_eq!(q.rows(), &[vec![], vec![], vec![1, 2]]);
}

#[test]
fn graph_formats() {
    let dot = stdout(&run(&["graph", "--seed", "(2)(1)(1)", "--crystal", "star"], ""));
    assert!(dot.starts_with("digraph crystal {"));
    assert_eq!(dot.matches("->").count(), 8);
    assert!(dot.contains("color=blue") && dot.contains("color=red"));

    let json = stdout(&run(&["graph", "--seed", "(2)(1)(1)", "--format", "json"], ""));
    let v: Value = serde_json::from_str(&json).unwrap();
    let nodes: Vec<DecreasingFactorization> = serde_json::from_value(v["nodes"].clone()).unwrap();
    assert_eq!(nodes.len(), 8);
    assert_eq!(v["edges"].as_array().unwrap().len(), 8);

    // three-strand crystal, component of the figure's source
    let text = stdout(&run(&["graph", "--seed", "()(21)(21)", "--crystal", "n3", "--format", "text"], ""));
    assert!(text.lines().any(|l| l.ends_with(": ()(21)(21)")));

    let svt = stdout(&run(&["graph", "--crystal", "svt", "--format", "json"], SKEW));
    let v: Value = serde_json::from_str(&svt).unwrap();
    let nodes: Vec<SetValuedTableau> = serde_json::from_value(v["nodes"].clone()).unwrap();
    assert!(nodes.contains(&serde_json::from_str(SKEW).unwrap()));
}

#[test]
fn verify_one_suite() {
    let out = stdout(&run(&["verify", "--theorem", "catalan"], ""));
    assert!(out.starts_with("PASS catalan: 5 instances, 0 failures"), "{out}");
    let json = stdout(&run(&["verify", "--theorem", "grassmannian", "--json"], ""));
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["suite"], "grassmannian");
    assert_eq!(v[0]["failures"], 0);
}
