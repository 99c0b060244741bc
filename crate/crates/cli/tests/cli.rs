use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../core/fixtures");
    p.push(format!("{name}.cayley"));
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conjlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn tmp(name: &str, text: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    let s = p.to_string_lossy().into_owned();
    (dir, s)
}

/// Class members as sets of labels, one per data line.
fn class_sets(out: &str) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = out
        .lines()
        .skip(1)
        .map(|l| {
            let mut m: Vec<String> = l.split('\t').skip(2).map(String::from).collect();
            m.sort();
            m
        })
        .collect();
    v.sort();
    v
}

#[test]
fn n_proper_classes_separate_two_and_three() {
    let out = ok(&["classes", "--input", &fixture("n_proper"), "--relation", "n"]);
    let classes = class_sets(&out);
    let holding = |x: &str| classes.iter().position(|c| c.iter().any(|m| m == x)).unwrap();
    assert_ne!(holding("2"), holding("3"));
    let p = ok(&["decide", "--input", &fixture("n_proper"), "--relation", "p", "2", "3"]);
    assert!(p.lines().nth(1).unwrap().contains("\ttrue\tchain="));
    let n = ok(&["decide", "--input", &fixture("n_proper"), "--relation", "n", "2", "3"]);
    assert!(n.lines().nth(1).unwrap().ends_with("\tfalse\t-"));
}

#[test]
fn trivial_monoid_has_one_class() {
    let (_d, path) = tmp("one.cayley", "1\n0\n");
    for rel in ["g", "n", "p", "pstar", "o", "c", "w", "tr", "lin", "i", "istar"] {
        let out = ok(&["classes", "--input", &path, "--relation", rel]);
        assert_eq!(out.lines().count(), 2, "{rel}");
    }
}

#[test]
fn brauer_tr_classes_are_cycle_types() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = dir.path().join("b3.cayley").to_string_lossy().into_owned();
    ok(&["build", "--kind", "brauer", "--n", "3", "--output", &b3]);
    let generic = class_sets(&ok(&["classes", "--input", &b3, "--relation", "tr"]));
    let keyed = ok(&["diagram", "--kind", "brauer", "--n", "3", "--relation", "tr"]);
    let mut fast: Vec<Vec<String>> = keyed
        .lines()
        .skip(1)
        .map(|l| {
            let mut m: Vec<String> = l.split('\t').skip(3).map(String::from).collect();
            m.sort();
            m
        })
        .collect();
    fast.sort();
    assert_eq!(generic, fast);
    assert_eq!(fast.len(), 4);
}

#[test]
fn generated_transformations_match_built_monoid() {
    let (_d, gens) = tmp("t3.txt", "# generators of T_3\n[2,3,1]\n[2,1,3]\n[1,1,3]\n");
    let dir = tempfile::tempdir().unwrap();
    let t3 = dir.path().join("t3.cayley").to_string_lossy().into_owned();
    ok(&["build", "--kind", "full", "--n", "3", "--output", &t3]);
    let a = class_sets(&ok(&["classes", "--input", &gens, "--relation", "n"]));
    let b = class_sets(&ok(&["classes", "--input", &t3, "--relation", "n"]));
    assert_eq!(a, b);
}

#[test]
fn diagram_pair_reports_verified_conjugators() {
    let out = ok(&["diagram", "--kind", "P", "--a", "3; {1,2,3}{1',2',3'}", "--b", "3; {1}{2,3}{1',3'}{2'}"]);
    assert!(out.lines().any(|l| l == "n\ttrue"));
    assert!(out.lines().any(|l| l.starts_with("witness\t")));
    let out = ok(&["diagram", "--kind", "P", "--a", "3; {1,1'}{2}{3}{2'}{3'}", "--b", "3; {1,2'}{2}{3}{1'}{3'}"]);
    assert!(out.lines().any(|l| l == "n\tfalse"));
}

#[test]
fn gset_pair_and_classes() {
    let (_d, x) = tmp("x.gset", "G=2\norbit stab={}\norbit stab={1}\n");
    let out = ok(&["gset", "--input", &x, "--a", "(1,1) (2,0)", "--b", "(1,0) (2,0)"]);
    assert!(out.lines().any(|l| l == "n\tfalse"));
    let out = ok(&["gset", "--input", &x, "--a", "(1,1) (2,0)", "--b", "(1,1) (2,0)"]);
    assert!(out.lines().any(|l| l == "n\ttrue"));
    let classes = ok(&["gset", "--input", &x]);
    let total: usize = classes.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().parse::<usize>().unwrap()).sum();
    // the free orbit goes to itself (2 ways) or to the fixed point; the fixed point stays put
    assert_eq!(total, 3);
}

#[test]
fn polygrowth_tables() {
    let out = ok(&["polygrowth", "--n", "2", "--max", "6", "--relation", "n", "--verify"]);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[2], ["2", "10", "10"]);
    for r in &rows {
        assert_eq!(r[1], r[2]);
    }
    let out = ok(&["polygrowth", "--n", "2", "--max", "3", "--relation", "pstar"]);
    let col: Vec<&str> = out.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(col, ["1", "5", "6", "8"]);
    let out = ok(&["decide", "--poly", "2", "--relation", "n", "p1 p2", "p2 p1"]);
    assert!(out.contains("\tfalse\t"));
    let out = ok(&["decide", "--poly", "2", "--relation", "p", "p1 p2", "p2 p1"]);
    assert!(out.contains("\ttrue\t"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "polycyclic", "--n", "2", "--max", "6"][..],
        &["verify", "inn"],
        &["verify", "idempotents"],
        &["verify", "inclusions"],
    ] {
        let out = ok(args);
        assert!(out.lines().count() > 0);
        assert!(out.lines().all(|l| l.starts_with("PASS\t")), "{out}");
    }
}

#[test]
fn json_output_parses() {
    let out = ok(&["--format", "json", "classes", "--input", &fixture("clifford8"), "--relation", "n"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let sizes: usize = v["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap() as usize).sum();
    assert_eq!(sizes, v["order"].as_u64().unwrap() as usize);
    let out = ok(&["--format", "json", "inn", "--input", &fixture("strict")]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["summary"]["order"].as_u64().unwrap() > 0);
    let out = ok(&["--format", "json", "polygrowth", "--n", "3", "--max", "4", "--relation", "c"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][1]["closed_form"], 7);
}

#[test]
fn output_is_deterministic() {
    let args = ["compare", "--input", &fixture("cr7")];
    assert_eq!(ok(&args), ok(&args));
    let out = ok(&args);
    assert!(out.lines().any(|l| l == "n\tistar\t="));
}

#[test]
fn exit_codes() {
    let (_d, bad) = tmp("bad.cayley", "2\n0 0\n0 x\n");
    let out = run(&["classes", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let (_d2, nonassoc) = tmp("na.cayley", "2\n1 0\n0 0\n");
    assert_eq!(code(&["classes", "--input", &nonassoc]), 2);
    // ∼i needs an inverse or completely regular semigroup
    assert_eq!(code(&["classes", "--input", &fixture("n_proper"), "--relation", "i"]), 2);
    assert_eq!(code(&["classes", "--input", &fixture("n_proper"), "--relation", "zz"]), 2);
    assert_eq!(code(&["build", "--kind", "partition", "--n", "5"]), 3);
    assert_eq!(code(&["polygrowth", "--n", "2", "--max", "500"]), 3);
    assert_eq!(code(&["verify", "diagrams", "--n", "7"]), 3);
    assert_eq!(code(&["decide", "--input", &fixture("strict"), "0", "99"]), 2);
}
