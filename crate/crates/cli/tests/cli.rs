use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use midconv::format::{emit_system, parse_system, AnySystem};
use midconv::fuchsian::{krammer_k, rank_one, target_h};
use midconv::pcurvature::fibonacci_system;
use midconv::tuples::{build_g2_tuple, g2_display_pair};
use serde_json::Value;

fn midconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_midconv"))
        .args(args)
        .env_remove("MIDCONV_CONJUGACY_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reproduce_krammer_h_passes() {
    let o = midconv(&["reproduce", "krammer-h"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn reproduce_is_deterministic_across_jobs() {
    let a = midconv(&["reproduce", "krammer-h-scan", "--jobs", "1"]);
    let b = midconv(&["reproduce", "krammer-h-scan", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reproduce_g2_monodromy_passes() {
    let o = midconv(&["reproduce", "g2-monodromy"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn pcurv_reports_fibonacci_not_nilpotent() {
    let dir = tempfile::tempdir().unwrap();
    let fib = write(dir.path(), "fib.sys", &emit_system(&fibonacci_system()));
    let o = midconv(&["pcurv", "--input", s(&fib), "--prime", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "good");
    assert_eq!(v["nilpotent"], false);
    assert_eq!(v["index"], Value::Null);
    assert_eq!(v["method"], "recursive");
}

#[test]
fn pcurv_marks_bad_primes() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.sys", &emit_system(&krammer_k()));
    let v = json(&midconv(&[
        "pcurv",
        "--input",
        s(&k),
        "--prime",
        "5",
        "--no-timings",
    ]));
    assert_eq!(v["status"], "bad");
    assert!(v["reason"].as_str().unwrap().contains("collide"));
}

#[test]
fn pcurv_okubo_needs_okubo_form() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.sys", &emit_system(&krammer_k()));
    let o = midconv(&[
        "pcurv",
        "--input",
        s(&k),
        "--prime",
        "7",
        "--method",
        "okubo",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let c = write(
        dir.path(),
        "c.sys",
        &emit_system(&krammer_k().naive_convolution(&midconv::algebra::rat(1, 6))),
    );
    let o = midconv(&[
        "pcurv",
        "--input",
        s(&c),
        "--prime",
        "7",
        "--method",
        "okubo",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["nilpotent"], true);
}

#[test]
fn dual_twice_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let text = emit_system(&rank_one(0));
    let f0 = write(dir.path(), "f0.sys", &text);
    let once = midconv(&["dual", "--input", s(&f0)]);
    let d = write(dir.path(), "d.sys", &stdout(&once));
    let twice = midconv(&["dual", "--input", s(&d)]);
    assert_eq!(stdout(&twice), text);
}

#[test]
fn convolve_and_conjugate() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.sys", &emit_system(&krammer_k()));
    let o = midconv(&["convolve", "--input", s(&k), "--mu", "1/6"]);
    assert_eq!(o.status.code(), Some(0));
    let mc = parse_system(&stdout(&o)).unwrap();
    let AnySystem::Q(ref mc_sys) = mc else {
        panic!("field changed")
    };
    assert_eq!(mc_sys.size(), 2);
    let mc_path = write(dir.path(), "mc.sys", &stdout(&o));
    let h = write(dir.path(), "h.sys", &emit_system(&target_h()));
    let o = midconv(&["conjugate", s(&mc_path), s(&h)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"], "conjugate");

    let naive = midconv(&["convolve", "--input", s(&k), "--mu", "-1/6", "--naive"]);
    let AnySystem::Q(c) = parse_system(&stdout(&naive)).unwrap() else {
        panic!()
    };
    assert_eq!(c.size(), 6);
}

#[test]
fn conjugate_reports_none_and_exhausted() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.sys", &emit_system(&krammer_k()));
    let h = write(dir.path(), "h.sys", &emit_system(&target_h()));
    let o = midconv(&["conjugate", s(&k), s(&h)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"], "none");

    // the centralizer of the identity has no invertible 1- or 2-term element
    let id3 = "{\"field\":\"Q\",\"size\":3,\"points\":[\"0\"],\"residues\":[[[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"0\"],[\"0\",\"0\",\"1\"]]]}";
    let i = write(dir.path(), "i.sys", id3);
    let o = midconv(&["conjugate", s(&i), s(&i)]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["result"], "exhausted");
    assert_eq!(v["dimension"], 9);
    let o = midconv(&["conjugate", s(&i), s(&i), "--terms", "3", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn conjugacy_bound_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let id3 = "{\"field\":\"Q\",\"size\":3,\"points\":[\"0\"],\"residues\":[[[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"0\"],[\"0\",\"0\",\"1\"]]]}";
    let i = write(dir.path(), "i.sys", id3);
    let o = Command::new(env!("CARGO_BIN_EXE_midconv"))
        .args(["conjugate", s(&i), s(&i)])
        .env("MIDCONV_CONJUGACY_BOUND", "x")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conjugate_tuples() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.tup",
        &midconv::format::emit_tuple(&build_g2_tuple().unwrap().tuple),
    );
    let b = write(
        dir.path(),
        "b.tup",
        &midconv::format::emit_tuple(&g2_display_pair()),
    );
    let o = midconv(&["conjugate", s(&a), s(&b)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn tensor_and_okubo() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = write(dir.path(), "f1.sys", &emit_system(&rank_one(1)));
    let f2 = write(dir.path(), "f2.sys", &emit_system(&rank_one(2)));
    let o = midconv(&["tensor", s(&f1), s(&f2)]);
    assert_eq!(
        stdout(&o),
        "{\"field\":\"Q\",\"size\":1,\"points\":[\"0\",\"1\"],\"residues\":[[[\"1/2\"]],[[\"1/2\"]]]}\n"
    );
    let k = write(dir.path(), "k.sys", &emit_system(&krammer_k()));
    let o = midconv(&["tensor", s(&k), s(&f1)]);
    assert_eq!(o.status.code(), Some(2));
    let o = midconv(&["okubo", "--input", s(&f2), "--mu", "1/3"]);
    let v = json(&o);
    assert_eq!(v["tdiag"], serde_json::json!(["0", "1"]));
    assert_eq!(v["b"], serde_json::json!([["5/6", "0"], ["1/2", "1/3"]]));
}

#[test]
fn scan_document_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.sys", &emit_system(&krammer_k()));
    let o = midconv(&[
        "scan",
        "--input",
        s(&k),
        "--primes",
        "2..13",
        "--no-timings",
        "--expect-nilpotent",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["range"], serde_json::json!([2, 13]));
    assert_eq!(v["verdict"], true);
    let bad: Vec<u64> = v["bad_primes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["prime"].as_u64().unwrap())
        .collect();
    assert_eq!(bad, vec![2, 3, 5]);

    let fib = write(dir.path(), "fib.sys", &emit_system(&fibonacci_system()));
    let o = midconv(&[
        "scan",
        "--input",
        s(&fib),
        "--primes",
        "2..30",
        "--expect-nilpotent",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = midconv(&["scan", "--input", s(&fib), "--primes", "2..30", "--table"]);
    assert!(stdout(&o).lines().next().unwrap().contains("prime"));

    let o = midconv(&[
        "scan",
        "--input",
        s(&k),
        "--primes",
        "7..13",
        "--mu",
        "1/6",
        "--no-timings",
    ]);
    assert_eq!(json(&o)["mu"], "1/6");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let junk = write(dir.path(), "junk.sys", "{\"field\":\"Q\"");
    assert_eq!(
        midconv(&["dual", "--input", s(&junk)]).status.code(),
        Some(2)
    );
    let k = write(dir.path(), "k.sys", &emit_system(&krammer_k()));
    assert_eq!(
        midconv(&["convolve", "--input", s(&k), "--mu", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        midconv(&["scan", "--input", s(&k), "--primes", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        midconv(&["pcurv", "--input", s(&k), "--prime", "8"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        midconv(&["dual", "--input", "/nonexistent"]).status.code(),
        Some(2)
    );
    assert_eq!(midconv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn scan_default_range_depends_on_size() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.sys", &emit_system(&target_h()));
    let v = json(&midconv(&["scan", "--input", s(&h), "--no-timings"]));
    assert_eq!(v["range"], serde_json::json!([2, 47]));
    let g = write(
        dir.path(),
        "g.sys",
        &emit_system(&midconv::fuchsian::target_g()),
    );
    let v = json(&midconv(&["scan", "--input", s(&g), "--no-timings"]));
    assert_eq!(v["range"], serde_json::json!([2, 13]));
}
