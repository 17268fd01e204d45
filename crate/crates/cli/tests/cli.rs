//! End-to-end tests of the command-line surface: bundled files parse and
//! round-trip, commands succeed on the shipped examples, reports are
//! byte-stable for a fixed seed, and failures exit nonzero.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_siltlab"))
}

fn assets() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("assets")
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn siltlab");
    assert!(
        out.status.success(),
        "command {args:?} failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn run_fail(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn siltlab");
    assert!(!out.status.success(), "command {args:?} unexpectedly succeeded");
    format!(
        "{}{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

#[test]
fn bundled_algebras_build() {
    for (file, dim) in [
        ("a2.json", 3),
        ("loop_x2.json", 2),
        ("a2_t2.json", 6),
        ("a2_t3.json", 9),
        ("brauer_1_1.json", 18),
        ("brauer_2_1.json", 27),
        ("x4_t.json", 4),
    ] {
        let out = run_ok(&["algebra", "build", assets().join(file).to_str().unwrap()]);
        assert!(
            out.contains(&format!("dimension: {dim}")),
            "{file}: expected dimension {dim} in output:\n{out}"
        );
    }
}

#[test]
fn bundled_files_round_trip() {
    // parse → serialize → parse yields identical JSON values.
    for file in [
        "a2.json",
        "loop_x2.json",
        "a2_t2.json",
        "a2_t3.json",
        "brauer_1_1.json",
        "brauer_2_1.json",
        "x4_t.json",
        "two_term_a2.json",
        "silting_a2_t2.json",
        "obstructed_x4.json",
        "simple_module_a2_t2.json",
    ] {
        let text = std::fs::read_to_string(assets().join(file)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let reserialized = serde_json::to_string(&value).unwrap();
        let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
        assert_eq!(value, reparsed, "{file} does not round-trip");
    }
}

#[test]
fn quotient_reports_reduced_dimension() {
    let out = run_ok(&[
        "algebra",
        "quotient",
        assets().join("a2_t3.json").to_str().unwrap(),
        "--level",
        "2",
    ]);
    assert!(out.contains("dimension: 6"));
}

#[test]
fn complex_check_and_minimize() {
    let file = assets().join("two_term_a2.json");
    let out = run_ok(&["complex", "check", file.to_str().unwrap()]);
    assert!(out.contains("minimal: true"));
    let out = run_ok(&["complex", "decompose", file.to_str().unwrap()]);
    assert!(out.contains("2 indecomposable summands"));
}

#[test]
fn hom_and_relation() {
    let file = assets().join("two_term_a2.json");
    let out = run_ok(&["hom", file.to_str().unwrap(), file.to_str().unwrap()]);
    assert!(out.contains("Hom(L, M[0]) = 3"));
    let out = run_ok(&[
        "relation",
        file.to_str().unwrap(),
        file.to_str().unwrap(),
        "--which",
        "geq",
    ]);
    assert!(out.contains("geq: true"));
}

#[test]
fn explore_outputs_are_byte_stable() {
    let tmp = tempdir();
    let g1 = tmp.join("g1.json");
    let g2 = tmp.join("g2.json");
    for out in [&g1, &g2] {
        run_ok(&[
            "explore",
            assets().join("a2.json").to_str().unwrap(),
            "--depth",
            "2",
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    let a = std::fs::read(&g1).unwrap();
    let b = std::fs::read(&g2).unwrap();
    assert_eq!(a, b, "explore output is not byte-stable for a fixed seed");
}

#[test]
fn explore_jobs_do_not_change_output() {
    let tmp = tempdir();
    let g1 = tmp.join("j1.json");
    let g4 = tmp.join("j4.json");
    run_ok(&[
        "explore",
        assets().join("a2.json").to_str().unwrap(),
        "--depth",
        "2",
        "--jobs",
        "1",
        "--out",
        g1.to_str().unwrap(),
    ]);
    run_ok(&[
        "explore",
        assets().join("a2.json").to_str().unwrap(),
        "--depth",
        "2",
        "--jobs",
        "4",
        "--out",
        g4.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&g1).unwrap(), std::fs::read(&g4).unwrap());
}

#[test]
fn compare_posets_full_pipeline() {
    let tmp = tempdir();
    let top = tmp.join("top.json");
    let bottom = tmp.join("bottom.json");
    run_ok(&[
        "explore",
        assets().join("a2_t2.json").to_str().unwrap(),
        "--depth",
        "2",
        "--out",
        top.to_str().unwrap(),
    ]);
    run_ok(&[
        "explore",
        assets().join("a2_t2.json").to_str().unwrap(),
        "--depth",
        "2",
        "--level",
        "1",
        "--out",
        bottom.to_str().unwrap(),
    ]);
    let out = run_ok(&[
        "compare-posets",
        top.to_str().unwrap(),
        bottom.to_str().unwrap(),
    ]);
    assert!(out.contains("complete poset isomorphism"));
}

#[test]
fn compare_posets_rejects_unrelated_algebras() {
    let tmp = tempdir();
    let g1 = tmp.join("x1.json");
    let g2 = tmp.join("x2.json");
    run_ok(&[
        "explore",
        assets().join("a2_t2.json").to_str().unwrap(),
        "--depth",
        "1",
        "--out",
        g1.to_str().unwrap(),
    ]);
    run_ok(&[
        "explore",
        assets().join("loop_x2.json").to_str().unwrap(),
        "--depth",
        "1",
        "--out",
        g2.to_str().unwrap(),
    ]);
    let err = run_fail(&["compare-posets", g1.to_str().unwrap(), g2.to_str().unwrap()]);
    assert!(err.contains("error"));
}

#[test]
fn lift_and_obstruction_reports() {
    let tmp = tempdir();
    let report = tmp.join("lift.json");
    let out = run_ok(&[
        "lift",
        assets().join("silting_a2_t2.json").to_str().unwrap(),
        "--target-level",
        "2",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.contains("lifted to level 2"));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["outcome"], "lifted");

    let report = tmp.join("obstructed.json");
    let out = run_ok(&[
        "lift",
        assets().join("obstructed_x4.json").to_str().unwrap(),
        "--target-level",
        "2",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.contains("obstructed"));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["outcome"], "obstructed");
    assert_eq!(doc["unsolvable_certified"], true);
    assert!(doc["h2_dim"].as_u64().unwrap() > 0);
}

#[test]
fn lift_module_simple() {
    let out = run_ok(&[
        "lift-module",
        assets().join("simple_module_a2_t2.json").to_str().unwrap(),
        "--depth",
        "3",
        "--target-level",
        "2",
    ]);
    assert!(out.contains("lifted module of dimension 2"));
}

#[test]
fn endo_free_on_bundled_silting() {
    let out = run_ok(&[
        "endo-free",
        assets().join("silting_a2_t2.json").to_str().unwrap(),
    ]);
    assert!(out.contains("free over the base: true"));
}

#[test]
fn mutate_certified_complex() {
    let out = run_ok(&[
        "mutate",
        assets().join("two_term_a2.json").to_str().unwrap(),
        "--summand",
        "0",
        "--side",
        "right",
    ]);
    assert!(out.contains("certificate tier: two-term-criterion"));
    assert!(out.contains("mutation:"));
}

#[test]
fn unknown_verify_suite_lists_options() {
    let err = run_fail(&["verify", "no-such-suite"]);
    assert!(err.contains("available suites"));
    for s in ["linalg", "kunneth", "mutation-axioms"] {
        assert!(err.contains(s));
    }
}

#[test]
fn verify_smoke_suites() {
    for suite in ["linalg", "algebra", "homspaces"] {
        let out = run_ok(&["verify", suite]);
        assert!(out.contains("0 failed"), "suite {suite} reported failures:\n{out}");
    }
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("siltlab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
