use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stonelab").chain(args.iter().copied());
    let code = stonelab::cli::run(argv.map(std::ffi::OsString::from), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn selection_on_chain_intervals() {
    let v = json(&[
        "analyze",
        "--kind",
        "chain",
        "--n",
        "3",
        "--analysis",
        "selection",
        "--pool",
        "intervals",
    ]);
    assert_eq!(v["results"]["value"], 3);
    assert_eq!(v["command"], "analyze");
}

#[test]
fn minsupport_on_free_algebra() {
    let v = json(&[
        "analyze",
        "--kind",
        "free",
        "--s",
        "3",
        "--analysis",
        "minsupport",
        "--clopen",
        "g0 & !g1",
    ]);
    assert_eq!(v["results"]["support_size"], 1);
    assert_eq!(
        v["results"]["assignment"]["support"],
        serde_json::json!([0])
    );
}

#[test]
fn singletons_have_value_one() {
    let v = json(&[
        "analyze",
        "--kind",
        "algebra",
        "--n",
        "4",
        "--analysis",
        "selection",
    ]);
    assert_eq!(v["results"]["value"], 1);
}

#[test]
fn solve_chain_upsets() {
    let v = json(&["solve", &fixture("chain3.json"), "--pool", "upsets"]);
    assert_eq!(v["results"]["value"], 3);
    assert_eq!(v["results"]["exact"], true);
    let g = json(&[
        "solve",
        &fixture("chain3.json"),
        "--pool",
        "upsets",
        "--mode",
        "greedy",
    ]);
    assert!(g["results"]["value"].as_u64() >= v["results"]["value"].as_u64());
}

#[test]
fn every_fixture_analyzes_and_draws() {
    for entry in
        std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap()
    {
        let path = entry.unwrap().path();
        let p = path.to_str().unwrap();
        let v = json(&["analyze", p]);
        assert!(v["results"].is_object(), "{p}");
        let (code, dot, err) = run(&["export-dot", p]);
        assert_eq!(code, 0, "{p}: {err}");
        assert!(dot.contains("graph"), "{p}");
    }
}

#[test]
fn combine_product_and_porcupine() {
    let v = json(&[
        "combine",
        "--op",
        "product",
        &fixture("sys3.json"),
        &fixture("sys2.json"),
    ]);
    assert_eq!(v["results"]["system"]["points"], 6);
    let p = json(&["combine", "--op", "porcupine", &fixture("porcupine.json")]);
    assert!(p["results"].is_object());
}

#[test]
fn table_format_flattens() {
    let (code, out, _) = run(&[
        "analyze",
        "--kind",
        "algebra",
        "--n",
        "4",
        "--analysis",
        "selection",
        "--format",
        "table",
    ]);
    assert_eq!(code, 0);
    assert!(out
        .lines()
        .any(|l| l.starts_with("results.value") && l.trim_end().ends_with('1')));
}

#[test]
fn out_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let (code, out, _) = run(&[
        "--out",
        report.to_str().unwrap(),
        "analyze",
        &fixture("poset_n.json"),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["command"], "analyze");
    let dot = dir.path().join("t.dot");
    let (code, _, _) = run(&[
        "export-dot",
        &fixture("binary7.json"),
        "--style",
        "tree",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read_to_string(dot).unwrap().matches("->").count(),
        6
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, _, err) = run(&["solve", "--kind", "chain", "--n", "30", "--pool", "all"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"));
    assert_eq!(run(&["analyze", "/nonexistent/file.json"]).0, 1);
    assert_eq!(
        run(&[
            "analyze",
            "--kind",
            "free",
            "--s",
            "2",
            "--analysis",
            "minsupport",
            "--clopen",
            "g0 &"
        ])
        .0,
        1
    );
}

#[test]
fn selftest_passes() {
    let v = json(&["selftest", "--seed", "3"]);
    assert!(v["results"].is_object());
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_stonelab"))
        .args([
            "analyze",
            "--kind",
            "algebra",
            "--n",
            "4",
            "--analysis",
            "selection",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        run(&[
            "analyze",
            "--kind",
            "algebra",
            "--n",
            "4",
            "--analysis",
            "selection"
        ])
        .1
    );
}
