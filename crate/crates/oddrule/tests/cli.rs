use std::path::{Path, PathBuf};
use std::process::Command;

use oddrule::error::{EXIT_INPUT, EXIT_LIMIT, EXIT_OK, EXIT_VERIFY};
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["oddrule"];
    argv.extend_from_slice(args);
    let code = oddrule::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn synth(dir: &Path, name: &str, p: u32, vars: &str, poly: &str) -> PathBuf {
    let path = dir.join(name);
    let r = run(&[
        "synth",
        "-p",
        &p.to_string(),
        "--vars",
        vars,
        "--poly",
        poly,
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    path
}

fn toy(dir: &TempDir) -> String {
    synth(dir.path(), "toy.json", 2, "x", "1+x+x^2")
        .to_str()
        .unwrap()
        .to_string()
}

fn lines(s: &str) -> Vec<&str> {
    s.lines().collect()
}

#[test]
fn eval_small_indices() {
    let dir = TempDir::new().unwrap();
    let toy = toy(&dir);
    assert_eq!(run(&["eval", "--scheme", &toy, "--n", "5"]).out, "9\n");
    assert_eq!(run(&["eval", "--scheme", &toy, "--n", "0"]).out, "1\n");
    assert_eq!(
        run(&["eval", "--scheme", &toy, "--n", "5", "--histogram"]).out,
        "9\n"
    );
}

#[test]
fn eval_big_index() {
    let dir = TempDir::new().unwrap();
    let toy = toy(&dir);
    let r = run(&["--json", "eval", "--scheme", &toy, "--npow10", "100"]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(
        v["value"].to_string(),
        "67491179529985179890010057158074951171875"
    );
    assert_eq!(v["n"].to_string(), format!("1{}", "0".repeat(100)));
}

#[test]
fn gf_text_and_json() {
    let dir = TempDir::new().unwrap();
    let toy = toy(&dir);
    assert_eq!(run(&["gf", "--scheme", &toy]).out, "(1+2*t)/(1-t-2*t^2)\n");
    assert_eq!(
        run(&["gf", "--scheme", &toy, "--guess"]).out,
        "(1+2*t)/(1-t-2*t^2)\n"
    );
    assert_eq!(
        run(&["--json", "gf", "--scheme", &toy, "--guess", "--terms", "8"]).out,
        "{\"num\":[1,2],\"den\":[1,-1,-2],\"rigorous\":true}\n"
    );
}

#[test]
fn terms_and_histogram_lines() {
    let dir = TempDir::new().unwrap();
    let toy = toy(&dir);
    assert_eq!(
        lines(&run(&["terms", "--scheme", &toy, "--count", "8"]).out),
        ["1", "3", "3", "5", "3", "9", "5", "11"]
    );
    let p3 = synth(dir.path(), "p3.json", 3, "x", "1+x");
    let r = run(&[
        "terms",
        "--scheme",
        p3.to_str().unwrap(),
        "--count",
        "3",
        "--histogram",
    ]);
    assert_eq!(lines(&r.out), ["0 1,0", "1 2,0", "2 2,1"]);
}

#[test]
fn pow_matches_sparse_entries() {
    let dir = TempDir::new().unwrap();
    let corpus = [
        (2, "x", "1+x+x^2"),
        (2, "x", "1+x"),
        (3, "x", "1+x"),
        (3, "x", "1+x+x^2"),
        (2, "x,y", "1+x+y+x*y"),
        (2, "x,y", "x^-1+x+y^-1+y"),
    ];
    for (i, (p, vars, poly)) in corpus.into_iter().enumerate() {
        let path = synth(dir.path(), &format!("c{i}.json"), p, vars, poly);
        let path = path.to_str().unwrap();
        let sparse = run(&["sparse", "--scheme", path, "--count", "30"]).out;
        let sparse = lines(&sparse);
        assert_eq!(sparse.len(), 31);
        for (k, want) in sparse.iter().enumerate() {
            let r = run(&["eval", "--scheme", path, "--pow", &k.to_string()]);
            assert_eq!(r.out.trim(), *want, "{poly} mod {p} k={k}");
        }
        let r = run(&["check", "--scheme", path, "--nmax", "128"]);
        assert_eq!(r.code, EXIT_OK, "{poly} mod {p}: {}", r.out);
    }
}

#[test]
fn synth_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let toy = toy(&dir);
    let stdout = run(&["synth", "-p", "2", "--vars", "x", "--poly", "1+x+x^2"]).out;
    assert_eq!(std::fs::read_to_string(&toy).unwrap(), stdout);
    let scheme = oddrule::read_scheme(Path::new(&toy)).unwrap();
    assert_eq!(oddrule::scheme_to_json(&scheme), stdout);
}

#[test]
fn corrupted_scheme_fails_check() {
    let dir = TempDir::new().unwrap();
    let toy = toy(&dir);
    let text = std::fs::read_to_string(&toy).unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text.replace("[[[1],[1,2]]", "[[[1],[1,1]]")).unwrap();
    let r = run(&["--json", "check", "--scheme", bad.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_VERIFY);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["passed"], false);
    let rec = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "recurrence-identity")
        .unwrap();
    assert_eq!(rec["passed"], false);
    let cx = &rec["counterexample"];
    assert_eq!(cx["n"].to_string(), "1");
    assert_eq!(cx["state"].to_string(), "1");
    assert_eq!(cx["expected"].to_string(), "3");
    assert_eq!(cx["got"].to_string(), "2");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let toy = toy(&dir);
    assert_eq!(
        run(&["eval", "--scheme", "missing.json", "--n", "1"]).code,
        EXIT_INPUT
    );
    assert_eq!(
        run(&["eval", "--scheme", &toy, "--n", "-1"]).code,
        EXIT_INPUT
    );
    assert_eq!(run(&["eval", "--scheme", &toy]).code, EXIT_INPUT);
    assert_eq!(
        run(&["eval", "--scheme", &toy, "--n", "1", "--pow", "2"]).code,
        EXIT_INPUT
    );
    assert_eq!(
        run(&["synth", "-p", "4", "--vars", "x", "--poly", "x"]).code,
        EXIT_INPUT
    );
    assert_eq!(
        run(&["synth", "-p", "2", "--vars", "x", "--poly", "1+y"]).code,
        EXIT_INPUT
    );
    assert_eq!(
        run(&["synth", "-p", "2", "--vars", "x", "--poly", "2"]).code,
        EXIT_INPUT
    );
    let r = run(&[
        "synth",
        "-p",
        "2",
        "--vars",
        "x,y",
        "--poly",
        "x^-1+x+y^-1+y+x*y",
        "--max-states",
        "2",
    ]);
    assert_eq!(r.code, EXIT_LIMIT);
    assert!(r.err.starts_with("error: "));
    let r = run(&["gf", "--scheme", &toy, "--solve-limit", "1"]);
    assert_eq!(r.code, EXIT_LIMIT);
    let r = run(&["check", "--scheme", &toy, "--nmax", "64", "--budget", "3"]);
    assert_eq!(r.code, EXIT_LIMIT);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_exit_status() {
    let dir = TempDir::new().unwrap();
    let toy = toy(&dir);
    let out = Command::new(env!("CARGO_BIN_EXE_oddrule"))
        .args(["eval", "--scheme", &toy, "--n", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(out.stdout, b"9\n");
    let out = Command::new(env!("CARGO_BIN_EXE_oddrule"))
        .args(["eval", "--scheme", "missing.json", "--n", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
}
