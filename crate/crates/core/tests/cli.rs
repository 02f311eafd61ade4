use std::path::Path;
use std::process::Command;

use capmatch::fixtures::{fixture, NAMES};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_capmatch");

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Report text with the timing field removed.
fn without_timing(stdout: &str) -> String {
    match serde_json::from_str::<Value>(stdout) {
        Ok(mut v) => {
            if let Some(obj) = v.as_object_mut() {
                obj.remove("timing");
            }
            v.to_string()
        }
        Err(_) => stdout.to_string(),
    }
}

fn zero_allocation(dir: &Path, name: &str) -> String {
    let n = fixture(name).unwrap().graph.vertex_count();
    let path = dir.join(format!("{name}-y.json"));
    std::fs::write(&path, serde_json::to_string(&vec!["0"; n]).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn every_command_is_deterministic_on_every_fixture() {
    let dir = tempfile::tempdir().unwrap();
    for name in NAMES {
        let inst = format!("fixtures:{name}");
        let alloc = zero_allocation(dir.path(), name);
        let commands: Vec<Vec<&str>> = vec![
            vec!["solve", &inst, "--certificate"],
            vec!["fractional", &inst],
            vec!["stability", &inst, "--certificate"],
            vec!["stabilize-m", &inst],
            vec!["stabilize-m", &inst, "--allow-nonmax"],
            vec!["stabilize", &inst],
            vec!["core-check", &inst, "--allocation", &alloc],
            vec!["verify", &inst],
            vec!["gen", "fixture", name],
            vec!["gen", "mids", "--source", &inst],
        ];
        for args in commands {
            let a = run(&args);
            let b = run(&args);
            assert!(a.code == 0 || a.code == 1 || a.code == 2, "{args:?}");
            assert_eq!(a.code, b.code, "{args:?}");
            assert_eq!(without_timing(&a.stdout), without_timing(&b.stdout), "{args:?}");
            assert_eq!(a.stderr, b.stderr, "{args:?}");
        }
    }
}

#[test]
fn documented_exit_codes() {
    let r = run(&["stability", "fixtures:fig5"]);
    assert_eq!(r.code, 2);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["results"]["nuC"], "3");
    assert_eq!(v["results"]["nuFC"], "7/2");
    assert_eq!(run(&["stability", "fixtures:single-edge"]).code, 0);
    assert_eq!(run(&["demo", "divergence"]).code, 0);
    assert_eq!(run(&["gen", "random"]).code, 1);
    assert_eq!(run(&["solve", "missing.json"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn trace_and_aux_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let aux = dir.path().join("aux.json");
    let r = run(&[
        "stabilize-m",
        "fixtures:fig1",
        "--trace",
        trace.to_str().unwrap(),
        "--emit-aux",
        aux.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let trace: Value = serde_json::from_str(&std::fs::read_to_string(trace).unwrap()).unwrap();
    assert!(!trace.as_array().unwrap().is_empty());
    let aux: Value = serde_json::from_str(&std::fs::read_to_string(aux).unwrap()).unwrap();
    assert_eq!(aux["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(aux["edges"].as_array().unwrap().len(), 13);
}

#[test]
fn generated_files_feed_back_into_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let g = run(&["gen", "random", "--seed", "7", "--n", "6", "--with-matching"]);
    assert_eq!(g.code, 0);
    std::fs::write(&path, &g.stdout).unwrap();
    let r = run(&["stabilize-m", path.to_str().unwrap()]);
    assert!(r.code == 0 || r.code == 2, "{}", r.stderr);
    let outcome = dir.path().join("o.json");
    std::fs::write(&outcome, r#"{"deals":[{"u":"u","v":"v","a_u":"1/2","a_v":"1/2"}]}"#).unwrap();
    assert_eq!(run(&["verify", "fixtures:single-edge", "--outcome", outcome.to_str().unwrap()]).code, 0);
}
