#![allow(dead_code)]

use std::path::PathBuf;

use cornering_cli::{run_args, Run};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus/golden")
}

/// `(name, arguments)` for each golden report.
pub fn manifest() -> Vec<(String, Vec<String>)> {
    let text = std::fs::read_to_string(golden_dir().join("manifest.txt")).unwrap();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once(':').unwrap();
            (name.trim().to_string(), args.split_whitespace().map(str::to_string).collect())
        })
        .collect()
}

pub fn quiver(args: &[&str]) -> Run {
    run_args(std::iter::once("quiver").chain(args.iter().copied()))
}

pub fn quiver_owned(args: &[String]) -> Run {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    quiver(&refs)
}

/// The JSON report, panicking on an input error.
pub fn json(run: &Run) -> String {
    match (&run.report, &run.error) {
        (Some(r), None) => r.to_json(),
        (_, e) => panic!("input error: {e:?}"),
    }
}

pub fn value(run: &Run) -> serde_json::Value {
    serde_json::from_str(&json(run)).unwrap()
}
