mod common;

use std::io::Write;

use common::{quiver, value};

#[test]
fn mckay_then_essentials() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.alg");
    let out = path.to_str().unwrap();
    let run = quiver(&["mckay", "--order", "6", "--weights", "1,2,3", "--out", out]);
    assert_eq!(run.exit_code(), 0);
    let v = value(&quiver(&["essentials", out]));
    assert_eq!(v["result"]["essentials"], serde_json::json!(["1", "4", "5"]));
    let corpus = value(&quiver(&["essentials", "corpus:mckay-1-6-123"]));
    assert_eq!(v["result"]["essentials"], corpus["result"]["essentials"]);
}

#[test]
fn surjectivity_at_two_vertices_reports_the_printed_module() {
    let run = quiver(&["surjectivity", "corpus:mckay-1-3-111", "--keep", "0,2"]);
    assert_eq!(run.exit_code(), 0);
    let v = value(&run);
    let printed = serde_json::json!({ "x1x0": "1", "y1y0": "1", "z1z0": "1" });
    let w = v["result"]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .find(|w| w["module"]["nonzero_arrows"] == printed)
        .expect("the printed module is a witness");
    assert_eq!(w["induced_dims"], serde_json::json!([1, 3, 1]));
    let strict = quiver(&["surjectivity", "corpus:mckay-1-3-111", "--keep", "0,2", "--expect-surjective"]);
    assert_eq!(strict.exit_code(), 2);
}

#[test]
fn zero_module_passes_quaternion_relations() {
    let run = quiver(&["check-rep", "corpus:quaternion-reconstruction", "corpus:zero-module"]);
    assert_eq!(run.exit_code(), 0);
    assert_eq!(value(&run)["result"]["status"], "pass");
}

#[test]
fn relation_violations_exit_with_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "algebra: corpus:mckay-1-3-111\n[dims]\n*=1\n[matrix x0]\n1\n[matrix y1]\n1\n").unwrap();
    let run = quiver(&["check-rep", "corpus:mckay-1-3-111", f.path().to_str().unwrap()]);
    assert_eq!(run.exit_code(), 2);
    assert!(!value(&run)["result"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn unproven_identity_exits_with_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "keep: 0, 1, 2, 3, 4\n1 x0\n").unwrap();
    let run = quiver(&[
        "identity-check", "corpus:mckay-1-6-123", "--expr", f.path().to_str().unwrap(), "--multiplier", "y0",
        "--samples", "10",
    ]);
    assert_eq!(run.exit_code(), 2);
    assert_eq!(value(&run)["result"]["status"], "not-proven");
}

#[test]
fn corner_writes_files_that_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("c.alg");
    let pres = dir.path().join("c.pres");
    let run = quiver(&[
        "corner", "corpus:dp6-dimer", "--keep", "0,1,2,3", "--out", alg.to_str().unwrap(), "--presentations-out",
        pres.to_str().unwrap(),
    ]);
    assert_eq!(run.exit_code(), 0);
    let derived = value(&quiver(&["induce", "--rep", "corpus:dp6-Nprime"]));
    let supplied = value(&quiver(&[
        "induce", "--rep", "corpus:dp6-Nprime", "--cornered", alg.to_str().unwrap(), "--presentations",
        pres.to_str().unwrap(),
    ]));
    assert_eq!(derived["result"]["induced_dims"], supplied["result"]["induced_dims"]);
    assert_eq!(supplied["result"]["induced_dims"], serde_json::json!([1, 1, 1, 1, 0, 0]));
}

#[test]
fn text_output_renders_the_same_report() {
    let run = quiver(&["essentials", "corpus:mckay-1-3-111"]);
    let text = run.report.as_ref().unwrap().to_text();
    assert!(text.contains("command: essentials"));
    assert!(text.contains("essentials: [2]"));
}

#[test]
fn timing_is_opt_in() {
    let plain = common::json(&quiver(&["essentials", "corpus:mckay-1-3-111"]));
    assert!(!plain.contains("timing"));
    let timed = common::json(&quiver(&["essentials", "corpus:mckay-1-3-111", "--timing"]));
    assert!(timed.contains("timing_ms"));
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        vec!["frobnicate"],
        vec!["essentials", "/nonexistent/a.alg"],
        vec!["essentials", "corpus:no-such-id"],
        vec!["image-test", "--rep", "corpus:mckay-1-3-N", "--dimvec", "1,x"],
        vec!["surjectivity", "corpus:mckay-1-3-111", "--keep", "0,9"],
        vec!["surjectivity", "corpus:quaternion-reconstruction", "--keep", "0,1"],
        vec!["identity-check", "corpus:mckay-1-6-123", "--keep", "0,1,2,3,4", "--multiplier", "q9", "--determinant", "5"],
        vec!["mckay", "--order", "0", "--weights", "1"],
    ] {
        let run = quiver(&args);
        assert_eq!(run.exit_code(), 1, "{args:?}");
        assert!(run.report.is_none());
    }
}

#[test]
fn format_errors_carry_a_line_number() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "[vertices]\n0 1\n\n[arrows]\na: 0 -> 1\nb: 1 -> 5\n").unwrap();
    let run = quiver(&["fixed-points", f.path().to_str().unwrap()]);
    assert_eq!(run.exit_code(), 1);
    let msg = run.error.unwrap().0;
    assert!(msg.contains("line 6"), "{msg}");
}

/// Deterministic mutations of every corpus algebra and module file: each
/// line in turn is replaced by junk, duplicated or truncated. The run must
/// not panic, and a rejected parse must name a line.
#[test]
fn mutated_inputs_are_rejected_with_positions() {
    use cornering::corpus::{files, CorpusKind};
    let junk = ["@@", "x: 0 -> ", "[matrix]", "1/0", "a = b = c", "[dims]", "0=", "-> ->"];
    let dir = tempfile::tempdir().unwrap();
    let mut rejected = 0;
    for f in files() {
        let lines: Vec<&str> = f.text.lines().collect();
        for (i, line) in lines.iter().enumerate() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let variants = [
                junk[i % junk.len()].to_string(),
                format!("{line} {}", junk[(i + 3) % junk.len()]),
                line[..line.len() / 2].to_string(),
            ];
            for v in variants {
                let mut mutated = lines.clone();
                mutated[i] = &v;
                let path = dir.path().join(format!("{}.in", f.id));
                std::fs::write(&path, mutated.join("\n")).unwrap();
                let p = path.to_str().unwrap();
                let run = match f.kind {
                    CorpusKind::Algebra => quiver(&["check-rep", p, "corpus:zero-module"]),
                    CorpusKind::Representation => quiver(&["induce", "--rep", p]),
                    CorpusKind::CorneredAlgebra => quiver(&[
                        "induce", "--rep", "corpus:zero-module", "--keep", "0,1,2,3", "--cornered", p,
                        "--presentations", "corpus:quaternion-p4",
                    ]),
                    CorpusKind::Presentation => match f.id {
                        "quaternion-p4" => quiver(&[
                            "corner", "corpus:quaternion-reconstruction", "--keep", "0,1,2,3", "--cornered",
                            "corpus:quaternion-corner", "--presentations", p,
                        ]),
                        id => {
                            let parent = if id.starts_with("dp6") { "corpus:dp6-dimer" } else { "corpus:mckay-1-6-123" };
                            quiver(&["corner", parent, "--keep", "0,1,2,3,4", "--presentations", p])
                        }
                    },
                    CorpusKind::Expression => quiver(&[
                        "identity-check", "corpus:dp6-dimer", "--keep", "0,1,2,3,4", "--expr", p, "--multiplier",
                        "x4", "--samples", "2",
                    ]),
                };
                if let Some(e) = &run.error {
                    assert!(e.0.contains("line "), "{}: line {} -> {v:?}: {}", f.id, i + 1, e.0);
                    rejected += 1;
                }
            }
        }
    }
    assert!(rejected > 50, "only {rejected} mutations rejected");
}
