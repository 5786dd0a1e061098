use std::path::PathBuf;
use std::process::Command;

use maxplus_opt::instances::{random_raw_problem, solvable_instance};
use maxplus_opt_cli::{format_problem, parse_problem, run};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn mpopt(args: &[&str]) -> maxplus_opt_cli::Outcome {
    run(std::iter::once("mpopt").chain(args.iter().copied()))
}

#[test]
fn example1_report() {
    let out = mpopt(&["solve", &data("example1.mp")]);
    assert_eq!(out.status, 0, "{}", out.stderr);
    assert!(out.stdout.contains("solution set: S = {x1 = 1, x2 = 0, x3 <= -2}"), "{}", out.stdout);
    assert!(out.stdout.contains("unique: no"));
    assert!(out.stdout.contains("  x*3 = -2\n"));
}

#[test]
fn xbar_report() {
    let out = mpopt(&["solve", &data("example1_xbar.mp")]);
    assert_eq!(out.status, 1);
    assert!(out.stdout.contains("  b2 = -inf\n"), "{}", out.stdout);
    assert!(out.stdout.contains("solvable: no (b2 = -inf is not finite)"));
}

#[test]
fn input_errors_exit_2() {
    let out = mpopt(&["solve", &data("malformed.mp")]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("line 3, column 1"), "{}", out.stderr);
    assert_eq!(mpopt(&["solve", &data("does-not-exist.mp")]).status, 2);
    assert_eq!(mpopt(&["solve"]).status, 2);
    assert_eq!(mpopt(&["bogus"]).status, 2);
    assert_eq!(mpopt(&["solve", &data("example1.mp"), "--tol", "-1"]).status, 2);
    assert_eq!(mpopt(&["solve", &data("example1.mp"), "--verify", "--radius", "0"]).status, 2);
    assert_eq!(mpopt(&["--help"]).status, 0);
}

#[test]
fn empty_objective_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eps.mp");
    std::fs::write(&path, "matrix\neps eps\nk 1 0\nc 0\n").unwrap();
    let out = mpopt(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("identically eps"), "{}", out.stderr);
}

#[test]
fn preprocessing_notes_in_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pre.mp");
    std::fs::write(&path, "matrix\n0 eps\neps eps\nk 1 0\nc 5\n").unwrap();
    let out = mpopt(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("dropped eps rows: 2"), "{}", out.stdout);
    assert!(out.stdout.contains("eliminated variables (eps column, zero coefficient): 2"));
    assert!(out.stdout.contains("  b2 = -inf  (eps row)"));
    assert!(out.stdout.contains("S = {x1 = 5, x2 free}"));
    assert!(out.stdout.contains("unique: no"));
}

#[test]
fn verify_appends_consistent_verdict() {
    let out = mpopt(&["solve", &data("example1.mp"), "--verify", "--seed", "42"]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("verification: consistent"), "{}", out.stdout);
}

#[test]
fn json_output_uses_inf_tokens() {
    let out = mpopt(&["solve", &data("example1_xbar.mp"), "--json"]);
    assert_eq!(out.status, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["b2"], "-inf");
    assert_eq!(v["solvable"], false);
    assert!(v.as_object().unwrap().values().all(|x| !x.is_object() && !x.is_array()));

    let out = mpopt(&["solve", &data("example1.mp"), "--json", "--verify", "--samples", "100"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["x*1"], 1.0);
    assert_eq!(v["S.x3"], "<= -2");
    assert_eq!(v["verdict"], "consistent");
    assert_eq!(v["samples_checked"], 149);
}

#[test]
fn reports_are_deterministic() {
    let args = ["solve", &data("example1.mp"), "--verify", "--seed", "7", "--json"];
    assert_eq!(mpopt(&args), mpopt(&args));
    let args = ["solve", &data("example1_xbar.mp"), "--verify", "--seed", "7"];
    assert_eq!(mpopt(&args), mpopt(&args));
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_mpopt");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["solve", &data("example1.mp")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("x3 <= -2"));
    assert_eq!(status(&["solve", &data("example1_xbar.mp")]).status.code(), Some(1));
    let bad = status(&["solve", &data("malformed.mp")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("ragged"));
}

proptest! {
    #[test]
    fn format_parse_round_trip(seed in any::<u64>(), m in 1usize..6, n in 1usize..6, solvable in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = if solvable {
            solvable_instance(&mut rng, m, n, 0.3).problem
        } else {
            random_raw_problem(&mut rng, m, n, 0.3, 0.3)
        };
        let text = format_problem(&p);
        let back = parse_problem(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(format_problem(&back), text);
    }

    #[test]
    fn arbitrary_reals_round_trip(entries in proptest::collection::vec(-1e6f64..1e6, 4), c in -1e6f64..1e6) {
        let text = format!(
            "matrix\n{} {}\n{} {}\nk\n0.5 3\nc\n{c}\n",
            entries[0], entries[1], entries[2], entries[3]
        );
        let p = parse_problem(&text).unwrap();
        prop_assert_eq!(parse_problem(&format_problem(&p)).unwrap(), p);
    }
}
