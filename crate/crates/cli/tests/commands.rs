use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qsylv_cli::{ProblemFile, SolutionFile};
use tempfile::TempDir;

fn example_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn example() -> PathBuf {
    example_dir().join("example.json")
}

fn example_solution() -> PathBuf {
    example_dir().join("example_solution.json")
}

fn qsylv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsylv")).args(args).output().expect("spawn qsylv")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Value printed after `residual:` on stdout.
fn printed_residual(out: &Output) -> f64 {
    let text = stdout(out);
    let line = text.lines().find(|l| l.starts_with("residual:")).expect("residual line");
    line["residual:".len()..].split_whitespace().next().unwrap().parse().unwrap()
}

fn perturbed_example(dir: &TempDir) -> PathBuf {
    let mut file = ProblemFile::read(&example()).unwrap();
    file.matrices.get_mut("B").unwrap().entries[1][0][0] += 1.0;
    let p = dir.path().join("perturbed.json");
    file.write(&p).unwrap();
    p
}

#[test]
fn shipped_example_parses() {
    let file = ProblemFile::read(&example()).unwrap();
    let names: Vec<_> = file.matrices.keys().map(String::as_str).collect();
    assert_eq!(names, ["A1", "A2", "A3", "A4", "B", "B1", "B2", "B3", "B4"]);
    assert_eq!(file.matrices["B"].entries[0][0], [0.0, 3.0, 0.0, 0.0]);
    assert_eq!(file.matrices["B"].entries[0][1], [-1.0, 1.0, 0.0, 0.0]);
    qsylv_cli::Problem::from_file(&file).unwrap();
}

#[test]
fn three_component_entry_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(example()).unwrap().replacen("[0.0, 1.0, 0.0, 0.0]", "[0.0, 1.0, 0.0]", 1);
    let p = dir.path().join("bad.json");
    fs::write(&p, text).unwrap();
    let out = qsylv(&["check", "--input", path(&p)]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error") && err.contains("line"), "{err}");
}

#[test]
fn mismatched_shapes_are_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let mut file = ProblemFile::read(&example()).unwrap();
    let b = file.matrices.get_mut("B").unwrap();
    b.rows = 3;
    b.entries.push(vec![[0.0; 4]; 2]);
    let p = dir.path().join("bad.json");
    file.write(&p).unwrap();
    let out = qsylv(&["check", "--input", path(&p)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("validation error"));
}

#[test]
fn check_reports_consistent_example() {
    let out = qsylv(&["check", "--input", path(&example())]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("verdict: consistent"));
    for label in ["2a", "2e", "2i", "RC1E1", "RE11ELE44"] {
        assert!(text.lines().any(|l| l.trim_start().starts_with(label)), "missing {label}");
    }
}

#[test]
fn check_rejects_perturbed_example() {
    let dir = TempDir::new().unwrap();
    let out = qsylv(&["check", "--input", path(&perturbed_example(&dir))]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("verdict: inconsistent"));
}

#[test]
fn zero_problem_is_consistent() {
    let dir = TempDir::new().unwrap();
    let mut file = ProblemFile::read(&example()).unwrap();
    for m in file.matrices.values_mut() {
        for row in &mut m.entries {
            row.fill([0.0; 4]);
        }
    }
    let p = dir.path().join("zero.json");
    file.write(&p).unwrap();
    assert_eq!(code(&qsylv(&["check", "--input", path(&p)])), 0);
    let s = dir.path().join("zero.sol.json");
    let out = qsylv(&["solve", "--input", path(&p), "--output", path(&s)]);
    assert_eq!(code(&out), 0);
    assert_eq!(printed_residual(&out), 0.0);
}

#[test]
fn solve_writes_accurate_solution() {
    let dir = TempDir::new().unwrap();
    let s = dir.path().join("sol.json");
    let out = qsylv(&["solve", "--input", path(&example()), "--output", path(&s)]);
    assert_eq!(code(&out), 0);
    assert!(printed_residual(&out) <= 1e-10);
    let sol = SolutionFile::read(&s).unwrap();
    assert_eq!(sol.branch.as_deref(), Some("f1"));
    assert_eq!(sol.params.as_deref(), Some("zero"));
    assert!(sol.residual.unwrap() <= 1e-10);
    assert_eq!(code(&qsylv(&["verify", "--input", path(&example()), "--solution", path(&s)])), 0);
}

#[test]
fn seeded_solve_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = example();
    let run = |name: &str| {
        let s = dir.path().join(name);
        let args = ["solve", "--input", path(&input), "--output", path(&s), "--params", "random", "--seed", "7"];
        assert_eq!(code(&qsylv(&args)), 0);
        fs::read(s).unwrap()
    };
    let first = run("a.json");
    assert_eq!(first, run("b.json"));
    let sol: SolutionFile = serde_json::from_slice(&first).unwrap();
    assert_eq!(sol.seed, Some(7));
}

#[test]
fn inconsistent_solve_writes_nothing() {
    let dir = TempDir::new().unwrap();
    let s = dir.path().join("sol.json");
    let out = qsylv(&["solve", "--input", path(&perturbed_example(&dir)), "--output", path(&s)]);
    assert_eq!(code(&out), 2);
    assert!(!s.exists());
}

#[test]
fn verify_accepts_listed_solution_exactly() {
    let out = qsylv(&["verify", "--input", path(&example()), "--solution", path(&example_solution())]);
    assert_eq!(code(&out), 0);
    assert_eq!(printed_residual(&out), 0.0);
    assert!(stdout(&out).contains("verified"));
}

#[test]
fn verify_rejects_tampered_solution() {
    let dir = TempDir::new().unwrap();
    let mut sol = SolutionFile::read(&example_solution()).unwrap();
    sol.matrices.get_mut("Y2").unwrap().entries[0][0][2] += 0.5;
    let s = dir.path().join("tampered.json");
    sol.write(&s).unwrap();
    let out = qsylv(&["verify", "--input", path(&example()), "--solution", path(&s)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("failed"));
}

#[test]
fn zero_tolerance_rejects_rounding_noise() {
    let dir = TempDir::new().unwrap();
    let mut sol = SolutionFile::read(&example_solution()).unwrap();
    sol.matrices.get_mut("X1").unwrap().entries[0][0][0] += 1e-15;
    let s = dir.path().join("noisy.json");
    sol.write(&s).unwrap();
    let input = example();
    let args = ["verify", "--input", path(&input), "--solution", path(&s)];
    assert_eq!(code(&qsylv(&args)), 0);
    let strict = [&args[..], &["--tol", "0"]].concat();
    assert_eq!(code(&qsylv(&strict)), 2);
}

#[test]
fn verify_rejects_misshapen_solution() {
    let dir = TempDir::new().unwrap();
    let mut sol = SolutionFile::read(&example_solution()).unwrap();
    let x1 = sol.matrices.get_mut("X1").unwrap();
    x1.cols = 1;
    for row in &mut x1.entries {
        row.truncate(1);
    }
    let s = dir.path().join("shape.json");
    sol.write(&s).unwrap();
    let out = qsylv(&["verify", "--input", path(&example()), "--solution", path(&s)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn generated_witness_verifies() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("gen.json");
    assert_eq!(code(&qsylv(&["gen", "--kind", "consistent", "--seed", "1", "--dims", "2", "--output", path(&p)])), 0);
    let w = dir.path().join("gen.witness.json");
    assert!(w.exists());
    assert_eq!(code(&qsylv(&["verify", "--input", path(&p), "--solution", path(&w)])), 0);
    assert_eq!(code(&qsylv(&["check", "--input", path(&p)])), 0);
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let args = ["gen", "--kind", "consistent", "--seed", "5", "--dims", "1,2,3,2,2,1,3,2,1,2", "--coef-rank", "random"];
        assert_eq!(code(&qsylv(&[&args[..], &["--output", path(&p)]].concat())), 0);
        (fs::read(&p).unwrap(), fs::read(p.with_extension("witness.json")).unwrap())
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn gen_inconsistent_is_detected() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    let args = ["gen", "--kind", "inconsistent", "--seed", "3", "--dims", "3", "--coef-rank", "random"];
    assert_eq!(code(&qsylv(&[&args[..], &["--output", path(&p)]].concat())), 0);
    assert_eq!(code(&qsylv(&["check", "--input", path(&p)])), 2);
}

#[test]
fn surjective_shape_fails_generation() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("never.json");
    let out = qsylv(&["gen", "--kind", "inconsistent", "--dims", "1", "--output", path(&p)]);
    assert_eq!(code(&out), 4);
    assert!(!p.exists());
}

#[test]
fn eta_round_trip_through_cli() {
    let dir = TempDir::new().unwrap();
    for axis in ["i", "j", "k"] {
        let p = dir.path().join(format!("eta_{axis}.json"));
        let s = dir.path().join(format!("eta_{axis}.sol.json"));
        let gen = ["gen", "--kind", "eta", "--eta", axis, "--seed", "11", "--dims", "3,2,2,3,1"];
        assert_eq!(code(&qsylv(&[&gen[..], &["--output", path(&p)]].concat())), 0);
        assert_eq!(code(&qsylv(&["eta-solve", "--input", path(&p), "--output", path(&s), "--params", "random"])), 0);
        assert_eq!(code(&qsylv(&["verify", "--input", path(&p), "--solution", path(&s)])), 0);
    }
}

#[test]
fn solve_refuses_eta_problem_kind_mismatch() {
    let dir = TempDir::new().unwrap();
    let s = dir.path().join("sol.json");
    let out = qsylv(&["eta-solve", "--input", path(&example()), "--output", path(&s)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&qsylv(&["frobnicate"])), 1);
    assert_eq!(code(&qsylv(&["check"])), 1);
    assert_eq!(code(&qsylv(&["solve", "--input", "x", "--output", "y", "--branch", "f3"])), 1);
    assert_eq!(code(&qsylv(&["check", "--input", "/nonexistent/problem.json"])), 1);
    assert_eq!(code(&qsylv(&["--help"])), 0);
}
