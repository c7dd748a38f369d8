//! End-to-end tests driving the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn prodform(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prodform"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn schedule_dump_has_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = prodform(
        &["schedule", "--order", "4", "--terms", "2", "--out", "."],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("schedule.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("position,term_index,coeff"));
    assert_eq!(lines.count(), 11);
}

#[test]
fn schedule_rejects_odd_order_with_exit_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = prodform(
        &["schedule", "--order", "3", "--terms", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("order"));
}

#[test]
fn compile_writes_circuit_and_passes_check() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ham.txt"), "-1.0 ZZ\n-1.0 XI\n-1.0 IX\n").unwrap();
    let out = prodform(
        &[
            "compile",
            "--hamiltonian",
            "ham.txt",
            "--order",
            "2",
            "--steps",
            "1",
            "--time",
            "1.0",
            "--check",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("circuit.txt")).unwrap();
    assert!(text.starts_with("qubits 2\n"));
    let printed = stdout(&out);
    assert!(printed.contains("check: max deviation"));
    // printed deviation stays within the advertised tolerance
    let deviation: f64 = printed
        .lines()
        .find(|l| l.starts_with("check:"))
        .and_then(|l| l.split_whitespace().last())
        .unwrap()
        .parse()
        .unwrap();
    assert!(deviation <= 1e-9);
}

#[test]
fn compile_rejects_missing_file_with_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = prodform(&["compile", "--hamiltonian", "nope.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compile_rejects_bad_hamiltonian_with_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "-1.0 ZQ\n").unwrap();
    let out = prodform(&["compile", "--hamiltonian", "bad.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"));
}

#[test]
fn evolve_rejects_oversized_chain_with_exit_code_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = prodform(&["evolve", "--builtin", "ising:13"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn evolve_reports_error_against_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = prodform(
        &["evolve", "--builtin", "ising:2", "--order", "4", "--steps", "4"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let printed = stdout(&out);
    let err: f64 = printed
        .lines()
        .find(|l| l.starts_with("error vs exact:"))
        .and_then(|l| l.split_whitespace().last())
        .unwrap()
        .parse()
        .unwrap();
    assert!(err < 1e-2, "order-4 four-step evolution error {err}");
    let csv = std::fs::read_to_string(dir.path().join("unitary.csv")).unwrap();
    assert!(csv.starts_with("row,col,re,im\n"));
    assert_eq!(csv.lines().count(), 1 + 16);
}

#[test]
fn unknown_builtin_is_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = prodform(&["evolve", "--builtin", "xyz:3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown builtin"));
}

#[test]
fn experiment_time_scaling_is_deterministic_and_prints_fits() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = prodform(&["experiment", "time-scaling", "--out", "a"], dir.path());
    assert!(out1.status.success(), "{}", stderr(&out1));
    assert!(stdout(&out1).contains("fit: order 2 slope"));
    let out2 = prodform(&["experiment", "time-scaling", "--out", "b"], dir.path());
    assert!(out2.status.success());
    let a = std::fs::read(dir.path().join("a/time_scaling.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b/time_scaling.csv")).unwrap();
    assert_eq!(a, b, "identical runs must be byte-identical");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("order,t,rel_error\n"));
    assert_eq!(text.lines().count(), 1 + 30);
}

#[test]
fn experiment_ising_bound_with_plots_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = prodform(
        &["experiment", "ising-bound", "--plots", "--out", "."],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("ising_bound.csv")).unwrap();
    assert!(csv.starts_with("n,L,tau,bound\n"));
    assert_eq!(csv.lines().count(), 1 + 49);
    let svg = std::fs::read_to_string(dir.path().join("ising_bound.svg")).unwrap();
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn experiment_bound_tightness_reports_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let out = prodform(&["experiment", "bound-tightness", "--out", "."], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("min looseness ratio"));
    let csv = std::fs::read_to_string(dir.path().join("bound_tightness.csv")).unwrap();
    assert!(csv.starts_with("epsilon,m_theory,m_empirical\n"));
    assert_eq!(csv.lines().count(), 1 + 10);
}

#[test]
fn experiment_uses_pauli_source_when_given() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("h.txt"), "1.0 ZI\n1.0 IX\n").unwrap();
    let out = prodform(
        &["experiment", "time-scaling", "--hamiltonian", "h.txt"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("time_scaling.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 30);
}

#[test]
fn conflicting_sources_are_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("h.txt"), "1.0 Z\n").unwrap();
    let out = prodform(
        &[
            "evolve",
            "--hamiltonian",
            "h.txt",
            "--builtin",
            "ising:2",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}
