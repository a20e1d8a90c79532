use std::path::Path;
use std::process::{Command, Output};

use epioptic::cli::{cmd_solve, Scenario, TRAJECTORY_HEADER};

fn epioptic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epioptic")).args(args).output().unwrap()
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const OUTPUTS: [&str; 7] = [
    "trajectory_controlled.csv",
    "trajectory_uncontrolled.csv",
    "summary.csv",
    "control.svg",
    "susceptible.svg",
    "infected.svg",
    "removed.svg",
];

#[test]
fn compare_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let out = epioptic(&["compare", "--out", d.path().to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in OUTPUTS {
        assert!(read(a.path(), name) == read(b.path(), name), "{name} differs");
    }
    let infected = String::from_utf8(read(a.path(), "infected.svg")).unwrap();
    assert!(infected.starts_with("<?xml") && infected.trim_end().ends_with("</svg>"));
    assert_eq!(infected.matches("<polyline").count(), 2);
    assert_eq!(String::from_utf8(read(a.path(), "control.svg")).unwrap().matches("<polyline").count(), 1);
}

#[test]
fn controlled_trajectory_starts_at_initial_conditions() {
    let d = tempfile::tempdir().unwrap();
    assert!(epioptic(&["simulate", "--out", d.path().to_str().unwrap()]).status.success());
    let text = String::from_utf8(read(d.path(), "trajectory_controlled.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(TRAJECTORY_HEADER));
    assert!(lines.next().unwrap().starts_with("0,0.95,0.05,0,0.37964795161"));
    assert_eq!(text.lines().count(), 10_002);
}

#[test]
fn uncontrolled_simulation_has_zero_control_and_conserves_mass() {
    let d = tempfile::tempdir().unwrap();
    let out = epioptic(&["simulate", "--uncontrolled", "--constant", "0.5", "--out", d.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(read(d.path(), "trajectory_uncontrolled.csv")).unwrap();
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v[4], 0.0);
        assert!((v[1] + v[2] + v[3] - 1.0).abs() <= 1e-8);
    }
    assert!(d.path().join("trajectory_constant.csv").exists());
    assert!(!d.path().join("trajectory_controlled.csv").exists());
}

#[test]
fn dumped_config_reproduces_summary() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().to_str().unwrap();
    let out = epioptic(&["solve", "--beta", "0.25", "--q", "123.456", "--out", dir, "--dump-config"]);
    assert!(out.status.success());
    let cfg = d.path().join("scenario.cfg");
    let text = std::fs::read_to_string(&cfg).unwrap();
    let reloaded = Scenario::from_config(&text).unwrap();
    let direct = Scenario { beta: 0.25, q: 123.456, output_dir: dir.into(), ..Scenario::default() };
    assert_eq!(reloaded, direct);
    assert_eq!(cmd_solve(&reloaded).unwrap(), cmd_solve(&direct).unwrap());

    let again = epioptic(&["solve", "--config", cfg.to_str().unwrap()]);
    let first = String::from_utf8(out.stdout).unwrap();
    let first: String = first.lines().filter(|l| !l.starts_with("wrote")).map(|l| format!("{l}\n")).collect();
    assert_eq!(String::from_utf8(again.stdout).unwrap(), first);
}

#[test]
fn exit_codes() {
    assert_eq!(epioptic(&["solve"]).status.code(), Some(0));
    assert_eq!(epioptic(&["solve", "--strict", "--u-max", "0.3"]).status.code(), Some(1));
    assert_eq!(epioptic(&["solve", "--step", "-1"]).status.code(), Some(2));
    assert_eq!(epioptic(&["solve", "--beta", "0.1", "--mu", "0.05"]).status.code(), Some(3));
    assert_eq!(epioptic(&["verify", "--step", "0.05", "--strict", "--u-max", "0.3"]).status.code(), Some(1));
}

#[test]
fn verify_prints_checks_and_gap() {
    let out = epioptic(&["verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
    assert!(text.contains("pmp relative J-gap"));
}

#[test]
fn solve_reports_calibration() {
    let text = String::from_utf8(epioptic(&["solve", "--i0", "0"]).stdout).unwrap();
    assert!(text.contains("U0              0\n"), "{text}");
    assert!(text.contains("admissible      yes"));
}
