use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use wavelab::DemoReport;

fn wavelab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavelab")).args(args).arg("--out-dir").arg(out).output().expect("binary runs")
}

fn report(dir: &Path, demo: &str) -> DemoReport {
    serde_json::from_str(&fs::read_to_string(dir.join(format!("{demo}.json"))).unwrap()).unwrap()
}

#[test]
fn list_prints_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavelab(&["list"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.contains("evolution-sweep"));

    let out = wavelab(&["list", "--json-only"], dir.path());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 11);
    assert!(v.as_array().unwrap().iter().all(|e| e["anchor"].as_str().is_some_and(|a| !a.is_empty())));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavelab(&["run", "no-such-demo"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("no-such-demo") && err.contains("entropy-overlap"), "{err}");

    assert_eq!(wavelab(&["run"], dir.path()).status.code(), Some(2));
    assert_eq!(wavelab(&["run", "vector-rescale", "--seed", "x"], dir.path()).status.code(), Some(2));
    assert_eq!(wavelab(&["frobnicate"], dir.path()).status.code(), Some(2));
}

#[test]
fn parameter_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavelab(&["run", "moment-tomography", "--grid-n", "3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("invalid grid"));
}

#[test]
fn failing_checks_exit_with_one() {
    // A 64-point target grid cannot hold the transported state to 1e-4.
    let dir = tempfile::tempdir().unwrap();
    let out = wavelab(&["run", "gauss-to-cauchy", "--grid-n", "64"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let r = report(dir.path(), "gauss-to-cauchy");
    assert!(!r.passed());
    assert_eq!(r.params["target_grid"][1], 64.0);
}

#[test]
fn reports_and_plot_data_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavelab(&["run", "gauss-to-cauchy", "evolution-sweep"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let raw: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("gauss-to-cauchy.json")).unwrap()).unwrap();
    for key in ["demo", "params", "seed", "checks", "duration_ms"] {
        assert!(raw.get(key).is_some(), "missing {key}");
    }
    for c in raw["checks"].as_array().unwrap() {
        for key in ["name", "expected", "observed", "tol", "provenance", "pass"] {
            assert!(c.get(key).is_some(), "check missing {key}");
        }
        assert!(c["tol"].is_number() && c["pass"].is_boolean());
    }

    let sweep = fs::read_to_string(dir.path().join("cauchy_x2_sweep.csv")).unwrap();
    assert_eq!(sweep.lines().next(), Some("L,estimate"));
    assert_eq!(sweep.lines().count(), 5);
    let evo = fs::read_to_string(dir.path().join("evolution_x2.csv")).unwrap();
    assert_eq!(evo.lines().next(), Some("t,estimate,L"));
}

#[test]
fn json_only_skips_plot_data_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavelab(&["run", "gauss-to-cauchy", "--json-only"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(dir.path().join("gauss-to-cauchy.json").exists());
    assert!(!dir.path().join("cauchy_x2_sweep.csv").exists());
}

#[test]
fn parallel_runs_match_sequential_runs() {
    let seq = tempfile::tempdir().unwrap();
    let par = tempfile::tempdir().unwrap();
    let demos = ["run", "entropy-overlap", "span-equality", "vector-rescale", "moment-tomography"];
    assert_eq!(wavelab(&demos, seq.path()).status.code(), Some(0));
    let mut args = demos.to_vec();
    args.push("--parallel");
    assert_eq!(wavelab(&args, par.path()).status.code(), Some(0));
    for demo in &demos[1..] {
        assert_eq!(report(seq.path(), demo).canonical_json(), report(par.path(), demo).canonical_json(), "{demo}");
    }
}

#[test]
fn seed_changes_randomized_reports_only() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    wavelab(&["run", "entropy-overlap", "vector-rescale", "--seed", "1"], a.path());
    wavelab(&["run", "entropy-overlap", "vector-rescale", "--seed", "2"], b.path());
    let (ra, rb) = (report(a.path(), "entropy-overlap"), report(b.path(), "entropy-overlap"));
    assert_eq!((ra.seed, rb.seed), (1, 2));
    assert_ne!(ra.checks, rb.checks);
    assert_eq!(report(a.path(), "vector-rescale").checks, report(b.path(), "vector-rescale").checks);
}
