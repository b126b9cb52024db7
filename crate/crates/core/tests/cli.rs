use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use wignerneg::WignerField;

fn wignerneg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wignerneg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Value of `key: value` in the negativity report.
fn report_value(out: &Output, key: &str) -> f64 {
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {}", stdout(out)))
        .parse()
        .unwrap()
}

/// Value of `key=value` in a distillation CSV footer.
fn footer_value(csv: &str, key: &str) -> f64 {
    let footer = csv.lines().find(|l| l.starts_with('#')).expect("footer");
    footer
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {footer}"))
        .parse()
        .unwrap()
}

fn sweep_column(csv: &str, column: usize) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(column).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn state_writes_a_normalized_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let out = wignerneg(&[
        "state",
        "cubic:gamma=0.05,P=0,s=1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let field = WignerField::read_csv(fs::read(&path).unwrap().as_slice()).unwrap();
    assert!((field.integral() - 1.0).abs() < 1e-3);
}

#[test]
fn single_photon_field_dips_to_minus_one_over_two_pi() {
    let out = wignerneg(&[
        "state",
        "number:n=1",
        "--qmax",
        "6",
        "--nq",
        "121",
        "--np",
        "121",
        "--pmax",
        "6",
    ]);
    assert!(out.status.success());
    let field = WignerField::read_csv(out.stdout.as_slice()).unwrap();
    assert!((field.min_value() + 1.0 / (2.0 * PI)).abs() < 1e-4);
    assert_eq!(field.grid().dims(), vec![121, 121]);
}

#[test]
fn unknown_spec_is_a_usage_error() {
    let out = wignerneg(&["state", "bogus:x=1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("cubic:gamma=<real>"),
        "grammar missing from: {err}"
    );
}

#[test]
fn negativity_reports() {
    let one = wignerneg(&["negativity", "number:n=1"]);
    assert!(one.status.success());
    assert!((report_value(&one, "neg") - 0.3544).abs() < 1e-3);
    assert!((report_value(&one, "mean_photon") - 1.0).abs() < 1e-12);

    let on = wignerneg(&["negativity", "on:N=3,aim=0.2449"]);
    assert!((report_value(&on, "neg") - 0.11).abs() < 0.01);

    let cubic = wignerneg(&["negativity", "cubic:gamma=0.05,P=0,s=0.6"]);
    assert!((report_value(&cubic, "neg") - 0.38).abs() < 0.02);
    let (a, n) = (
        report_value(&cubic, "mean_photon"),
        report_value(&cubic, "mean_photon_numeric"),
    );
    assert!((a - n).abs() < 1e-4);
}

#[test]
fn ideal_cubic_has_no_negativity() {
    let out = wignerneg(&["negativity", "idealcubic:gamma=0.1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_flag_is_enforced() {
    // 5 nodes over ±3 cannot integrate to 1 within 1e-9
    let out = wignerneg(&[
        "negativity",
        "number:n=0",
        "--nq",
        "5",
        "--np",
        "5",
        "--qmax",
        "3",
        "--tol",
        "1e-9",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let bad = wignerneg(&["negativity", "number:n=0", "--tol", "-1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn sweeps_follow_the_families() {
    let pmod = wignerneg(&[
        "sweep-states",
        "--family",
        "pmod",
        "--from",
        "0.2",
        "--to",
        "1.0",
        "--steps",
        "3",
    ]);
    assert!(pmod.status.success());
    let csv = stdout(&pmod);
    assert_eq!(csv.lines().next(), Some("mean_photon,neg"));
    assert!(sweep_column(&csv, 1)
        .iter()
        .all(|n| (n - 0.354).abs() < 5e-3));

    for (family, to) in [("number", "4"), ("on", "1.5"), ("cubic", "0.8")] {
        let out = wignerneg(&[
            "sweep-states",
            "--family",
            family,
            "--from",
            "0.2",
            "--to",
            to,
            "--steps",
            "4",
        ]);
        assert!(
            out.status.success(),
            "{family}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let csv = stdout(&out);
        let (photons, negs) = (sweep_column(&csv, 0), sweep_column(&csv, 1));
        assert!(photons.windows(2).all(|w| w[1] > w[0]), "{family}: {csv}");
        assert!(negs.windows(2).all(|w| w[1] > w[0]), "{family}: {csv}");
    }
}

#[test]
fn empty_sweep_range_is_rejected() {
    let out = wignerneg(&[
        "sweep-states",
        "--family",
        "cubic",
        "--from",
        "1",
        "--to",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn distill_rejects_bad_transmittance() {
    let out = wignerneg(&["distill", "--s-ini", "1.0", "--t", "1.5", "--psuc", "0.01"]);
    assert_eq!(out.status.code(), Some(2));
    let missing = wignerneg(&["distill", "--s-ini", "1.0"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn distill_full_window_is_the_average() {
    let out = wignerneg(&[
        "distill",
        "--s-ini",
        "0.6",
        "--psuc",
        "1.0",
        "--samples",
        "41",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = stdout(&out);
    assert_eq!(csv.lines().next(), Some("p_v,density,neg,fid"));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 42);
    let (post, avg, ini, p_suc) = (
        footer_value(&csv, "post_neg"),
        footer_value(&csv, "avg_neg"),
        footer_value(&csv, "ini_neg"),
        footer_value(&csv, "P_suc"),
    );
    assert!((p_suc - 1.0).abs() < 1e-2);
    assert!((post - avg / p_suc).abs() < 1e-9);
    assert!(avg <= ini);
}

#[test]
fn distill_enriches_negativity_and_reports_fidelity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let args = [
        "distill", "--gamma", "0.05", "--s-ini", "1.0", "--t", "0.95", "--psuc", "0.01",
        "--s-targ", "4.0", "--out",
    ];
    let out = wignerneg(&[&args[..], &[path.to_str().unwrap()]].concat());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(&path).unwrap();
    assert!(footer_value(&csv, "post_neg") > 0.81);
    assert!(footer_value(&csv, "post_fid") > 0.0);
    assert!((footer_value(&csv, "ini_fid") - 1.0 / 3f64.cosh()).abs() < 2e-3);
}

#[test]
fn outputs_are_deterministic() {
    let args = [
        "distill",
        "--s-ini",
        "0.2",
        "--window=-1,1",
        "--samples",
        "21",
    ];
    let a = wignerneg(&args);
    let b = wignerneg(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let s1 = wignerneg(&["state", "pmod:sign=-1,s=0.5,theta=0.3"]);
    let s2 = wignerneg(&["state", "pmod:sign=-1,s=0.5,theta=0.3"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn fast_validation_passes() {
    let out = wignerneg(&["validate", "--fast"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}
