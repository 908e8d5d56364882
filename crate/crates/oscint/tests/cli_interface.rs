//! End-to-end tests of the `oscint` binary: subcommand outputs, file formats,
//! reproducibility and exit codes.

use std::path::Path;
use std::process::Command;

fn oscint() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oscint"))
}

fn run_json(args: &[&str]) -> serde_json::Value {
    let out = oscint().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "oscint {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn predict_reference_cubic_reports_two_thirds() {
    let dir = tempfile::tempdir().unwrap();
    let phase_path = dir.path().join("s0.json");
    let emit = oscint()
        .args([
            "examples",
            "--emit",
            "s0",
            "--out",
            phase_path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(emit.success());
    let v = run_json(&["predict", "--phase", phase_path.to_str().unwrap()]);
    assert_eq!(v["r"], "2/3");
    assert_eq!(v["source"], "Thm1.4");
    assert_eq!(v["p"], 0);
}

#[test]
fn check_direct_sum_reports_zero_schur() {
    let v = run_json(&["check", "--builtin", "direct-sum"]);
    assert_eq!(v["conditions"]["pr_nonsingular"]["holds"], true);
    assert_eq!(v["conditions"]["schur_nonsingular"]["holds"], false);
    assert_eq!(v["passes"], false);
    assert_eq!(v["witnesses"]["det_r_schur"], "0");
}

#[test]
fn newton_modified_recovers_rotated_phase() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rot.json");
    // rotated sparse cubic, written as a phase JSON file by hand
    let rotated = {
        use oscint::poly::{parse_phase, phase_to_json, Rat};
        use oscint::ratmat::RatMat;
        let rq = |n: i64, d: i64| Rat::new(n.into(), d.into());
        let rot = RatMat::from_rows(vec![vec![rq(3, 5), rq(-4, 5)], vec![rq(4, 5), rq(3, 5)]]);
        let s = parse_phase("x1^2*z1 + x1*z1^2", 2, 2).unwrap();
        phase_to_json(&s.compose_linear(&rot, &rot).unwrap())
    };
    std::fs::write(&path, rotated).unwrap();
    let plain = run_json(&["newton", "--phase", path.to_str().unwrap()]);
    assert_eq!(plain["delta"], "3/4");
    let modified = run_json(&[
        "newton",
        "--phase",
        path.to_str().unwrap(),
        "--modified",
        "--samples",
        "200",
        "--seed",
        "7",
    ]);
    assert_eq!(modified["delta"], "3/2");
    assert_eq!(modified["seed"], 7);
}

#[test]
fn pencil_subcommand_matches_spec_values() {
    let v = run_json(&["pencil", "--phi1", "z1^2*z2", "--phi2", "z1*z2^2"]);
    assert_eq!(v["d"], 3);
    assert_eq!(v["s"], 1);
    assert_eq!(v["r"], "1/3");
    assert_eq!(v["delta_mod"], "3/2");
    // coefficient-list input style agrees
    let w = run_json(&["pencil", "--phi1", "0,1,0,0", "--phi2", "0,0,1,0"]);
    assert_eq!(w["r"], "1/3");
}

#[test]
fn genericity_pass_fraction() {
    let v = run_json(&[
        "genericity",
        "--nx",
        "2",
        "--nz",
        "2",
        "--m",
        "3",
        "--trials",
        "100",
        "--seed",
        "1",
    ]);
    assert!(v["rank_one_fraction"].as_f64().unwrap() >= 0.99);
    assert!(v["cubic_fraction"].as_f64().unwrap() >= 0.99);
    assert_eq!(v["seed"], 1);
}

#[test]
fn sweep_fit_round_trip_and_soft_fail() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let plot = dir.path().join("plot.dat");
    let status = oscint()
        .args([
            "sweep",
            "--builtin",
            "cubic-1d",
            "--lambda-min",
            "20",
            "--lambda-max",
            "120",
            "--points",
            "5",
            "--grid",
            "auto",
            "--cap",
            "1200",
            "--tol",
            "1e-4",
            "--max-iter",
            "24",
            "--seed",
            "3",
            "--amp",
            "constant",
            "--out",
            csv.to_str().unwrap(),
            "--plot-out",
            plot.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(status.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("lambda,norm,grid_n,iters,residual,resolved\n"));
    assert_eq!(text.lines().count(), 6);
    // plot data: two columns per line
    let plot_text = std::fs::read_to_string(&plot).unwrap();
    assert!(plot_text.lines().all(|l| l.split_whitespace().count() == 2));

    let fit = run_json(&["fit", "--in", csv.to_str().unwrap()]);
    let slope = fit["slope"].as_f64().unwrap();
    assert!(slope < 0.0, "decay slope expected, got {slope}");

    // strict sweep at a tiny cap: all rows unresolved, soft-fail exit code 2
    let out2 = oscint()
        .args([
            "sweep",
            "--builtin",
            "cubic-1d",
            "--lambda-min",
            "200",
            "--lambda-max",
            "800",
            "--points",
            "4",
            "--grid",
            "auto",
            "--cap",
            "32",
            "--tol",
            "1e-3",
            "--max-iter",
            "8",
            "--seed",
            "3",
            "--strict",
            "--out",
            dir.path().join("s2.csv").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(
        out2.status.code(),
        Some(2),
        "strict unresolved sweep soft-fails"
    );
}

#[test]
fn byte_identical_reruns() {
    for args in [
        vec!["predict", "--builtin", "pencil-d3", "--seed", "5"],
        vec!["newton", "--builtin", "s0"],
        vec!["check", "--builtin", "s0"],
        vec![
            "genericity",
            "--nx",
            "2",
            "--nz",
            "2",
            "--m",
            "3",
            "--trials",
            "20",
            "--seed",
            "9",
        ],
    ] {
        let a = oscint().args(&args).output().unwrap();
        let b = oscint().args(&args).output().unwrap();
        assert!(a.status.success());
        assert_eq!(
            a.stdout, b.stdout,
            "rerun of {args:?} must be byte-identical"
        );
    }
}

#[test]
fn emitted_phase_reparses_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    for name in ["s0", "direct-sum", "cubic-1d", "rank-one-m4", "pencil-d3"] {
        let st = oscint()
            .args(["examples", "--emit", name, "--out", path.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(st.success());
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = oscint::poly::phase_from_json(&text).unwrap();
        assert_eq!(parsed, oscint::corpus::by_name(name).unwrap(), "{name}");
        // emitting twice gives identical bytes
        let st = oscint()
            .args(["examples", "--emit", name, "--out", path.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(st.success());
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            text,
            "{name}: emit is deterministic"
        );
    }
}

#[test]
fn validation_errors_exit_one() {
    let out = oscint()
        .args(["predict", "--phase", "/nonexistent/x.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = oscint()
        .args([
            "predict",
            "--expr",
            "x1^2*z1 + x1",
            "--nx",
            "1",
            "--nz",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(1),
        "inhomogeneous/pure expression must fail validation"
    );
    let out = oscint()
        .args(["pencil", "--phi1", "z1^2", "--phi2", "z2^3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "degree mismatch");
    assert!(!Path::new("/nonexistent/x.json").exists());
}
