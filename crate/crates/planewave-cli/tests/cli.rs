//! End-to-end tests of the command-line interface: exit codes, file
//! outputs, config handling and rerun determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn planewave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planewave"))
        .args(args)
        .output()
        .expect("spawn planewave")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn slingshot_defaults_report_and_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let run = planewave(&["slingshot", "--grid-n", "4000", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "stderr: {}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("exit:"));
    let report = fs::read_to_string(&out).unwrap();
    assert!(report.contains("exit_energy_mev = "));
    assert!(report.contains("valid = true"));
}

#[test]
fn slingshot_strict_flags_overdense_plasma() {
    let run = planewave(&[
        "slingshot",
        "--grid-n",
        "4000",
        "--n0",
        "3e19",
        "--strict",
    ]);
    assert_eq!(code(&run), 2, "stdout: {}", String::from_utf8_lossy(&run.stdout));
    // Without --strict the same run reports invalid but exits 0.
    let soft = planewave(&["slingshot", "--grid-n", "4000", "--n0", "3e19"]);
    assert_eq!(code(&soft), 0);
    assert!(String::from_utf8_lossy(&soft.stdout).contains("valid: false"));
}

#[test]
fn tabulate_writes_both_envelopes_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curves.csv");
    let args = [
        "tabulate",
        "--grid-n",
        "3000",
        "--coupling",
        "5e5",
        "--out",
        out.to_str().unwrap(),
    ];
    assert_eq!(code(&planewave(&args)), 0);
    let gauss = dir.path().join("curves_gaussian.csv");
    let poly = dir.path().join("curves_polynomial.csv");
    let first = (fs::read(&gauss).unwrap(), fs::read(&poly).unwrap());
    let header = String::from_utf8_lossy(&first.0)
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert_eq!(header, "xi_cm,w,uz0,Y3_cm,V3_cm2,betaz0,betaz1,g,T");
    // Byte-identical on rerun.
    assert_eq!(code(&planewave(&args)), 0);
    assert_eq!(first.0, fs::read(&gauss).unwrap());
    assert_eq!(first.1, fs::read(&poly).unwrap());
}

#[test]
fn tabulate_zero_coupling_zeroes_error_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let run = planewave(&[
        "tabulate",
        "--grid-n",
        "3000",
        "--coupling",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 0);
    let text = fs::read_to_string(dir.path().join("c_gaussian.csv")).unwrap();
    for line in text.lines().skip(1) {
        let t: f64 = line.split(',').nth(8).unwrap().parse().unwrap();
        assert_eq!(t, 0.0);
    }
}

#[test]
fn trajectory_untouched_label_stays_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.csv");
    // Label far beyond the sampling window: the wave never reaches it.
    let run = planewave(&[
        "trajectory",
        "--grid-n",
        "3000",
        "--labels",
        "1.0",
        "--x0-max",
        "8e-3",
        "--steps",
        "50",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 0);
    let text = fs::read_to_string(&out).unwrap();
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let mut cols = line.split(',');
        let _x0 = cols.next().unwrap();
        let z: f64 = cols.next().unwrap().parse().unwrap();
        assert_eq!(z, 1.0);
        let gamma: f64 = cols.nth(2).unwrap().parse().unwrap();
        assert_eq!(gamma, 1.0);
        rows += 1;
    }
    assert_eq!(rows, 51);
}

#[test]
fn trajectory_z_column_never_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.csv");
    let run = planewave(&[
        "trajectory",
        "--grid-n",
        "3000",
        "--labels",
        "0.0",
        "--steps",
        "300",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 0);
    let text = fs::read_to_string(&out).unwrap();
    let mut prev = f64::NEG_INFINITY;
    for line in text.lines().skip(1) {
        let z: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        // Nondecreasing up to the phase-inversion tolerance.
        assert!(z >= prev - 1e-11, "z regressed: {z:e} after {prev:e}");
        prev = z;
    }
}

#[test]
fn config_file_is_honored_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("r.txt");
    fs::write(
        &cfg,
        format!(
            "aspect = 2.0\ngrid_n = 4000\nout = {}\n# comment line\n",
            out.display()
        ),
    )
    .unwrap();
    let run = planewave(&["slingshot", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert!(fs::read_to_string(&out).unwrap().contains("aspect = 2.0"));

    // Flag overrides the file.
    let run = planewave(&[
        "slingshot",
        "--config",
        cfg.to_str().unwrap(),
        "--aspect",
        "1.0",
    ]);
    assert!(String::from_utf8_lossy(&run.stdout).contains("nu = 1"));
}

#[test]
fn unknown_config_key_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "not_a_key = 1\n").unwrap();
    let run = planewave(&["slingshot", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&run), 64);
    assert!(String::from_utf8_lossy(&run.stderr).contains("unknown key"));
}

#[test]
fn missing_subcommand_is_usage_error() {
    assert_eq!(code(&planewave(&[])), 64);
    assert_eq!(code(&planewave(&["no-such-command"])), 64);
}

#[test]
fn zero_energy_fails_ionization_threshold() {
    let run = planewave(&["slingshot", "--energy-erg", "0", "--grid-n", "3000"]);
    assert_ne!(code(&run), 0);
    let err = String::from_utf8_lossy(&run.stderr);
    assert!(err.contains("positive") || err.contains("threshold"), "stderr: {err}");
}

#[test]
fn density_solve_prints_both_envelopes() {
    let run = planewave(&["density-solve", "--grid-n", "4000"]);
    assert_eq!(code(&run), 0);
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("gaussian: K = "));
    assert!(stdout.contains("polynomial: K = "));
}

#[test]
fn validate_passes_and_inject_fault_fails() {
    let run = planewave(&["validate", "--grid-n", "3000"]);
    assert_eq!(code(&run), 0, "stdout: {}", String::from_utf8_lossy(&run.stdout));
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("0 failed"));

    let faulty = planewave(&["validate", "--grid-n", "3000", "--inject-fault"]);
    assert_eq!(code(&faulty), 1);
    assert!(String::from_utf8_lossy(&faulty.stdout).contains("injected fault"));
}

#[test]
fn sampled_envelope_csv_drives_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let env_csv = dir.path().join("env.csv");
    // A crude triangular envelope.
    fs::write(&env_csv, "xi_cm,w\n0.0,0.0\n1.0e-3,2.0\n2.0e-3,0.0\n").unwrap();
    let out = dir.path().join("t.csv");
    let run = planewave(&[
        "trajectory",
        "--grid-n",
        "3000",
        "--envelope-csv",
        env_csv.to_str().unwrap(),
        "--labels",
        "0.0",
        "--steps",
        "40",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 0, "stderr: {}", String::from_utf8_lossy(&run.stderr));
    assert!(Path::new(&out).exists());
}
