use std::fs;
use std::process::Command;

use sealab::hamiltonian::heisenberg_ring;
use sealab_exp::cli::{self, CROSSING_LEVEL};
use sealab_exp::config::Config;
use sealab_exp::experiments::haar_block::{
    sea_haar_block_variance, two_design_baseline_variance, two_design_baseline_variance_mc, Placement,
};
use sealab_exp::fit::fit_semilog_slope;
use sealab_exp::report::{emit_report, read_report};

fn sealab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sealab"))
}

#[test]
fn baseline_closed_form_matches_monte_carlo() {
    let closed = two_design_baseline_variance(&heisenberg_ring(6).unwrap()).unwrap();
    let mc = two_design_baseline_variance_mc(6, 4000, 606).unwrap();
    assert!(
        (mc.variance - closed).abs() <= 5.0 * mc.std_error,
        "{} ± {} vs {closed}",
        mc.variance,
        mc.std_error
    );
}

#[test]
fn half_cnot_sea_decays_slower_and_crosses_later_than_baseline() {
    let sizes = [4usize, 6, 8];
    let baseline: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&s| (s as f64, two_design_baseline_variance(&heisenberg_ring(s).unwrap()).unwrap()))
        .collect();
    let base_fit = fit_semilog_slope(&baseline).unwrap();
    let base_cross = base_fit.crossing(CROSSING_LEVEL).unwrap();
    for placement in [Placement::Schmidt, Placement::Lbc] {
        let pts: Vec<(f64, f64)> = sizes
            .iter()
            .map(|&s| {
                let n_sub = s / 2;
                let v = sea_haar_block_variance(n_sub, placement, (n_sub / 2).max(1), 1500, 77 + s as u64).unwrap();
                (s as f64, v.variance)
            })
            .collect();
        let fit = fit_semilog_slope(&pts).unwrap();
        assert!(fit.slope.abs() < base_fit.slope.abs(), "{placement:?}: {} vs {}", fit.slope, base_fit.slope);
        let cross = fit.crossing(CROSSING_LEVEL).unwrap();
        assert!(cross >= base_cross + 4.0, "{placement:?}: crossing {cross} vs baseline {base_cross}");
    }
}

#[test]
fn run_is_deterministic_and_round_trips() {
    let cfg = Config::parse("qubits = 4, 6, 8\nsamples = 8\nlayers = 2\n").unwrap();
    let a = cli::run("bp-scan", &cfg, 3).unwrap();
    assert_eq!(a, cli::run("bp-scan", &cfg, 3).unwrap());
    assert_ne!(a, cli::run("bp-scan", &cfg, 4).unwrap());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bp.jsonl");
    emit_report(&a, &path).unwrap();
    assert_eq!(read_report(&path).unwrap(), a);
    assert!(a.records.iter().all(|r| r.seed == 3 && r.config_hash == a.header.config_hash));
}

#[test]
fn zero_iteration_vqe_records_initial_energies() {
    let cfg = Config::parse("sites = 4\nlayers = 1\niterations = 0\nruns = 2\n").unwrap();
    let r = cli::run("vqe", &cfg, 0).unwrap();
    assert_eq!(r.series("final").count(), 6);
    for fam in ["sea_m2_k2", "alt", "random"] {
        assert_eq!(r.series(&format!("{fam}/run0")).count(), 1);
    }
}

#[test]
fn hamiltonian_file_and_config_file_are_used() {
    let dir = tempfile::tempdir().unwrap();
    let ham = dir.path().join("h.txt");
    fs::write(&ham, "# two-qubit test\n-1.0 ZZ\n0.5 XI\n0.5 IX\n").unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        format!(
            "hamiltonian = {}\nfamilies = sea_m1_k1_ry, alt\nlayers = 2\niterations = 30\nruns = 1\nlearning_rate = 0.1\n",
            ham.display()
        ),
    )
    .unwrap();
    let out = dir.path().join("out.jsonl");
    let status = sealab()
        .args(["vqe", "--seed", "2", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report = read_report(&out).unwrap();
    let exact = report.series("exact").next().unwrap().y;
    assert!((exact + 2f64.sqrt()).abs() < 1e-10);
    assert!(report.series("final").all(|r| r.y >= exact - 1e-9));
    assert_eq!(report.series("final").count(), 2);
    assert_eq!(report.header.seed, 2);
}

#[test]
fn cli_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.jsonl");
    for args in [
        vec!["bp-scan", "--set", "sampels=3"],
        vec!["bp-scan", "--set", "samples"],
        vec!["haar-block-var", "--set", "placements=middle"],
        vec!["vqe", "--set", "hamiltonian=/nonexistent/file"],
    ] {
        let output = sealab().args(&args).arg("--out").arg(&out).output().unwrap();
        assert!(!output.status.success(), "{args:?} should fail");
        assert!(!output.stderr.is_empty());
    }
    assert!(!out.exists());
}

#[test]
fn set_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    fs::write(&cfg, "qubits = 2, 4\ntargets = 50\n").unwrap();
    let out = dir.path().join("s.jsonl");
    let status = sealab()
        .args(["schmidt-construct", "--set", "targets=3", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let r = read_report(&out).unwrap();
    assert!(r.records.iter().all(|rec| rec.extra["n_targets"] == 3));
    assert_eq!(r.header.config["targets"], "3");
}
