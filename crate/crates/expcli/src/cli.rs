//! Subcommand drivers: read a [`Config`], run an experiment, fill a
//! [`Report`].

use serde_json::{json, Value};

use sealab::hamiltonian::{heisenberg_ring, parse_pauli_file};
use sealab::rng::derive_seed;
use sealab::vqe::GradientMethod;
use sealab::{Error, Result};

use crate::ansatz_spec::{AnsatzSpec, SeaWidth};
use crate::config::Config;
use crate::experiments::bp::{bp_scan_families, ScanSettings};
use crate::experiments::design::{
    frame_potential_haar_check, frame_potential_sweep, schmidt_construct_scan, two_design_check,
};
use crate::experiments::haar_block::{
    sea_haar_block_variance, two_design_baseline_variance, two_design_baseline_variance_mc, Placement,
};
use crate::experiments::vqe_run::{run_vqe_experiment, VqeExperiment};
use crate::fit::{fit_semilog_slope, SemilogFit};
use crate::report::{fields, Report};

pub const EXPERIMENTS: [&str; 6] = [
    "vqe",
    "bp-scan",
    "haar-block-var",
    "frame-potential",
    "two-design-check",
    "schmidt-construct",
];

/// Variance level used for the extrapolated crossing columns.
pub const CROSSING_LEVEL: f64 = 1e-3;

pub fn run(experiment: &str, config: &Config, seed: u64) -> Result<Report> {
    match experiment {
        "vqe" => run_vqe(config, seed),
        "bp-scan" => run_bp_scan(config, seed),
        "haar-block-var" => run_haar_block(config, seed),
        "frame-potential" => run_frame_potential(config, seed),
        "two-design-check" => run_two_design(config, seed),
        "schmidt-construct" => run_schmidt(config, seed),
        other => Err(Error::Argument(format!("unknown experiment `{other}`"))),
    }
}

fn families(config: &Config, default: &[&str]) -> Result<Vec<AnsatzSpec>> {
    config
        .strings_or("families", default)
        .iter()
        .map(|f| AnsatzSpec::parse(f))
        .collect()
}

fn gradient(config: &Config) -> Result<GradientMethod> {
    let name = config.str_or("gradient", "adjoint");
    GradientMethod::from_name(name)
        .ok_or_else(|| Error::Argument(format!("unknown gradient method `{name}`")))
}

fn fit_fields(fit: &SemilogFit) -> serde_json::Map<String, Value> {
    fields([
        ("intercept", json!(fit.intercept)),
        ("residuals", json!(fit.residuals)),
        ("crossing_1e-3", json!(fit.crossing(CROSSING_LEVEL))),
    ])
}

fn run_vqe(config: &Config, seed: u64) -> Result<Report> {
    config.check_keys(&[
        "hamiltonian", "sites", "families", "layers", "iterations", "learning_rate", "runs", "gradient",
    ])?;
    let hamiltonian = match config.str_or("hamiltonian", "heisenberg") {
        "heisenberg" => heisenberg_ring(config.parse_or("sites", 8usize)?)?,
        path => parse_pauli_file(path)?,
    };
    let runs: u64 = config.parse_or("runs", 3)?;
    let exp = VqeExperiment {
        hamiltonian,
        families: families(config, &["sea_m2_k2", "alt", "random"])?,
        layers: config.parse_or("layers", 30)?,
        iterations: config.parse_or("iterations", 400)?,
        learning_rate: config.parse_or("learning_rate", 0.02)?,
        gradient: gradient(config)?,
        seeds: (0..runs).map(|i| derive_seed(seed, i)).collect(),
    };
    let out = run_vqe_experiment(&exp)?;
    let mut report = Report::new("vqe", config, seed);
    if let Some(e) = out.exact_energy {
        report.push("exact", 0.0, e, fields([]));
    }
    let matched = out.plan.within_ten_percent();
    for (ri, run) in out.runs.iter().enumerate() {
        let series = format!("{}/run{}", run.family, ri % exp.seeds.len());
        for (it, e) in run.trace.energies.iter().enumerate() {
            report.push(series.clone(), it as f64, *e, fields([]));
        }
        report.push(
            "final",
            ri as f64,
            run.trace.final_energy(),
            fields([
                ("family", json!(run.family.to_string())),
                ("run_seed", json!(run.seed)),
                ("layers", json!(run.layers)),
                ("n_params", json!(run.n_params)),
                ("gap", json!(out.gap(run))),
                ("params_within_10pct", json!(matched)),
                ("trace_hash", json!(run.trace.config_hash)),
            ]),
        );
    }
    Ok(report)
}

fn run_bp_scan(config: &Config, seed: u64) -> Result<Report> {
    config.check_keys(&["families", "qubits", "samples", "layers", "gradient"])?;
    let fams = families(config, &["random", "sea1"])?;
    let settings = ScanSettings {
        qubits: config.list_or("qubits", &[4usize, 6, 8, 10])?,
        samples: config.parse_or("samples", 200)?,
        layers: config.parse_or("layers", 30)?,
        seed,
        gradient: gradient(config)?,
    };
    let reports = bp_scan_families(&fams, &settings)?;
    let mut report = Report::new("bp-scan", config, seed);
    for r in &reports {
        for e in &r.entries {
            report.push(
                format!("{}/mean", r.family),
                e.n_qubits as f64,
                e.mean_variance_over_params,
                fields([
                    ("layers", json!(e.layers)),
                    ("n_params", json!(e.n_params)),
                    ("n_samples", json!(e.n_samples)),
                    ("params_within_10pct", json!(r.params_matched)),
                ]),
            );
            report.push(format!("{}/max", r.family), e.n_qubits as f64, e.max_param_variance, fields([]));
        }
        for (tag, fit) in [("mean", &r.mean_fit), ("max", &r.max_fit)] {
            if let Some(fit) = fit {
                report.push(format!("{}/fit_{tag}", r.family), r.entries.len() as f64, fit.slope, fit_fields(fit));
            }
        }
    }
    Ok(report)
}

fn cnot_width(name: &str) -> Result<SeaWidth> {
    match name {
        "one" => Ok(SeaWidth::One),
        "half" => Ok(SeaWidth::Half),
        "full" => Ok(SeaWidth::Full),
        v => v
            .parse()
            .ok()
            .filter(|&k: &usize| k > 0)
            .map(SeaWidth::Fixed)
            .ok_or_else(|| Error::Argument(format!("bad CNOT count `{v}`"))),
    }
}

fn run_haar_block(config: &Config, seed: u64) -> Result<Report> {
    config.check_keys(&["sizes", "placements", "cnots", "samples", "baseline_samples"])?;
    let sizes: Vec<usize> = config.list_or("sizes", &[4usize, 6, 8])?;
    let placements: Vec<Placement> = config
        .strings_or("placements", &["schmidt", "lbc"])
        .iter()
        .map(|p| p.parse())
        .collect::<Result<_>>()?;
    let widths: Vec<SeaWidth> = config
        .strings_or("cnots", &["half"])
        .iter()
        .map(|c| cnot_width(c))
        .collect::<Result<_>>()?;
    let samples: usize = config.parse_or("samples", 1000)?;
    let baseline_samples: usize = config.parse_or("baseline_samples", 0)?;
    if let Some(bad) = sizes.iter().find(|&&s| s % 2 != 0 || s < 4) {
        return Err(Error::Argument(format!("sizes must be even and >= 4, got {bad}")));
    }
    let mut report = Report::new("haar-block-var", config, seed);
    let mut series_points: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for (pi, &placement) in placements.iter().enumerate() {
        for (wi, width) in widths.iter().enumerate() {
            let mut pts = Vec::new();
            let label = format!("{}_k{}", placement.name(), match width {
                SeaWidth::One => "1".to_string(),
                SeaWidth::Half => "half".to_string(),
                SeaWidth::Full => "full".to_string(),
                SeaWidth::Fixed(k) => k.to_string(),
            });
            for &size in &sizes {
                let n_sub = size / 2;
                let k = width.resolve(n_sub);
                let s = derive_seed(seed, ((pi * 16 + wi) * 1024 + size) as u64);
                let v = sea_haar_block_variance(n_sub, placement, k, samples, s)?;
                report.push(
                    label.clone(),
                    size as f64,
                    v.variance,
                    fields([("std_error", json!(v.std_error)), ("cnots", json!(k)), ("n_samples", json!(samples))]),
                );
                pts.push((size as f64, v.variance));
            }
            series_points.push((label, pts));
        }
    }
    let mut pts = Vec::new();
    for &size in &sizes {
        let v = two_design_baseline_variance(&heisenberg_ring(size)?)?;
        report.push("two_design", size as f64, v, fields([("closed_form", json!(true))]));
        pts.push((size as f64, v));
        if baseline_samples > 0 {
            let mc = two_design_baseline_variance_mc(size, baseline_samples, derive_seed(seed, 0xBA5E + size as u64))?;
            report.push(
                "two_design_mc",
                size as f64,
                mc.variance,
                fields([("std_error", json!(mc.std_error)), ("n_samples", json!(baseline_samples))]),
            );
        }
    }
    series_points.push(("two_design".to_string(), pts));
    for (label, pts) in &series_points {
        if let Ok(fit) = fit_semilog_slope(pts) {
            report.push(format!("{label}/fit"), pts.len() as f64, fit.slope, fit_fields(&fit));
        }
    }
    Ok(report)
}

/// `(1, k)` for every k, then `(m, 1)` and `(m, m)` for m ≥ 2.
fn default_variants(n_sub: usize) -> Vec<String> {
    let ones = (1..=n_sub).map(|k| format!("1:{k}"));
    let cols = (2..=n_sub).map(|m| format!("{m}:1"));
    let diag = (2..=n_sub).map(|m| format!("{m}:{m}"));
    ones.chain(cols).chain(diag).collect()
}

fn parse_variants(config: &Config, n_sub: usize) -> Result<Vec<(usize, usize)>> {
    let defaults = default_variants(n_sub);
    let defaults: Vec<&str> = defaults.iter().map(String::as_str).collect();
    config
        .strings_or("variants", &defaults)
        .iter()
        .map(|v| {
            let (m, k) = v
                .split_once(':')
                .ok_or_else(|| Error::Argument(format!("variant `{v}` is not `m:k`")))?;
            let p = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Argument(format!("bad variant `{v}`")));
            Ok((p(m)?, p(k)?))
        })
        .collect()
}

fn run_frame_potential(config: &Config, seed: u64) -> Result<Report> {
    config.check_keys(&["n_sub", "variants", "samples", "haar_qubits", "haar_samples"])?;
    let n_sub: usize = config.parse_or("n_sub", 4)?;
    let samples: usize = config.parse_or("samples", 5000)?;
    let variants = parse_variants(config, n_sub)?;
    let mut report = Report::new("frame-potential", config, seed);
    let haar = sealab::moments::frame_potential_haar(2 * n_sub)?;
    report.push("haar_closed", (2 * n_sub) as f64, haar, fields([]));
    for (i, p) in frame_potential_sweep(n_sub, &variants, samples, seed)?.iter().enumerate() {
        report.push(
            "sea",
            i as f64,
            p.estimate.mean,
            fields([
                ("m", json!(p.m)),
                ("k", json!(p.k)),
                ("std_error", json!(p.estimate.std_error)),
                ("n_samples", json!(p.estimate.n_samples)),
                ("above_haar", json!(p.estimate.mean > haar)),
            ]),
        );
    }
    let haar_qubits: Vec<usize> = config.list_or("haar_qubits", &[])?;
    let haar_samples: usize = config.parse_or("haar_samples", 20000)?;
    for &n in &haar_qubits {
        let (est, closed) = frame_potential_haar_check(n, haar_samples, derive_seed(seed, 0xF0 + n as u64))?;
        report.push(
            "haar_estimate",
            n as f64,
            est.mean,
            fields([
                ("std_error", json!(est.std_error)),
                ("closed_form", json!(closed)),
                ("z", json!(est.z_score(closed))),
            ]),
        );
    }
    Ok(report)
}

fn run_two_design(config: &Config, seed: u64) -> Result<Report> {
    config.check_keys(&["n_sub", "samples"])?;
    let subs: Vec<usize> = config.list_or("n_sub", &[1usize, 2])?;
    let samples: Vec<usize> = config.list_or("samples", &[50000usize, 200000])?;
    if samples.len() != 1 && samples.len() != subs.len() {
        return Err(Error::Argument("`samples` needs one value or one per n_sub".into()));
    }
    let mut report = Report::new("two-design-check", config, seed);
    for (i, &n) in subs.iter().enumerate() {
        let s = samples[if samples.len() == 1 { 0 } else { i }];
        let c = two_design_check(n, s, derive_seed(seed, n as u64))?;
        for (series, est, closed) in [("sea", &c.sea, c.sea_closed), ("haar", &c.haar, c.haar_closed)] {
            report.push(
                series,
                (2 * n) as f64,
                est.mean,
                fields([
                    ("std_error", json!(est.std_error)),
                    ("closed_form", json!(closed)),
                    ("z", json!(est.z_score(closed))),
                    ("n_samples", json!(s)),
                ]),
            );
        }
        report.push("separation", (2 * n) as f64, c.separation(), fields([]));
    }
    Ok(report)
}

fn run_schmidt(config: &Config, seed: u64) -> Result<Report> {
    config.check_keys(&["qubits", "targets"])?;
    let qubits: Vec<usize> = config.list_or("qubits", &[2usize, 4, 6])?;
    let targets: usize = config.parse_or("targets", 100)?;
    let mut report = Report::new("schmidt-construct", config, seed);
    for &n in &qubits {
        for p in schmidt_construct_scan(n, targets, derive_seed(seed, n as u64))? {
            report.push(
                format!("n{n}"),
                p.truncation as f64,
                p.mean_fidelity,
                fields([
                    ("min_fidelity", json!(p.min_fidelity)),
                    ("max_prepare_error", json!(p.max_prepare_error)),
                    ("n_targets", json!(p.n_targets)),
                ]),
            );
        }
    }
    Ok(report)
}
