//! Gradient-variance scans over qubit counts.

use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;

use sealab::ansatz::AnsatzCircuit;
use sealab::hamiltonian::heisenberg_ring;
use sealab::rng::{derive_seed, substream};
use sealab::vqe::{grad_adjoint, grad_parameter_shift, GradientMethod};
use sealab::{Error, Result};

use crate::ansatz_spec::{AnsatzSpec, DepthPlan};
use crate::fit::{fit_semilog_slope, SemilogFit};

/// Source of the parameter vector for sample `index`.
pub trait ParamSampler: Sync {
    fn sample(&self, n_params: usize, index: usize) -> Vec<f64>;
}

/// Uniform on `[0, 2π)`, sample `i` from stream `i` of `seed`.
#[derive(Clone, Copy, Debug)]
pub struct UniformSampler {
    pub seed: u64,
}

impl ParamSampler for UniformSampler {
    fn sample(&self, n_params: usize, index: usize) -> Vec<f64> {
        let mut rng = substream(self.seed, index as u64);
        (0..n_params).map(|_| rng.random_range(0.0..TAU)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarianceEntry {
    pub n_qubits: usize,
    pub layers: usize,
    pub n_params: usize,
    /// Per-parameter sample variance of `∂C/∂θ_j`, averaged over `j`.
    pub mean_variance_over_params: f64,
    /// Sample variance of the largest-magnitude partial derivative of each
    /// sample.
    pub max_param_variance: f64,
    pub n_samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarianceReport {
    pub family: String,
    pub entries: Vec<VarianceEntry>,
    /// Fit of `log₁₀ mean_variance_over_params`; present with ≥ 3 points.
    pub mean_fit: Option<SemilogFit>,
    pub max_fit: Option<SemilogFit>,
    /// Whether the depth plan kept parameter counts within 10% at every
    /// qubit count.
    pub params_matched: bool,
}

/// Shifted by the first value so identical inputs give exactly zero.
fn sample_variance(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let shift = values.clone().next().unwrap_or(0.0);
    let centred = values.map(move |v| v - shift);
    let n = centred.clone().count() as f64;
    let mean = centred.clone().sum::<f64>() / n;
    centred.map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

/// Variance statistics of the cost gradient of one circuit against the
/// Heisenberg ring on its qubits.
pub fn gradient_variance(
    circuit: &AnsatzCircuit,
    layers: usize,
    samples: usize,
    sampler: &dyn ParamSampler,
    method: GradientMethod,
) -> Result<VarianceEntry> {
    if samples < 2 {
        return Err(Error::Argument(format!("need at least 2 samples, got {samples}")));
    }
    let n = circuit.n_qubits();
    let h = heisenberg_ring(n)?;
    let grads: Vec<Vec<f64>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let p = sampler.sample(circuit.n_params(), i);
            match method {
                GradientMethod::Adjoint => grad_adjoint(circuit, &p, &h),
                GradientMethod::ParameterShift => grad_parameter_shift(circuit, &p, &h),
            }
        })
        .collect::<Result<_>>()?;
    let n_params = circuit.n_params();
    let mean_variance = if n_params == 0 {
        0.0
    } else {
        (0..n_params)
            .map(|j| sample_variance(grads.iter().map(move |g| g[j])))
            .sum::<f64>()
            / n_params as f64
    };
    let largest = grads.iter().map(|g| {
        g.iter()
            .copied()
            .fold(0.0f64, |best, x| if x.abs() > best.abs() { x } else { best })
    });
    Ok(VarianceEntry {
        n_qubits: n,
        layers,
        n_params,
        mean_variance_over_params: mean_variance,
        max_param_variance: sample_variance(largest),
        n_samples: samples,
    })
}

/// Settings shared by every family of a scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanSettings {
    pub qubits: Vec<usize>,
    pub samples: usize,
    /// Depth of each SEA block; other families are matched to the first SEA
    /// family's parameter count.
    pub layers: usize,
    pub seed: u64,
    pub gradient: GradientMethod,
}

/// Scans every family in `families` with depths from one [`DepthPlan`] per
/// qubit count.
pub fn bp_scan_families(families: &[AnsatzSpec], settings: &ScanSettings) -> Result<Vec<VarianceReport>> {
    if families.is_empty() {
        return Err(Error::Argument("no ansatz families given".into()));
    }
    let plans: Vec<DepthPlan> = settings
        .qubits
        .iter()
        .map(|&n| DepthPlan::new(families, n, settings.layers))
        .collect::<Result<_>>()?;
    families
        .iter()
        .enumerate()
        .map(|(fi, fam)| {
            let depths: Vec<usize> = plans.iter().map(|p| p.entries[fi].1).collect();
            let mut report = bp_variance_scan(
                fam,
                &settings.qubits,
                &depths,
                settings.samples,
                settings.seed,
                settings.gradient,
                None,
            )?;
            report.params_matched = plans.iter().all(DepthPlan::within_ten_percent);
            Ok(report)
        })
        .collect()
}

/// One family over a qubit range. `depths[i]` is the layer count used at
/// `qubits[i]`. Parameters come from `sampler` when given, otherwise from a
/// uniform sampler seeded per qubit count.
pub fn bp_variance_scan(
    family: &AnsatzSpec,
    qubits: &[usize],
    depths: &[usize],
    samples: usize,
    seed: u64,
    method: GradientMethod,
    sampler: Option<&dyn ParamSampler>,
) -> Result<VarianceReport> {
    if qubits.is_empty() || qubits.len() != depths.len() {
        return Err(Error::Argument("qubit range and depth list must be non-empty and equal length".into()));
    }
    if samples < 2 {
        return Err(Error::Argument(format!("need at least 2 samples, got {samples}")));
    }
    let mut entries = Vec::with_capacity(qubits.len());
    for (&n, &layers) in qubits.iter().zip(depths) {
        if family.is_sea() && n % 2 != 0 {
            return Err(Error::Argument(format!("SEA needs an even qubit count, got {n}")));
        }
        if n < 3 {
            return Err(Error::Argument(format!("Heisenberg ring needs at least 3 qubits, got {n}")));
        }
        let circuit = family.build(n, layers, derive_seed(seed, n as u64))?;
        let uniform = UniformSampler {
            seed: derive_seed(seed, 0x1000 + n as u64),
        };
        let s: &dyn ParamSampler = sampler.unwrap_or(&uniform);
        entries.push(gradient_variance(&circuit, layers, samples, s, method)?);
    }
    let fit = |f: fn(&VarianceEntry) -> f64| -> Option<SemilogFit> {
        let pts: Vec<(f64, f64)> = entries.iter().map(|e| (e.n_qubits as f64, f(e))).collect();
        fit_semilog_slope(&pts).ok()
    };
    Ok(VarianceReport {
        family: family.to_string(),
        mean_fit: fit(|e| e.mean_variance_over_params),
        max_fit: fit(|e| e.max_param_variance),
        entries,
        params_matched: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Constant;

    impl ParamSampler for Constant {
        fn sample(&self, n_params: usize, _index: usize) -> Vec<f64> {
            vec![0.7; n_params]
        }
    }

    #[test]
    fn identical_parameters_give_zero_variance() {
        let fam = AnsatzSpec::parse("alt").unwrap();
        let r = bp_variance_scan(&fam, &[4, 6], &[2, 2], 5, 0, GradientMethod::Adjoint, Some(&Constant)).unwrap();
        for e in &r.entries {
            assert_eq!(e.mean_variance_over_params, 0.0);
            assert_eq!(e.max_param_variance, 0.0);
        }
        assert!(r.mean_fit.is_none());
    }

    #[test]
    fn gradient_rules_give_same_scan() {
        let fam = AnsatzSpec::parse("sea1").unwrap();
        let a = bp_variance_scan(&fam, &[4], &[1], 8, 2, GradientMethod::Adjoint, None).unwrap();
        let b = bp_variance_scan(&fam, &[4], &[1], 8, 2, GradientMethod::ParameterShift, None).unwrap();
        let (x, y) = (&a.entries[0], &b.entries[0]);
        assert!((x.mean_variance_over_params - y.mean_variance_over_params).abs() < 1e-12);
        assert!((x.max_param_variance - y.max_param_variance).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_ranges() {
        let sea = AnsatzSpec::parse("sea1").unwrap();
        assert!(bp_variance_scan(&sea, &[5], &[1], 4, 0, GradientMethod::Adjoint, None).is_err());
        assert!(bp_variance_scan(&sea, &[4], &[1], 1, 0, GradientMethod::Adjoint, None).is_err());
        assert!(bp_variance_scan(&sea, &[], &[], 4, 0, GradientMethod::Adjoint, None).is_err());
        assert!(bp_scan_families(&[], &ScanSettings {
            qubits: vec![4],
            samples: 4,
            layers: 1,
            seed: 0,
            gradient: GradientMethod::Adjoint,
        })
        .is_err());
    }

    #[test]
    fn scan_is_deterministic() {
        let fams = [AnsatzSpec::parse("sea1").unwrap(), AnsatzSpec::Random];
        let s = ScanSettings {
            qubits: vec![4, 6, 8],
            samples: 6,
            layers: 2,
            seed: 9,
            gradient: GradientMethod::Adjoint,
        };
        let a = bp_scan_families(&fams, &s).unwrap();
        assert_eq!(a, bp_scan_families(&fams, &s).unwrap());
        assert!(a.iter().all(|r| r.mean_fit.is_some()));
    }
}
