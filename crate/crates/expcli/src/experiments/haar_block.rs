//! Variance of a single Ry derivative inside SEA with Haar-random blocks,
//! and the global two-design baseline.
//!
//! The probed Ry always acts on qubit 0, the first qubit of subsystem A.
//! With the Schmidt placement it sits between two Haar unitaries on A
//! before the entangler; with the LBC placement it sits between two Haar
//! unitaries on A after the entangler.

use std::f64::consts::TAU;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use sealab::ansatz::{AnsatzCircuit, Axis, Family, GateOp};
use sealab::hamiltonian::{heisenberg_ring, PauliSum};
use sealab::qstate::haar_random_unitary;
use sealab::rng::{substream, SeededRng};
use sealab::vqe::grad_parameter_shift;
use sealab::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    Schmidt,
    Lbc,
}

impl Placement {
    pub fn name(self) -> &'static str {
        match self {
            Placement::Schmidt => "schmidt",
            Placement::Lbc => "lbc",
        }
    }
}

impl FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schmidt" => Ok(Placement::Schmidt),
            "lbc" => Ok(Placement::Lbc),
            _ => Err(Error::Argument(format!(
                "unknown placement `{s}` (expected schmidt or lbc)"
            ))),
        }
    }
}

/// Sample variance of a set of derivatives with the standard error of that
/// variance, `sqrt((m₄ − s⁴)/n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarianceEstimate {
    pub variance: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl VarianceEstimate {
    pub fn from_samples(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::Argument(format!("need at least 2 samples, got {n}")));
        }
        let nf = n as f64;
        let values: Vec<f64> = values.iter().map(|v| v - values[0]).collect();
        let mean = values.iter().sum::<f64>() / nf;
        let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0);
        let m4 = values.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / nf;
        Ok(Self {
            variance,
            std_error: ((m4 - variance * variance).max(0.0) / nf).sqrt(),
            n_samples: n,
        })
    }
}

fn dense(targets: std::ops::Range<usize>, rng: &mut SeededRng) -> Result<GateOp> {
    let dim = 1usize << targets.len();
    Ok(GateOp::Dense {
        targets: targets.collect(),
        matrix: haar_random_unitary(dim, rng)?,
    })
}

fn probe() -> GateOp {
    GateOp::Rotation {
        axis: Axis::Y,
        qubit: 0,
        param: 0,
    }
}

/// One draw of the `2N`-qubit circuit with fresh Haar blocks.
pub fn haar_block_circuit(
    n_sub: usize,
    placement: Placement,
    k_cnots: usize,
    rng: &mut SeededRng,
) -> Result<AnsatzCircuit> {
    let n = n_sub;
    let cnots = (0..k_cnots).map(|i| GateOp::Cnot {
        control: i,
        target: n + i,
    });
    let mut ops = Vec::with_capacity(k_cnots + 6);
    match placement {
        Placement::Schmidt => {
            ops.push(dense(0..n, rng)?);
            ops.push(probe());
            ops.push(dense(0..n, rng)?);
            ops.extend(cnots);
            ops.push(dense(0..n, rng)?);
            ops.push(dense(n..2 * n, rng)?);
        }
        Placement::Lbc => {
            ops.push(dense(0..n, rng)?);
            ops.extend(cnots);
            ops.push(dense(0..n, rng)?);
            ops.push(probe());
            ops.push(dense(0..n, rng)?);
            ops.push(dense(n..2 * n, rng)?);
        }
    }
    AnsatzCircuit::new(2 * n, ops, Family::Sea)
}

fn derivative_variance<F>(samples: usize, seed: u64, h: &PauliSum, draw: F) -> Result<VarianceEstimate>
where
    F: Fn(&mut SeededRng) -> Result<AnsatzCircuit> + Sync,
{
    if samples < 2 {
        return Err(Error::Argument(format!("need at least 2 samples, got {samples}")));
    }
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let theta = rng.random_range(0.0..TAU);
            let circuit = draw(&mut rng)?;
            Ok(grad_parameter_shift(&circuit, &[theta], h)?[0])
        })
        .collect::<Result<_>>()?;
    VarianceEstimate::from_samples(&values)
}

/// Variance of `∂C/∂θ` for the probed Ry with `H` the Heisenberg ring on
/// `2N` qubits.
pub fn sea_haar_block_variance(
    n_sub: usize,
    placement: Placement,
    k_cnots: usize,
    samples: usize,
    seed: u64,
) -> Result<VarianceEstimate> {
    if n_sub == 0 || k_cnots == 0 || k_cnots > n_sub {
        return Err(Error::Argument(format!(
            "need N >= 1 and 1 <= k <= N, got N={n_sub} k={k_cnots}"
        )));
    }
    let h = heisenberg_ring(2 * n_sub)?;
    derivative_variance(samples, seed, &h, |rng| haar_block_circuit(n_sub, placement, k_cnots, rng))
}

/// Monte-Carlo variance for one Ry on qubit 0 between two global Haar
/// unitaries, with `H` the Heisenberg ring.
pub fn two_design_baseline_variance_mc(n_qubits: usize, samples: usize, seed: u64) -> Result<VarianceEstimate> {
    let h = heisenberg_ring(n_qubits)?;
    derivative_variance(samples, seed, &h, |rng| {
        let ops = vec![dense(0..n_qubits, rng)?, probe(), dense(0..n_qubits, rng)?];
        AnsatzCircuit::new(n_qubits, ops, Family::Sea)
    })
}

/// Exact variance for the same setting. Twirling both Haar unitaries gives
/// `tr(H₀²)·D² / (2(D+1)(D²−1))`, where `H₀` is the traceless part of `H`
/// and `D = 2^n`.
pub fn two_design_baseline_variance(h: &PauliSum) -> Result<f64> {
    let n = h.n_qubits();
    if n > 60 {
        return Err(Error::Argument(format!("{n} qubits out of range")));
    }
    let d = (1u64 << n) as f64;
    let identity = "I".repeat(n);
    let norm: f64 = h
        .terms()
        .iter()
        .filter(|t| t.word() != identity)
        .map(|t| t.coefficient().powi(2))
        .sum();
    Ok(norm * d * d / (2.0 * (d + 1.0) * (d * d - 1.0)))
}
