//! Cost evaluation, gradients and plain gradient descent.
//!
//! All parameterised gates are single-Pauli rotations `exp(-iθP/2)`, so the
//! two-term shift rule is exact. [`grad_adjoint`] computes the same vector
//! with one forward and one backward sweep and is what long training runs
//! use; the tests pin it to [`grad_parameter_shift`].

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::ansatz::{AnsatzCircuit, Axis, GateOp};
use crate::hamiltonian::PauliSum;
use crate::qstate::{self, kernels, StateVector};
use crate::rng::seeded;
use crate::{Error, Result, C64};

fn check_sizes(circuit: &AnsatzCircuit, h: &PauliSum) -> Result<()> {
    if circuit.n_qubits() != h.n_qubits() {
        return Err(Error::arg(format!(
            "{}-qubit circuit with {}-qubit Hamiltonian",
            circuit.n_qubits(),
            h.n_qubits()
        )));
    }
    Ok(())
}

/// `⟨0|U(θ)† H U(θ)|0⟩`.
pub fn cost(circuit: &AnsatzCircuit, params: &[f64], h: &PauliSum) -> Result<f64> {
    check_sizes(circuit, h)?;
    h.expectation(&circuit.evaluate(params)?)
}

/// `[C(θ + π/2 e_j) − C(θ − π/2 e_j)] / 2` for every `j`.
pub fn grad_parameter_shift(circuit: &AnsatzCircuit, params: &[f64], h: &PauliSum) -> Result<Vec<f64>> {
    shifted_differences(circuit, params, h, FRAC_PI_2, 0.5)
}

/// Central differences with the given step.
pub fn grad_finite_difference(
    circuit: &AnsatzCircuit,
    params: &[f64],
    h: &PauliSum,
    step: f64,
) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::arg(format!("finite-difference step must be positive, got {step}")));
    }
    shifted_differences(circuit, params, h, step, 0.5 / step)
}

fn shifted_differences(
    circuit: &AnsatzCircuit,
    params: &[f64],
    h: &PauliSum,
    shift: f64,
    scale: f64,
) -> Result<Vec<f64>> {
    check_sizes(circuit, h)?;
    if params.len() != circuit.n_params() {
        return Err(Error::arg(format!(
            "circuit has {} parameters, got {}",
            circuit.n_params(),
            params.len()
        )));
    }
    (0..params.len())
        .into_par_iter()
        .map(|j| {
            let mut p = params.to_vec();
            p[j] = params[j] + shift;
            let plus = cost(circuit, &p, h)?;
            p[j] = params[j] - shift;
            let minus = cost(circuit, &p, h)?;
            Ok((plus - minus) * scale)
        })
        .collect()
}

/// Reverse-mode gradient. Returns the cost alongside the gradient.
pub fn cost_and_grad_adjoint(
    circuit: &AnsatzCircuit,
    params: &[f64],
    h: &PauliSum,
) -> Result<(f64, Vec<f64>)> {
    check_sizes(circuit, h)?;
    let n = circuit.n_qubits();
    let mut psi = circuit.evaluate(params)?;
    let energy = h.expectation(&psi)?;
    let mut lam = StateVector::from_raw(n, h.apply(&psi)?);
    let mut grad = vec![0.0; params.len()];
    let mut scratch = vec![C64::new(0.0, 0.0); psi.dim()];
    for op in circuit.ops().iter().rev() {
        if let GateOp::Rotation { axis, qubit, param } = op {
            scratch.copy_from_slice(psi.amplitudes());
            match axis {
                Axis::X => kernels::apply_x(&mut scratch, n, *qubit),
                Axis::Y => kernels::apply_y(&mut scratch, n, *qubit),
                Axis::Z => kernels::apply_z(&mut scratch, n, *qubit),
            }
            // dC/dθ = 2 Re⟨λ|(-i/2)P|ψ⟩ = Im⟨λ|P|ψ⟩
            grad[*param] = qstate::inner(lam.amplitudes(), &scratch).im;
        }
        op.apply(&mut psi, params, true);
        op.apply(&mut lam, params, true);
    }
    Ok((energy, grad))
}

/// Gradient vector from [`cost_and_grad_adjoint`].
pub fn grad_adjoint(circuit: &AnsatzCircuit, params: &[f64], h: &PauliSum) -> Result<Vec<f64>> {
    cost_and_grad_adjoint(circuit, params, h).map(|(_, g)| g)
}

/// Gradient rule used by [`run_sgd`]. Both give the same vector up to
/// rounding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GradientMethod {
    #[default]
    ParameterShift,
    Adjoint,
}

impl GradientMethod {
    pub fn name(self) -> &'static str {
        match self {
            GradientMethod::ParameterShift => "parameter-shift",
            GradientMethod::Adjoint => "adjoint",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "parameter-shift" => Some(GradientMethod::ParameterShift),
            "adjoint" => Some(GradientMethod::Adjoint),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VqeConfig {
    pub iterations: usize,
    pub learning_rate: f64,
    pub seed: u64,
    pub gradient: GradientMethod,
}

impl Default for VqeConfig {
    fn default() -> Self {
        Self {
            iterations: 400,
            learning_rate: 0.1,
            seed: 0,
            gradient: GradientMethod::ParameterShift,
        }
    }
}

impl VqeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::arg(format!(
                "learning rate must be finite and non-negative, got {}",
                self.learning_rate
            )));
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical `key=value` rendering of the config.
    pub fn config_hash(&self) -> String {
        let canonical = format!(
            "iterations={};learning_rate={:?};seed={};gradient={};init=uniform[0,2pi)",
            self.iterations,
            self.learning_rate,
            self.seed,
            self.gradient.name()
        );
        hex_digest(canonical.as_bytes())
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Energies at every step (the initial energy first), the final parameters
/// and the hash of the config that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainingTrace {
    pub energies: Vec<f64>,
    pub final_params: Vec<f64>,
    pub config_hash: String,
}

impl TrainingTrace {
    pub fn final_energy(&self) -> f64 {
        *self.energies.last().expect("trace holds at least the initial energy")
    }
}

/// `n` parameters drawn uniformly from `[0, 2π)` using `seed`.
pub fn initial_params(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = seeded(seed);
    (0..n).map(|_| rng.random_range(0.0..TAU)).collect()
}

/// Full-batch gradient descent `θ ← θ − lr·∇C(θ)` from uniform random
/// initial parameters.
pub fn run_sgd(circuit: &AnsatzCircuit, h: &PauliSum, config: &VqeConfig) -> Result<TrainingTrace> {
    let init = initial_params(circuit.n_params(), config.seed);
    run_sgd_from(circuit, h, config, init)
}

/// [`run_sgd`] from caller-supplied initial parameters.
pub fn run_sgd_from(
    circuit: &AnsatzCircuit,
    h: &PauliSum,
    config: &VqeConfig,
    mut params: Vec<f64>,
) -> Result<TrainingTrace> {
    config.validate()?;
    check_sizes(circuit, h)?;
    let mut energies = Vec::with_capacity(config.iterations + 1);
    for _ in 0..config.iterations {
        let (energy, grad) = match config.gradient {
            GradientMethod::Adjoint => cost_and_grad_adjoint(circuit, &params, h)?,
            GradientMethod::ParameterShift => (
                cost(circuit, &params, h)?,
                grad_parameter_shift(circuit, &params, h)?,
            ),
        };
        energies.push(energy);
        for (p, g) in params.iter_mut().zip(&grad) {
            *p -= config.learning_rate * g;
        }
    }
    energies.push(cost(circuit, &params, h)?);
    Ok(TrainingTrace {
        energies,
        final_params: params,
        config_hash: config.config_hash(),
    })
}
