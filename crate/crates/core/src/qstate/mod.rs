//! Dense statevector engine.
//!
//! Qubit 0 is the most significant bit of the amplitude index, so for a
//! bipartition with `cut` qubits in subsystem A the amplitude vector reshapes
//! row-major into a `2^cut x 2^(n - cut)` matrix with A indexing the rows.

pub(crate) mod kernels;
mod density;
mod schmidt;
mod unitary;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result, C64};

pub use density::{partial_trace, DensityMatrix, Subsystem};
pub use schmidt::{schmidt_decompose, SchmidtForm, SCHMIDT_RANK_TOL};
pub use unitary::{haar_random_unitary, UnitaryMatrix};

/// Tolerance on `Σ|a_i|² = 1` accepted by [`StateVector::from_amplitudes`].
pub const NORM_TOL: f64 = 1e-10;

/// Largest register the dense engine will allocate.
pub const MAX_QUBITS: usize = 26;

/// Normalised pure state of `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0...0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_register(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::arg(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps an amplitude vector whose length is a power of two and whose
    /// squared norm is one within [`NORM_TOL`].
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        let norm = norm_sqr(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!("squared norm {norm} is not 1")));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Like [`from_amplitudes`](Self::from_amplitudes) but rescales a
    /// non-zero vector to unit norm first.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        let norm = norm_sqr(&amps).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid("cannot normalise a zero or non-finite vector"));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(Self { n_qubits, amps })
    }

    /// Haar-random pure state: a normalised complex Gaussian vector.
    pub fn haar_random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_register(n_qubits)?;
        let amps = gaussian_vector(1usize << n_qubits, rng);
        Self::normalized(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::arg(format!(
                "inner product of {}-qubit and {}-qubit states",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(inner(&self.amps, &other.amps))
    }

    /// Applies `gate` to `targets` in place.
    pub fn apply(&mut self, gate: &Gate<'_>, targets: &[usize]) -> Result<()> {
        validate_targets(self.n_qubits, targets)?;
        let arity = gate.arity(targets.len())?;
        if arity != targets.len() {
            return Err(Error::arg(format!(
                "{} expects {} target(s), got {}",
                gate.name(),
                arity,
                targets.len()
            )));
        }
        self.apply_unchecked(gate, targets);
        Ok(())
    }

    pub(crate) fn apply_unchecked(&mut self, gate: &Gate<'_>, targets: &[usize]) {
        let n = self.n_qubits;
        let amps = &mut self.amps;
        match *gate {
            Gate::Rx(t) => kernels::apply_rx(amps, n, targets[0], t),
            Gate::Ry(t) => kernels::apply_ry(amps, n, targets[0], t),
            Gate::Rz(t) => kernels::apply_rz(amps, n, targets[0], t),
            Gate::Cnot => kernels::apply_cnot(amps, n, targets[0], targets[1]),
            Gate::Cz => kernels::apply_cz(amps, n, targets[0], targets[1]),
            Gate::Dense(u) => {
                if targets.len() == 1 {
                    let e = u.entries();
                    kernels::apply_1q(amps, n, targets[0], [e[0], e[1], e[2], e[3]]);
                } else {
                    kernels::apply_dense(amps, n, targets, u.entries());
                }
            }
        }
    }
}

/// Gate descriptor accepted by [`apply_gate`].
///
/// Rotations follow `R_P(θ) = exp(-iθP/2)`. `Cnot` takes `[control, target]`.
#[derive(Clone, Copy, Debug)]
pub enum Gate<'a> {
    Rx(f64),
    Ry(f64),
    Rz(f64),
    Cnot,
    Cz,
    Dense(&'a UnitaryMatrix),
}

impl Gate<'_> {
    fn name(&self) -> &'static str {
        match self {
            Gate::Rx(_) => "Rx",
            Gate::Ry(_) => "Ry",
            Gate::Rz(_) => "Rz",
            Gate::Cnot => "CNOT",
            Gate::Cz => "CZ",
            Gate::Dense(_) => "dense gate",
        }
    }

    fn arity(&self, requested: usize) -> Result<usize> {
        Ok(match self {
            Gate::Rx(_) | Gate::Ry(_) | Gate::Rz(_) => 1,
            Gate::Cnot | Gate::Cz => 2,
            Gate::Dense(u) => match u.n_qubits() {
                Some(k) => k,
                None => {
                    return Err(Error::arg(format!(
                        "dense gate of dimension {} does not act on whole qubits ({} targets)",
                        u.dim(),
                        requested
                    )))
                }
            },
        })
    }
}

/// Functional form of [`StateVector::apply`].
pub fn apply_gate(state: &StateVector, gate: &Gate<'_>, targets: &[usize]) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate, targets)?;
    Ok(out)
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

pub(crate) fn validate_targets(n_qubits: usize, targets: &[usize]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::arg("gate needs at least one target"));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_qubits {
            return Err(Error::arg(format!(
                "target qubit {t} out of range for {n_qubits} qubits"
            )));
        }
        if targets[..i].contains(&t) {
            return Err(Error::arg(format!("duplicate target qubit {t}")));
        }
    }
    Ok(())
}

fn check_register(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::arg(format!(
            "register size {n_qubits} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::arg(format!(
            "amplitude length {len} is not a power of two >= 2"
        )));
    }
    let n = len.trailing_zeros() as usize;
    check_register(n)?;
    Ok(n)
}

pub(crate) fn norm_sqr(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

/// `Σ conj(a_i) b_i`.
pub(crate) fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `dim` i.i.d. standard complex Gaussians (variance 1/2 per component).
pub(crate) fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re * scale, im * scale)
        })
        .collect()
}
