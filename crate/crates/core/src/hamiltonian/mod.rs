//! Real-weighted Pauli sums.
//!
//! Expectation values are computed term by term directly on the
//! statevector. The dense matrix route ([`PauliSum::to_dense`]) exists for
//! oracles and exact ground energies on small registers.

mod file;

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::qstate::StateVector;
use crate::{CMatrix, Error, Result, C64};

pub use file::{parse_pauli_file, parse_pauli_str};

/// Coefficients with magnitude below this are dropped after merging.
pub const ZERO_COEFF_TOL: f64 = 1e-15;

/// Largest register [`PauliSum::to_dense`] will build.
pub const DENSE_MAX_QUBITS: usize = 14;

/// Largest register handed to the dense eigensolver.
pub const GROUND_ENERGY_MAX_QUBITS: usize = 12;

/// `coefficient · P_0 ⊗ P_1 ⊗ ...` with `P_q` given by `word[q]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    coefficient: f64,
    word: String,
    x_mask: usize,
    z_mask: usize,
    n_y: u32,
}

impl PauliTerm {
    pub fn new(coefficient: f64, word: &str) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::invalid(format!("non-finite coefficient {coefficient}")));
        }
        let n = word.len();
        if n == 0 || n > usize::BITS as usize - 1 {
            return Err(Error::invalid(format!("Pauli word length {n} unsupported")));
        }
        let (mut x_mask, mut z_mask, mut n_y) = (0usize, 0usize, 0u32);
        for (q, ch) in word.chars().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match ch {
                'I' => {}
                'X' => x_mask |= bit,
                'Z' => z_mask |= bit,
                'Y' => {
                    x_mask |= bit;
                    z_mask |= bit;
                    n_y += 1;
                }
                other => {
                    return Err(Error::invalid(format!(
                        "invalid Pauli letter `{other}` in `{word}`"
                    )))
                }
            }
        }
        Ok(Self {
            coefficient,
            word: word.to_string(),
            x_mask,
            z_mask,
            n_y,
        })
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn n_qubits(&self) -> usize {
        self.word.len()
    }

    /// `i^{n_Y}`: with Y = iXZ, `P|x⟩ = i^{n_Y} (-1)^{|x ∧ z|} |x ⊕ x_mask⟩`.
    fn global_phase(&self) -> C64 {
        match self.n_y % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }

    #[inline]
    fn sign(&self, x: usize) -> f64 {
        if (x & self.z_mask).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// `⟨ψ|P|ψ⟩` without the coefficient.
    fn expectation_unweighted(&self, amps: &[C64]) -> C64 {
        let acc: C64 = if self.x_mask == 0 {
            amps.iter()
                .enumerate()
                .map(|(x, a)| a.norm_sqr() * self.sign(x))
                .sum::<f64>()
                .into()
        } else {
            amps.iter()
                .enumerate()
                .map(|(x, a)| amps[x ^ self.x_mask].conj() * a * self.sign(x))
                .sum()
        };
        acc * self.global_phase()
    }

    /// `out += scale · P|ψ⟩`.
    fn accumulate(&self, amps: &[C64], scale: f64, out: &mut [C64]) {
        let phase = self.global_phase() * scale;
        for (x, a) in amps.iter().enumerate() {
            out[x ^ self.x_mask] += phase * self.sign(x) * a;
        }
    }
}

/// `Σ_t c_t P_t` with distinct words.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    /// Merges duplicate words (first occurrence fixes the order) and drops
    /// merged coefficients with magnitude below [`ZERO_COEFF_TOL`].
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::invalid("Pauli sum needs at least one qubit"));
        }
        let mut merged: Vec<PauliTerm> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        for t in terms {
            if t.n_qubits() != n_qubits {
                return Err(Error::invalid(format!(
                    "word `{}` has length {}, expected {n_qubits}",
                    t.word,
                    t.n_qubits()
                )));
            }
            match index.get(&t.word) {
                Some(&i) => merged[i].coefficient += t.coefficient,
                None => {
                    index.insert(t.word.clone(), merged.len());
                    merged.push(t);
                }
            }
        }
        merged.retain(|t| t.coefficient.abs() >= ZERO_COEFF_TOL);
        Ok(Self {
            n_qubits,
            terms: merged,
        })
    }

    /// Convenience constructor from `(coefficient, word)` pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (f64, &'a str)>) -> Result<Self> {
        let terms: Vec<PauliTerm> = pairs
            .into_iter()
            .map(|(c, w)| PauliTerm::new(c, w))
            .collect::<Result<_>>()?;
        let n = terms
            .first()
            .map(PauliTerm::n_qubits)
            .ok_or_else(|| Error::invalid("Pauli sum needs at least one term"))?;
        Self::new(n, terms)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::arg(format!(
                "{}-qubit Hamiltonian on {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        Ok(())
    }

    /// `⟨ψ|H|ψ⟩`; the imaginary residue is discarded.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        self.check(state)?;
        let amps = state.amplitudes();
        let total: C64 = self
            .terms
            .iter()
            .map(|t| t.expectation_unweighted(amps) * t.coefficient)
            .sum();
        Ok(total.re)
    }

    /// `H|ψ⟩` as a raw amplitude vector (not normalised).
    pub fn apply(&self, state: &StateVector) -> Result<Vec<C64>> {
        self.check(state)?;
        let amps = state.amplitudes();
        let mut out = vec![C64::new(0.0, 0.0); amps.len()];
        for t in &self.terms {
            t.accumulate(amps, t.coefficient, &mut out);
        }
        Ok(out)
    }

    /// `Σ c_t ⊗_q σ_{w_q}` as a dense matrix.
    pub fn to_dense(&self) -> Result<CMatrix> {
        if self.n_qubits > DENSE_MAX_QUBITS {
            return Err(Error::Resource(format!(
                "dense matrix for {} qubits exceeds the {DENSE_MAX_QUBITS}-qubit limit",
                self.n_qubits
            )));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            let phase = t.global_phase() * t.coefficient;
            for x in 0..dim {
                m[(x ^ t.x_mask, x)] += phase * t.sign(x);
            }
        }
        Ok(m)
    }

    /// Smallest eigenvalue of the dense matrix.
    pub fn exact_ground_energy(&self) -> Result<f64> {
        if self.n_qubits > GROUND_ENERGY_MAX_QUBITS {
            return Err(Error::Resource(format!(
                "exact diagonalisation of {} qubits exceeds the {GROUND_ENERGY_MAX_QUBITS}-qubit limit",
                self.n_qubits
            )));
        }
        let dense = self.to_dense()?;
        // An even number of Y letters in every word makes the matrix real.
        let eigenvalues: Vec<f64> = if self.terms.iter().all(|t| t.n_y % 2 == 0) {
            let real = DMatrix::from_fn(dense.nrows(), dense.ncols(), |r, c| dense[(r, c)].re);
            real.symmetric_eigenvalues().iter().copied().collect()
        } else {
            SymmetricEigen::new(dense).eigenvalues.iter().copied().collect()
        };
        Ok(eigenvalues.into_iter().fold(f64::INFINITY, f64::min))
    }

    /// One `<coefficient> <word>` line per term; parses back to an equal sum.
    pub fn to_text(&self) -> String {
        self.terms
            .iter()
            .map(|t| format!("{:?} {}\n", t.coefficient, t.word))
            .collect()
    }
}

/// `Σ_i X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}` on a periodic ring.
pub fn heisenberg_ring(n_sites: usize) -> Result<PauliSum> {
    if n_sites < 3 {
        return Err(Error::arg(format!(
            "Heisenberg ring needs at least 3 sites, got {n_sites}"
        )));
    }
    let mut terms = Vec::with_capacity(3 * n_sites);
    for i in 0..n_sites {
        let j = (i + 1) % n_sites;
        for p in ['X', 'Y', 'Z'] {
            let mut w = vec!['I'; n_sites];
            w[i] = p;
            w[j] = p;
            terms.push(PauliTerm::new(1.0, &w.iter().collect::<String>())?);
        }
    }
    PauliSum::new(n_sites, terms)
}

/// Free-function form of [`PauliSum::expectation`].
pub fn expectation(h: &PauliSum, state: &StateVector) -> Result<f64> {
    h.expectation(state)
}
