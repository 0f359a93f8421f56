use nalgebra::SymmetricEigen;

use super::StateVector;
use crate::{CMatrix, Error, Result, C64};

/// Which side of the bipartition to keep in [`partial_trace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Density matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and positivity
    /// (smallest eigenvalue >= -1e-9).
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::arg(format!(
                "{} entries for a {dim}x{dim} density matrix",
                entries.len()
            )));
        }
        let rho = Self { dim, entries };
        for r in 0..dim {
            for c in 0..=r {
                if (rho.get(r, c) - rho.get(c, r).conj()).norm() > 1e-10 {
                    return Err(Error::invalid("density matrix is not Hermitian"));
                }
            }
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::invalid(format!("density matrix trace {tr} != 1")));
        }
        let min = rho.eigenvalues().last().copied().unwrap_or(0.0);
        if min < -1e-9 {
            return Err(Error::invalid(format!(
                "density matrix has negative eigenvalue {min:e}"
            )));
        }
        Ok(rho)
    }

    pub fn from_dmatrix(m: &CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::arg("density matrix must be square"));
        }
        let mut entries = Vec::with_capacity(m.len());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                entries.push(m[(r, c)]);
            }
        }
        Self::new(m.nrows(), entries)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &StateVector) -> Self {
        let a = state.amplitudes();
        let dim = a.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for x in a {
            for y in a {
                entries.push(x * y.conj());
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn to_dmatrix(&self) -> CMatrix {
        CMatrix::from_row_slice(self.dim, self.dim, &self.entries)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.to_dmatrix())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }
}

/// Reduced state of `keep` for a pure state split after `cut` qubits.
pub fn partial_trace(state: &StateVector, keep: Subsystem, cut: usize) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    if cut == 0 || cut >= n {
        return Err(Error::arg(format!(
            "cut {cut} must satisfy 1 <= cut < {n}"
        )));
    }
    let da = 1usize << cut;
    let db = 1usize << (n - cut);
    let a = state.amplitudes();
    let zero = C64::new(0.0, 0.0);
    let entries = match keep {
        // ρ_A = M M†
        Subsystem::A => {
            let mut e = vec![zero; da * da];
            for i in 0..da {
                for k in 0..da {
                    e[i * da + k] = (0..db).map(|j| a[i * db + j] * a[k * db + j].conj()).sum();
                }
            }
            e
        }
        // ρ_B = Mᵀ M*
        Subsystem::B => {
            let mut e = vec![zero; db * db];
            for j in 0..db {
                for l in 0..db {
                    e[j * db + l] = (0..da).map(|i| a[i * db + j] * a[i * db + l].conj()).sum();
                }
            }
            e
        }
    };
    let dim = match keep {
        Subsystem::A => da,
        Subsystem::B => db,
    };
    Ok(DensityMatrix { dim, entries })
}
