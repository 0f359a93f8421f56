use rand::Rng;

use super::gaussian_vector;
use crate::{CMatrix, Error, Result, C64};

/// Entrywise tolerance on `U†U = I`.
pub const UNITARY_TOL: f64 = 1e-9;

/// Dense unitary stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl UnitaryMatrix {
    /// Validates shape and unitarity.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::arg("unitary dimension must be positive"));
        }
        if entries.len() != dim * dim {
            return Err(Error::arg(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        let u = Self { dim, entries };
        let err = u.unitarity_error();
        if err.is_nan() || err > UNITARY_TOL {
            return Err(Error::invalid(format!(
                "matrix is not unitary (max |U†U - I| = {err:e})"
            )));
        }
        Ok(u)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = C64::new(1.0, 0.0);
        }
        Self { dim, entries }
    }

    pub fn from_dmatrix(m: &CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::arg("unitary must be square"));
        }
        Self::new(m.nrows(), row_major(m))
    }

    /// Skips the O(d³) unitarity check; for matrices unitary by construction.
    pub(crate) fn from_dmatrix_unchecked(m: &CMatrix) -> Self {
        Self {
            dim: m.nrows(),
            entries: row_major(m),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits when `dim` is a power of two.
    pub fn n_qubits(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn to_dmatrix(&self) -> CMatrix {
        CMatrix::from_row_slice(self.dim, self.dim, &self.entries)
    }

    pub fn dagger(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![C64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        Self { dim: d, entries }
    }

    /// `self · other`.
    pub fn matmul(&self, other: &UnitaryMatrix) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::arg(format!(
                "cannot multiply {}x{} by {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        Ok(Self::from_dmatrix_unchecked(
            &(self.to_dmatrix() * other.to_dmatrix()),
        ))
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &UnitaryMatrix) -> Self {
        Self::from_dmatrix_unchecked(&self.to_dmatrix().kronecker(&other.to_dmatrix()))
    }

    /// Largest entry of `|U†U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let m = self.to_dmatrix();
        let prod = m.adjoint() * &m;
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let target = if r == c { 1.0 } else { 0.0 };
                let e = (prod[(r, c)] - C64::new(target, 0.0)).norm();
                if e.is_nan() || e > worst {
                    worst = e;
                }
            }
        }
        worst
    }
}

fn row_major(m: &CMatrix) -> Vec<C64> {
    let (rows, cols) = m.shape();
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            out.push(m[(r, c)]);
        }
    }
    out
}

/// Haar-distributed unitary of dimension `dim`.
///
/// QR-factorises a complex Ginibre matrix and multiplies column `j` of `Q` by
/// the phase `r_jj / |r_jj|`; without that correction the distribution of
/// `Q` is biased by the QR sign convention.
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<UnitaryMatrix> {
    if dim == 0 {
        return Err(Error::arg("Haar sampling needs dim >= 1"));
    }
    let z = CMatrix::from_vec(dim, dim, gaussian_vector(dim * dim, rng));
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let n = d.norm();
        let phase = if n > 0.0 { d / n } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Ok(UnitaryMatrix::from_dmatrix_unchecked(&q))
}
