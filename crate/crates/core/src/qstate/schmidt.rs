use super::StateVector;
use crate::{CMatrix, Error, Result, C64};

/// Singular values above this count towards the Schmidt rank.
pub const SCHMIDT_RANK_TOL: f64 = 1e-10;

/// `|ψ⟩ = Σ_k λ_k |a_k⟩|b_k⟩` across the cut after `cut` qubits.
#[derive(Clone, Debug)]
pub struct SchmidtForm {
    coefficients: Vec<f64>,
    basis_a: CMatrix,
    basis_b: CMatrix,
    cut: usize,
}

impl SchmidtForm {
    /// Descending, non-negative; `min(2^cut, 2^(n-cut))` entries.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Column `k` is `|a_k⟩`.
    pub fn basis_a(&self) -> &CMatrix {
        &self.basis_a
    }

    /// Column `k` is `|b_k⟩`.
    pub fn basis_b(&self) -> &CMatrix {
        &self.basis_b
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    pub fn rank(&self) -> usize {
        self.coefficients
            .iter()
            .filter(|&&l| l > SCHMIDT_RANK_TOL)
            .count()
    }

    /// Rebuilds `Σ_k λ_k |a_k⟩ ⊗ |b_k⟩`.
    pub fn reconstruct(&self) -> Result<StateVector> {
        let da = self.basis_a.nrows();
        let db = self.basis_b.nrows();
        let mut amps = vec![C64::new(0.0, 0.0); da * db];
        for (k, &l) in self.coefficients.iter().enumerate() {
            for i in 0..da {
                let ai = self.basis_a[(i, k)] * l;
                for j in 0..db {
                    amps[i * db + j] += ai * self.basis_b[(j, k)];
                }
            }
        }
        StateVector::normalized(amps)
    }
}

/// SVD of the `2^cut x 2^(n-cut)` amplitude matrix.
pub fn schmidt_decompose(state: &StateVector, cut: usize) -> Result<SchmidtForm> {
    let n = state.n_qubits();
    if cut == 0 || cut >= n {
        return Err(Error::arg(format!("cut {cut} must satisfy 1 <= cut < {n}")));
    }
    let da = 1usize << cut;
    let db = 1usize << (n - cut);
    let m = CMatrix::from_row_slice(da, db, state.amplitudes());
    let svd = m.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sv = svd.singular_values;

    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));

    let r = order.len();
    let mut basis_a = CMatrix::zeros(da, r);
    let mut basis_b = CMatrix::zeros(db, r);
    let mut coefficients = Vec::with_capacity(r);
    for (k, &src) in order.iter().enumerate() {
        coefficients.push(sv[src].max(0.0));
        basis_a.set_column(k, &u.column(src));
        // M = U Σ V†, so |b_k⟩ has components (V†)_{k j}
        for j in 0..db {
            basis_b[(j, k)] = v_t[(src, j)];
        }
    }
    Ok(SchmidtForm {
        coefficients,
        basis_a,
        basis_b,
        cut,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;
    use crate::qstate::fidelity;
    use crate::rng::seeded;

    fn assert_orthonormal(cols: &CMatrix) {
        let g = cols.adjoint() * cols;
        for r in 0..g.nrows() {
            for c in 0..g.ncols() {
                let e = if r == c { 1.0 } else { 0.0 };
                assert!((g[(r, c)] - C64::new(e, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn bell_state_has_two_equal_coefficients() {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        let psi = StateVector::from_amplitudes(vec![h, z, z, h]).unwrap();
        let s = schmidt_decompose(&psi, 1).unwrap();
        assert_eq!(s.rank(), 2);
        for l in s.coefficients() {
            assert!((l - FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn product_state_has_rank_one() {
        let psi = StateVector::basis(2, 0b01).unwrap();
        let s = schmidt_decompose(&psi, 1).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((s.coefficients()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_state_reconstructs() {
        let mut rng = seeded(3);
        for (n, cut) in [(4, 2), (4, 1), (5, 3), (6, 2)] {
            let psi = StateVector::haar_random(n, &mut rng).unwrap();
            let s = schmidt_decompose(&psi, cut).unwrap();
            let sum: f64 = s.coefficients().iter().map(|l| l * l).sum();
            assert!((sum - 1.0).abs() < 1e-10);
            assert!(s.coefficients().windows(2).all(|w| w[0] >= w[1]));
            assert_orthonormal(s.basis_a());
            assert_orthonormal(s.basis_b());
            let back = s.reconstruct().unwrap();
            assert!(fidelity(&psi, &back).unwrap() >= 1.0 - 1e-10);
        }
    }

    #[test]
    fn invalid_cut() {
        let psi = StateVector::zero(2).unwrap();
        assert!(schmidt_decompose(&psi, 0).is_err());
        assert!(schmidt_decompose(&psi, 2).is_err());
    }
}
