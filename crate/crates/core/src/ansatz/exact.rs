//! Exact constructive SEA: given a `2N`-qubit target, pick `U₁`, `U₂`, `U₃`
//! so that `(U₂ ⊗ U₃) V (U₁ ⊗ I)|0⟩` is the target (or its best rank-`K`
//! truncation).

use super::{AnsatzCircuit, Family, GateOp};
use crate::qstate::{schmidt_decompose, StateVector, UnitaryMatrix, SCHMIDT_RANK_TOL};
use crate::{CMatrix, Error, Result, C64};

/// Gram-Schmidt pivots with residual norm below this are skipped.
const PIVOT_TOL: f64 = 1e-8;

/// Blocks of an exact SEA and the fidelity they achieve.
#[derive(Clone, Debug)]
pub struct ExactSea {
    pub n_sub: usize,
    pub u1: UnitaryMatrix,
    pub entangler: Vec<(usize, usize)>,
    pub u2: UnitaryMatrix,
    pub u3: UnitaryMatrix,
    /// `Σ_{k < kept} λ_k²`.
    pub achieved_fidelity: f64,
    /// Number of Schmidt terms retained, `min(K, r)`.
    pub kept: usize,
    /// Schmidt rank of the target.
    pub target_rank: usize,
}

impl ExactSea {
    /// Parameter-free circuit with dense blocks.
    pub fn circuit(&self) -> Result<AnsatzCircuit> {
        let n = self.n_sub;
        let mut ops = vec![GateOp::Dense {
            targets: (0..n).collect(),
            matrix: self.u1.clone(),
        }];
        ops.extend(
            self.entangler
                .iter()
                .map(|&(control, target)| GateOp::Cnot { control, target }),
        );
        ops.push(GateOp::Dense {
            targets: (0..n).collect(),
            matrix: self.u2.clone(),
        });
        ops.push(GateOp::Dense {
            targets: (n..2 * n).collect(),
            matrix: self.u3.clone(),
        });
        AnsatzCircuit::new(2 * n, ops, Family::ExactSea)
    }

    /// `S|0⟩^{⊗2N}`.
    pub fn prepare(&self) -> Result<StateVector> {
        self.circuit()?.evaluate(&[])
    }
}

/// Builds the exact SEA for `target`, keeping the `K` largest Schmidt terms.
///
/// `U₁|0⟩ = Σ_{k<min(K,r)} λ_k/√M |k⟩` with `M = Σ_{k<min(K,r)} λ_k²`,
/// and `U₂|k⟩ = |a_k⟩`, `U₃|k⟩ = |b_k⟩`; the remaining columns come from
/// [`orthonormal_completion`].
pub fn construct_exact_sea(target: &StateVector, k_trunc: usize) -> Result<ExactSea> {
    let n_total = target.n_qubits();
    if !n_total.is_multiple_of(2) {
        return Err(Error::arg(format!(
            "exact SEA needs an even qubit count, got {n_total}"
        )));
    }
    let n = n_total / 2;
    let d = 1usize << n;
    if k_trunc == 0 || k_trunc > d {
        return Err(Error::arg(format!(
            "truncation rank {k_trunc} outside 1..={d}"
        )));
    }
    let schmidt = schmidt_decompose(target, n)?;
    let lambdas = schmidt.coefficients();
    let rank = schmidt.rank();
    let kept = k_trunc.min(rank);
    let mass: f64 = lambdas[..kept].iter().map(|l| l * l).sum();
    let scale = mass.sqrt();

    let mut coeffs = vec![C64::new(0.0, 0.0); d];
    for (c, l) in coeffs.iter_mut().zip(&lambdas[..kept]) {
        *c = C64::new(l / scale, 0.0);
    }
    let u1 = orthonormal_completion(&[coeffs], d)?;

    let cols = |m: &CMatrix| -> Vec<Vec<C64>> {
        (0..rank)
            .filter(|&k| lambdas[k] > SCHMIDT_RANK_TOL)
            .map(|k| m.column(k).iter().copied().collect())
            .collect()
    };
    let u2 = orthonormal_completion(&cols(schmidt.basis_a()), d)?;
    let u3 = orthonormal_completion(&cols(schmidt.basis_b()), d)?;

    Ok(ExactSea {
        n_sub: n,
        u1,
        entangler: (0..n).map(|i| (i, n + i)).collect(),
        u2,
        u3,
        achieved_fidelity: mass,
        kept,
        target_rank: rank,
    })
}

/// Extends orthonormal `columns` to a `dim x dim` unitary by Gram-Schmidt
/// against the canonical basis `e_0, e_1, ...`, skipping pivots whose
/// residual norm falls below 1e-8. The given columns come first, in order.
pub fn orthonormal_completion(columns: &[Vec<C64>], dim: usize) -> Result<UnitaryMatrix> {
    if columns.len() > dim {
        return Err(Error::arg(format!(
            "{} columns do not fit in dimension {dim}",
            columns.len()
        )));
    }
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(dim);
    for col in columns {
        if col.len() != dim {
            return Err(Error::arg("column length does not match dimension"));
        }
        basis.push(col.clone());
    }
    let mut e = 0;
    while basis.len() < dim && e < dim {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[e] = C64::new(1.0, 0.0);
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let proj: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > PIVOT_TOL {
            for x in &mut v {
                *x /= norm;
            }
            basis.push(v);
        }
        e += 1;
    }
    let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
    for (c, col) in basis.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            entries[r * dim + c] = *x;
        }
    }
    UnitaryMatrix::new(dim, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{fidelity, haar_random_unitary, Gate};
    use crate::rng::seeded;

    #[test]
    fn odd_register_rejected() {
        let psi = StateVector::zero(3).unwrap();
        assert!(matches!(construct_exact_sea(&psi, 1), Err(Error::Argument(_))));
        let psi = StateVector::zero(4).unwrap();
        assert!(construct_exact_sea(&psi, 0).is_err());
        assert!(construct_exact_sea(&psi, 5).is_err());
    }

    #[test]
    fn completion_keeps_given_columns() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let col = vec![C64::new(s, 0.0), C64::new(0.0, s), C64::new(0.0, 0.0)];
        let u = orthonormal_completion(std::slice::from_ref(&col), 3).unwrap();
        assert_eq!(u.column(0), col);
        assert!(u.unitarity_error() < 1e-12);
    }

    #[test]
    fn full_rank_reproduces_target() {
        let mut rng = seeded(17);
        for n_total in [2, 4, 6] {
            let psi = StateVector::haar_random(n_total, &mut rng).unwrap();
            let sea = construct_exact_sea(&psi, 1 << (n_total / 2)).unwrap();
            assert!((sea.achieved_fidelity - 1.0).abs() < 1e-10);
            let out = sea.prepare().unwrap();
            assert!(fidelity(&out, &psi).unwrap() >= 1.0 - 1e-10);
        }
    }

    #[test]
    fn rank_one_truncation_keeps_leading_coefficient() {
        let mut rng = seeded(18);
        let psi = StateVector::haar_random(4, &mut rng).unwrap();
        let sea = construct_exact_sea(&psi, 1).unwrap();
        let l0 = schmidt_decompose(&psi, 2).unwrap().coefficients()[0];
        assert!((sea.achieved_fidelity - l0 * l0).abs() < 1e-12);
        assert!(sea.achieved_fidelity >= 1.0 / sea.target_rank as f64);
        let out = sea.prepare().unwrap();
        assert!((fidelity(&out, &psi).unwrap() - sea.achieved_fidelity).abs() < 1e-10);
    }

    #[test]
    fn low_rank_target_completes_bases() {
        // Bell pair on (0, 2) tensored with |00⟩ on (1, 3): Schmidt rank 2.
        let mut psi = StateVector::zero(4).unwrap();
        psi.apply(&Gate::Ry(std::f64::consts::FRAC_PI_2), &[0]).unwrap();
        psi.apply(&Gate::Cnot, &[0, 2]).unwrap();
        let u = haar_random_unitary(2, &mut seeded(2)).unwrap();
        psi.apply(&Gate::Dense(&u), &[3]).unwrap();
        let sea = construct_exact_sea(&psi, 4).unwrap();
        assert_eq!(sea.target_rank, 2);
        let out = sea.prepare().unwrap();
        assert!(fidelity(&out, &psi).unwrap() >= 1.0 - 1e-10);
    }
}
