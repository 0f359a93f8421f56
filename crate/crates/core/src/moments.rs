//! Unitary-design diagnostics.
//!
//! Monte-Carlo estimates of the frame potential `E|⟨0|UV†|0⟩|⁴` and of the
//! second moment `E|⟨0|U|0⟩|⁴` over several ensembles, their closed-form
//! Haar values, and the local twirl `E_{U₁⊗U₂}[U†CUρU†DU]`.
//!
//! Sample `i` of an estimate is drawn from stream `i` of the seed, and the
//! per-sample values are reduced in index order, so estimates are bitwise
//! reproducible regardless of the thread count.

use std::borrow::Cow;
use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;

use crate::ansatz::{AnsatzCircuit, Family, GateOp};
use crate::qstate::{haar_random_unitary, DensityMatrix, StateVector};
use crate::rng::substream;
use crate::{CMatrix, Error, Result, C64};

/// Ensemble of `n_qubits`-qubit unitaries.
#[derive(Clone, Debug, PartialEq)]
pub enum EnsembleSpec {
    /// Haar measure on the full register.
    HaarGlobal { n_qubits: usize },
    /// `(U₂ ⊗ U₃)·V·(U₁ ⊗ I)` on `2·n_sub` qubits with `U₁` Haar on the
    /// first `m` qubits, `U₂`, `U₃` Haar on each half and `V` the first `k`
    /// CNOT pairs `(i, n_sub + i)`.
    SeaLocalHaar { n_sub: usize, m: usize, k: usize },
    /// A fixed circuit with parameters drawn uniformly from `[0, 2π)`.
    CircuitFamily { circuit: AnsatzCircuit },
}

impl EnsembleSpec {
    pub fn haar(n_qubits: usize) -> Result<Self> {
        let spec = EnsembleSpec::HaarGlobal { n_qubits };
        spec.validate()?;
        Ok(spec)
    }

    pub fn sea_local_haar(n_sub: usize, m: usize, k: usize) -> Result<Self> {
        let spec = EnsembleSpec::SeaLocalHaar { n_sub, m, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            EnsembleSpec::HaarGlobal { n_qubits } => *n_qubits,
            EnsembleSpec::SeaLocalHaar { n_sub, .. } => 2 * n_sub,
            EnsembleSpec::CircuitFamily { circuit } => circuit.n_qubits(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EnsembleSpec::HaarGlobal { n_qubits: 0 } => {
                Err(Error::arg("Haar ensemble needs at least one qubit"))
            }
            EnsembleSpec::SeaLocalHaar { n_sub, m, k } => {
                if n_sub == 0 || m == 0 || m > n_sub || k == 0 || k > n_sub {
                    return Err(Error::arg(format!(
                        "SEA ensemble needs 1 <= m, k <= N, got N={n_sub} m={m} k={k}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// One draw as a circuit plus its bound parameters.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Cow<'_, AnsatzCircuit>, Vec<f64>)> {
        match self {
            EnsembleSpec::HaarGlobal { n_qubits } => {
                let u = haar_random_unitary(1 << n_qubits, rng)?;
                let ops = vec![GateOp::Dense {
                    targets: (0..*n_qubits).collect(),
                    matrix: u,
                }];
                Ok((Cow::Owned(AnsatzCircuit::new(*n_qubits, ops, Family::ExactSea)?), vec![]))
            }
            &EnsembleSpec::SeaLocalHaar { n_sub, m, k } => {
                self.validate()?;
                let mut ops = vec![GateOp::Dense {
                    targets: (0..m).collect(),
                    matrix: haar_random_unitary(1 << m, rng)?,
                }];
                ops.extend((0..k).map(|i| GateOp::Cnot {
                    control: i,
                    target: n_sub + i,
                }));
                ops.push(GateOp::Dense {
                    targets: (0..n_sub).collect(),
                    matrix: haar_random_unitary(1 << n_sub, rng)?,
                });
                ops.push(GateOp::Dense {
                    targets: (n_sub..2 * n_sub).collect(),
                    matrix: haar_random_unitary(1 << n_sub, rng)?,
                });
                Ok((Cow::Owned(AnsatzCircuit::new(2 * n_sub, ops, Family::Sea)?), vec![]))
            }
            EnsembleSpec::CircuitFamily { circuit } => {
                let params = (0..circuit.n_params())
                    .map(|_| rng.random_range(0.0..TAU))
                    .collect();
                Ok((Cow::Borrowed(circuit), params))
            }
        }
    }
}

/// Sample mean of a Monte-Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√n_samples`.
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl MomentEstimate {
    pub fn from_samples(values: &[f64], seed: u64) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::arg(format!("need at least 2 samples, got {n}")));
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        Ok(Self {
            mean,
            std_error: (var / n as f64).sqrt(),
            n_samples: n,
            seed,
        })
    }

    /// `|mean − value|` in units of the standard error.
    pub fn z_score(&self, value: f64) -> f64 {
        (self.mean - value).abs() / self.std_error
    }
}

fn sample_parallel<F>(n_samples: usize, seed: u64, f: F) -> Result<MomentEstimate>
where
    F: Fn(&mut crate::rng::SeededRng) -> Result<f64> + Sync,
{
    if n_samples < 2 {
        return Err(Error::arg(format!("need at least 2 samples, got {n_samples}")));
    }
    let values: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|i| f(&mut substream(seed, i as u64)))
        .collect::<Result<_>>()?;
    MomentEstimate::from_samples(&values, seed)
}

/// `E_{U,V}|⟨0|UV†|0⟩|⁴` over independent pairs from the ensemble.
pub fn frame_potential_estimate(
    ensemble: &EnsembleSpec,
    n_samples: usize,
    seed: u64,
) -> Result<MomentEstimate> {
    ensemble.validate()?;
    let n = ensemble.n_qubits();
    sample_parallel(n_samples, seed, |rng| {
        // ⟨0|UV†|0⟩ = ⟨U†0|V†0⟩
        let (u, pu) = ensemble.draw(rng)?;
        let (v, pv) = ensemble.draw(rng)?;
        let mut a = StateVector::zero(n)?;
        u.apply_inverse_in_place(&pu, &mut a)?;
        let mut b = StateVector::zero(n)?;
        v.apply_inverse_in_place(&pv, &mut b)?;
        Ok(a.inner(&b)?.norm_sqr().powi(2))
    })
}

/// `E_U|⟨0|U|0⟩|⁴`.
pub fn second_moment_estimate(
    ensemble: &EnsembleSpec,
    n_samples: usize,
    seed: u64,
) -> Result<MomentEstimate> {
    ensemble.validate()?;
    sample_parallel(n_samples, seed, |rng| {
        let (u, p) = ensemble.draw(rng)?;
        let psi = u.evaluate(&p)?;
        Ok(psi.amplitudes()[0].norm_sqr().powi(2))
    })
}

/// `1/((2^n + 1)·2^(n−1))`.
pub fn frame_potential_haar(n_qubits: usize) -> Result<f64> {
    if n_qubits == 0 || n_qubits > 60 {
        return Err(Error::arg(format!("qubit count {n_qubits} out of range")));
    }
    let d = (1u64 << n_qubits) as f64;
    Ok(1.0 / ((d + 1.0) * d / 2.0))
}

/// `2/(D(D+1))`.
pub fn haar_second_moment_closed(dim: usize) -> Result<f64> {
    if dim < 2 {
        return Err(Error::arg(format!("dimension must be >= 2, got {dim}")));
    }
    let d = dim as f64;
    Ok(2.0 / (d * (d + 1.0)))
}

/// `(2d+6)/(d²(d+1)³)` for `d = 2^N`.
pub fn sea_second_moment_closed(d: usize) -> Result<f64> {
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::arg(format!("d must be a power of two >= 2, got {d}")));
    }
    let d = d as f64;
    Ok((2.0 * d + 6.0) / (d * d * (d + 1.0).powi(3)))
}

/// The SEA second moment assembled from the local-twirl coefficients of
/// `C = D = |0⟩⟨0|`: `t₀ + t₃ + 2(t₁ + t₂)/(d(d+1))`.
pub fn sea_second_moment_from_twirl(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::arg(format!("d must be >= 2, got {d}")));
    }
    let proj = projector_zero(d * d);
    let t = twirl_coefficients(&proj, &proj, d)?;
    let df = d as f64;
    Ok((t[0] + t[3] + (t[1] + t[2]) * (2.0 / (df * (df + 1.0)))).re)
}

fn projector_zero(dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    m[(0, 0)] = C64::new(1.0, 0.0);
    m
}

/// Subsystem of a `d² x d²` operator to keep in [`operator_partial_trace`];
/// row index `i_A·d + i_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    A,
    B,
}

/// Partial trace of a `d² x d²` operator over the other half.
pub fn operator_partial_trace(m: &CMatrix, d: usize, keep: Half) -> Result<CMatrix> {
    check_square(m, d * d, "operator")?;
    Ok(CMatrix::from_fn(d, d, |i, j| {
        (0..d)
            .map(|k| match keep {
                Half::A => m[(i * d + k, j * d + k)],
                Half::B => m[(k * d + i, k * d + j)],
            })
            .sum()
    }))
}

fn check_square(m: &CMatrix, dim: usize, what: &str) -> Result<()> {
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::arg(format!(
            "{what} is {}x{}, expected {dim}x{dim}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    // tr(AB) = Σ_ij A_ij B_ji
    let n = a.nrows();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)] * b[(j, i)])
        .sum()
}

/// The four traces `(tr CD, tr C_A D_A, tr C_B D_B, tr C·tr D)`.
pub fn twirl_traces(c: &CMatrix, dm: &CMatrix, d: usize) -> Result<[C64; 4]> {
    check_square(c, d * d, "C")?;
    check_square(dm, d * d, "D")?;
    let (ca, da) = (operator_partial_trace(c, d, Half::A)?, operator_partial_trace(dm, d, Half::A)?);
    let (cb, db) = (operator_partial_trace(c, d, Half::B)?, operator_partial_trace(dm, d, Half::B)?);
    Ok([
        trace_product(c, dm),
        trace_product(&ca, &da),
        trace_product(&cb, &db),
        c.trace() * dm.trace(),
    ])
}

/// Coefficients `(t₀, t₁, t₂, t₃)` of the local twirl
/// `E_{U₁⊗U₂}[U†CUρU†DU] = t₀ρ + t₁ ρ_A⊗I/d + t₂ I⊗ρ_B/d + t₃ I·tr ρ`.
pub fn twirl_coefficients(c: &CMatrix, dm: &CMatrix, d: usize) -> Result<[C64; 4]> {
    if d < 2 {
        return Err(Error::arg(format!("local dimension must be >= 2, got {d}")));
    }
    let [cd, cada, cbdb, trtr] = twirl_traces(c, dm, d)?;
    let df = d as f64;
    let pre = 1.0 / (df * df - 1.0).powi(2);
    Ok([
        (cd / (df * df) - cada / df - cbdb / df + trtr) * pre,
        (-cd + cada / df + cbdb * df - trtr) * pre,
        (-cd + cada * df + cbdb / df - trtr) * pre,
        (cd - cada / df - cbdb / df + trtr / (df * df)) * pre,
    ])
}

/// `t₀ρ + t₁ ρ_A⊗I/d + t₂ I⊗ρ_B/d + t₃ I·tr ρ` for a `d² x d²` state.
pub fn bipartite_twirl_apply(c: &CMatrix, dm: &CMatrix, rho: &DensityMatrix, d: usize) -> Result<CMatrix> {
    let r = rho.to_dmatrix();
    check_square(&r, d * d, "rho")?;
    let t = twirl_coefficients(c, dm, d)?;
    let ra = operator_partial_trace(&r, d, Half::A)?;
    let rb = operator_partial_trace(&r, d, Half::B)?;
    let id = CMatrix::identity(d, d);
    let df = C64::new(d as f64, 0.0);
    let out = r.map(|x| x * t[0])
        + ra.kronecker(&id).map(|x| x * t[1] / df)
        + id.kronecker(&rb).map(|x| x * t[2] / df)
        + CMatrix::identity(d * d, d * d).map(|x| x * t[3] * r.trace());
    Ok(out)
}

/// Global Haar twirl `E_U[U†CUρU†DU]` in closed form for a `D x D` operator
/// `ρ` (any unitary 2-design gives the same value).
pub fn haar_twirl_apply(c: &CMatrix, dm: &CMatrix, rho: &CMatrix) -> Result<CMatrix> {
    let dim = rho.nrows();
    if dim < 2 {
        return Err(Error::arg("Haar twirl needs dimension >= 2"));
    }
    check_square(rho, dim, "rho")?;
    check_square(c, dim, "C")?;
    check_square(dm, dim, "D")?;
    let d = dim as f64;
    let tr_rho = rho.trace();
    let cd = trace_product(c, dm);
    let id = CMatrix::identity(dim, dim);
    let a = cd * tr_rho / (d * d);
    let b = (c.trace() * dm.trace() * d - cd) / (d * (d * d - 1.0));
    Ok(id.map(|x| x * a) + (rho - id.map(|x| x * tr_rho / d)).map(|x| x * b))
}
