//! Frame-potential sweeps, second-moment checks and exact SEA constructions.

use rayon::prelude::*;

use sealab::ansatz::construct_exact_sea;
use sealab::moments::{
    frame_potential_estimate, frame_potential_haar, haar_second_moment_closed, second_moment_estimate,
    sea_second_moment_closed, EnsembleSpec, MomentEstimate,
};
use sealab::qstate::{fidelity, StateVector};
use sealab::rng::{derive_seed, substream};
use sealab::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FramePoint {
    pub m: usize,
    pub k: usize,
    pub estimate: MomentEstimate,
}

/// Frame potential of SEA with Haar blocks on `2N` qubits for each
/// `(m, k)` variant. Variant `i` uses a seed derived from `(seed, i)`.
pub fn frame_potential_sweep(
    n_sub: usize,
    variants: &[(usize, usize)],
    samples: usize,
    seed: u64,
) -> Result<Vec<FramePoint>> {
    variants
        .iter()
        .enumerate()
        .map(|(i, &(m, k))| {
            let ens = EnsembleSpec::sea_local_haar(n_sub, m, k)?;
            Ok(FramePoint {
                m,
                k,
                estimate: frame_potential_estimate(&ens, samples, derive_seed(seed, i as u64))?,
            })
        })
        .collect()
}

/// Global Haar frame potential with its closed form.
pub fn frame_potential_haar_check(n_qubits: usize, samples: usize, seed: u64) -> Result<(MomentEstimate, f64)> {
    let est = frame_potential_estimate(&EnsembleSpec::haar(n_qubits)?, samples, seed)?;
    Ok((est, frame_potential_haar(n_qubits)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecondMomentCheck {
    pub n_sub: usize,
    pub sea: MomentEstimate,
    pub haar: MomentEstimate,
    pub sea_closed: f64,
    pub haar_closed: f64,
}

impl SecondMomentCheck {
    /// `|sea − haar|` over the combined standard error.
    pub fn separation(&self) -> f64 {
        (self.sea.mean - self.haar.mean).abs() / self.sea.std_error.hypot(self.haar.std_error)
    }
}

/// `E|⟨0|U|0⟩|⁴` for SEA with `m = k = N` Haar blocks against global Haar
/// on `2N` qubits.
pub fn two_design_check(n_sub: usize, samples: usize, seed: u64) -> Result<SecondMomentCheck> {
    let d = 1usize << n_sub;
    let sea = second_moment_estimate(&EnsembleSpec::sea_local_haar(n_sub, n_sub, n_sub)?, samples, derive_seed(seed, 1))?;
    let haar = second_moment_estimate(&EnsembleSpec::haar(2 * n_sub)?, samples, derive_seed(seed, 2))?;
    Ok(SecondMomentCheck {
        n_sub,
        sea,
        haar,
        sea_closed: sea_second_moment_closed(d)?,
        haar_closed: haar_second_moment_closed(d * d)?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionPoint {
    pub n_qubits: usize,
    pub truncation: usize,
    pub mean_fidelity: f64,
    pub min_fidelity: f64,
    /// Largest `|⟨target|prepared⟩|² − achieved_fidelity|` over targets.
    pub max_prepare_error: f64,
    pub n_targets: usize,
}

/// Exact SEA for `targets` Haar-random states on `n_qubits` qubits at every
/// truncation rank `K = 1..=2^N`.
pub fn schmidt_construct_scan(n_qubits: usize, targets: usize, seed: u64) -> Result<Vec<ConstructionPoint>> {
    if n_qubits == 0 || !n_qubits.is_multiple_of(2) {
        return Err(Error::Argument(format!("need an even qubit count, got {n_qubits}")));
    }
    if targets == 0 {
        return Err(Error::Argument("need at least one target".into()));
    }
    let d = 1usize << (n_qubits / 2);
    let stats: Vec<Vec<(f64, f64)>> = (0..targets)
        .into_par_iter()
        .map(|i| {
            let psi = StateVector::haar_random(n_qubits, &mut substream(seed, i as u64))?;
            (1..=d)
                .map(|k| {
                    let sea = construct_exact_sea(&psi, k)?;
                    let f = fidelity(&sea.prepare()?, &psi)?;
                    Ok((sea.achieved_fidelity, (f - sea.achieved_fidelity).abs()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok((1..=d)
        .map(|k| {
            let col = stats.iter().map(|s| s[k - 1]);
            ConstructionPoint {
                n_qubits,
                truncation: k,
                mean_fidelity: col.clone().map(|c| c.0).sum::<f64>() / targets as f64,
                min_fidelity: col.clone().map(|c| c.0).fold(f64::INFINITY, f64::min),
                max_prepare_error: col.map(|c| c.1).fold(0.0, f64::max),
                n_targets: targets,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_scan_reaches_unit_fidelity() {
        let pts = schmidt_construct_scan(4, 5, 1).unwrap();
        assert_eq!(pts.len(), 4);
        let last = pts.last().unwrap();
        assert!(last.min_fidelity > 1.0 - 1e-10);
        assert!(pts.iter().all(|p| p.max_prepare_error < 1e-10));
        assert!(pts.windows(2).all(|w| w[1].mean_fidelity >= w[0].mean_fidelity));
        assert!(schmidt_construct_scan(3, 5, 1).is_err());
    }

    #[test]
    fn second_moment_check_at_small_sample_count() {
        let c = two_design_check(1, 2000, 3).unwrap();
        assert!(c.sea.z_score(c.sea_closed) < 5.0);
        assert!(c.haar.z_score(c.haar_closed) < 5.0);
    }
}
