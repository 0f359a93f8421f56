//! VQE comparisons across ansatz families with matched parameter counts.

use rayon::prelude::*;

use sealab::hamiltonian::{PauliSum, GROUND_ENERGY_MAX_QUBITS};
use sealab::rng::derive_seed;
use sealab::vqe::{run_sgd, GradientMethod, TrainingTrace, VqeConfig};
use sealab::{Error, Result};

use crate::ansatz_spec::{AnsatzSpec, DepthPlan};

#[derive(Clone, Debug, PartialEq)]
pub struct VqeExperiment {
    pub hamiltonian: PauliSum,
    pub families: Vec<AnsatzSpec>,
    /// Depth of each SEA block; other families are matched to it.
    pub layers: usize,
    pub iterations: usize,
    pub learning_rate: f64,
    pub gradient: GradientMethod,
    /// One training run per family per seed.
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VqeRun {
    pub family: AnsatzSpec,
    pub seed: u64,
    pub layers: usize,
    pub n_params: usize,
    pub trace: TrainingTrace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VqeOutcome {
    /// Dense ground energy when the register is small enough.
    pub exact_energy: Option<f64>,
    pub plan: DepthPlan,
    pub runs: Vec<VqeRun>,
}

impl VqeOutcome {
    pub fn run(&self, family: &AnsatzSpec, seed: u64) -> Option<&VqeRun> {
        self.runs.iter().find(|r| r.family == *family && r.seed == seed)
    }

    /// `final energy − exact energy`.
    pub fn gap(&self, run: &VqeRun) -> Option<f64> {
        self.exact_energy.map(|e| run.trace.final_energy() - e)
    }
}

pub fn run_vqe_experiment(exp: &VqeExperiment) -> Result<VqeOutcome> {
    if exp.families.is_empty() || exp.seeds.is_empty() {
        return Err(Error::Argument("need at least one family and one seed".into()));
    }
    let n = exp.hamiltonian.n_qubits();
    let plan = DepthPlan::new(&exp.families, n, exp.layers)?;
    let exact_energy = if n <= GROUND_ENERGY_MAX_QUBITS {
        Some(exp.hamiltonian.exact_ground_energy()?)
    } else {
        None
    };
    let jobs: Vec<(usize, u64)> = (0..exp.families.len())
        .flat_map(|f| exp.seeds.iter().map(move |&s| (f, s)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(fi, seed)| {
            let (family, layers, n_params) = plan.entries[fi];
            let circuit = family.build(n, layers, derive_seed(seed, fi as u64))?;
            let config = VqeConfig {
                iterations: exp.iterations,
                learning_rate: exp.learning_rate,
                seed,
                gradient: exp.gradient,
            };
            Ok(VqeRun {
                family,
                seed,
                layers,
                n_params,
                trace: run_sgd(&circuit, &exp.hamiltonian, &config)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VqeOutcome {
        exact_energy,
        plan,
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sealab::hamiltonian::heisenberg_ring;

    fn small(iterations: usize) -> VqeExperiment {
        VqeExperiment {
            hamiltonian: heisenberg_ring(4).unwrap(),
            families: ["sea_m1_k1", "alt", "random"].iter().map(|f| AnsatzSpec::parse(f).unwrap()).collect(),
            layers: 1,
            iterations,
            learning_rate: 0.1,
            gradient: GradientMethod::Adjoint,
            seeds: vec![1, 2],
        }
    }

    #[test]
    fn zero_iterations_record_initial_energy_only() {
        let out = run_vqe_experiment(&small(0)).unwrap();
        assert_eq!(out.runs.len(), 6);
        assert!(out.runs.iter().all(|r| r.trace.energies.len() == 1));
        assert!((out.exact_energy.unwrap() + 8.0).abs() < 1e-10);
    }

    #[test]
    fn runs_are_variational_and_deterministic() {
        let exp = small(20);
        let a = run_vqe_experiment(&exp).unwrap();
        assert_eq!(a, run_vqe_experiment(&exp).unwrap());
        for r in &a.runs {
            assert!(a.gap(r).unwrap() >= -1e-9);
        }
    }
}
