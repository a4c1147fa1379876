//! Stochastic unraveling of the feedback iteration: sample measurement
//! outcomes by the Born rule, apply the outcome's conditioned propagator,
//! and average many runs to validate the effective description.
//!
//! Randomness comes from one ChaCha12 stream per trajectory, split off a
//! single seed, so ensembles are reproducible bit-for-bit regardless of how
//! trajectories are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::engine::{FeedbackProtocol, Observable};
use crate::error::{Error, Result};
use crate::hilbert::DensityMatrix;
use crate::linalg::dag;
use crate::superop::{devectorize, vectorize};

/// Identity of the random number generator, recorded in run manifests.
pub const RNG_IDENTITY: &str = "chacha12/stream-per-trajectory";

const PROBABILITY_SUM_TOL: f64 = 1e-10;
const PROBABILITY_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct TrajectoryConfig {
    pub protocol: FeedbackProtocol,
    pub rho0: DensityMatrix,
    pub n_steps: usize,
    pub n_traj: usize,
    pub seed: u64,
}

impl TrajectoryConfig {
    pub fn new(
        protocol: FeedbackProtocol,
        rho0: DensityMatrix,
        n_steps: usize,
        n_traj: usize,
        seed: u64,
    ) -> Result<Self> {
        if n_steps < 1 {
            return Err(Error::InvalidParameter { name: "n_steps", reason: "must be >= 1".into() });
        }
        if n_traj < 1 {
            return Err(Error::InvalidParameter { name: "n_traj", reason: "must be >= 1".into() });
        }
        Ok(TrajectoryConfig { protocol, rho0, n_steps, n_traj, seed })
    }

    fn stream_rng(&self, trajectory: u64) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(trajectory);
        rng
    }
}

/// One conditional record: the state after every full step plus the sampled
/// outcome indices.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<DensityMatrix>,
    pub outcomes: Vec<usize>,
}

/// Ensemble mean and standard error of the configured observables.
#[derive(Debug, Clone)]
pub struct TrajectoryEnsembleResult {
    pub times: Vec<f64>,
    pub mean_observables: Vec<(String, Vec<f64>)>,
    pub stderr_observables: Vec<(String, Vec<f64>)>,
    pub n_traj: usize,
}

/// Draw one trajectory: at each step an outcome m is sampled with the Born
/// probability tr(M†_m M_m ρ), the state collapses to M_m ρ M†_m / P(m)
/// (renormalized by the computed probability), and the conditioned
/// propagator of outcome m is applied.
pub fn sample_trajectory(
    protocol: &FeedbackProtocol,
    rho0: &DensityMatrix,
    n_steps: usize,
    rng: &mut impl Rng,
) -> Result<Trajectory> {
    let conv = protocol.conditioned_props[0].convention().clone();
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut outcomes = Vec::with_capacity(n_steps);
    let mut state = rho0.clone();
    states.push(state.clone());
    for _ in 0..n_steps {
        let (m, probability) = sample_outcome(protocol, &state, rng)?;
        outcomes.push(m);
        // collapse: M rho M† / P(m)
        let op = protocol.measurements.operator(m);
        let collapsed = op.dot(state.matrix()).dot(&dag(op)).mapv(|z| z / probability);
        let collapsed = DensityMatrix::new(collapsed)?;
        // conditioned deterministic evolution
        let v = protocol.conditioned_props[m].apply_vec(&vectorize(&collapsed, &conv)?);
        state = DensityMatrix::new(devectorize(&v, &conv))?;
        states.push(state.clone());
    }
    Ok(Trajectory { states, outcomes })
}

fn sample_outcome(
    protocol: &FeedbackProtocol,
    state: &DensityMatrix,
    rng: &mut impl Rng,
) -> Result<(usize, f64)> {
    let n = protocol.measurements.len();
    let mut probs = Vec::with_capacity(n);
    for m in 0..n {
        probs.push(protocol.measurements.outcome_probability(m, state).max(0.0));
    }
    let sum: f64 = probs.iter().sum();
    if sum < PROBABILITY_FLOOR {
        return Err(Error::AllOutcomesImprobable);
    }
    if (sum - 1.0).abs() > PROBABILITY_SUM_TOL {
        return Err(Error::ProbabilityNormalization { sum });
    }
    // cumulative inversion on the renormalized distribution
    let u: f64 = rng.random::<f64>() * sum;
    let mut acc = 0.0;
    for (m, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc && *p > PROBABILITY_FLOOR {
            return Ok((m, *p));
        }
    }
    // numerical edge: fall back to the last outcome with nonzero probability
    let m = probs
        .iter()
        .rposition(|p| *p > PROBABILITY_FLOOR)
        .ok_or(Error::AllOutcomesImprobable)?;
    Ok((m, probs[m]))
}

/// Observable series of a single trajectory, sampled at the same instants
/// as [`crate::engine::iterate`].
fn trajectory_series(
    cfg: &TrajectoryConfig,
    observables: &[Observable],
    trajectory: u64,
) -> Result<Vec<Vec<f64>>> {
    let mut rng = cfg.stream_rng(trajectory);
    let traj = sample_trajectory(&cfg.protocol, &cfg.rho0, cfg.n_steps, &mut rng)?;
    Ok(observables
        .iter()
        .map(|obs| traj.states.iter().map(|s| s.expectation(&obs.operator)).collect())
        .collect())
}

/// Run `n_traj` independent trajectories and reduce to mean and standard
/// error per observable and time point. With `parallel` the trajectories
/// are distributed over the rayon pool; the reduction order is fixed by
/// trajectory index either way, so results are identical.
pub fn run_ensemble(
    cfg: &TrajectoryConfig,
    observables: &[Observable],
    parallel: bool,
) -> Result<TrajectoryEnsembleResult> {
    let n_points = cfg.n_steps + 1;
    let all: Vec<Result<Vec<Vec<f64>>>> = if parallel {
        (0..cfg.n_traj as u64)
            .into_par_iter()
            .map(|t| trajectory_series(cfg, observables, t))
            .collect()
    } else {
        (0..cfg.n_traj as u64).map(|t| trajectory_series(cfg, observables, t)).collect()
    };
    let mut series = Vec::with_capacity(cfg.n_traj);
    for r in all {
        series.push(r?);
    }

    let times: Vec<f64> = (0..n_points).map(|k| k as f64 * cfg.protocol.dt).collect();
    let n = cfg.n_traj as f64;
    let mut means = Vec::with_capacity(observables.len());
    let mut errs = Vec::with_capacity(observables.len());
    for (k, obs) in observables.iter().enumerate() {
        let mut mean = vec![0.0; n_points];
        for traj in &series {
            for (t, x) in traj[k].iter().enumerate() {
                mean[t] += x;
            }
        }
        for m in mean.iter_mut() {
            *m /= n;
        }
        let mut stderr = vec![0.0; n_points];
        if cfg.n_traj > 1 {
            for traj in &series {
                for (t, x) in traj[k].iter().enumerate() {
                    let d = x - mean[t];
                    stderr[t] += d * d;
                }
            }
            for s in stderr.iter_mut() {
                *s = (*s / (n * (n - 1.0))).sqrt();
            }
        }
        means.push((obs.name.clone(), mean));
        errs.push((obs.name.clone(), stderr));
    }
    Ok(TrajectoryEnsembleResult {
        times,
        mean_observables: means,
        stderr_observables: errs,
        n_traj: cfg.n_traj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::BathSpectrum;
    use crate::engine::{effective_propagator, iterate};
    use crate::hilbert::{basis_ket, plus_ket, pauli, Axis};
    use crate::models::{feedback_protocol, jump_protocol, JumpParams, SingleQubitParams};
    use crate::superop::{hamiltonian_superop, VectorizationConvention};
    use approx::assert_relative_eq;

    fn reference_protocol(dt: f64) -> FeedbackProtocol {
        let params = SingleQubitParams::new(5.0, 1.0, 5.0, BathSpectrum::flat(1.0)).unwrap();
        feedback_protocol(&params, dt).unwrap()
    }

    #[test]
    fn projective_measurement_on_own_eigenstate_is_deterministic() {
        let protocol = reference_protocol(0.05);
        let rho0 = DensityMatrix::pure(&plus_ket()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let traj = sample_trajectory(&protocol, &rho0, 1, &mut rng).unwrap();
        assert_eq!(traj.outcomes[0], 0, "the + outcome must fire with probability one");
    }

    #[test]
    fn measurement_on_mixed_state_is_unbiased() {
        let protocol = reference_protocol(0.01);
        let rho0 = DensityMatrix::maximally_mixed(2);
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let mut plus_count = 0usize;
        let n = 20_000;
        for _ in 0..n {
            let traj = sample_trajectory(&protocol, &rho0, 1, &mut rng).unwrap();
            if traj.outcomes[0] == 0 {
                plus_count += 1;
            }
        }
        let freq = plus_count as f64 / n as f64;
        // binomial three-sigma band around 1/2
        let sigma = (0.25 / n as f64).sqrt();
        assert!((freq - 0.5).abs() < 3.0 * sigma, "frequency {freq}");
    }

    #[test]
    fn jump_click_frequency_matches_decay_probability() {
        let conv = VectorizationConvention::single_qubit();
        let h = pauli(Axis::Z).mapv(|z| z * 0.5);
        let l0 = hamiltonian_superop(&h, &conv).unwrap();
        let (gamma, dt) = (1.0, 0.02);
        let params = JumpParams::new(gamma, crate::linalg::identity(2), l0).unwrap();
        let protocol = jump_protocol(&params, dt).unwrap();
        let excited = DensityMatrix::pure(&basis_ket(2, 1)).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let n = 100_000;
        let mut clicks = 0usize;
        for _ in 0..n {
            let traj = sample_trajectory(&protocol, &excited, 1, &mut rng).unwrap();
            if traj.outcomes[0] == 0 {
                clicks += 1;
            }
        }
        let freq = clicks as f64 / n as f64;
        let p = gamma * dt;
        let band = 3.0 * (p * (1.0 - p) / n as f64).sqrt();
        assert!((freq - p).abs() < band, "click frequency {freq}, expected {p} ± {band}");
    }

    #[test]
    fn ensemble_with_single_deterministic_trajectory() {
        let protocol = reference_protocol(0.05);
        let rho0 = DensityMatrix::pure(&plus_ket()).unwrap();
        let cfg = TrajectoryConfig::new(protocol.clone(), rho0.clone(), 3, 1, 11).unwrap();
        let obs = Observable::single_qubit_set();
        let ens = run_ensemble(&cfg, &obs, false).unwrap();
        let mut rng = cfg.stream_rng(0);
        let traj = sample_trajectory(&protocol, &rho0, 3, &mut rng).unwrap();
        for (t, state) in traj.states.iter().enumerate() {
            assert_relative_eq!(
                ens.mean_observables[0].1[t],
                state.expectation(&pauli(Axis::X)),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn identical_seeds_reproduce_bit_identical_results() {
        let protocol = reference_protocol(0.05);
        let rho0 = DensityMatrix::pure(&plus_ket()).unwrap();
        let obs = Observable::single_qubit_set();
        let cfg = TrajectoryConfig::new(protocol, rho0, 10, 64, 42).unwrap();
        let a = run_ensemble(&cfg, &obs, false).unwrap();
        let b = run_ensemble(&cfg, &obs, true).unwrap();
        for (ka, kb) in a.mean_observables.iter().zip(b.mean_observables.iter()) {
            assert_eq!(ka.1, kb.1, "parallel and serial reductions must agree exactly");
        }
    }

    #[test]
    fn ensemble_mean_tracks_effective_propagator() {
        let protocol = reference_protocol(0.05);
        let rho0 = DensityMatrix::pure(&plus_ket()).unwrap();
        let obs = vec![Observable::new("sx", pauli(Axis::X))];
        let cfg = TrajectoryConfig::new(protocol.clone(), rho0.clone(), 20, 2000, 5).unwrap();
        let ens = run_ensemble(&cfg, &obs, true).unwrap();
        let eff = effective_propagator(&protocol).unwrap();
        let record = iterate(&eff, &rho0, 20, &obs).unwrap();
        for t in 1..=20 {
            let dev = (ens.mean_observables[0].1[t] - record.observables[0].1[t]).abs();
            let band = 4.0 * ens.stderr_observables[0].1[t].max(1e-4);
            assert!(dev <= band, "t={t}: |mean - effective| = {dev:.3e} > {band:.3e}");
        }
    }

    #[test]
    fn single_trajectory_coherence_decays_between_measurements() {
        // theta = pi/2: inside one interval |<sigma_x>| of the conditioned
        // state shrinks monotonically from 1
        let params = SingleQubitParams::new(5.0, 1.0, 5.0, BathSpectrum::flat(1.0)).unwrap();
        let dt = 0.05;
        let protocol = feedback_protocol(&params, dt).unwrap();
        let rho0 = DensityMatrix::pure(&plus_ket()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(19);
        let traj = sample_trajectory(&protocol, &rho0, 5, &mut rng).unwrap();
        use crate::models::{single_qubit_liouvillian, Branch};
        let sub = 8;
        for (step, &m) in traj.outcomes.iter().enumerate() {
            // reconstruct the post-measurement pure state of this step
            let op = protocol.measurements.operator(m);
            let before = &traj.states[step];
            let p = protocol.measurements.outcome_probability(m, before);
            let collapsed = DensityMatrix::new(
                op.dot(before.matrix()).dot(&dag(op)).mapv(|z| z / p),
            )
            .unwrap();
            let branch = if m == 0 { Branch::Plus } else { Branch::Minus };
            let l = single_qubit_liouvillian(&params, branch).unwrap();
            let mut last = collapsed.expectation(&pauli(Axis::X)).abs();
            for k in 1..=sub {
                let tau = dt * k as f64 / sub as f64;
                let evolved = l.expm(tau).apply(&collapsed).unwrap();
                let x = evolved.expectation(&pauli(Axis::X)).abs();
                assert!(x <= last + 1e-12, "|sx| grew inside the interval");
                last = x;
            }
        }
    }

    #[test]
    fn invalid_config_rejected() {
        let protocol = reference_protocol(0.05);
        let rho0 = DensityMatrix::maximally_mixed(2);
        assert!(TrajectoryConfig::new(protocol.clone(), rho0.clone(), 0, 5, 1).is_err());
        assert!(TrajectoryConfig::new(protocol, rho0, 5, 0, 1).is_err());
    }
}
