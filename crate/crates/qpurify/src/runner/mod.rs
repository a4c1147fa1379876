//! Experiment definition, parameter sweeps, and data export: runs the
//! shipped models from declarative TOML configuration and writes plot-ready
//! CSV files plus a reproducibility manifest.

pub mod config;
pub mod output;

use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;

pub use config::{parse_config, ExperimentConfig, ExperimentKind, RunKind};

use crate::engine::{
    continuum_generator, continuum_ode_rhs, effective_propagator, integrate_continuum, iterate,
    stationary_state, FeedbackProtocol, Observable,
};
use crate::hilbert::{basis_ket, bell_ket, pauli, plus_ket, Axis, DensityMatrix};
use crate::linalg::identity;
use crate::metrics::{concurrence, fidelity_to_pure, purity, stationary_bell_prediction};
use crate::models::{
    bell_protocol, feedback_liouvillian_jump, feedback_protocol, jump_protocol,
    single_qubit_liouvillian, two_qubit_liouvillian, BellBranch, Branch,
    JumpParams,
};
use crate::superop::{hamiltonian_superop, SuperOperator, VectorizationConvention};
use crate::trajectories::{run_ensemble, TrajectoryConfig, RNG_IDENTITY};

use config::ControlKind;
use output::{
    write_manifest, write_scalar_csv, write_sweep_csv, write_timeseries_csv, Column,
    SweepRow, SweepTable,
};

#[derive(Debug, Error)]
pub enum RunnerError {
    #[error("config parse error: {0}")]
    Parse(Box<toml::de::Error>),
    #[error("invalid config at {key}: {reason}")]
    Validation { key: String, reason: String },
    #[error("numerical failure: {0}")]
    Numerical(#[from] crate::error::Error),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl RunnerError {
    /// Process exit code: 1 validation, 2 numerical, 3 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunnerError::Parse(_) | RunnerError::Validation { .. } => 1,
            RunnerError::Numerical(_) => 2,
            RunnerError::Io(_) => 3,
        }
    }
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct CliOverrides {
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    /// 0 uses the default rayon pool size.
    pub threads: usize,
    pub format: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub outputs: Vec<PathBuf>,
    pub grid_points: usize,
    pub failed_points: usize,
}

pub fn run_experiment(cfg: &ExperimentConfig, overrides: &CliOverrides) -> Result<RunSummary, RunnerError> {
    if let Some(fmt) = &overrides.format {
        if fmt != "csv" {
            return Err(RunnerError::Validation {
                key: "--format".into(),
                reason: format!("only \"csv\" is supported, got {fmt:?}"),
            });
        }
    }
    let mut cfg = cfg.clone();
    if let Some(dir) = &overrides.output_dir {
        cfg.output.dir = dir.clone();
    }
    if let Some(seed) = overrides.seed {
        cfg.steps.seed = seed;
    }
    cfg.validate()?;
    if overrides.threads > 0 {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(overrides.threads).build_global();
    }
    let parallel = overrides.threads != 1;

    let prefix = cfg.file_prefix();
    let csv_path = cfg.output.dir.join(format!("{prefix}.csv"));
    let manifest_path = cfg.output.dir.join(format!("{prefix}.manifest.txt"));

    let mut summary = RunSummary { outputs: vec![csv_path.clone()], grid_points: 0, failed_points: 0 };
    match cfg.run {
        RunKind::Iterate => {
            let (times, columns) = run_iterate(&cfg)?;
            write_timeseries_csv(&csv_path, &times, &columns)?;
        }
        RunKind::Continuum => {
            let (times, columns) = run_continuum(&cfg)?;
            write_timeseries_csv(&csv_path, &times, &columns)?;
        }
        RunKind::Trajectories => {
            let (times, columns) = run_trajectories(&cfg, parallel)?;
            write_timeseries_csv(&csv_path, &times, &columns)?;
        }
        RunKind::Stationary => {
            let values = run_stationary(&cfg)?;
            write_scalar_csv(&csv_path, &values)?;
        }
        RunKind::Sweep => {
            let table = run_sweep(&cfg, parallel)?;
            summary.grid_points = table.rows.len();
            summary.failed_points = table.rows.iter().filter(|r| r.status.is_err()).count();
            write_sweep_csv(&csv_path, &table)?;
        }
    }

    let resolved = toml::to_string(&cfg).map_err(|e| RunnerError::Validation {
        key: "config".into(),
        reason: format!("cannot serialize resolved config: {e}"),
    })?;
    write_manifest(
        &manifest_path,
        &resolved,
        cfg.steps.seed,
        overrides.threads,
        RNG_IDENTITY,
        &summary.outputs,
    )?;
    summary.outputs.push(manifest_path);
    Ok(summary)
}

/// Measurement protocol, initial state, and observable set per experiment.
fn build_setup(cfg: &ExperimentConfig) -> Result<(FeedbackProtocol, DensityMatrix, Vec<Observable>), RunnerError> {
    match cfg.experiment {
        ExperimentKind::SingleQubitFeedback => {
            let params = cfg.single_qubit_params()?;
            let protocol = feedback_protocol(&params, cfg.params.dt)?;
            let rho0 = DensityMatrix::pure(&plus_ket())?;
            Ok((protocol, rho0, Observable::single_qubit_set()))
        }
        ExperimentKind::SingleQubitGeneralDirection => {
            let params = cfg.single_qubit_params()?;
            let protocol = feedback_protocol(&params, cfg.params.dt)?;
            let rho0 = DensityMatrix::maximally_mixed(2);
            Ok((protocol, rho0, Observable::single_qubit_set()))
        }
        ExperimentKind::TwoQubitBell => {
            let params = cfg.two_qubit_params()?;
            let protocol = bell_protocol(&params)?;
            let rho0 = DensityMatrix::maximally_mixed(4);
            Ok((protocol, rho0, Observable::bell_correlator_set()))
        }
        ExperimentKind::Zeno => {
            let p = &cfg.params;
            let conv = VectorizationConvention::single_qubit();
            let measurements = crate::models::measurement_set_general(p.meas_theta, p.meas_phi)?;
            let h = pauli(Axis::Z).mapv(|z| z * (p.omega / 2.0));
            let free = hamiltonian_superop(&h, &conv)?.expm(p.dt);
            let protocol = FeedbackProtocol::new(measurements, vec![free.clone(), free], p.dt)?;
            let rho0 = DensityMatrix::pure(&plus_ket())?;
            Ok((protocol, rho0, Observable::single_qubit_set()))
        }
        ExperimentKind::JumpLimit => {
            let params = jump_params(cfg)?;
            let protocol = jump_protocol(&params, cfg.params.dt)?;
            let rho0 = DensityMatrix::pure(&basis_ket(2, 1))?;
            Ok((protocol, rho0, Observable::single_qubit_set()))
        }
    }
}

fn jump_params(cfg: &ExperimentConfig) -> Result<JumpParams, RunnerError> {
    let conv = VectorizationConvention::single_qubit();
    let h = pauli(Axis::Z).mapv(|z| z * (cfg.params.omega / 2.0));
    let l0 = hamiltonian_superop(&h, &conv)?;
    let u = match cfg.params.control {
        ControlKind::Identity => identity(2),
        ControlKind::FlipX => pauli(Axis::X),
        ControlKind::FlipY => pauli(Axis::Y),
        ControlKind::Hadamard => {
            (pauli(Axis::X) + pauli(Axis::Z)).mapv(|z| z * std::f64::consts::FRAC_1_SQRT_2)
        }
    };
    Ok(JumpParams::new(cfg.params.jump_gamma, u, l0)?)
}

fn run_iterate(cfg: &ExperimentConfig) -> Result<(Vec<f64>, Vec<Column>), RunnerError> {
    let (protocol, rho0, observables) = build_setup(cfg)?;
    let eff = effective_propagator(&protocol)?;
    let record = iterate(&eff, &rho0, cfg.steps.n_steps, &observables)?;
    let mut columns: Vec<Column> = record.observables.clone();
    columns.push(("purity".into(), record.states.iter().map(purity).collect()));
    if cfg.experiment == ExperimentKind::TwoQubitBell {
        let conc: Result<Vec<f64>, _> = record.states.iter().map(concurrence).collect();
        columns.push(("concurrence".into(), conc?));
        // continuum-limit curves alongside, sampled at the same instants
        let (_, cont_cols) = continuum_series(cfg, &record.times)?;
        for (name, values) in cont_cols {
            columns.push((format!("{name}_continuum"), values));
        }
    }
    Ok((record.times, columns))
}

/// Continuum-limit evolution: the scalar ODE for the σˣ protocol, the
/// feedback master equation for jump detection, and the Zeno-limit
/// generator for everything else.
fn continuum_series(cfg: &ExperimentConfig, times: &[f64]) -> Result<(Vec<f64>, Vec<Column>), RunnerError> {
    match cfg.experiment {
        ExperimentKind::SingleQubitFeedback => {
            let params = cfg.single_qubit_params()?;
            let rhs = continuum_ode_rhs(&params)?;
            let x0 = 1.0; // starts from |+><+|
            let xbar = rhs.stationary();
            let values: Vec<f64> =
                times.iter().map(|t| xbar + (x0 - xbar) * (-rhs.decay * t).exp()).collect();
            Ok((times.to_vec(), vec![("sx".into(), values)]))
        }
        ExperimentKind::JumpLimit => {
            let params = jump_params(cfg)?;
            let generator = feedback_liouvillian_jump(&params)?;
            let rho0 = DensityMatrix::pure(&basis_ket(2, 1))?;
            let observables = Observable::single_qubit_set();
            evolve_by_generator(&generator, None, &rho0, times, &observables)
        }
        ExperimentKind::TwoQubitBell => {
            let params = cfg.two_qubit_params()?;
            let measurements = crate::models::bell_measurement_set()?;
            let gens = vec![
                two_qubit_liouvillian(&params, BellBranch::Bell)?,
                two_qubit_liouvillian(&params, BellBranch::Rest)?,
            ];
            let generator = continuum_generator(&measurements, &gens)?;
            let projector = measurements.averaging_superop();
            let rho0 = DensityMatrix::maximally_mixed(4);
            let observables = Observable::bell_correlator_set();
            let (t, mut cols) =
                evolve_by_generator(&generator, Some(&projector), &rho0, times, &observables)?;
            // concurrence of the continuum states
            let conc = continuum_concurrence(&generator, &projector, &rho0, times)?;
            cols.push(("concurrence".into(), conc));
            Ok((t, cols))
        }
        ExperimentKind::SingleQubitGeneralDirection => {
            let params = cfg.single_qubit_params()?;
            let measurements =
                crate::models::measurement_set_general(params.meas_theta, params.meas_phi)?;
            let gens = vec![
                single_qubit_liouvillian(&params, Branch::Plus)?,
                single_qubit_liouvillian(&params, Branch::Minus)?,
            ];
            let generator = continuum_generator(&measurements, &gens)?;
            let projector = measurements.averaging_superop();
            let rho0 = DensityMatrix::maximally_mixed(2);
            let observables = Observable::single_qubit_set();
            evolve_by_generator(&generator, Some(&projector), &rho0, times, &observables)
        }
        ExperimentKind::Zeno => Err(RunnerError::Validation {
            key: "run".into(),
            reason: "no continuum generator for the measurement-only protocol".into(),
        }),
    }
}

fn evolve_by_generator(
    generator: &SuperOperator,
    projector: Option<&SuperOperator>,
    rho0: &DensityMatrix,
    times: &[f64],
    observables: &[Observable],
) -> Result<(Vec<f64>, Vec<Column>), RunnerError> {
    let conv = generator.convention().clone();
    let v0 = crate::superop::vectorize(rho0, &conv)?;
    let v0 = match projector {
        Some(p) => p.apply_vec(&v0),
        None => v0,
    };
    let mut columns: Vec<Column> =
        observables.iter().map(|o| (o.name.clone(), Vec::with_capacity(times.len()))).collect();
    let mut purities = Vec::with_capacity(times.len());
    for &t in times {
        let v = generator.expm(t).apply_vec(&v0);
        let rho = DensityMatrix::new(crate::superop::devectorize(&v, &conv))?;
        for (k, obs) in observables.iter().enumerate() {
            columns[k].1.push(rho.expectation(&obs.operator));
        }
        purities.push(purity(&rho));
    }
    columns.push(("purity".into(), purities));
    Ok((times.to_vec(), columns))
}

fn continuum_concurrence(
    generator: &SuperOperator,
    projector: &SuperOperator,
    rho0: &DensityMatrix,
    times: &[f64],
) -> Result<Vec<f64>, RunnerError> {
    let conv = generator.convention().clone();
    let v0 = projector.apply_vec(&crate::superop::vectorize(rho0, &conv)?);
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let v = generator.expm(t).apply_vec(&v0);
        let rho = DensityMatrix::new(crate::superop::devectorize(&v, &conv))?;
        out.push(concurrence(&rho)?);
    }
    Ok(out)
}

fn run_continuum(cfg: &ExperimentConfig) -> Result<(Vec<f64>, Vec<Column>), RunnerError> {
    let times: Vec<f64> = (0..=cfg.steps.n_steps).map(|k| k as f64 * cfg.params.dt).collect();
    if cfg.experiment == ExperimentKind::SingleQubitFeedback {
        // scalar linear ODE, integrated with the configured step and sampled
        // on the iteration grid
        let params = cfg.single_qubit_params()?;
        let rhs = continuum_ode_rhs(&params)?;
        let sub = (cfg.params.dt / cfg.steps.ode_step).ceil().max(1.0) as usize;
        let step = cfg.params.dt / sub as f64;
        let t_final = cfg.steps.n_steps as f64 * cfg.params.dt;
        let series = integrate_continuum(&rhs, 1.0, t_final, step);
        let values: Vec<f64> = (0..=cfg.steps.n_steps).map(|k| series[k * sub].1).collect();
        return Ok((times, vec![("sx".into(), values)]));
    }
    continuum_series(cfg, &times)
}

fn run_trajectories(cfg: &ExperimentConfig, parallel: bool) -> Result<(Vec<f64>, Vec<Column>), RunnerError> {
    let (protocol, rho0, mut observables) = build_setup(cfg)?;
    if cfg.experiment == ExperimentKind::SingleQubitFeedback {
        // the trajectory-comparison output tracks <sigma_x> only
        observables = vec![Observable::new("sx", pauli(Axis::X))];
    }
    let eff = effective_propagator(&protocol)?;
    let record = iterate(&eff, &rho0, cfg.steps.n_steps, &observables)?;
    let traj_cfg = TrajectoryConfig::new(
        protocol,
        rho0,
        cfg.steps.n_steps,
        cfg.steps.n_traj,
        cfg.steps.seed,
    )?;
    let ensemble = run_ensemble(&traj_cfg, &observables, parallel)?;

    let mut columns: Vec<Column> = Vec::new();
    for (k, obs) in observables.iter().enumerate() {
        columns.push((format!("{}_effective", obs.name), record.observables[k].1.clone()));
        if cfg.experiment == ExperimentKind::SingleQubitFeedback && obs.name == "sx" {
            let params = cfg.single_qubit_params()?;
            let rhs = continuum_ode_rhs(&params)?;
            let xbar = rhs.stationary();
            let cont: Vec<f64> =
                record.times.iter().map(|t| xbar + (1.0 - xbar) * (-rhs.decay * t).exp()).collect();
            columns.push(("sx_continuum".into(), cont));
        }
        columns.push((format!("{}_traj_mean", obs.name), ensemble.mean_observables[k].1.clone()));
        columns.push((format!("{}_traj_stderr", obs.name), ensemble.stderr_observables[k].1.clone()));
    }
    Ok((record.times, columns))
}

fn run_stationary(cfg: &ExperimentConfig) -> Result<Vec<(String, f64)>, RunnerError> {
    let (protocol, _, _) = build_setup(cfg)?;
    let eff = effective_propagator(&protocol)?;
    let st = stationary_state(&eff)?;
    let mut out: Vec<(String, f64)> = Vec::new();
    match cfg.experiment {
        ExperimentKind::TwoQubitBell => {
            let c = st.rho.correlators()?;
            out.push(("Sxx".into(), c.expectation(Axis::X, Axis::X)));
            out.push(("Syy".into(), c.expectation(Axis::Y, Axis::Y)));
            out.push(("Szz".into(), c.expectation(Axis::Z, Axis::Z)));
            out.push(("Sxy".into(), c.expectation(Axis::X, Axis::Y)));
            out.push(("Syx".into(), c.expectation(Axis::Y, Axis::X)));
            out.push(("concurrence".into(), concurrence(&st.rho)?));
            out.push(("purity".into(), purity(&st.rho)));
            out.push(("bell_fidelity".into(), fidelity_to_pure(&st.rho, &bell_ket())?));
            let pred = stationary_bell_prediction(cfg.params.lambda_b, cfg.params.lambda_r)?;
            out.push(("concurrence_continuum".into(), pred.concurrence));
            out.push(("purity_continuum".into(), pred.purity));
        }
        ExperimentKind::JumpLimit => {
            push_bloch(&mut out, &st.rho, "")?;
            // fixed point of the continuum feedback generator for comparison
            let params = jump_params(cfg)?;
            let gen = feedback_liouvillian_jump(&params)?;
            let horizon = 50.0 / cfg.params.jump_gamma.max(1e-6);
            let gen_stationary =
                crate::engine::stationary_state_of_superop(&gen.expm(horizon))?;
            push_bloch(&mut out, &gen_stationary.rho, "_generator")?;
        }
        ExperimentKind::Zeno => {
            push_bloch(&mut out, &st.rho, "")?;
        }
        _ => {
            push_bloch(&mut out, &st.rho, "")?;
            let params = cfg.single_qubit_params()?;
            if params.bath.is_flat() {
                out.push((
                    "modulus_continuum".into(),
                    crate::engine::stationary_bloch_modulus(&params)?,
                ));
            }
        }
    }
    out.push(("eigenvalue_re".into(), st.eigenvalue.re));
    out.push(("eigenvalue_im".into(), st.eigenvalue.im));
    out.push(("degenerate".into(), if st.degenerate { 1.0 } else { 0.0 }));
    Ok(out)
}

fn push_bloch(out: &mut Vec<(String, f64)>, rho: &DensityMatrix, suffix: &str) -> Result<(), RunnerError> {
    let b = rho.bloch()?;
    out.push((format!("sx{suffix}"), b.x));
    out.push((format!("sy{suffix}"), b.y));
    out.push((format!("sz{suffix}"), b.z));
    out.push((format!("modulus{suffix}"), b.modulus()));
    out.push((format!("purity{suffix}"), purity(rho)));
    Ok(())
}

fn run_sweep(cfg: &ExperimentConfig, parallel: bool) -> Result<SweepTable, RunnerError> {
    let sweep = cfg.sweep.as_ref().expect("validated");
    let axis_names: Vec<String> = sweep.axes.iter().map(|a| a.param.clone()).collect();
    let axis_values: Vec<Vec<f64>> = sweep.axes.iter().map(|a| a.values()).collect();
    let mut points: Vec<Vec<f64>> = Vec::new();
    match axis_values.len() {
        1 => {
            for &v in &axis_values[0] {
                points.push(vec![v]);
            }
        }
        2 => {
            for &a in &axis_values[0] {
                for &b in &axis_values[1] {
                    points.push(vec![a, b]);
                }
            }
        }
        _ => unreachable!("validated axis count"),
    }

    let metric_names: Vec<String> = match cfg.experiment {
        ExperimentKind::TwoQubitBell => {
            ["Sxx", "Syy", "Szz", "Sxy", "concurrence", "purity"].iter().map(|s| s.to_string()).collect()
        }
        _ => ["sx", "sy", "sz", "modulus", "purity"].iter().map(|s| s.to_string()).collect(),
    };

    let evaluate = |axis_vals: &Vec<f64>| -> SweepRow {
        let mut point_cfg = cfg.clone();
        for (name, value) in axis_names.iter().zip(axis_vals.iter()) {
            apply_axis(&mut point_cfg, name, *value);
        }
        let status = sweep_point_metrics(&point_cfg).map_err(|e| e.to_string());
        SweepRow { axis_values: axis_vals.clone(), status }
    };

    let rows: Vec<SweepRow> = if parallel {
        points.par_iter().map(evaluate).collect()
    } else {
        points.iter().map(evaluate).collect()
    };
    Ok(SweepTable { axis_names, metric_names, rows })
}

fn apply_axis(cfg: &mut ExperimentConfig, param: &str, value: f64) {
    let p = &mut cfg.params;
    match param {
        "dt" => p.dt = value,
        "omega" => p.omega = value,
        "omega1" => p.omega1 = value,
        "omega2" => p.omega2 = value,
        "gamma" => p.bath.gamma = value,
        "lambda_plus" => p.lambda_plus = value,
        "lambda_minus" => p.lambda_minus = value,
        "lambda_b" => p.lambda_b = value,
        "lambda_r" => p.lambda_r = value,
        "lambda_ratio" => p.lambda_r = value * p.lambda_b,
        "theta_plus" => p.theta_plus = value,
        "theta_minus" => p.theta_minus = value,
        "meas_theta" => p.meas_theta = value,
        "meas_phi" => p.meas_phi = value,
        _ => unreachable!("axis params validated up front"),
    }
}

fn sweep_point_metrics(cfg: &ExperimentConfig) -> Result<Vec<f64>, RunnerError> {
    let (protocol, _, _) = build_setup(cfg)?;
    let eff = effective_propagator(&protocol)?;
    let st = stationary_state(&eff)?;
    match cfg.experiment {
        ExperimentKind::TwoQubitBell => {
            let c = st.rho.correlators()?;
            Ok(vec![
                c.expectation(Axis::X, Axis::X),
                c.expectation(Axis::Y, Axis::Y),
                c.expectation(Axis::Z, Axis::Z),
                c.expectation(Axis::X, Axis::Y),
                concurrence(&st.rho)?,
                purity(&st.rho),
            ])
        }
        _ => {
            let b = st.rho.bloch()?;
            Ok(vec![b.x, b.y, b.z, b.modulus(), purity(&st.rho)])
        }
    }
}

/// `list-experiments` output: one line per experiment kind.
pub fn list_experiments() -> String {
    let mut s = String::new();
    for kind in ExperimentKind::ALL {
        s.push_str(&format!("{:32} {}\n", kind.name(), kind.describe()));
    }
    s.push_str("\nruns: iterate | trajectories | stationary | continuum | sweep\n");
    s
}
