//! Declarative experiment configuration, parsed from TOML.

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bath::BathSpectrum;
use crate::models::{SingleQubitParams, TwoQubitParams};

use super::RunnerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    SingleQubitFeedback,
    SingleQubitGeneralDirection,
    TwoQubitBell,
    Zeno,
    JumpLimit,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::SingleQubitFeedback,
        ExperimentKind::SingleQubitGeneralDirection,
        ExperimentKind::TwoQubitBell,
        ExperimentKind::Zeno,
        ExperimentKind::JumpLimit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::SingleQubitFeedback => "single_qubit_feedback",
            ExperimentKind::SingleQubitGeneralDirection => "single_qubit_general_direction",
            ExperimentKind::TwoQubitBell => "two_qubit_bell",
            ExperimentKind::Zeno => "zeno",
            ExperimentKind::JumpLimit => "jump_limit",
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            ExperimentKind::SingleQubitFeedback => {
                "sigma_x measurements with outcome-switched dissipation strength"
            }
            ExperimentKind::SingleQubitGeneralDirection => {
                "projective measurement along an arbitrary Bloch direction"
            }
            ExperimentKind::TwoQubitBell => "Bell-projection feedback entangling two qubits",
            ExperimentKind::Zeno => "repeated measurements without dissipation or feedback",
            ExperimentKind::JumpLimit => "jump detection with unitary control kicks",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunKind {
    Iterate,
    Trajectories,
    Stationary,
    Continuum,
    Sweep,
}

impl RunKind {
    pub fn name(&self) -> &'static str {
        match self {
            RunKind::Iterate => "iterate",
            RunKind::Trajectories => "trajectories",
            RunKind::Stationary => "stationary",
            RunKind::Continuum => "continuum",
            RunKind::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BathKind {
    Flat,
    Ohmic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathConfig {
    #[serde(default = "default_flat")]
    pub kind: BathKind,
    /// Flat rate γ; also the rate unit of dimensionless inputs.
    #[serde(default = "default_one")]
    pub gamma: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_omega_c")]
    pub omega_c: f64,
    #[serde(default = "default_one")]
    pub beta: f64,
}

impl Default for BathConfig {
    fn default() -> Self {
        BathConfig {
            kind: BathKind::Flat,
            gamma: 1.0,
            alpha: 0.1,
            omega_c: 100.0,
            beta: 1.0,
        }
    }
}

impl BathConfig {
    pub fn spectrum(&self) -> BathSpectrum {
        match self.kind {
            BathKind::Flat => BathSpectrum::flat(self.gamma),
            BathKind::Ohmic => BathSpectrum::ohmic(self.alpha, self.omega_c, self.beta),
        }
    }
}

/// Model parameters; frequencies in units of γ, times in units of 1/γ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    #[serde(default = "default_omega")]
    pub omega: f64,
    #[serde(default)]
    pub omega1: f64,
    #[serde(default)]
    pub omega2: f64,
    #[serde(default = "default_one")]
    pub lambda_plus: f64,
    #[serde(default = "default_five")]
    pub lambda_minus: f64,
    #[serde(default = "default_one")]
    pub lambda_b: f64,
    #[serde(default = "default_five")]
    pub lambda_r: f64,
    #[serde(default = "default_half_pi")]
    pub theta_plus: f64,
    #[serde(default = "default_half_pi")]
    pub theta_minus: f64,
    #[serde(default)]
    pub phi_plus: f64,
    #[serde(default)]
    pub phi_minus: f64,
    #[serde(default = "default_half_pi")]
    pub meas_theta: f64,
    #[serde(default)]
    pub meas_phi: f64,
    #[serde(default)]
    pub lamb_shift: f64,
    /// Decay rate of the jump-limit model.
    #[serde(default = "default_one")]
    pub jump_gamma: f64,
    /// Control unitary applied on a detector click.
    #[serde(default = "default_control")]
    pub control: ControlKind,
    /// Measurement interval Δt in units of 1/γ.
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default)]
    pub bath: BathConfig,
}

impl Default for ModelParams {
    fn default() -> Self {
        toml::from_str("").expect("empty table deserializes to defaults")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlKind {
    Identity,
    FlipX,
    FlipY,
    Hadamard,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepSettings {
    #[serde(default = "default_n_steps")]
    pub n_steps: usize,
    #[serde(default = "default_n_traj")]
    pub n_traj: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Step of the continuum-limit integrators, in units of 1/γ.
    #[serde(default = "default_ode_step")]
    pub ode_step: f64,
}

impl Default for StepSettings {
    fn default() -> Self {
        StepSettings {
            n_steps: default_n_steps(),
            n_traj: default_n_traj(),
            seed: default_seed(),
            ode_step: default_ode_step(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default = "default_linear")]
    pub spacing: Spacing,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = self.count;
        (0..n)
            .map(|k| {
                let f = k as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + f * (self.max - self.min),
                    Spacing::Log => {
                        (self.min.ln() + f * (self.max.ln() - self.min.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSettings {
    pub axes: Vec<SweepAxis>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSettings {
    #[serde(default = "default_output_dir")]
    pub dir: PathBuf,
    #[serde(default)]
    pub prefix: Option<String>,
}

impl Default for OutputSettings {
    fn default() -> Self {
        OutputSettings { dir: default_output_dir(), prefix: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub run: RunKind,
    #[serde(default)]
    pub params: ModelParams,
    #[serde(default)]
    pub steps: StepSettings,
    #[serde(default)]
    pub sweep: Option<SweepSettings>,
    #[serde(default)]
    pub output: OutputSettings,
}

fn default_flat() -> BathKind {
    BathKind::Flat
}
fn default_one() -> f64 {
    1.0
}
fn default_five() -> f64 {
    5.0
}
fn default_omega() -> f64 {
    5.0
}
fn default_alpha() -> f64 {
    0.1
}
fn default_omega_c() -> f64 {
    100.0
}
fn default_half_pi() -> f64 {
    FRAC_PI_2
}
fn default_dt() -> f64 {
    0.05
}
fn default_n_steps() -> usize {
    100
}
fn default_n_traj() -> usize {
    1000
}
fn default_seed() -> u64 {
    12345
}
fn default_ode_step() -> f64 {
    1e-3
}
fn default_linear() -> Spacing {
    Spacing::Linear
}
fn default_output_dir() -> PathBuf {
    PathBuf::from(".")
}
fn default_control() -> ControlKind {
    ControlKind::FlipX
}

/// Parse a TOML document into a validated configuration. Unknown keys are
/// rejected by the deserializer with position information.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, RunnerError> {
    let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| RunnerError::Parse(Box::new(e)))?;
    cfg.validate()?;
    Ok(cfg)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), RunnerError> {
        let p = &self.params;
        let positive = [
            ("params.dt", p.dt),
            ("params.bath.gamma", p.bath.gamma),
            ("params.jump_gamma", p.jump_gamma),
        ];
        for (key, v) in positive {
            if !v.is_finite() || v < 0.0 {
                return Err(validation(key, format!("must be finite and >= 0, got {v}")));
            }
        }
        let couplings = [
            ("params.lambda_plus", p.lambda_plus),
            ("params.lambda_minus", p.lambda_minus),
            ("params.lambda_b", p.lambda_b),
            ("params.lambda_r", p.lambda_r),
        ];
        for (key, v) in couplings {
            if !v.is_finite() || v < 0.0 {
                return Err(validation(key, format!("must be finite and >= 0, got {v}")));
            }
        }
        for (key, v) in [
            ("params.omega", p.omega),
            ("params.omega1", p.omega1),
            ("params.omega2", p.omega2),
            ("params.theta_plus", p.theta_plus),
            ("params.theta_minus", p.theta_minus),
            ("params.phi_plus", p.phi_plus),
            ("params.phi_minus", p.phi_minus),
            ("params.meas_theta", p.meas_theta),
            ("params.meas_phi", p.meas_phi),
            ("params.lamb_shift", p.lamb_shift),
            ("params.bath.alpha", p.bath.alpha),
            ("params.bath.omega_c", p.bath.omega_c),
            ("params.bath.beta", p.bath.beta),
        ] {
            if !v.is_finite() {
                return Err(validation(key, format!("must be finite, got {v}")));
            }
        }
        if self.steps.ode_step <= 0.0 || !self.steps.ode_step.is_finite() {
            return Err(validation("steps.ode_step", "must be finite and > 0".into()));
        }
        if self.experiment == ExperimentKind::JumpLimit && p.jump_gamma * p.dt > 1.0 {
            return Err(validation(
                "params.dt",
                format!("jump_gamma * dt = {} exceeds one", p.jump_gamma * p.dt),
            ));
        }

        match self.run {
            RunKind::Sweep => {
                let sweep = self.sweep.as_ref().ok_or_else(|| {
                    validation("sweep", "run = \"sweep\" requires a [sweep] section".into())
                })?;
                if sweep.axes.is_empty() || sweep.axes.len() > 2 {
                    return Err(validation("sweep.axes", "need one or two axes".into()));
                }
                for (k, axis) in sweep.axes.iter().enumerate() {
                    let key = format!("sweep.axes[{k}]");
                    if axis.count < 1 {
                        return Err(validation(&key, "count must be >= 1".into()));
                    }
                    if !axis.min.is_finite() || !axis.max.is_finite() {
                        return Err(validation(&key, "range must be finite".into()));
                    }
                    if axis.spacing == Spacing::Log && (axis.min <= 0.0 || axis.max <= 0.0) {
                        return Err(validation(&key, "log spacing needs positive bounds".into()));
                    }
                    if !self.axis_params().contains(&axis.param.as_str()) {
                        return Err(validation(
                            &format!("{key}.param"),
                            format!(
                                "unknown sweep parameter {:?} for experiment {}; valid: {}",
                                axis.param,
                                self.experiment.name(),
                                self.axis_params().join(", ")
                            ),
                        ));
                    }
                }
                if !matches!(
                    self.experiment,
                    ExperimentKind::SingleQubitFeedback
                        | ExperimentKind::SingleQubitGeneralDirection
                        | ExperimentKind::TwoQubitBell
                ) {
                    return Err(validation(
                        "run",
                        format!("sweep is not supported for experiment {}", self.experiment.name()),
                    ));
                }
            }
            RunKind::Continuum => {
                if self.experiment == ExperimentKind::Zeno {
                    return Err(validation(
                        "run",
                        "the measurement-only evolution has no continuum generator; use iterate"
                            .into(),
                    ));
                }
            }
            RunKind::Trajectories => {
                if self.steps.n_traj < 1 {
                    return Err(validation("steps.n_traj", "must be >= 1".into()));
                }
                if self.steps.n_steps < 1 {
                    return Err(validation("steps.n_steps", "must be >= 1".into()));
                }
            }
            _ => {}
        }

        // continuum closed forms require the flat bath
        if matches!(
            self.experiment,
            ExperimentKind::SingleQubitFeedback | ExperimentKind::SingleQubitGeneralDirection
        ) && self.run == RunKind::Continuum
            && p.bath.kind != BathKind::Flat
        {
            return Err(validation("params.bath.kind", "continuum run requires the flat bath".into()));
        }
        Ok(())
    }

    fn axis_params(&self) -> Vec<&'static str> {
        match self.experiment {
            ExperimentKind::SingleQubitFeedback | ExperimentKind::SingleQubitGeneralDirection => {
                vec![
                    "dt",
                    "omega",
                    "lambda_plus",
                    "lambda_minus",
                    "theta_plus",
                    "theta_minus",
                    "meas_theta",
                    "meas_phi",
                ]
            }
            ExperimentKind::TwoQubitBell => vec![
                "dt",
                "gamma",
                "lambda_b",
                "lambda_r",
                "lambda_ratio",
                "omega1",
                "omega2",
            ],
            _ => vec![],
        }
    }

    pub fn single_qubit_params(&self) -> Result<SingleQubitParams, RunnerError> {
        let p = &self.params;
        let mut sq = SingleQubitParams::new(
            p.omega,
            p.lambda_plus,
            p.lambda_minus,
            p.bath.spectrum(),
        )
        .map_err(RunnerError::Numerical)?
        .with_dissipation_angles(p.theta_plus, p.phi_plus, p.theta_minus, p.phi_minus)
        .with_lamb_shift(p.lamb_shift);
        if self.experiment == ExperimentKind::SingleQubitGeneralDirection {
            sq = sq.with_measurement_direction(p.meas_theta, p.meas_phi);
        }
        Ok(sq)
    }

    pub fn two_qubit_params(&self) -> Result<TwoQubitParams, RunnerError> {
        let p = &self.params;
        TwoQubitParams::new(p.omega1, p.omega2, p.lambda_b, p.lambda_r, p.bath.gamma, p.dt)
            .map_err(RunnerError::Numerical)
    }

    pub fn file_prefix(&self) -> String {
        self.output
            .prefix
            .clone()
            .unwrap_or_else(|| format!("{}_{}", self.experiment.name(), self.run.name()))
    }
}

fn validation(key: &str, reason: String) -> RunnerError {
    RunnerError::Validation { key: key.to_string(), reason }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = parse_config(
            "experiment = \"single_qubit_feedback\"\nrun = \"iterate\"\n",
        )
        .unwrap();
        assert_eq!(cfg.params.lambda_plus, 1.0);
        assert_eq!(cfg.params.lambda_minus, 5.0);
        assert_eq!(cfg.params.dt, 0.05);
        assert_eq!(cfg.steps.seed, 12345);
        assert_eq!(cfg.params.bath.kind, BathKind::Flat);
    }

    #[test]
    fn scientific_notation_accepted() {
        let cfg = parse_config(
            "experiment = \"two_qubit_bell\"\nrun = \"stationary\"\n[params]\ndt = 1e-3\n",
        )
        .unwrap();
        assert_eq!(cfg.params.dt, 1e-3);
    }

    #[test]
    fn negative_coupling_rejected_with_key_name() {
        let err = parse_config(
            "experiment = \"single_qubit_feedback\"\nrun = \"iterate\"\n[params]\nlambda_plus = -2.0\n",
        )
        .unwrap_err();
        match err {
            RunnerError::Validation { key, .. } => assert_eq!(key, "params.lambda_plus"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = parse_config(
            "experiment = \"single_qubit_feedback\"\nrun = \"iterate\"\nbogus = 1\n",
        )
        .unwrap_err();
        assert!(matches!(err, RunnerError::Parse(_)));
    }

    #[test]
    fn parse_error_carries_line_info() {
        let err = parse_config("experiment = \"single_qubit_feedback\"\nrun = [broken\n").unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("line") || msg.contains('2'), "no position in: {msg}");
    }

    #[test]
    fn sweep_requires_section_and_known_params() {
        let err = parse_config("experiment = \"two_qubit_bell\"\nrun = \"sweep\"\n").unwrap_err();
        assert!(matches!(err, RunnerError::Validation { .. }));

        let err = parse_config(
            "experiment = \"two_qubit_bell\"\nrun = \"sweep\"\n[[sweep.axes]]\nparam = \"nope\"\nmin = 0.1\nmax = 1.0\ncount = 3\n",
        )
        .unwrap_err();
        match err {
            RunnerError::Validation { reason, .. } => assert!(reason.contains("nope")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fig2_inset_sweep_parses_to_grid_plan() {
        let cfg = parse_config(
            r#"
experiment = "two_qubit_bell"
run = "sweep"

[params]
lambda_b = 1.0
lambda_r = 5.0

[[sweep.axes]]
param = "dt"
min = 1e-3
max = 1.0
count = 5
spacing = "log"

[[sweep.axes]]
param = "lambda_ratio"
min = 1.0
max = 10.0
count = 4
"#,
        )
        .unwrap();
        let sweep = cfg.sweep.as_ref().unwrap();
        assert_eq!(sweep.axes.len(), 2);
        let dts = sweep.axes[0].values();
        assert_eq!(dts.len(), 5);
        assert!((dts[0] - 1e-3).abs() < 1e-12);
        assert!((dts[4] - 1.0).abs() < 1e-12);
        // log spacing: constant ratio
        let r0 = dts[1] / dts[0];
        let r1 = dts[4] / dts[3];
        assert!((r0 - r1).abs() < 1e-9);
        assert_eq!(sweep.axes[1].values().len(), 4);
    }

    #[test]
    fn log_axis_needs_positive_range() {
        let err = parse_config(
            "experiment = \"two_qubit_bell\"\nrun = \"sweep\"\n[[sweep.axes]]\nparam = \"dt\"\nmin = 0.0\nmax = 1.0\ncount = 3\nspacing = \"log\"\n",
        )
        .unwrap_err();
        assert!(matches!(err, RunnerError::Validation { .. }));
    }

    #[test]
    fn jump_click_probability_bounded() {
        let err = parse_config(
            "experiment = \"jump_limit\"\nrun = \"iterate\"\n[params]\njump_gamma = 3.0\ndt = 0.5\n",
        )
        .unwrap_err();
        assert!(matches!(err, RunnerError::Validation { .. }));
    }
}
