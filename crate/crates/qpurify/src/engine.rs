//! The core iteration: effective propagator assembly, repeated-measurement
//! fixed-point iteration, stationary-state extraction, the continuum-limit
//! observable equations, and the Zeno-limit generator.

use crate::error::{Error, Result};
use crate::hilbert::{pauli, pauli_pair, Axis, BlochVector, DensityMatrix};
use crate::linalg::{self, CMat, C64};
use crate::models::{Branch, SingleQubitParams};
use crate::superop::{devectorize, vectorize, MeasurementSet, SuperOperator};

pub const TRACE_PRESERVATION_TOL: f64 = 1e-10;
pub const STATIONARY_EIG_TOL: f64 = 1e-9;

/// A named Hermitian observable evaluated along iterations.
#[derive(Debug, Clone)]
pub struct Observable {
    pub name: String,
    pub operator: CMat,
}

impl Observable {
    pub fn new(name: impl Into<String>, operator: CMat) -> Self {
        Observable { name: name.into(), operator }
    }

    /// ⟨σˣ⟩, ⟨σʸ⟩, ⟨σᶻ⟩.
    pub fn single_qubit_set() -> Vec<Observable> {
        Axis::XYZ
            .iter()
            .map(|a| Observable::new(format!("s{}", a.label()), pauli(*a)))
            .collect()
    }

    /// The two-qubit correlators that stay nonzero under the Bell protocol:
    /// Σ^{xx}, Σ^{yy}, Σ^{zz}, Σ^{xy}, Σ^{yx}.
    pub fn bell_correlator_set() -> Vec<Observable> {
        [
            (Axis::X, Axis::X),
            (Axis::Y, Axis::Y),
            (Axis::Z, Axis::Z),
            (Axis::X, Axis::Y),
            (Axis::Y, Axis::X),
        ]
        .iter()
        .map(|(a, b)| {
            Observable::new(format!("S{}{}", a.label(), b.label()), pauli_pair(*a, *b))
        })
        .collect()
    }
}

/// Measurement set plus one conditioned propagator per outcome.
///
/// Each conditioned map may be a Lindblad exponential e^{𝓛_mΔt} or any
/// trace-preserving superoperator 𝓑_m(Δt).
#[derive(Debug, Clone)]
pub struct FeedbackProtocol {
    pub measurements: MeasurementSet,
    pub conditioned_props: Vec<SuperOperator>,
    pub dt: f64,
}

impl FeedbackProtocol {
    pub fn new(
        measurements: MeasurementSet,
        conditioned_props: Vec<SuperOperator>,
        dt: f64,
    ) -> Result<Self> {
        if conditioned_props.len() != measurements.len() {
            return Err(Error::DimensionMismatch {
                context: "conditioned propagators",
                expected: measurements.len(),
                got: conditioned_props.len(),
            });
        }
        for prop in &conditioned_props {
            let dev = prop.trace_preservation_deviation();
            if dev > TRACE_PRESERVATION_TOL {
                return Err(Error::NotTracePreserving { deviation: dev });
            }
        }
        Ok(FeedbackProtocol { measurements, conditioned_props, dt })
    }

    pub fn dim(&self) -> usize {
        self.conditioned_props[0].dim()
    }
}

/// 𝒫_eff(Δt) = Σ_m 𝓑_m(Δt) 𝓜_m.
#[derive(Debug, Clone)]
pub struct EffectivePropagator {
    pub superop: SuperOperator,
    pub dt: f64,
}

pub fn effective_propagator(protocol: &FeedbackProtocol) -> Result<EffectivePropagator> {
    let mut acc: Option<SuperOperator> = None;
    for m in 0..protocol.measurements.len() {
        let term = protocol.conditioned_props[m].compose(protocol.measurements.superop(m))?;
        acc = Some(match acc {
            None => term,
            Some(sum) => sum.add(&term)?,
        });
    }
    let superop = acc.expect("measurement sets are non-empty");
    let dev = superop.trace_preservation_deviation();
    if dev > TRACE_PRESERVATION_TOL {
        return Err(Error::NotTracePreserving { deviation: dev });
    }
    Ok(EffectivePropagator { superop, dt: protocol.dt })
}

/// Time series of states and observables produced by [`iterate`].
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub observables: Vec<(String, Vec<f64>)>,
}

/// Apply the fixed-point iteration ρ(t+Δt) = 𝒫_eff(Δt) ρ(t) for n steps,
/// validating every intermediate state and sampling the observables after
/// each full step.
pub fn iterate(
    propagator: &EffectivePropagator,
    rho0: &DensityMatrix,
    n_steps: usize,
    observables: &[Observable],
) -> Result<IterationRecord> {
    let conv = propagator.superop.convention().clone();
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut series: Vec<(String, Vec<f64>)> = observables
        .iter()
        .map(|o| (o.name.clone(), Vec::with_capacity(n_steps + 1)))
        .collect();
    let mut v = vectorize(rho0, &conv)?;
    let mut state = rho0.clone();
    for step in 0..=n_steps {
        times.push(step as f64 * propagator.dt);
        for (k, obs) in observables.iter().enumerate() {
            series[k].1.push(state.expectation(&obs.operator));
        }
        states.push(state.clone());
        if step < n_steps {
            v = propagator.superop.apply_vec(&v);
            state = DensityMatrix::new(devectorize(&v, &conv))?;
        }
    }
    Ok(IterationRecord { times, states, observables: series })
}

/// Fixed point of the effective propagator.
#[derive(Debug, Clone)]
pub struct StationaryState {
    pub rho: DensityMatrix,
    pub eigenvalue: C64,
    /// More than one eigenvalue within tolerance of one: the returned state
    /// is one representative of a degenerate fixed space.
    pub degenerate: bool,
}

/// Trace-normalized eigenvector of 𝒫_eff with eigenvalue one, Hermitized
/// before validation; flags a degenerate fixed space.
pub fn stationary_state(propagator: &EffectivePropagator) -> Result<StationaryState> {
    stationary_state_of_superop(&propagator.superop)
}

pub fn stationary_state_of_superop(superop: &SuperOperator) -> Result<StationaryState> {
    let one = C64::new(1.0, 0.0);
    let eigs = linalg::eigenvalues(superop.matrix())?;
    let mut closest = eigs[0];
    let mut best = (closest - one).norm();
    let mut near_one = 0usize;
    for e in &eigs {
        let d = (e - one).norm();
        if d < best {
            best = d;
            closest = *e;
        }
        if d <= STATIONARY_EIG_TOL {
            near_one += 1;
        }
    }
    if best > STATIONARY_EIG_TOL {
        return Err(Error::NoStationaryEigenvalue { closest, tol: STATIONARY_EIG_TOL });
    }
    let v = linalg::eigenvector_for(superop.matrix(), closest)?;
    // residual check against exact eigenvalue one
    let pv = superop.matrix().dot(&v);
    let residual = (0..v.len()).map(|k| (pv[k] - v[k]).norm()).fold(0.0f64, f64::max);
    if residual > STATIONARY_EIG_TOL {
        return Err(Error::NoStationaryEigenvalue { closest, tol: STATIONARY_EIG_TOL });
    }
    let conv = superop.convention();
    let raw = devectorize(&v, conv);
    // eigenvectors carry arbitrary complex scale: normalize by the trace,
    // then Hermitize
    let tr = linalg::trace(&raw);
    if tr.norm() < 1e-12 {
        return Err(Error::NoStationaryEigenvalue { closest, tol: STATIONARY_EIG_TOL });
    }
    let scaled = raw.mapv(|z| z / tr);
    let hermitized = (&scaled + &linalg::dag(&scaled)).mapv(|z| 0.5 * z);
    let rho = DensityMatrix::new(hermitized)?;
    Ok(StationaryState { rho, eigenvalue: closest, degenerate: near_one > 1 })
}

/// One step of the closed-form ⟨σˣ⟩ iteration for σˣ measurements with a
/// flat bath: an affine map in ⟨σˣ⟩ whose coefficients are the conditioned
/// coherence survival factors, rotated by ΩΔt. ⟨σᶻ⟩ stays pinned at zero.
pub fn bloch_iteration_step(params: &SingleQubitParams, dt: f64, sx: f64) -> Result<BlochVector> {
    if !params.bath.is_flat() {
        return Err(Error::FlatBathRequired);
    }
    if sx.abs() > 1.0 {
        return Err(Error::InvalidParameter {
            name: "sx",
            reason: format!("|<sigma_x>| must be <= 1, got {sx}"),
        });
    }
    let gamma = params.bath.gamma(0.0);
    let survive = |branch: Branch| -> f64 {
        let lam_sq = params.lambda(branch).powi(2);
        let theta = params.theta(branch);
        (-gamma * dt * lam_sq * (3.0 + (2.0 * theta).cos()) / 2.0).exp()
    };
    let a_plus = survive(Branch::Plus);
    let a_minus = survive(Branch::Minus);
    let drift = 0.5 * (a_plus - a_minus);
    let contraction = 0.5 * (a_plus + a_minus);
    let amplitude = drift + contraction * sx;
    let x = (params.omega * dt).cos() * amplitude;
    let y = (params.omega * dt).sin() * amplitude;
    BlochVector::new(x, y, 0.0)
}

/// Right-hand side of the continuum limit ⟨σ̇ˣ⟩ = −decay·⟨σˣ⟩ + drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumRhs {
    pub drift: f64,
    pub decay: f64,
}

impl ContinuumRhs {
    pub fn stationary(&self) -> f64 {
        self.drift / self.decay
    }
}

/// Coefficients of the only observable equation that survives Δt → 0 under
/// σˣ measurements:
/// decay = (γ/4){λ₋²[3+cos2θ₋] + λ₊²[3+cos2θ₊]},
/// drift = (γ/4){λ₋²[3+cos2θ₋] − λ₊²[3+cos2θ₊]}.
pub fn continuum_ode_rhs(params: &SingleQubitParams) -> Result<ContinuumRhs> {
    if !params.bath.is_flat() {
        return Err(Error::FlatBathRequired);
    }
    let gamma = params.bath.gamma(0.0);
    let k_plus = params.lambda_plus.powi(2) * (3.0 + (2.0 * params.theta_plus).cos());
    let k_minus = params.lambda_minus.powi(2) * (3.0 + (2.0 * params.theta_minus).cos());
    Ok(ContinuumRhs {
        drift: gamma / 4.0 * (k_minus - k_plus),
        decay: gamma / 4.0 * (k_minus + k_plus),
    })
}

/// Integrate the scalar linear ODE with classical fixed-step RK4; returns
/// (t, ⟨σˣ⟩) samples including t = 0.
pub fn integrate_continuum(rhs: &ContinuumRhs, sx0: f64, t_final: f64, step: f64) -> Vec<(f64, f64)> {
    assert!(step > 0.0, "integration step must be positive");
    let f = |x: f64| -> f64 { -rhs.decay * x + rhs.drift };
    let n = (t_final / step).ceil() as usize;
    let mut out = Vec::with_capacity(n + 1);
    let mut x = sx0;
    out.push((0.0, x));
    for k in 0..n {
        let h = step.min(t_final - k as f64 * step);
        if h <= 0.0 {
            break;
        }
        let k1 = f(x);
        let k2 = f(x + 0.5 * h * k1);
        let k3 = f(x + 0.5 * h * k2);
        let k4 = f(x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push(((k + 1) as f64 * step.min(t_final), x));
    }
    out
}

/// Squared stationary Bloch modulus for a general measurement direction,
/// [λ₊²f(θ,θ₊) − λ₋²f(θ,θ₋)]² / [λ₊²f(θ,θ₊) + λ₋²f(θ,θ₋)]² with
/// f(θ,θᵢ) = 5 − cos2θᵢ − cos2θ[1 + 3cos2θᵢ]; independent of φ and φ_±.
pub fn stationary_bloch_modulus_sq(params: &SingleQubitParams) -> Result<f64> {
    if !params.bath.is_flat() {
        return Err(Error::FlatBathRequired);
    }
    let f = |theta_i: f64| -> f64 {
        5.0 - (2.0 * theta_i).cos()
            - (2.0 * params.meas_theta).cos() * (1.0 + 3.0 * (2.0 * theta_i).cos())
    };
    let plus = params.lambda_plus.powi(2) * f(params.theta_plus);
    let minus = params.lambda_minus.powi(2) * f(params.theta_minus);
    let denom = plus + minus;
    if denom.abs() < 1e-300 {
        return Err(Error::InvalidParameter {
            name: "lambda",
            reason: "both effective damping weights vanish".into(),
        });
    }
    Ok(((plus - minus) / denom).powi(2))
}

/// |r̄| of the stationary state, the square root of
/// [`stationary_bloch_modulus_sq`].
pub fn stationary_bloch_modulus(params: &SingleQubitParams) -> Result<f64> {
    Ok(stationary_bloch_modulus_sq(params)?.sqrt())
}

/// Zeno-limit generator ΠGΠ with Π = Σ𝓜_m and G = Σ𝓛_m𝓜_m: generates the
/// continuum-limit evolution ρ(t) = e^{ΠGΠ t} Π ρ₀ of the projected
/// observables (the full iteration has no master-equation limit).
pub fn continuum_generator(
    measurements: &MeasurementSet,
    generators: &[SuperOperator],
) -> Result<SuperOperator> {
    if generators.len() != measurements.len() {
        return Err(Error::DimensionMismatch {
            context: "continuum generators",
            expected: measurements.len(),
            got: generators.len(),
        });
    }
    let projector = measurements.averaging_superop();
    let mut g: Option<SuperOperator> = None;
    for (m, generator) in generators.iter().enumerate() {
        let term = generator.compose(measurements.superop(m))?;
        g = Some(match g {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
    }
    let g = g.expect("non-empty measurement set");
    projector.compose(&g)?.compose(&projector)
}
