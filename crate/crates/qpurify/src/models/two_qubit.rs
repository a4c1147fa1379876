//! Two qubits with local splittings ω₁, ω₂ measured by a non-demolition
//! Bell projection; the measurement outcome switches the strength λ_B or
//! λ_R of a common transverse coupling (σˣ₁ + σˣ₂) ⊗ B to a flat
//! (high-temperature) bath.

use crate::engine::FeedbackProtocol;
use crate::error::{Error, Result};
use crate::hilbert::{pauli_pair, Axis};
use crate::linalg::{identity, C64};
use crate::superop::{
    liouvillian_from_rates, MeasurementSet, SuperOperator, VectorizationConvention,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellBranch {
    /// Outcome "in the Bell state": weak damping λ_B.
    Bell,
    /// Remainder outcome: strong damping λ_R.
    Rest,
}

#[derive(Debug, Clone, Copy)]
pub struct TwoQubitParams {
    pub omega1: f64,
    pub omega2: f64,
    /// Coupling applied after a Bell outcome.
    pub lambda_b: f64,
    /// Coupling applied after the remainder outcome.
    pub lambda_r: f64,
    /// Flat bath rate γ.
    pub gamma: f64,
    /// Measurement interval Δt.
    pub dt: f64,
}

impl TwoQubitParams {
    pub fn new(omega1: f64, omega2: f64, lambda_b: f64, lambda_r: f64, gamma: f64, dt: f64) -> Result<Self> {
        let p = TwoQubitParams { omega1, omega2, lambda_b, lambda_r, gamma, dt };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda_b < 0.0 || !self.lambda_b.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda_b",
                reason: format!("must be finite and >= 0, got {}", self.lambda_b),
            });
        }
        if self.lambda_r < 0.0 || !self.lambda_r.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda_r",
                reason: format!("must be finite and >= 0, got {}", self.lambda_r),
            });
        }
        if self.dt < 0.0 || !self.dt.is_finite() {
            return Err(Error::InvalidParameter {
                name: "dt",
                reason: format!("must be finite and >= 0, got {}", self.dt),
            });
        }
        if self.gamma < 0.0 || !self.gamma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "gamma",
                reason: format!("must be finite and >= 0, got {}", self.gamma),
            });
        }
        if !self.omega1.is_finite() || !self.omega2.is_finite() {
            return Err(Error::InvalidParameter {
                name: "omega",
                reason: "splittings must be finite".into(),
            });
        }
        Ok(())
    }

    pub fn lambda(&self, branch: BellBranch) -> f64 {
        match branch {
            BellBranch::Bell => self.lambda_b,
            BellBranch::Rest => self.lambda_r,
        }
    }
}

/// {M_B, M_R}: the Bell projector M_B = ¼(1 + σˣσˣ − σʸσʸ + σᶻσᶻ) and its
/// complement M_R = 1 − M_B.
pub fn bell_measurement_set() -> Result<MeasurementSet> {
    let conv = VectorizationConvention::two_qubits();
    let mut m_bell = identity(4);
    m_bell += &pauli_pair(Axis::X, Axis::X);
    m_bell -= &pauli_pair(Axis::Y, Axis::Y);
    m_bell += &pauli_pair(Axis::Z, Axis::Z);
    let m_bell = m_bell.mapv(|z| 0.25 * z);
    let m_rest = identity(4) - &m_bell;
    MeasurementSet::new(vec![m_bell, m_rest], vec!["B".into(), "R".into()], &conv, true)
}

/// Secular generator of the conditioned two-qubit evolution in the flat
/// bath limit: populations hop between states differing in one excitation
/// at rate λ²γ; every coherence decays at 2λ²γ, carries the free phase of
/// its energy difference, and pairs of coherences with equal transition
/// frequencies couple to each other with weight λ²γ.
pub fn two_qubit_liouvillian(p: &TwoQubitParams, branch: BellBranch) -> Result<SuperOperator> {
    p.validate()?;
    let conv = VectorizationConvention::two_qubits();
    let g = p.lambda(branch).powi(2) * p.gamma;

    // populations in basis order (00, 01, 10, 11); single-flip hops only
    let pop = ndarray::array![
        [-2.0 * g, g, g, 0.0],
        [g, -2.0 * g, 0.0, g],
        [g, 0.0, -2.0 * g, g],
        [0.0, g, g, -2.0 * g]
    ];

    // energies with |0> the single-qubit ground state
    let energy = [
        -0.5 * (p.omega1 + p.omega2),
        0.5 * (-p.omega1 + p.omega2),
        0.5 * (p.omega1 - p.omega2),
        0.5 * (p.omega1 + p.omega2),
    ];
    let mut rates = Vec::with_capacity(12);
    for &(i, j) in conv.slots().iter().skip(4) {
        let phase = -(energy[i] - energy[j]);
        rates.push(C64::new(-2.0 * g, phase));
    }
    let w = C64::new(g, 0.0);
    let couplings = [
        ((0, 1), (2, 3), w),
        ((2, 3), (0, 1), w),
        ((0, 2), (1, 3), w),
        ((1, 3), (0, 2), w),
        ((1, 0), (3, 2), w),
        ((3, 2), (1, 0), w),
        ((2, 0), (3, 1), w),
        ((3, 1), (2, 0), w),
    ];
    liouvillian_from_rates(&pop, &rates, &couplings, &conv)
}

/// 𝒫_eff(Δt) = e^{𝓛_B Δt} 𝓜_B + e^{𝓛_R Δt} 𝓜_R as a protocol.
pub fn bell_protocol(p: &TwoQubitParams) -> Result<FeedbackProtocol> {
    let measurements = bell_measurement_set()?;
    let props = vec![
        two_qubit_liouvillian(p, BellBranch::Bell)?.expm(p.dt),
        two_qubit_liouvillian(p, BellBranch::Rest)?.expm(p.dt),
    ];
    FeedbackProtocol::new(measurements, props, p.dt)
}
