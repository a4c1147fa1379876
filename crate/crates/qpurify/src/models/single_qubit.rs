//! Single qubit with level splitting Ω, projective measurement along an
//! arbitrary direction, and outcome-conditioned coupling to a common bath.
//!
//! The conditioned system-bath coupling is λ_± (n_± · σ) ⊗ B; in the
//! Born-Markov-secular approximation the resulting generators depend on the
//! dissipation directions only through θ_± and decouple populations from
//! coherences in the σᶻ eigenbasis.

use crate::bath::BathSpectrum;
use crate::engine::FeedbackProtocol;
use crate::error::{Error, Result};
use crate::hilbert::direction_operator;
use crate::linalg::{identity, C64};
use crate::superop::{
    liouvillian_from_rates, MeasurementSet, SuperOperator, VectorizationConvention,
};

/// Which measurement outcome the conditioned evolution follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
pub struct SingleQubitParams {
    /// Level splitting of H = (Ω/2)σᶻ, in units of the reference rate.
    pub omega: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Dissipation direction polar angles; θ = 0 is pure dephasing.
    pub theta_plus: f64,
    pub theta_minus: f64,
    /// Azimuthal dissipation angles. The secular generators do not depend on
    /// them; they are kept so that the invariance is testable.
    pub phi_plus: f64,
    pub phi_minus: f64,
    /// Measurement direction.
    pub meas_theta: f64,
    pub meas_phi: f64,
    pub bath: BathSpectrum,
    /// Im(σ_{+Ω} − σ_{−Ω}), the caller-supplied odd bath transform
    /// difference entering the coherence phases; zero in the wide-band limit.
    pub lamb_shift: f64,
}

impl SingleQubitParams {
    /// Measurement along σˣ and transverse dissipation (θ_± = π/2).
    pub fn new(omega: f64, lambda_plus: f64, lambda_minus: f64, bath: BathSpectrum) -> Result<Self> {
        let p = SingleQubitParams {
            omega,
            lambda_plus,
            lambda_minus,
            theta_plus: std::f64::consts::FRAC_PI_2,
            theta_minus: std::f64::consts::FRAC_PI_2,
            phi_plus: 0.0,
            phi_minus: 0.0,
            meas_theta: std::f64::consts::FRAC_PI_2,
            meas_phi: 0.0,
            bath,
            lamb_shift: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_dissipation_angles(mut self, theta_plus: f64, phi_plus: f64, theta_minus: f64, phi_minus: f64) -> Self {
        self.theta_plus = theta_plus;
        self.phi_plus = phi_plus;
        self.theta_minus = theta_minus;
        self.phi_minus = phi_minus;
        self
    }

    pub fn with_measurement_direction(mut self, theta: f64, phi: f64) -> Self {
        self.meas_theta = theta;
        self.meas_phi = phi;
        self
    }

    pub fn with_lamb_shift(mut self, lamb_shift: f64) -> Self {
        self.lamb_shift = lamb_shift;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda_plus < 0.0 || !self.lambda_plus.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda_plus",
                reason: format!("must be finite and >= 0, got {}", self.lambda_plus),
            });
        }
        if self.lambda_minus < 0.0 || !self.lambda_minus.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda_minus",
                reason: format!("must be finite and >= 0, got {}", self.lambda_minus),
            });
        }
        for (name, v) in [
            ("omega", self.omega),
            ("theta_plus", self.theta_plus),
            ("theta_minus", self.theta_minus),
            ("phi_plus", self.phi_plus),
            ("phi_minus", self.phi_minus),
            ("meas_theta", self.meas_theta),
            ("meas_phi", self.meas_phi),
            ("lamb_shift", self.lamb_shift),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter { name, reason: format!("must be finite, got {v}") });
            }
        }
        Ok(())
    }

    pub fn lambda(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.lambda_plus,
            Branch::Minus => self.lambda_minus,
        }
    }

    pub fn theta(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.theta_plus,
            Branch::Minus => self.theta_minus,
        }
    }
}

/// Projective measurement of n·σ along (θ, φ): M_± = ½(1 ± n·σ).
pub fn measurement_set_general(theta: f64, phi: f64) -> Result<MeasurementSet> {
    let conv = VectorizationConvention::single_qubit();
    let n_sigma = direction_operator(theta, phi);
    let m_plus = (identity(2) + &n_sigma).mapv(|z| 0.5 * z);
    let m_minus = (identity(2) - &n_sigma).mapv(|z| 0.5 * z);
    MeasurementSet::new(vec![m_plus, m_minus], vec!["+".into(), "-".into()], &conv, true)
}

/// Born-Markov-secular generator of the conditioned evolution.
///
/// Populations relax by the transverse coupling at the bath rates γ_{±Ω}
/// (decay into the ground state |0⟩ at γ_{+Ω}); coherences pick up the free
/// phase ±iΩ, the Lamb-shift correction, and decay at half the dephasing
/// rate of [`dephasing_rate`].
pub fn single_qubit_liouvillian(p: &SingleQubitParams, branch: Branch) -> Result<SuperOperator> {
    p.validate()?;
    let conv = VectorizationConvention::single_qubit();
    let lam_sq = p.lambda(branch).powi(2);
    let theta = p.theta(branch);
    let s2 = theta.sin().powi(2);
    let gamma_up = p.bath.gamma(p.omega);
    let gamma_down = p.bath.gamma(-p.omega);

    let absorb = lam_sq * s2 * gamma_down; // |0> -> |1|
    let emit = lam_sq * s2 * gamma_up; // |1> -> |0>
    let pop = ndarray::array![[-absorb, emit], [absorb, -emit]];

    let gamma_deph = dephasing_rate(p, branch);
    let phase = p.omega + 0.5 * lam_sq * s2 * p.lamb_shift;
    let rate01 = C64::new(-0.5 * gamma_deph, phase);
    let rate10 = C64::new(-0.5 * gamma_deph, -phase);
    liouvillian_from_rates(&pop, &[rate01, rate10], &[], &conv)
}

/// Γ_± = λ_±² {4 cos²θ_± γ₀ + sin²θ_± [γ_{+Ω} + γ_{−Ω}]}, the decay rate of
/// |ρ₀₁|².
pub fn dephasing_rate(p: &SingleQubitParams, branch: Branch) -> f64 {
    let lam_sq = p.lambda(branch).powi(2);
    let theta = p.theta(branch);
    let c2 = theta.cos().powi(2);
    let s2 = theta.sin().powi(2);
    lam_sq * (4.0 * c2 * p.bath.gamma(0.0) + s2 * (p.bath.gamma(p.omega) + p.bath.gamma(-p.omega)))
}

/// Full protocol: measure along (meas_theta, meas_phi), then evolve with the
/// outcome's conditioned generator for dt.
pub fn feedback_protocol(p: &SingleQubitParams, dt: f64) -> Result<FeedbackProtocol> {
    let measurements = measurement_set_general(p.meas_theta, p.meas_phi)?;
    let props = vec![
        single_qubit_liouvillian(p, Branch::Plus)?.expm(dt),
        single_qubit_liouvillian(p, Branch::Minus)?.expm(dt),
    ];
    FeedbackProtocol::new(measurements, props, dt)
}
