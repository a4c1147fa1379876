//! Thermal bath spectral functions.
//!
//! The qubit couples to a bosonic reservoir through B = Σ_k (h_k b_k +
//! h_k* b_k†); dissipation rates are read off the even Fourier transform
//! γ_ω of the bath correlation function. Two shapes are supported: an ohmic
//! spectral density J(ω) = 2αω e^{−ω/ω_c} at inverse temperature β, and the
//! flat high-temperature/wide-band limit where γ_ω is a single constant.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BathSpectrum {
    /// Ohmic coupling density with exponential cutoff, thermal occupation at
    /// inverse temperature β.
    OhmicThermal { alpha: f64, omega_c: f64, beta: f64 },
    /// γ_ω = γ for all ω (high-temperature, wide-band limit).
    Flat { gamma: f64 },
}

impl BathSpectrum {
    pub fn flat(gamma: f64) -> Self {
        BathSpectrum::Flat { gamma }
    }

    pub fn ohmic(alpha: f64, omega_c: f64, beta: f64) -> Self {
        BathSpectrum::OhmicThermal { alpha, omega_c, beta }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, BathSpectrum::Flat { .. })
    }

    /// J(ω) = 2αω e^{−|ω|/ω_c}, continued to negative frequencies as an odd
    /// function.
    pub fn spectral_density(&self, omega: f64) -> Result<f64> {
        match self {
            BathSpectrum::Flat { .. } => Err(Error::NoSpectralDensity),
            BathSpectrum::OhmicThermal { alpha, omega_c, .. } => {
                Ok(2.0 * alpha * omega * (-omega.abs() / omega_c).exp())
            }
        }
    }

    /// γ_ω = J(ω)[1 + n_B(ω)], with the ω → 0 limit γ₀ = 2α/β taken
    /// analytically.
    pub fn gamma(&self, omega: f64) -> f64 {
        match self {
            BathSpectrum::Flat { gamma } => *gamma,
            BathSpectrum::OhmicThermal { alpha, omega_c, beta } => {
                let x = beta * omega;
                let envelope = (-omega.abs() / omega_c).exp();
                // gamma = 2 alpha * omega e^{-|w|/wc} e^x/(e^x - 1)
                //       = (2 alpha / beta) e^{-|w|/wc} * x/(1 - e^{-x});
                // the expm1 form keeps full relative precision for x of
                // either sign, so the KMS ratio survives down to e^{-700}
                let thermal = if x.abs() < 1e-5 {
                    // x/(1 - e^{-x}) = 1 + x/2 + x^2/12 + O(x^4)
                    1.0 + 0.5 * x + x * x / 12.0
                } else {
                    x / (-(-x).exp_m1())
                };
                (2.0 * alpha / beta) * envelope * thermal
            }
        }
    }

    /// Stationary ⟨σ̄ᶻ⟩ = (γ_{−Ω} − γ_{+Ω})/(γ_{−Ω} + γ_{+Ω}) of level
    /// splitting Ω; equals −tanh(βΩ/2) when the KMS condition holds, and
    /// zero for the flat spectrum (completely mixed state).
    pub fn thermal_sigma_z(&self, omega0: f64) -> Result<f64> {
        let up = self.gamma(omega0);
        let down = self.gamma(-omega0);
        let total = up + down;
        if total <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega0",
                reason: "both bath rates vanish".into(),
            });
        }
        Ok((down - up) / total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn spectral_density_vanishes_at_zero_and_is_odd() {
        let bath = BathSpectrum::ohmic(0.3, 10.0, 2.0);
        assert_relative_eq!(bath.spectral_density(0.0).unwrap(), 0.0);
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..10 {
            let w = rng.random_range(0.01..30.0);
            assert_relative_eq!(
                bath.spectral_density(-w).unwrap(),
                -bath.spectral_density(w).unwrap(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn spectral_density_at_cutoff() {
        let (alpha, wc) = (0.7, 3.0);
        let bath = BathSpectrum::ohmic(alpha, wc, 1.0);
        assert_relative_eq!(
            bath.spectral_density(wc).unwrap(),
            2.0 * alpha * wc * (-1.0f64).exp(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn flat_bath_has_no_spectral_density() {
        assert!(BathSpectrum::flat(1.0).spectral_density(1.0).is_err());
    }

    #[test]
    fn flat_gamma_is_constant() {
        let bath = BathSpectrum::flat(0.8);
        for w in [-5.0, -0.1, 0.0, 0.3, 12.0] {
            assert_relative_eq!(bath.gamma(w), 0.8);
        }
    }

    #[test]
    fn kms_condition_holds() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..20 {
            let beta = rng.random_range(0.05..5.0);
            let w = rng.random_range(0.01..10.0);
            let bath = BathSpectrum::ohmic(0.4, 20.0, beta);
            let ratio = bath.gamma(-w) / bath.gamma(w);
            assert_relative_eq!(ratio, (-beta * w).exp(), max_relative = 1e-10);
        }
    }

    #[test]
    fn gamma_zero_frequency_limit() {
        let (alpha, beta) = (0.25, 1.7);
        let bath = BathSpectrum::ohmic(alpha, 50.0, beta);
        let analytic = 2.0 * alpha / beta;
        assert_relative_eq!(bath.gamma(0.0), analytic, max_relative = 1e-12);
        // series oracle: evaluate just off zero
        let kbt = 1.0 / beta;
        assert_relative_eq!(bath.gamma(1e-8 * kbt), analytic, max_relative = 1e-6);
        // continuity with a small finite step
        assert_relative_eq!(bath.gamma(1e-6), bath.gamma(0.0), max_relative = 1e-6);
    }

    #[test]
    fn gamma_negative_frequency_freezes_out() {
        let bath = BathSpectrum::ohmic(0.5, 100.0, 4.0);
        // beta*omega = 40: absorption from the vacuum is exponentially small
        assert!(bath.gamma(-10.0) < 1e-12 * bath.gamma(10.0));
        assert!(bath.gamma(-10.0) >= 0.0);
    }

    #[test]
    fn thermal_sigma_z_matches_tanh() {
        let beta = 2.0;
        let omega = 1.0;
        let bath = BathSpectrum::ohmic(0.3, 100.0, beta);
        assert_relative_eq!(
            bath.thermal_sigma_z(omega).unwrap(),
            -(beta * omega / 2.0).tanh(),
            max_relative = 1e-10
        );
        // beta*Omega = 2 -> -tanh(1)
        let bath2 = BathSpectrum::ohmic(0.3, 100.0, 2.0);
        assert_relative_eq!(bath2.thermal_sigma_z(1.0).unwrap(), -1.0f64.tanh(), max_relative = 1e-10);
    }

    #[test]
    fn thermal_sigma_z_flat_is_mixed() {
        assert_relative_eq!(BathSpectrum::flat(2.0).thermal_sigma_z(1.0).unwrap(), 0.0);
    }

    #[test]
    fn thermal_sigma_z_zero_temperature_is_ground_state() {
        // large beta*Omega: the qubit relaxes to |0> with <sigma_z> = -1
        let bath = BathSpectrum::ohmic(0.3, 1000.0, 50.0);
        assert_relative_eq!(bath.thermal_sigma_z(1.0).unwrap(), -1.0, epsilon = 1e-10);
    }

    #[test]
    fn thermal_sigma_z_stays_in_range() {
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..30 {
            let beta = rng.random_range(0.01..20.0);
            let w = rng.random_range(0.01..10.0);
            let bath = BathSpectrum::ohmic(0.4, 30.0, beta);
            let z = bath.thermal_sigma_z(w).unwrap();
            assert!((-1.0..=0.0).contains(&z), "sigma_z = {z} out of range");
        }
    }
}
