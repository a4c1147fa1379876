//! Thermal bath spectra and plain relaxation (no measurements, no feedback).
//!
//! The ohmic bath obeys the KMS condition, so the conditioned generators
//! thermalize the populations; at high temperature the spectrum flattens
//! and the stationary state degrades to the completely mixed one.
//!
//! Run with: cargo run --example thermal_relaxation

use qpurify::bath::BathSpectrum;
use qpurify::engine::stationary_state_of_superop;
use qpurify::models::{dephasing_rate, single_qubit_liouvillian, Branch, SingleQubitParams};

fn main() -> qpurify::Result<()> {
    let omega = 1.0;
    println!("ohmic bath, alpha = 0.2, omega_c = 50:");
    println!(
        "{:>10} {:>12} {:>12} {:>12} {:>14} {:>14}",
        "beta", "gamma(+O)", "gamma(-O)", "gamma(0)", "<sz> thermal", "-tanh(bO/2)"
    );
    for beta in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let bath = BathSpectrum::ohmic(0.2, 50.0, beta);
        println!(
            "{:>10.2} {:>12.5} {:>12.5} {:>12.5} {:>14.6} {:>14.6}",
            beta,
            bath.gamma(omega),
            bath.gamma(-omega),
            bath.gamma(0.0),
            bath.thermal_sigma_z(omega)?,
            -(beta * omega / 2.0).tanh()
        );
    }

    println!("\nstationary populations under the conditioned generator (detailed balance):");
    for beta in [0.5, 2.0] {
        let bath = BathSpectrum::ohmic(0.2, 50.0, beta);
        let params = SingleQubitParams::new(omega, 1.0, 1.0, bath)?;
        let generator = single_qubit_liouvillian(&params, Branch::Plus)?;
        let st = stationary_state_of_superop(&generator.expm(400.0))?;
        let rho = st.rho.matrix();
        println!(
            "  beta = {beta}: rho11/rho00 = {:.6}  vs  e^(-beta Omega) = {:.6}",
            rho[[1, 1]].re / rho[[0, 0]].re,
            (-beta * omega).exp()
        );
    }

    println!("\ndephasing rates for mixed dissipation directions (flat bath, gamma = 1):");
    println!("{:>12} {:>14}", "theta", "Gamma");
    for theta in [0.0, 0.5, 1.0, std::f64::consts::FRAC_PI_2] {
        let params = SingleQubitParams::new(omega, 1.0, 1.0, BathSpectrum::flat(1.0))?
            .with_dissipation_angles(theta, 0.0, theta, 0.0);
        println!("{:>12.4} {:>14.6}", theta, dephasing_rate(&params, Branch::Plus));
    }
    println!("(theta = 0 is pure dephasing at 4 lambda^2 gamma_0; theta = pi/2 relaxes at 2 lambda^2 gamma)");
    Ok(())
}
