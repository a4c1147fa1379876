//! The quantum Zeno effect as a special case of the effective propagator.
//!
//! Without dissipation or feedback, repeated σˣ measurements freeze the
//! measurement eigenstates: the n-fold propagator at fixed total time
//! converges to the single ideal projection as Δt → 0.
//!
//! Run with: cargo run --example zeno_freeze

use qpurify::hilbert::{plus_ket, DensityMatrix};
use qpurify::linalg::max_abs_diff;
use qpurify::models::{zeno_propagator, zeno_propagator_power};

fn main() -> qpurify::Result<()> {
    let omega = 1.0;
    let total_time = 1.0;

    println!("||P^n(t/n) - P(0)|| at Omega t = {total_time} (max-entry norm):");
    println!("{:>8} {:>14} {:>22}", "n", "deviation", "cos^(n-1)(Omega t/n)");
    let frozen = zeno_propagator(omega, 0.0);
    for exponent in 0..=6 {
        let n = 10u64.pow(exponent);
        let dt = total_time / n as f64;
        let powered = zeno_propagator(omega, dt).power(n);
        let dev = max_abs_diff(powered.matrix(), frozen.matrix());
        let survival = (omega * dt).cos().powi(n as i32 - 1);
        println!("{n:>8} {dev:>14.3e} {survival:>22.12}");
        // closed-form cross-check of the power
        let closed = zeno_propagator_power(omega, dt, n);
        assert!(max_abs_diff(powered.matrix(), closed.matrix()) < 1e-9);
    }

    let plus = DensityMatrix::pure(&plus_ket())?;
    let after = frozen.apply(&plus)?;
    println!(
        "\n|+><+| after the ideal projection: deviation {:.2e} (state frozen)",
        max_abs_diff(after.matrix(), plus.matrix())
    );

    // a coarsely measured qubit instead rotates and loses coherence
    let coarse = zeno_propagator(omega, std::f64::consts::FRAC_PI_2);
    let mut rho = plus;
    print!("coarse measurement (Omega dt = pi/2): <sx> over 4 steps:");
    for _ in 0..4 {
        rho = coarse.apply(&rho)?;
        print!(" {:.4}", rho.bloch()?.x);
    }
    println!();
    Ok(())
}
