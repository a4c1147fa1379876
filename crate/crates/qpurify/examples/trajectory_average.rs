//! Monte-Carlo unraveling against the effective propagator.
//!
//! Averages of 10^2, 10^3, and 10^4 Born-rule trajectories converge onto
//! the deterministic fixed-point iteration; the standard error shrinks as
//! 1/sqrt(n).
//!
//! Run with: cargo run --release --example trajectory_average

use qpurify::bath::BathSpectrum;
use qpurify::engine::{effective_propagator, iterate, Observable};
use qpurify::hilbert::{pauli, plus_ket, Axis, DensityMatrix};
use qpurify::models::{feedback_protocol, SingleQubitParams};
use qpurify::trajectories::{run_ensemble, TrajectoryConfig};

fn main() -> qpurify::Result<()> {
    let params = SingleQubitParams::new(5.0, 1.0, 5.0, BathSpectrum::flat(1.0))?;
    let dt = 0.05;
    let n_steps = 20;
    let seed = 7;
    let protocol = feedback_protocol(&params, dt)?;
    let rho0 = DensityMatrix::pure(&plus_ket())?;
    let obs = vec![Observable::new("sx", pauli(Axis::X))];

    let eff = effective_propagator(&protocol)?;
    let exact = iterate(&eff, &rho0, n_steps, &obs)?;

    println!("ensemble mean of <sx> vs the effective propagator (seed {seed}):");
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "t*gamma", "effective", "n=100", "n=1000", "n=10000");
    let mut ensembles = Vec::new();
    for n_traj in [100, 1000, 10_000] {
        let cfg = TrajectoryConfig::new(protocol.clone(), rho0.clone(), n_steps, n_traj, seed)?;
        ensembles.push(run_ensemble(&cfg, &obs, true)?);
    }
    for k in 0..=n_steps {
        println!(
            "{:>8.2} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            exact.times[k],
            exact.observables[0].1[k],
            ensembles[0].mean_observables[0].1[k],
            ensembles[1].mean_observables[0].1[k],
            ensembles[2].mean_observables[0].1[k],
        );
    }

    println!("\nstandard error at the final time:");
    for (ens, n) in ensembles.iter().zip([100, 1000, 10_000]) {
        let se = ens.stderr_observables[0].1[n_steps];
        println!("  n = {n:>6}: stderr = {se:.5}   (stderr * sqrt(n) = {:.4})", se * (n as f64).sqrt());
    }

    let z_worst = (0..=n_steps)
        .filter(|&k| ensembles[2].stderr_observables[0].1[k] > 1e-6)
        .map(|k| {
            (ensembles[2].mean_observables[0].1[k] - exact.observables[0].1[k]).abs()
                / ensembles[2].stderr_observables[0].1[k]
        })
        .fold(0.0f64, f64::max);
    println!("\nworst |mean - effective| / stderr at n = 10^4: {z_worst:.2} (should be O(1))");
    Ok(())
}
