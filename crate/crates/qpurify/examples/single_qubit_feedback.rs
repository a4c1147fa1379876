//! Purification of a single qubit by feedback-controlled dissipation.
//!
//! A qubit is measured along σˣ every Δt; outcome "+" switches the bath
//! coupling to λ₊, outcome "−" to λ₋. Although both conditioned evolutions
//! relax toward the completely mixed state, the imbalance λ₊ ≠ λ₋ drives
//! the iteration into a nearly pure stationary state with ⟨σ̄ˣ⟩ close to
//! drift/decay = 12/13 at the reference parameters.
//!
//! Run with: cargo run --example single_qubit_feedback

use qpurify::bath::BathSpectrum;
use qpurify::engine::{
    continuum_ode_rhs, effective_propagator, integrate_continuum, iterate, stationary_state,
    Observable,
};
use qpurify::hilbert::{plus_ket, DensityMatrix};
use qpurify::models::{feedback_protocol, SingleQubitParams};

fn main() -> qpurify::Result<()> {
    let params = SingleQubitParams::new(5.0, 1.0, 5.0, BathSpectrum::flat(1.0))?;

    let rhs = continuum_ode_rhs(&params)?;
    println!("continuum limit:  d<sx>/dt = -{:.1} <sx> + {:.1}", rhs.decay, rhs.drift);
    println!("stationary value: drift/decay = {:.10}  (12/13 = {:.10})", rhs.stationary(), 12.0 / 13.0);

    let ode = integrate_continuum(&rhs, 1.0, 1.0, 1e-3);
    println!("\n<sx>(t) from the continuum equation:");
    for &(t, x) in ode.iter().step_by(200) {
        println!("  t*gamma = {t:4.1}   <sx> = {x:.6}");
    }

    println!("\nfinite measurement intervals (stationary <sx> of the fixed-point iteration):");
    println!("  {:>10}  {:>12}  {:>12}", "gamma*dt", "<sx>", "12/13 - <sx>");
    for gdt in [0.2, 0.1, 0.05, 0.01, 1e-3, 1e-4] {
        let protocol = feedback_protocol(&params, gdt)?;
        let eff = effective_propagator(&protocol)?;
        let st = stationary_state(&eff)?;
        let x = st.rho.bloch()?.x;
        println!("  {:>10.0e}  {:>12.8}  {:>12.3e}", gdt, x, 12.0 / 13.0 - x);
    }

    // short transient from |+><+| at a finite interval
    let dt = 0.05;
    let protocol = feedback_protocol(&params, dt)?;
    let eff = effective_propagator(&protocol)?;
    let rho0 = DensityMatrix::pure(&plus_ket())?;
    let record = iterate(&eff, &rho0, 10, &Observable::single_qubit_set())?;
    println!("\ntransient from |+><+| at gamma*dt = {dt}:");
    println!("  {:>6}  {:>9}  {:>9}  {:>9}", "t", "sx", "sy", "sz");
    for (k, t) in record.times.iter().enumerate() {
        println!(
            "  {:>6.2}  {:>9.5}  {:>9.5}  {:>9.5}",
            t, record.observables[0].1[k], record.observables[1].1[k], record.observables[2].1[k]
        );
    }
    Ok(())
}
