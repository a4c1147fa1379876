//! Dissipative entangling of two qubits by Bell-projection feedback.
//!
//! A non-demolition measurement of the Bell projector M_B switches the
//! strength of a common-bath coupling: weak damping λ_B after a Bell
//! outcome, strong damping λ_R otherwise. The stationary state approaches
//! the Bell state as λ_R/λ_B grows; in the continuum limit the concurrence
//! is (λ_R² − 3λ_B²)/(λ_R² + 3λ_B²).
//!
//! Run with: cargo run --example bell_purification

use qpurify::engine::{effective_propagator, iterate, stationary_state, Observable};
use qpurify::hilbert::{bell_ket, Axis, DensityMatrix};
use qpurify::metrics::{
    concurrence, fidelity_to_pure, purity, stationary_bell_prediction,
    stationary_correlators_finite_dt,
};
use qpurify::models::{bell_protocol, TwoQubitParams};

fn main() -> qpurify::Result<()> {
    let p = TwoQubitParams::new(0.0, 0.0, 1.0, 5.0, 1.0, 0.05)?;
    let protocol = bell_protocol(&p)?;
    let eff = effective_propagator(&protocol)?;

    println!("evolution from the completely mixed state (lambda_B = 1, lambda_R = 5, gamma*dt = 0.05):");
    let rho0 = DensityMatrix::maximally_mixed(4);
    let record = iterate(&eff, &rho0, 40, &Observable::bell_correlator_set())?;
    println!("{:>8} {:>9} {:>9} {:>9} {:>9} {:>12}", "t*gamma", "Sxx", "Syy", "Szz", "Sxy", "concurrence");
    for k in (0..=40).step_by(5) {
        let c = concurrence(&record.states[k])?;
        println!(
            "{:>8.2} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>12.5}",
            record.times[k],
            record.observables[0].1[k],
            record.observables[1].1[k],
            record.observables[2].1[k],
            record.observables[3].1[k],
            c
        );
    }

    let st = stationary_state(&eff)?;
    let closed = stationary_correlators_finite_dt(&p)?;
    let numeric = st.rho.correlators()?;
    println!("\nstationary correlators at finite dt (eigenvector vs closed form):");
    for (a, b) in [(Axis::X, Axis::X), (Axis::Y, Axis::Y), (Axis::Z, Axis::Z), (Axis::X, Axis::Y)] {
        println!(
            "  <S{}{}> = {:>12.8}   closed form {:>12.8}",
            a.label(),
            b.label(),
            numeric.expectation(a, b),
            closed.expectation(a, b)
        );
    }
    println!(
        "  concurrence {:.6}, purity {:.6}, Bell fidelity {:.6}",
        concurrence(&st.rho)?,
        purity(&st.rho),
        fidelity_to_pure(&st.rho, &bell_ket())?
    );

    println!("\ncontinuum-limit predictions vs the coupling ratio:");
    println!("{:>12} {:>12} {:>12}", "lambda_R/B", "concurrence", "purity");
    for ratio in [1.0, 3.0f64.sqrt(), 2.0, 5.0, 10.0, 100.0] {
        let pred = stationary_bell_prediction(1.0, ratio)?;
        println!("{:>12.3} {:>12.6} {:>12.6}", ratio, pred.concurrence, pred.purity);
    }
    Ok(())
}
