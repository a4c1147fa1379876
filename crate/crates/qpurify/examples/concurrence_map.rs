//! Stationary concurrence over the (γΔt, λ_R/λ_B) plane, written as a
//! sweep CSV ready for contour plotting.
//!
//! Run with: cargo run --example concurrence_map

use qpurify::engine::{effective_propagator, stationary_state};
use qpurify::metrics::{concurrence, purity, stationary_bell_prediction};
use qpurify::models::{bell_protocol, TwoQubitParams};

fn main() -> qpurify::Result<()> {
    let lambda_b = 1.0;
    let n_dt = 12;
    let n_ratio = 12;

    let dts: Vec<f64> = (0..n_dt)
        .map(|k| {
            let f = k as f64 / (n_dt - 1) as f64;
            ((-3.0 + 2.5 * f) * std::f64::consts::LN_10).exp() // 1e-3 .. ~0.3
        })
        .collect();
    let ratios: Vec<f64> = (0..n_ratio).map(|k| 1.0 + 9.0 * k as f64 / (n_ratio - 1) as f64).collect();

    let path = std::env::args().nth(1).unwrap_or_else(|| "concurrence_map.csv".into());
    let mut csv = String::from("gamma_dt,lambda_ratio,concurrence,purity,concurrence_continuum\n");

    println!("stationary concurrence on a {n_dt} x {n_ratio} grid (rows: gamma*dt):");
    print!("{:>10}", "dt\\ratio");
    for r in &ratios {
        print!(" {r:>6.2}");
    }
    println!();
    for &dt in &dts {
        print!("{dt:>10.4}");
        for &ratio in &ratios {
            let p = TwoQubitParams::new(0.0, 0.0, lambda_b, ratio * lambda_b, 1.0, dt)?;
            let eff = effective_propagator(&bell_protocol(&p)?)?;
            let st = stationary_state(&eff)?;
            let c = concurrence(&st.rho)?;
            let pur = purity(&st.rho);
            let pred = stationary_bell_prediction(lambda_b, ratio * lambda_b)?;
            csv.push_str(&format!(
                "{:.6e},{:.6e},{:.6e},{:.6e},{:.6e}\n",
                dt, ratio, c, pur, pred.concurrence
            ));
            print!(" {c:>6.3}");
        }
        println!();
    }
    std::fs::write(&path, csv).expect("write sweep data");
    println!("\nwrote {path}");
    println!("short measurement intervals and strong feedback are both required for entanglement.");
    Ok(())
}
