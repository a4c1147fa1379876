//! Quantum Zeno propagator: repeated σˣ measurements at interval Δt with
//! neither feedback nor dissipation.

use crate::superop::{SuperOperator, VectorizationConvention};
use crate::linalg::{CMat, C64};

/// The closed-form one-period propagator on (ρ₀₀, ρ₁₁, ρ₀₁, ρ₁₀):
/// populations are averaged, coherences are averaged and rotated by the
/// free phases e^{±iΩΔt}.
pub fn zeno_propagator(omega: f64, dt: f64) -> SuperOperator {
    let conv = VectorizationConvention::single_qubit();
    let half = C64::new(0.5, 0.0);
    let phase = C64::new(0.0, omega * dt).exp();
    let mut m = CMat::zeros((4, 4));
    m[[0, 0]] = half;
    m[[0, 1]] = half;
    m[[1, 0]] = half;
    m[[1, 1]] = half;
    m[[2, 2]] = half * phase;
    m[[2, 3]] = half * phase;
    m[[3, 2]] = half * phase.conj();
    m[[3, 3]] = half * phase.conj();
    SuperOperator::new(m, conv).expect("fixed 4x4 shape")
}

/// n-fold application in closed form,
/// 𝒫ⁿ = diag(1, cosⁿ⁻¹(ΩΔt)) · 𝒫, used as the oracle for the power
/// iteration; requires n ≥ 1.
pub fn zeno_propagator_power(omega: f64, dt: f64, n: u64) -> SuperOperator {
    assert!(n >= 1, "closed-form power needs at least one application");
    let p = zeno_propagator(omega, dt);
    let factor = (omega * dt).cos().powi(n as i32 - 1);
    let mut m = p.matrix().clone();
    for row in 2..4 {
        for col in 0..4 {
            m[[row, col]] *= factor;
        }
    }
    SuperOperator::new(m, p.convention().clone()).expect("fixed 4x4 shape")
}
