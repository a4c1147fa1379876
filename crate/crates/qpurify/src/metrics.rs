//! Scalar diagnostics: purity, concurrence, fidelity, and the closed-form
//! stationary correlators, concurrence, and purity of the Bell feedback
//! scheme.

use crate::error::{Error, Result};
use crate::hilbert::{pauli_pair, Axis, DensityMatrix, TwoQubitCorrelators};
use crate::linalg::{eig_hermitian, trace, CMat, CVec};
use crate::models::TwoQubitParams;

/// P = tr(ρ²) ∈ [1/N, 1].
pub fn purity(rho: &DensityMatrix) -> f64 {
    trace(&rho.matrix().dot(rho.matrix())).re
}

/// Wootters concurrence of a two-qubit state:
/// C = max(0, √μ₁ − √μ₂ − √μ₃ − √μ₄) with μᵢ the descending eigenvalues of
/// ρ(σʸ⊗σʸ)ρ*(σʸ⊗σʸ), computed through the Hermitian proxy
/// √ρ (σʸ⊗σʸ)ρ*(σʸ⊗σʸ) √ρ.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { context: "concurrence", expected: 4, got: rho.dim() });
    }
    let yy = pauli_pair(Axis::Y, Axis::Y);
    let conj = rho.matrix().mapv(|z| z.conj());
    let flipped = yy.dot(&conj).dot(&yy);
    let sqrt_rho = hermitian_sqrt(rho.matrix())?;
    let proxy = sqrt_rho.dot(&flipped).dot(&sqrt_rho);
    let (mut mu, _) = eig_hermitian(&proxy)?;
    // clamp the tiny negatives of the PSD proxy
    for v in mu.iter_mut() {
        if *v < 0.0 {
            debug_assert!(*v >= -1e-10, "proxy eigenvalue {v} too negative");
            *v = 0.0;
        }
    }
    // ascending order: mu[3] is the largest
    let c = mu[3].sqrt() - mu[2].sqrt() - mu[1].sqrt() - mu[0].sqrt();
    Ok(c.max(0.0))
}

fn hermitian_sqrt(m: &CMat) -> Result<CMat> {
    let (vals, vecs) = eig_hermitian(m)?;
    let n = m.nrows();
    let mut out = CMat::zeros((n, n));
    for k in 0..n {
        let lam = vals[k].max(0.0).sqrt();
        for i in 0..n {
            for j in 0..n {
                out[[i, j]] += vecs[[i, k]] * vecs[[j, k]].conj() * lam;
            }
        }
    }
    Ok(out)
}

/// ⟨ψ|ρ|ψ⟩ for a normalized pure target.
pub fn fidelity_to_pure(rho: &DensityMatrix, target: &CVec) -> Result<f64> {
    if target.len() != rho.dim() {
        return Err(Error::DimensionMismatch {
            context: "fidelity target",
            expected: rho.dim(),
            got: target.len(),
        });
    }
    let norm_sq: f64 = target.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter {
            name: "target",
            reason: format!("not normalized: |psi|^2 = {norm_sq}"),
        });
    }
    let mut acc = 0.0;
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            acc += (target[i].conj() * rho.matrix()[[i, j]] * target[j]).re;
        }
    }
    Ok(acc)
}

/// Closed-form stationary concurrence and purity of the Bell scheme in the
/// continuum limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryBellPrediction {
    pub concurrence: f64,
    pub purity: f64,
}

/// C̄ = (λ_R² − 3λ_B²)/(λ_R² + 3λ_B²) Θ(λ_R² − 3λ_B²) and
/// P̄ = (λ_R⁴ + 3λ_B⁴)/(λ_R² + 3λ_B²)², with Θ(0) = 0.
pub fn stationary_bell_prediction(lambda_b: f64, lambda_r: f64) -> Result<StationaryBellPrediction> {
    let b2 = lambda_b * lambda_b;
    let r2 = lambda_r * lambda_r;
    let denom = r2 + 3.0 * b2;
    if denom == 0.0 {
        return Err(Error::InvalidParameter {
            name: "lambda",
            reason: "both couplings vanish".into(),
        });
    }
    let excess = r2 - 3.0 * b2;
    let concurrence = if excess > 0.0 { excess / denom } else { 0.0 };
    let purity = (r2 * r2 + 3.0 * b2 * b2) / (denom * denom);
    Ok(StationaryBellPrediction { concurrence, purity })
}

/// Stationary correlators of the Bell iteration at finite Δt, in the
/// dimensionless groups Λ_B = γΔtλ_B², Λ_R = γΔtλ_R², Ω = (ω₁+ω₂)Δt.
/// All local expectation values vanish; the five nonzero correlators are
/// returned. Transcribed as printed and cross-checked against the
/// eigenvector of the 16×16 effective propagator.
pub fn stationary_correlators_finite_dt(p: &TwoQubitParams) -> Result<TwoQubitCorrelators> {
    p.validate()?;
    let lb = p.gamma * p.dt * p.lambda_b * p.lambda_b;
    let lr = p.gamma * p.dt * p.lambda_r * p.lambda_r;
    let om = (p.omega1 + p.omega2) * p.dt;

    let num_common = 4.0 * (3.0 * (lb + lr)).exp() * (lb - lr).sinh() * (2.0 * lr).sinh();
    let denom_xy = (6.0 * lr).exp()
        + (4.0 * lb + 2.0 * lr).exp() * (3.0 - 4.0 * (4.0 * lr).exp())
        + ((2.0 * lb).exp() + (2.0 * lr).exp())
            * (2.0 * (2.0 * lb + 4.0 * lr).exp() - (2.0 * lb).exp() - (2.0 * lr).exp())
            * om.cos();
    if denom_xy.abs() < 1e-14 {
        return Err(Error::DegenerateParameterPoint);
    }
    let xy = num_common * om.sin() / denom_xy;
    let xx = num_common * om.cos() / denom_xy;

    let num_zz = ((4.0 * lr).exp() - (4.0 * lb).exp()) * ((2.0 * lr).exp() - om.cos());
    let denom_zz = -(6.0 * lr).exp()
        + (4.0 * lb + 2.0 * lr).exp() * (4.0 * (4.0 * lr).exp() - 3.0)
        + ((4.0 * lb).exp() + (4.0 * lr).exp()
            - 2.0 * (4.0 * lb + 4.0 * lr).exp()
            - 2.0 * (2.0 * lb + 2.0 * lr).exp() * ((4.0 * lr).exp() - 1.0))
            * om.cos();
    if denom_zz.abs() < 1e-14 {
        return Err(Error::DegenerateParameterPoint);
    }
    let zz = num_zz / denom_zz;

    let mut exp = [[0.0f64; 4]; 4];
    exp[0][0] = 1.0;
    let (x, y, z) = (1usize, 2usize, 3usize);
    exp[x][x] = xx;
    exp[y][y] = -xx;
    exp[z][z] = zz;
    exp[x][y] = xy;
    exp[y][x] = xy;
    Ok(TwoQubitCorrelators::from_expectations(exp))
}
