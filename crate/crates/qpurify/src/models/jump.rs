//! Jump-detection feedback: a detector watches for decay events
//! |1⟩ → |0⟩ during each interval Δt and a click triggers an instantaneous
//! control unitary U_c. In the continuum limit the discrete protocol
//! converges to a Lindblad generator with jump operator L_c = U_c|0⟩⟨1|.

use crate::engine::FeedbackProtocol;
use crate::error::{Error, Result};
use crate::hilbert::{assert_unitary, basis_ket, outer_product};
use crate::linalg::{CMat, C64};
use crate::superop::{
    dissipator_superop, sandwich_superop, MeasurementSet, SuperOperator, VectorizationConvention,
};

#[derive(Debug, Clone)]
pub struct JumpParams {
    /// Decay rate; a jump is detected with probability γΔt per interval.
    pub gamma: f64,
    /// Control unitary applied on a click.
    pub control_unitary: CMat,
    /// Unmonitored part of the evolution (system Hamiltonian and any
    /// further reservoirs).
    pub base_liouvillian: SuperOperator,
}

impl JumpParams {
    pub fn new(gamma: f64, control_unitary: CMat, base_liouvillian: SuperOperator) -> Result<Self> {
        if gamma < 0.0 || !gamma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "gamma",
                reason: format!("must be finite and >= 0, got {gamma}"),
            });
        }
        assert_unitary(&control_unitary, 1e-10)?;
        Ok(JumpParams { gamma, control_unitary, base_liouvillian })
    }
}

/// POVM for click / no-click detection over one interval:
/// M_c = √(γΔt)|0⟩⟨1|, M_nc = √(1−γΔt)|1⟩⟨1| + |0⟩⟨0|.
pub fn jump_measurement_set(gamma: f64, dt: f64) -> Result<MeasurementSet> {
    let p_click = gamma * dt;
    if !(0.0..=1.0).contains(&p_click) {
        return Err(Error::InvalidParameter {
            name: "gamma*dt",
            reason: format!("click probability {p_click} outside [0, 1]"),
        });
    }
    let conv = VectorizationConvention::single_qubit();
    let ket0 = basis_ket(2, 0);
    let ket1 = basis_ket(2, 1);
    let m_click = outer_product(&ket0, &ket1).mapv(|z| z * p_click.sqrt());
    let m_no_click = outer_product(&ket1, &ket1).mapv(|z| z * (1.0 - p_click).sqrt())
        + outer_product(&ket0, &ket0);
    MeasurementSet::new(vec![m_click, m_no_click], vec!["c".into(), "nc".into()], &conv, false)
}

/// The continuum-limit feedback generator
/// 𝓛_fb ρ = 𝓛₀ ρ + γ(L_c ρ L_c† − ½{L_c†L_c, ρ}) with L_c = U_c|0⟩⟨1|.
pub fn feedback_liouvillian_jump(p: &JumpParams) -> Result<SuperOperator> {
    let conv = p.base_liouvillian.convention().clone();
    let l_c = p.control_unitary.dot(&outer_product(&basis_ket(2, 0), &basis_ket(2, 1)));
    let dissipator = dissipator_superop(&l_c, &conv)?.scale(C64::new(p.gamma, 0.0));
    p.base_liouvillian.add(&dissipator)
}

/// Discrete protocol 𝒫(Δt) = e^{𝓛₀Δt} e^{κ_c} 𝓜_c(Δt) + e^{𝓛₀Δt} 𝓜_nc(Δt),
/// where e^{κ_c} is the sandwich of the control unitary.
pub fn jump_protocol(p: &JumpParams, dt: f64) -> Result<FeedbackProtocol> {
    let measurements = jump_measurement_set(p.gamma, dt)?;
    let conv = p.base_liouvillian.convention().clone();
    let free = p.base_liouvillian.expm(dt);
    let kick = sandwich_superop(&p.control_unitary, &conv)?;
    let props = vec![free.compose(&kick)?, free];
    FeedbackProtocol::new(measurements, props, dt)
}
