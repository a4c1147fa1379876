//! Concrete models wired from the generic machinery: a single qubit with
//! tunable measurement and dissipation directions, the two-qubit Bell
//! purification scheme, the quantum Zeno propagator, and the jump-detection
//! feedback limit.

mod jump;
mod single_qubit;
mod two_qubit;
mod zeno;

pub use jump::{feedback_liouvillian_jump, jump_measurement_set, jump_protocol, JumpParams};
pub use single_qubit::{
    dephasing_rate, feedback_protocol, measurement_set_general, single_qubit_liouvillian, Branch,
    SingleQubitParams,
};
pub use two_qubit::{
    bell_measurement_set, bell_protocol, two_qubit_liouvillian, BellBranch, TwoQubitParams,
};
pub use zeno::{zeno_propagator, zeno_propagator_power};
