//! Feedback-controlled dissipative purification of qubits.
//!
//! Repeated projective measurements at intervals Δt, each outcome switching
//! the strength or direction of the coupling to a thermal bath, define a
//! fixed-point iteration ρ(t+Δt) = 𝒫_eff(Δt) ρ(t) with
//! 𝒫_eff(Δt) = Σ_m 𝓑_m(Δt) 𝓜_m. Even when every conditioned evolution
//! alone relaxes to the completely mixed state, the measurement feedback can
//! drive the iteration into an almost pure — for two qubits almost
//! maximally entangled — stationary state.
//!
//! The crate provides
//!
//! - [`hilbert`]: Pauli algebra, density matrices, Bloch and correlator
//!   parameterizations (|0⟩ is the σᶻ = −1 ground state);
//! - [`superop`]: vectorization, sandwich superoperators M ρ M†, block
//!   Liouvillian assembly, matrix exponentials;
//! - [`bath`]: ohmic thermal spectra γ_ω with the KMS property and the flat
//!   wide-band limit;
//! - [`models`]: the single-qubit scheme for arbitrary measurement and
//!   dissipation directions, the two-qubit Bell scheme, the quantum Zeno
//!   propagator, and jump-detection feedback;
//! - [`engine`]: effective propagators, the fixed-point iteration, the
//!   stationary eigenvector, continuum-limit observable equations;
//! - [`trajectories`]: Born-rule Monte-Carlo unraveling with reproducible
//!   per-trajectory random streams;
//! - [`metrics`]: purity, Wootters concurrence, fidelity, and the
//!   closed-form stationary predictions;
//! - [`runner`]: TOML-configured experiments exporting CSV data, used by
//!   the `qpurify` binary.
//!
//! The `examples/` directory exercises each capability end to end; start
//! with `cargo run --example single_qubit_feedback`.

pub mod bath;
pub mod engine;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod metrics;
pub mod models;
pub mod runner;
pub mod superop;
pub mod trajectories;

pub use error::{Error, Result};
pub use linalg::{C64, CMat, CVec};
