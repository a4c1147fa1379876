//! Error type shared by all numerical modules.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("matrix is not Hermitian: max deviation {deviation:.3e} exceeds {tol:.1e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("trace deviates from one by {deviation:.3e} (tolerance {tol:.1e})")]
    TraceDeviation { deviation: f64, tol: f64 },

    #[error("state is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("measurement operators violate completeness: max deviation {deviation:.3e}")]
    CompletenessViolation { deviation: f64 },

    #[error("operators flagged projective are not orthogonal projectors: deviation {deviation:.3e}")]
    NotProjective { deviation: f64 },

    #[error("matrix is not unitary: max deviation {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("population block column {column} sums to {sum:.3e}, violating trace conservation")]
    ColumnSumViolation { column: usize, sum: f64 },

    #[error("superoperator is not trace preserving: max deviation {deviation:.3e}")]
    NotTracePreserving { deviation: f64 },

    #[error("outcome probabilities sum to {sum:.17}, outside renormalization tolerance")]
    ProbabilityNormalization { sum: f64 },

    #[error("all outcome probabilities below 1e-14; measurement set is broken")]
    AllOutcomesImprobable,

    #[error("no eigenvalue within {tol:.1e} of one; closest is {closest}")]
    NoStationaryEigenvalue { closest: Complex64, tol: f64 },

    #[error("eigensolver failed to converge after {iterations} iterations")]
    EigNoConvergence { iterations: usize },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operation requires a flat bath spectrum")]
    FlatBathRequired,

    #[error("spectral density is only defined for the ohmic thermal bath")]
    NoSpectralDensity,

    #[error("denominator below 1e-14; degenerate parameter point")]
    DegenerateParameterPoint,
}

pub type Result<T> = std::result::Result<T, Error>;
