//! Operator algebra on small Hilbert spaces: Pauli matrices, tensor
//! products, the density-matrix type, and Bloch/correlator parameterizations.
//!
//! Basis convention used throughout the crate: single-qubit basis
//! (|0⟩, |1⟩) with σᶻ|0⟩ = −|0⟩, so |0⟩ is the ground state of
//! H = (Ω/2)σᶻ for Ω > 0. The two-qubit basis is (|00⟩, |01⟩, |10⟩, |11⟩)
//! with qubit 1 as the left tensor factor.

use ndarray::array;
pub use ndarray::linalg::kron;

use crate::error::{Error, Result};
use crate::linalg::{dag, eig_hermitian, hermiticity_deviation, identity, trace, CMat, CVec, C64};

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Label for the identity and the three Pauli matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    X,
    Y,
    Z,
}

impl Axis {
    pub const XYZ: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
    pub const ALL: [Axis; 4] = [Axis::I, Axis::X, Axis::Y, Axis::Z];

    pub fn label(self) -> &'static str {
        match self {
            Axis::I => "i",
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// Pauli matrix for `axis` in the crate's basis convention.
///
/// σᶻ = diag(−1, +1) on (|0⟩, |1⟩); σˣ and σʸ complete the algebra
/// σᵃσᵇ = δ_ab + i ε_abc σᶜ.
pub fn pauli(axis: Axis) -> CMat {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    match axis {
        Axis::I => identity(2),
        Axis::X => array![[zero, one], [one, zero]],
        Axis::Y => array![[zero, C64::new(0.0, 1.0)], [C64::new(0.0, -1.0), zero]],
        Axis::Z => array![[-one, zero], [zero, one]],
    }
}

/// n·σ for a unit vector given in spherical angles.
pub fn direction_operator(theta: f64, phi: f64) -> CMat {
    let (st, ct) = (theta.sin(), theta.cos());
    let (sp, cp) = (phi.sin(), phi.cos());
    let x = pauli(Axis::X).mapv(|z| z * (st * cp));
    let y = pauli(Axis::Y).mapv(|z| z * (st * sp));
    let z = pauli(Axis::Z).mapv(|z| z * ct);
    x + y + z
}

/// σᵃ ⊗ σᵇ on two qubits.
pub fn pauli_pair(a: Axis, b: Axis) -> CMat {
    kron(&pauli(a), &pauli(b))
}

/// Column vector |k⟩ of the computational basis.
pub fn basis_ket(dim: usize, k: usize) -> CVec {
    let mut v = CVec::zeros(dim);
    v[k] = C64::new(1.0, 0.0);
    v
}

/// (|0⟩ + |1⟩)/√2, the +1 eigenstate of σˣ.
pub fn plus_ket() -> CVec {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    array![C64::new(s, 0.0), C64::new(s, 0.0)]
}

/// (|00⟩ + |11⟩)/√2.
pub fn bell_ket() -> CVec {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CVec::zeros(4);
    v[0] = C64::new(s, 0.0);
    v[3] = C64::new(s, 0.0);
    v
}

pub fn outer_product(ket: &CVec, bra: &CVec) -> CMat {
    let n = ket.len();
    let m = bra.len();
    let mut out = CMat::zeros((n, m));
    for i in 0..n {
        for j in 0..m {
            out[[i, j]] = ket[i] * bra[j].conj();
        }
    }
    out
}

/// N×N complex Hermitian, unit-trace, positive-semidefinite state.
///
/// The invariants are enforced at construction and after every propagation
/// step; violations raise errors instead of silently renormalizing.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: CMat,
}

impl DensityMatrix {
    pub fn new(mat: CMat) -> Result<Self> {
        let dev = hermiticity_deviation(&mat);
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: dev, tol: HERMITICITY_TOL });
        }
        let tr = trace(&mat);
        let tr_dev = (tr - C64::new(1.0, 0.0)).norm();
        if tr_dev > TRACE_TOL {
            return Err(Error::TraceDeviation { deviation: tr_dev, tol: TRACE_TOL });
        }
        let (vals, _) = eig_hermitian(&mat)?;
        if vals[0] < -POSITIVITY_TOL {
            return Err(Error::NotPositive { min_eigenvalue: vals[0] });
        }
        Ok(DensityMatrix { mat })
    }

    pub fn pure(ket: &CVec) -> Result<Self> {
        let norm_sq: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidParameter {
                name: "ket",
                reason: format!("not normalized: |ket|^2 = {norm_sq}"),
            });
        }
        Self::new(outer_product(ket, ket))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mat = identity(dim).mapv(|z| z / dim as f64);
        DensityMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    /// ⟨A⟩ = tr(Aρ); the imaginary part is discarded, so `op` should be
    /// Hermitian.
    pub fn expectation(&self, op: &CMat) -> f64 {
        trace(&op.dot(&self.mat)).re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let (vals, _) = eig_hermitian(&self.mat).expect("state was validated Hermitian");
        vals[0]
    }

    /// Bloch vector (⟨σˣ⟩, ⟨σʸ⟩, ⟨σᶻ⟩) of a single-qubit state.
    pub fn bloch(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch { context: "bloch vector", expected: 2, got: self.dim() });
        }
        BlochVector::new(
            self.expectation(&pauli(Axis::X)),
            self.expectation(&pauli(Axis::Y)),
            self.expectation(&pauli(Axis::Z)),
        )
    }

    pub fn from_bloch(r: &BlochVector) -> Self {
        let mut mat = identity(2);
        mat += &pauli(Axis::X).mapv(|z| z * r.x);
        mat += &pauli(Axis::Y).mapv(|z| z * r.y);
        mat += &pauli(Axis::Z).mapv(|z| z * r.z);
        DensityMatrix { mat: mat.mapv(|z| 0.5 * z) }
    }

    /// Two-qubit Pauli correlators ⟨σᵃ₁σᵇ₂⟩/4 = r^{ab}.
    pub fn correlators(&self) -> Result<TwoQubitCorrelators> {
        if self.dim() != 4 {
            return Err(Error::DimensionMismatch { context: "correlators", expected: 4, got: self.dim() });
        }
        let mut r = [[0.0f64; 4]; 4];
        for (i, a) in Axis::ALL.iter().enumerate() {
            for (j, b) in Axis::ALL.iter().enumerate() {
                r[i][j] = self.expectation(&pauli_pair(*a, *b)) / 4.0;
            }
        }
        Ok(TwoQubitCorrelators { r })
    }

    pub fn from_correlators(c: &TwoQubitCorrelators) -> Result<Self> {
        let mut mat = CMat::zeros((4, 4));
        for (i, a) in Axis::ALL.iter().enumerate() {
            for (j, b) in Axis::ALL.iter().enumerate() {
                mat += &pauli_pair(*a, *b).mapv(|z| z * c.r[i][j]);
            }
        }
        Self::new(mat)
    }
}

/// Real Bloch vector with |r| ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if n2 > 1.0 + 1e-9 {
            return Err(Error::InvalidParameter {
                name: "bloch vector",
                reason: format!("|r|^2 = {n2} exceeds one"),
            });
        }
        Ok(BlochVector { x, y, z })
    }

    pub fn modulus(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Two-qubit correlator table r^{ab} with ρ = Σ r^{ab} σᵃ₁σᵇ₂ and
/// ⟨Σ^{ab}⟩ = 4 r^{ab}; r^{ii} is fixed at 1/4 by unit trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitCorrelators {
    r: [[f64; 4]; 4],
}

impl TwoQubitCorrelators {
    /// Build from expectation values ⟨Σ^{ab}⟩ (row = first qubit axis).
    pub fn from_expectations(exp: [[f64; 4]; 4]) -> Self {
        let mut r = [[0.0f64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                r[i][j] = exp[i][j] / 4.0;
            }
        }
        r[0][0] = 0.25;
        TwoQubitCorrelators { r }
    }

    pub fn coefficient(&self, a: Axis, b: Axis) -> f64 {
        self.r[axis_index(a)][axis_index(b)]
    }

    /// ⟨σᵃ₁ σᵇ₂⟩ = 4 r^{ab}.
    pub fn expectation(&self, a: Axis, b: Axis) -> f64 {
        4.0 * self.coefficient(a, b)
    }
}

fn axis_index(a: Axis) -> usize {
    match a {
        Axis::I => 0,
        Axis::X => 1,
        Axis::Y => 2,
        Axis::Z => 3,
    }
}

/// Check that `m` is unitary within `tol`.
pub fn assert_unitary(m: &CMat, tol: f64) -> Result<()> {
    let product = dag(m).dot(m);
    let dev = crate::linalg::max_abs_diff(&product, &identity(m.nrows()));
    if dev > tol {
        return Err(Error::NotUnitary { deviation: dev });
    }
    Ok(())
}
