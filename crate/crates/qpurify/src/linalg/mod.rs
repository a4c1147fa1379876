//! Dense complex linear algebra for small matrices.
//!
//! Everything in this crate lives in Hilbert spaces of dimension ≤ 4 and
//! Liouville spaces of dimension ≤ 16, so the solvers here are hand-rolled
//! dense routines (Jacobi sweeps, explicit shifted QR, Padé exponentials)
//! rather than LAPACK bindings.

mod eig;
mod expm;
mod lu;

pub use eig::{eig_hermitian, eigenvalues, eigenvector_for};
pub use expm::expm;
pub use lu::Lu;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = Array2<C64>;
pub type CVec = Array1<C64>;

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

/// Conjugate transpose.
pub fn dag(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

/// Largest entry magnitude.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.dim(), b.dim(), "max_abs_diff on mismatched shapes");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Maximum absolute column sum.
pub fn one_norm(m: &CMat) -> f64 {
    let mut best = 0.0f64;
    for col in m.columns() {
        let s: f64 = col.iter().map(|z| z.norm()).sum();
        best = best.max(s);
    }
    best
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Deviation from Hermiticity, max |m - m†|.
pub fn hermiticity_deviation(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    dev
}

pub fn trace(m: &CMat) -> C64 {
    m.diag().sum()
}

/// n-th power by binary exponentiation.
pub fn matrix_power(m: &CMat, n: u64) -> CMat {
    let mut result = identity(m.nrows());
    let mut base = m.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = result.dot(&base);
        }
        base = base.dot(&base);
        k >>= 1;
    }
    result
}
