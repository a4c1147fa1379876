//! Eigensolvers: cyclic Jacobi for Hermitian matrices, explicit shifted QR
//! on the Hessenberg form for general complex matrices, and inverse
//! iteration for individual eigenvectors.

use super::{dag, frobenius, hermiticity_deviation, identity, CMat, CVec, C64};
use super::lu::Lu;
use crate::error::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-10;
const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues in ascending order together with the
/// unitary whose columns are the matching eigenvectors.
pub fn eig_hermitian(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    let dev = hermiticity_deviation(m);
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation: dev, tol: HERMITICITY_TOL });
    }
    let n = m.nrows();
    // work on the exactly hermitized copy
    let mut a = (m + &dag(m)).mapv(|z| 0.5 * z);
    let mut v = identity(n);
    let scale = frobenius(&a);
    if scale == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let tol = f64::EPSILON * scale;
    let mut converged = false;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(a[[p, q]].norm());
            }
        }
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::EigNoConvergence { iterations: MAX_JACOBI_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[[i, i]].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMat::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[[i, dst]] = v[[i, src]];
        }
    }
    Ok((eigenvalues, vectors))
}

/// One Jacobi rotation zeroing a[p][q] (and by Hermiticity a[q][p]).
fn jacobi_rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let apq = a[[p, q]];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let tau = (a[[q, q]].re - a[[p, p]].re) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sp = s * phase; // J[p][q] entry; J[q][p] = -conj(sp)
    let n = a.nrows();
    // columns: A <- A J
    for k in 0..n {
        let akp = a[[k, p]];
        let akq = a[[k, q]];
        a[[k, p]] = c * akp - sp.conj() * akq;
        a[[k, q]] = sp * akp + c * akq;
    }
    // rows: A <- J† A
    for k in 0..n {
        let apk = a[[p, k]];
        let aqk = a[[q, k]];
        a[[p, k]] = c * apk - sp * aqk;
        a[[q, k]] = sp.conj() * apk + c * aqk;
    }
    a[[p, q]] = C64::new(0.0, 0.0);
    a[[q, p]] = C64::new(0.0, 0.0);
    for k in 0..n {
        let vkp = v[[k, p]];
        let vkq = v[[k, q]];
        v[[k, p]] = c * vkp - sp.conj() * vkq;
        v[[k, q]] = sp * vkp + c * vkq;
    }
}

/// Eigenvalues of a general complex matrix via Hessenberg reduction and the
/// explicitly shifted QR iteration.
pub fn eigenvalues(a: &CMat) -> Result<Vec<C64>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigenvalues requires a square matrix");
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![a[[0, 0]]]);
    }
    let mut h = hessenberg(a);
    let floor = f64::EPSILON * frobenius(a).max(f64::MIN_POSITIVE);
    let mut eigs: Vec<C64> = Vec::with_capacity(n);
    let mut hi = n;
    let mut iterations = 0usize;
    let mut since_deflation = 0usize;
    let max_iterations = 80 * n;
    while hi > 0 {
        if hi == 1 {
            eigs.push(h[[0, 0]]);
            break;
        }
        // negligible trailing subdiagonal deflates one eigenvalue
        let sub = h[[hi - 1, hi - 2]].norm();
        let local = f64::EPSILON * (h[[hi - 2, hi - 2]].norm() + h[[hi - 1, hi - 1]].norm());
        if sub <= local.max(floor) {
            eigs.push(h[[hi - 1, hi - 1]]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        // active block [lo, hi)
        let mut lo = 0;
        for k in (1..hi - 1).rev() {
            let tol_k = f64::EPSILON * (h[[k - 1, k - 1]].norm() + h[[k, k]].norm());
            if h[[k, k - 1]].norm() <= tol_k.max(floor) {
                h[[k, k - 1]] = C64::new(0.0, 0.0);
                lo = k;
                break;
            }
        }
        if hi - lo == 2 {
            let (l1, l2) = eig_2x2(h[[lo, lo]], h[[lo, lo + 1]], h[[lo + 1, lo]], h[[lo + 1, lo + 1]]);
            eigs.push(l1);
            eigs.push(l2);
            hi -= 2;
            since_deflation = 0;
            continue;
        }
        if iterations >= max_iterations {
            return Err(Error::EigNoConvergence { iterations });
        }
        let mu = if since_deflation > 0 && since_deflation.is_multiple_of(12) {
            // exceptional shift to break rare cycling
            h[[hi - 1, hi - 1]] + C64::new(0.75 * h[[hi - 1, hi - 2]].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, lo, hi, mu);
        iterations += 1;
        since_deflation += 1;
    }
    Ok(eigs)
}

/// Householder reduction to upper Hessenberg form.
fn hessenberg(a: &CMat) -> CMat {
    let n = a.nrows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let mut norm_sq = 0.0f64;
        for i in k + 1..n {
            norm_sq += h[[i, k]].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm < f64::MIN_POSITIVE {
            continue;
        }
        let x0 = h[[k + 1, k]];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * norm;
        // v = x - alpha e1, normalized
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[[i, k]]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm < f64::MIN_POSITIVE {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- (1 - 2vv†) H : rows k+1..n
        for j in k..n {
            let mut dot = C64::new(0.0, 0.0);
            for i in k + 1..n {
                dot += v[i - k - 1].conj() * h[[i, j]];
            }
            for i in k + 1..n {
                let sub = 2.0 * v[i - k - 1] * dot;
                h[[i, j]] -= sub;
            }
        }
        // H <- H (1 - 2vv†) : columns k+1..n
        for i in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for j in k + 1..n {
                dot += h[[i, j]] * v[j - k - 1];
            }
            for j in k + 1..n {
                let sub = 2.0 * dot * v[j - k - 1].conj();
                h[[i, j]] -= sub;
            }
        }
        h[[k + 1, k]] = alpha;
        for i in k + 2..n {
            h[[i, k]] = C64::new(0.0, 0.0);
        }
    }
    h
}

fn eig_2x2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b * c).sqrt();
    (half_tr + disc, half_tr - disc)
}

/// Eigenvalue of the trailing 2x2 block closer to the corner entry.
fn wilkinson_shift(h: &CMat, hi: usize) -> C64 {
    let (l1, l2) = eig_2x2(
        h[[hi - 2, hi - 2]],
        h[[hi - 2, hi - 1]],
        h[[hi - 1, hi - 2]],
        h[[hi - 1, hi - 1]],
    );
    let corner = h[[hi - 1, hi - 1]];
    if (l1 - corner).norm() <= (l2 - corner).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit QR step on the Hessenberg block [lo, hi): H - mu = QR, then
/// H <- RQ + mu, implemented with Givens rotations.
fn qr_step(h: &mut CMat, lo: usize, hi: usize, mu: C64) {
    for k in lo..hi {
        h[[k, k]] -= mu;
    }
    let mut rotations: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi - 1 {
        let (cos, sin) = givens(h[[k, k]], h[[k + 1, k]]);
        rotations.push((cos, sin));
        for j in k..hi {
            let top = h[[k, j]];
            let bot = h[[k + 1, j]];
            h[[k, j]] = cos * top + sin * bot;
            h[[k + 1, j]] = -sin.conj() * top + cos * bot;
        }
        h[[k + 1, k]] = C64::new(0.0, 0.0);
    }
    for (idx, (cos, sin)) in rotations.iter().enumerate() {
        let k = lo + idx;
        for i in lo..(k + 2).min(hi) {
            let left = h[[i, k]];
            let right = h[[i, k + 1]];
            h[[i, k]] = cos * left + sin.conj() * right;
            h[[i, k + 1]] = -sin * left + cos * right;
        }
    }
    for k in lo..hi {
        h[[k, k]] += mu;
    }
}

/// Complex Givens rotation with real cosine zeroing the second component:
/// [c s; -s† c] [a; b] = [r; 0].
fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

/// Eigenvector for a known eigenvalue by inverse iteration.
pub fn eigenvector_for(a: &CMat, lambda: C64) -> Result<CVec> {
    let n = a.nrows();
    let mut shifted = a.clone();
    for k in 0..n {
        shifted[[k, k]] -= lambda;
    }
    let floor = f64::EPSILON * frobenius(a).max(f64::MIN_POSITIVE);
    let lu = Lu::factor(&shifted, floor);
    let mut x = CVec::from_elem(n, C64::new(1.0, 0.0));
    let norm0 = (n as f64).sqrt();
    x.mapv_inplace(|z| z / norm0);
    let mut residual = f64::INFINITY;
    for _ in 0..8 {
        let y = lu.solve_vec(&x);
        let norm = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::EigNoConvergence { iterations: 8 });
        }
        x = y.mapv(|z| z / norm);
        let ax = a.dot(&x);
        residual = (0..n)
            .map(|i| (ax[i] - lambda * x[i]).norm())
            .fold(0.0f64, f64::max);
        if residual <= 1e-13 * frobenius(a).max(1.0) {
            break;
        }
    }
    if !residual.is_finite() {
        return Err(Error::EigNoConvergence { iterations: 8 });
    }
    Ok(x)
}
