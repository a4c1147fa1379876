//! LU factorization with partial pivoting for complex matrices.

use super::{CMat, CVec, C64};

/// Factored form of a square matrix, PA = LU.
pub struct Lu {
    lu: CMat,
    piv: Vec<usize>,
}

impl Lu {
    /// Factor `a`. Pivots smaller in magnitude than `pivot_floor` are clamped
    /// to that magnitude so that near-singular systems (inverse iteration on
    /// an exact eigenvalue) remain solvable.
    pub fn factor(a: &CMat, pivot_floor: f64) -> Self {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "LU requires a square matrix");
        let mut lu = a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        for k in 0..n {
            // partial pivot
            let mut p = k;
            let mut best = lu[[k, k]].norm();
            for i in k + 1..n {
                let v = lu[[i, k]].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    lu.swap([k, j], [p, j]);
                }
                piv.swap(k, p);
            }
            if lu[[k, k]].norm() < pivot_floor {
                lu[[k, k]] = C64::new(pivot_floor, 0.0);
            }
            let inv = C64::new(1.0, 0.0) / lu[[k, k]];
            for i in k + 1..n {
                let factor = lu[[i, k]] * inv;
                lu[[i, k]] = factor;
                for j in k + 1..n {
                    let sub = factor * lu[[k, j]];
                    lu[[i, j]] -= sub;
                }
            }
        }
        Lu { lu, piv }
    }

    pub fn solve_vec(&self, b: &CVec) -> CVec {
        let n = self.lu.nrows();
        let mut x = CVec::zeros(n);
        for i in 0..n {
            x[i] = b[self.piv[i]];
        }
        // forward substitution, unit lower triangle
        for i in 1..n {
            for j in 0..i {
                let sub = self.lu[[i, j]] * x[j];
                x[i] -= sub;
            }
        }
        // back substitution
        for i in (0..n).rev() {
            for j in i + 1..n {
                let sub = self.lu[[i, j]] * x[j];
                x[i] -= sub;
            }
            x[i] /= self.lu[[i, i]];
        }
        x
    }

    /// Solve AX = B column by column.
    pub fn solve_mat(&self, b: &CMat) -> CMat {
        let n = self.lu.nrows();
        let mut x = CMat::zeros((n, b.ncols()));
        for j in 0..b.ncols() {
            let col = self.solve_vec(&b.column(j).to_owned());
            for i in 0..n {
                x[[i, j]] = col[i];
            }
        }
        x
    }
}
