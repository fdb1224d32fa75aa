// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Restarted GMRES for complex sparse systems.

use nalgebra::{DMatrix, DVector};
use nalgebra_sparse::CsrMatrix;

use crate::density::C64;

pub(crate) struct GmresOutcome {
    pub x: DVector<C64>,
    pub relative_residual: f64,
    pub iterations: usize,
}

fn spmv(a: &CsrMatrix<C64>, x: &DVector<C64>) -> DVector<C64> {
    let mut y = DVector::zeros(a.nrows());
    for (r, row) in a.row_iter().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (&c, v) in row.col_indices().iter().zip(row.values()) {
            acc += v * x[c];
        }
        y[r] = acc;
    }
    y
}

/// GMRES(m) with modified Gram-Schmidt and Jacobi (diagonal) preconditioning
/// on the right.
pub(crate) fn gmres(
    a: &CsrMatrix<C64>,
    b: &DVector<C64>,
    restart: usize,
    max_iter: usize,
    tol: f64,
) -> GmresOutcome {
    let n = b.len();
    let mut diag = vec![C64::new(1.0, 0.0); n];
    for (r, row) in a.row_iter().enumerate() {
        for (&c, v) in row.col_indices().iter().zip(row.values()) {
            if c == r && v.norm() > 0.0 {
                diag[r] = *v;
            }
        }
    }
    let precond = |v: &DVector<C64>| DVector::from_fn(n, |k, _| v[k] / diag[k]);

    let b_norm = b.norm().max(f64::MIN_POSITIVE);
    let mut x = DVector::zeros(n);
    let mut iterations = 0;
    let mut rel = 1.0;
    while iterations < max_iter {
        let r = b - spmv(a, &x);
        let beta = r.norm();
        rel = beta / b_norm;
        if rel <= tol {
            break;
        }
        let m = restart.min(max_iter - iterations);
        let mut basis: Vec<DVector<C64>> = vec![r / C64::new(beta, 0.0)];
        let mut hess = DMatrix::<C64>::zeros(m + 1, m);
        let mut cs = vec![C64::new(0.0, 0.0); m];
        let mut sn = vec![C64::new(0.0, 0.0); m];
        let mut g = DVector::<C64>::zeros(m + 1);
        g[0] = C64::new(beta, 0.0);
        let mut k_used = 0;
        for k in 0..m {
            iterations += 1;
            let mut w = spmv(a, &precond(&basis[k]));
            for (j, v) in basis.iter().enumerate() {
                let h = v.dotc(&w);
                hess[(j, k)] = h;
                w -= v * h;
            }
            let h_next = w.norm();
            hess[(k + 1, k)] = C64::new(h_next, 0.0);
            for j in 0..k {
                let t = cs[j] * hess[(j, k)] + sn[j] * hess[(j + 1, k)];
                hess[(j + 1, k)] = -sn[j].conj() * hess[(j, k)] + cs[j].conj() * hess[(j + 1, k)];
                hess[(j, k)] = t;
            }
            let (a_, b_) = (hess[(k, k)], hess[(k + 1, k)]);
            let denom = (a_.norm_sqr() + b_.norm_sqr()).sqrt();
            if denom == 0.0 {
                k_used = k;
                break;
            }
            cs[k] = a_ / denom;
            sn[k] = b_ / denom;
            hess[(k, k)] = cs[k].conj() * a_ + sn[k].conj() * b_;
            hess[(k + 1, k)] = C64::new(0.0, 0.0);
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k].conj() * g[k];
            k_used = k + 1;
            rel = g[k + 1].norm() / b_norm;
            if rel <= tol || h_next == 0.0 {
                break;
            }
            basis.push(w / C64::new(h_next, 0.0));
        }
        // Back substitution on the k_used x k_used triangle.
        let mut y = vec![C64::new(0.0, 0.0); k_used];
        for i in (0..k_used).rev() {
            let mut s = g[i];
            for j in (i + 1)..k_used {
                s -= hess[(i, j)] * y[j];
            }
            y[i] = s / hess[(i, i)];
        }
        let mut update = DVector::zeros(n);
        for (v, yi) in basis.iter().zip(&y) {
            update += v * *yi;
        }
        x += precond(&update);
        if rel <= tol {
            let true_rel = (b - spmv(a, &x)).norm() / b_norm;
            rel = true_rel;
            if true_rel <= tol {
                break;
            }
        }
    }
    GmresOutcome {
        x,
        relative_residual: rel,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra_sparse::CooMatrix;

    #[test]
    fn solves_small_complex_system() {
        let n = 40;
        let mut coo = CooMatrix::new(n, n);
        for i in 0..n {
            coo.push(i, i, C64::new(4.0, 1.0));
            if i + 1 < n {
                coo.push(i, i + 1, C64::new(-1.0, 0.5));
                coo.push(i + 1, i, C64::new(-1.0, -0.25));
            }
        }
        let a = CsrMatrix::from(&coo);
        let x_true = DVector::from_fn(n, |k, _| C64::new(k as f64, 1.0));
        let b = spmv(&a, &x_true);
        let out = gmres(&a, &b, 10, 500, 1e-13);
        assert!(out.relative_residual <= 1e-13);
        assert!((out.x - x_true).norm() < 1e-9);
    }
}
