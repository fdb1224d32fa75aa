// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};
use nalgebra_sparse::{CooMatrix, CsrMatrix};

use super::gmres::gmres;
use super::{Method, SolverError};
use crate::density::{max_norm, unvectorize, DensityMatrix, C64};
use crate::liouville::Liouvillian;

/// Pivot ratio below which the trace-replaced system counts as singular.
const PIVOT_RATIO: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyOptions {
    /// `None` tries the linear solve first and falls back to the null space.
    pub method: Option<Method>,
    /// Bound on ‖L[ρ]‖_max for an accepted solution.
    pub residual_tol: f64,
    /// Singular-value threshold relative to the spectral norm of L, used to
    /// decide that the kernel has more than one dimension.
    pub degeneracy_tol: f64,
}

impl Default for SteadyOptions {
    fn default() -> Self {
        SteadyOptions {
            method: None,
            residual_tol: 1e-9,
            degeneracy_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SteadyStateSolution {
    pub rho: DensityMatrix,
    /// ‖L[ρ]‖_max of the returned state.
    pub residual: f64,
    pub method: Method,
}

/// Unit-trace fixed point of `l` with default options.
pub fn steady_state(l: &Liouvillian) -> Result<SteadyStateSolution, SolverError> {
    steady_state_with(l, &SteadyOptions::default())
}

pub fn steady_state_with(
    l: &Liouvillian,
    opts: &SteadyOptions,
) -> Result<SteadyStateSolution, SolverError> {
    match opts.method {
        Some(Method::LinearSolve) => linear_solve(l, opts),
        Some(Method::NullSpace) => null_space(l, opts),
        None => match linear_solve(l, opts) {
            Ok(sol) => Ok(sol),
            Err(SolverError::SolveFailure(_)) if l.is_dense() => null_space(l, opts),
            Err(e) => Err(e),
        },
    }
}

fn finish(
    l: &Liouvillian,
    x: &DVector<C64>,
    method: Method,
    opts: &SteadyOptions,
) -> Result<SteadyStateSolution, SolverError> {
    let d = l.hilbert_dim();
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(SolverError::SolveFailure(
            "non-finite solution vector".into(),
        ));
    }
    let rho = DensityMatrix::new_unchecked(unvectorize(x, d))
        .expect("square by construction")
        .hermitized();
    let residual = max_norm(l.apply(rho.matrix()).iter());
    if !(residual < opts.residual_tol) {
        return Err(SolverError::SolveFailure(format!(
            "residual ‖L[ρ]‖ = {residual:e} exceeds {:e}",
            opts.residual_tol
        )));
    }
    rho.check()?;
    Ok(SteadyStateSolution {
        rho,
        residual,
        method,
    })
}

/// Index of the row replaced by the trace functional.
fn trace_row(l: &Liouvillian) -> usize {
    l.dim() - 1
}

fn rhs(l: &Liouvillian) -> DVector<C64> {
    let mut b = DVector::zeros(l.dim());
    b[trace_row(l)] = C64::new(1.0, 0.0);
    b
}

fn linear_solve(l: &Liouvillian, opts: &SteadyOptions) -> Result<SteadyStateSolution, SolverError> {
    let d = l.hilbert_dim();
    let row = trace_row(l);
    let one = C64::new(1.0, 0.0);
    let x = if let Some(dense) = l.as_dense() {
        let mut a = dense.clone();
        a.row_mut(row).fill(C64::new(0.0, 0.0));
        for k in 0..d {
            a[(row, k * d + k)] = one;
        }
        let lu = a.lu();
        let u = lu.u();
        let pivots = u.diagonal().map(|z| z.norm());
        let (lo, hi) = (pivots.min(), pivots.max());
        if !(hi > 0.0) || lo < PIVOT_RATIO * hi {
            return Err(SolverError::SolveFailure(format!(
                "trace-constrained system is singular (pivot ratio {:e})",
                if hi > 0.0 { lo / hi } else { 0.0 }
            )));
        }
        lu.solve(&rhs(l))
            .ok_or_else(|| SolverError::SolveFailure("LU solve failed".into()))?
    } else {
        let s = l.as_sparse().expect("sparse when not dense");
        let a = replace_row_sparse(s, row, d);
        let out = gmres(&a, &rhs(l), 200, 200 * s.nrows().max(50), 1e-14);
        if !(out.relative_residual <= 1e-12) {
            return Err(SolverError::SolveFailure(format!(
                "GMRES stalled at relative residual {:e} after {} iterations",
                out.relative_residual, out.iterations
            )));
        }
        out.x
    };
    finish(l, &x, Method::LinearSolve, opts)
}

fn replace_row_sparse(s: &CsrMatrix<C64>, row: usize, d: usize) -> CsrMatrix<C64> {
    let mut coo = CooMatrix::new(s.nrows(), s.ncols());
    for (r, c, v) in s.triplet_iter() {
        if r != row {
            coo.push(r, c, *v);
        }
    }
    for k in 0..d {
        coo.push(row, k * d + k, C64::new(1.0, 0.0));
    }
    CsrMatrix::from(&coo)
}

/// Kernel vector by inverse iteration on L − σI with a tiny shift σ,
/// normalized to unit trace. Uniqueness is checked on the singular values.
fn null_space(l: &Liouvillian, opts: &SteadyOptions) -> Result<SteadyStateSolution, SolverError> {
    let dense = l.as_dense().ok_or_else(|| {
        SolverError::SolveFailure("null-space method requires dense storage".into())
    })?;
    let d = l.hilbert_dim();
    let scale = l.max_abs().max(f64::MIN_POSITIVE);

    let mut sv: Vec<f64> = dense.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| a.total_cmp(b));
    let thresh = opts.degeneracy_tol * sv.last().copied().unwrap_or(0.0);
    if sv.len() >= 2 && sv[1] < thresh {
        return Err(SolverError::NonUniqueSteadyState(sv[0], sv[1]));
    }

    let shift = C64::new(1e-10 * scale, 0.0);
    let shifted = dense - DMatrix::<C64>::identity(d * d, d * d) * shift;
    let lu = shifted.lu();
    let mut x = DVector::<C64>::zeros(d * d);
    for k in 0..d {
        x[k * d + k] = C64::new(1.0 / d as f64, 0.0);
    }
    for _ in 0..8 {
        let y = lu
            .solve(&x)
            .ok_or_else(|| SolverError::SolveFailure("shifted LU solve failed".into()))?;
        let n = y.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(SolverError::SolveFailure(
                "inverse iteration diverged".into(),
            ));
        }
        x = y / C64::new(n, 0.0);
        if max_norm((dense * &x).iter()) < 1e-3 * opts.residual_tol {
            break;
        }
    }
    let tr: C64 = (0..d).map(|k| x[k * d + k]).sum();
    if tr.norm() < 1e-300 {
        return Err(SolverError::SolveFailure(
            "kernel vector has zero trace".into(),
        ));
    }
    let x = x / tr;
    finish(l, &x, Method::NullSpace, opts)
}
