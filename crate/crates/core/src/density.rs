// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Complex, DMatrix, DVector};
use thiserror::Error;

pub type C64 = Complex<f64>;

/// Elementwise tolerance on ρ − ρ†.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on |Tr ρ − 1|.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted.
pub const EIGEN_FLOOR: f64 = -1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("density matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("density matrix not Hermitian: max |ρ - ρ†| = {0:e}")]
    NotHermitian(f64),
    #[error("density matrix trace {0} differs from 1")]
    TraceNotOne(C64),
    #[error("density matrix has negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),
}

/// Hermitian, unit-trace, positive semidefinite matrix on the
/// vacuum-plus-sites space (index 0 is the vacuum).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates all invariants.
    pub fn new(matrix: DMatrix<C64>) -> Result<Self, StateError> {
        let rho = Self::new_unchecked(matrix)?;
        rho.check()?;
        Ok(rho)
    }

    /// Only checks the shape. Integrator intermediates and test fixtures
    /// go through here.
    pub fn new_unchecked(matrix: DMatrix<C64>) -> Result<Self, StateError> {
        if !matrix.is_square() {
            return Err(StateError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn vacuum(dim: usize) -> Self {
        Self::basis_projector(dim, 0)
    }

    /// |k⟩⟨k| for site k (1-based) or the vacuum (k = 0).
    pub fn basis_projector(dim: usize, k: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(k, k)] = C64::new(1.0, 0.0);
        DensityMatrix { matrix: m }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            matrix: DMatrix::identity(dim, dim) / C64::new(dim as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn hermitian_defect(&self) -> f64 {
        let m = &self.matrix;
        let d = m.nrows();
        let mut worst = 0.0f64;
        for c in 0..d {
            for r in 0..d {
                worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        self.hermitian_part()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    fn hermitian_part(&self) -> DMatrix<C64> {
        (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0)
    }

    /// (ρ + ρ†)/2
    pub fn hermitized(&self) -> Self {
        DensityMatrix {
            matrix: self.hermitian_part(),
        }
    }

    pub fn check(&self) -> Result<(), StateError> {
        let defect = self.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(StateError::NotHermitian(defect));
        }
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(StateError::TraceNotOne(tr));
        }
        let min = self.min_eigenvalue();
        if min < EIGEN_FLOOR {
            return Err(StateError::NegativeEigenvalue(min));
        }
        Ok(())
    }

    /// Column-stacking vectorization: vec(ρ)[c·d + r] = ρ[r, c].
    pub fn to_vector(&self) -> DVector<C64> {
        vectorize(&self.matrix)
    }
}

/// Largest modulus over a set of entries (max norm).
pub fn max_norm<'a>(entries: impl IntoIterator<Item = &'a C64>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn vectorize(m: &DMatrix<C64>) -> DVector<C64> {
    DVector::from_column_slice(m.as_slice())
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &DVector<C64>, dim: usize) -> DMatrix<C64> {
    assert_eq!(v.len(), dim * dim, "vector length is not dim²");
    DMatrix::from_column_slice(dim, dim, v.as_slice())
}
