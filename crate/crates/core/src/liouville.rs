// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad generator for injection, extraction and local dephasing.
//!
//! The state space is the vacuum |0⟩ plus one exciton on site |i⟩, i = 1..n.
//! With a†_s = |s⟩⟨0| and a_s = |0⟩⟨s| the generator is
//!
//! ```text
//! L[ρ] = −i[H, ρ] + Σ_{s ∈ inject} D[a†_s, Γ_inj] + Σ_{s ∈ extract} D[a_s, Γ_ext]
//!                 + Σ_{i = 1..n} D[a†_i a_i, Γ_deph]
//! D[V, γ](ρ) = γ (V ρ V† − ½{V†V, ρ})
//! ```
//!
//! Superoperators use column stacking, vec(A X B) = (Bᵀ ⊗ A) vec(X), so
//!
//! ```text
//! −i[H, ·]  ↦  −i (I ⊗ H − Hᵀ ⊗ I)
//! D[V, γ]   ↦  γ (V̄ ⊗ V − ½ I ⊗ V†V − ½ (V†V)ᵀ ⊗ I)
//! ```

use nalgebra::{DMatrix, DVector};
use nalgebra_sparse::{CooMatrix, CsrMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::density::{max_norm, unvectorize, vectorize, C64};
use crate::net::{assemble_hamiltonian, Hamiltonian, NetworkSpec};

/// Networks with more sites than this are stored sparse under
/// [`StorageMode::Auto`].
pub const DENSE_SITE_LIMIT: usize = 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LiouvilleError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rate {name} = {value} must be finite and nonnegative")]
    InvalidRate { name: &'static str, value: f64 },
}

/// Injection, extraction and dephasing rates in ps⁻¹ (or the network's
/// dimensionless unit).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSet {
    pub gamma_inj: f64,
    pub gamma_ext: f64,
    pub gamma_deph: f64,
}

impl ChannelSet {
    pub fn new(gamma_inj: f64, gamma_ext: f64, gamma_deph: f64) -> Result<Self, LiouvilleError> {
        let c = ChannelSet {
            gamma_inj,
            gamma_ext,
            gamma_deph,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), LiouvilleError> {
        for (name, value) in [
            ("gamma_inj", self.gamma_inj),
            ("gamma_ext", self.gamma_ext),
            ("gamma_deph", self.gamma_deph),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(LiouvilleError::InvalidRate { name, value });
            }
        }
        Ok(())
    }

    pub fn with_dephasing(self, gamma_deph: f64) -> Self {
        ChannelSet { gamma_deph, ..self }
    }
}

/// a†_site = |site⟩⟨0|
pub fn creation(dim: usize, site: usize) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(dim, dim);
    m[(site, 0)] = C64::new(1.0, 0.0);
    m
}

/// a_site = |0⟩⟨site|
pub fn annihilation(dim: usize, site: usize) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(dim, dim);
    m[(0, site)] = C64::new(1.0, 0.0);
    m
}

/// a†_site a_site = |site⟩⟨site|
pub fn number(dim: usize, site: usize) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(dim, dim);
    m[(site, site)] = C64::new(1.0, 0.0);
    m
}

/// Superoperator accumulated as (row, col, value) triplets.
#[derive(Debug, Default)]
struct Triplets {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl Triplets {
    fn new(dim: usize) -> Self {
        Triplets {
            dim,
            entries: Vec::new(),
        }
    }

    /// Adds scale · (a ⊗ b), skipping structural zeros.
    fn add_kron(&mut self, scale: C64, a: &DMatrix<C64>, b: &DMatrix<C64>) {
        let nb = b.nrows();
        let nz = |m: &DMatrix<C64>| {
            let mut v = Vec::new();
            for c in 0..m.ncols() {
                for r in 0..m.nrows() {
                    let x = m[(r, c)];
                    if x != C64::new(0.0, 0.0) {
                        v.push((r, c, x));
                    }
                }
            }
            v
        };
        let bnz = nz(b);
        for (ra, ca, xa) in nz(a) {
            for &(rb, cb, xb) in &bnz {
                self.entries
                    .push((ra * nb + rb, ca * nb + cb, scale * xa * xb));
            }
        }
    }

    fn add_dissipator(&mut self, v: &DMatrix<C64>, gamma: f64) {
        if gamma == 0.0 {
            return;
        }
        let d = v.nrows();
        let id = DMatrix::<C64>::identity(d, d);
        let vdv = v.adjoint() * v;
        let g = C64::new(gamma, 0.0);
        let half = C64::new(-0.5 * gamma, 0.0);
        self.add_kron(g, &v.map(|z| z.conj()), v);
        self.add_kron(half, &id, &vdv);
        self.add_kron(half, &vdv.transpose(), &id);
    }

    fn into_dense(self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, x) in self.entries {
            m[(r, c)] += x;
        }
        m
    }

    fn into_sparse(self) -> CsrMatrix<C64> {
        let mut coo = CooMatrix::new(self.dim, self.dim);
        for (r, c, x) in self.entries {
            coo.push(r, c, x);
        }
        CsrMatrix::from(&coo)
    }
}

/// Superoperator of γ(VρV† − ½{V†V, ρ}).
pub fn dissipator(v: &DMatrix<C64>, gamma: f64) -> Result<DMatrix<C64>, LiouvilleError> {
    if !v.is_square() {
        return Err(LiouvilleError::DimensionMismatch(format!(
            "Lindblad operator is {}x{}",
            v.nrows(),
            v.ncols()
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(LiouvilleError::InvalidRate {
            name: "gamma",
            value: gamma,
        });
    }
    let d = v.nrows();
    let mut t = Triplets::new(d * d);
    t.add_dissipator(v, gamma);
    Ok(t.into_dense())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StorageMode {
    /// Dense up to [`DENSE_SITE_LIMIT`] sites, sparse above.
    #[default]
    Auto,
    Dense,
    Sparse,
}

#[derive(Debug, Clone)]
enum Repr {
    Dense(DMatrix<C64>),
    Sparse(CsrMatrix<C64>),
}

/// Materialized generator acting on column-stacked density matrices.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    hilbert_dim: usize,
    repr: Repr,
}

impl Liouvillian {
    /// Wraps a dense superoperator for a `hilbert_dim`-dimensional space.
    pub fn from_dense(hilbert_dim: usize, m: DMatrix<C64>) -> Result<Self, LiouvilleError> {
        let d2 = hilbert_dim * hilbert_dim;
        if m.nrows() != d2 || m.ncols() != d2 {
            return Err(LiouvilleError::DimensionMismatch(format!(
                "superoperator is {}x{}, expected {d2}x{d2}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(Liouvillian {
            hilbert_dim,
            repr: Repr::Dense(m),
        })
    }

    pub fn hilbert_dim(&self) -> usize {
        self.hilbert_dim
    }

    /// Superoperator dimension, hilbert_dim².
    pub fn dim(&self) -> usize {
        self.hilbert_dim * self.hilbert_dim
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Repr::Dense(_))
    }

    pub fn as_dense(&self) -> Option<&DMatrix<C64>> {
        match &self.repr {
            Repr::Dense(m) => Some(m),
            Repr::Sparse(_) => None,
        }
    }

    pub fn as_sparse(&self) -> Option<&CsrMatrix<C64>> {
        match &self.repr {
            Repr::Sparse(m) => Some(m),
            Repr::Dense(_) => None,
        }
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Sparse(s) => {
                let mut m = DMatrix::zeros(s.nrows(), s.ncols());
                for (r, c, x) in s.triplet_iter() {
                    m[(r, c)] += *x;
                }
                m
            }
        }
    }

    pub fn apply_vector(&self, v: &DVector<C64>) -> DVector<C64> {
        match &self.repr {
            Repr::Dense(m) => m * v,
            Repr::Sparse(s) => {
                let mut out = DVector::zeros(s.nrows());
                for (r, row) in s.row_iter().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for (&c, x) in row.col_indices().iter().zip(row.values()) {
                        acc += x * v[c];
                    }
                    out[r] = acc;
                }
                out
            }
        }
    }

    pub fn apply(&self, rho: &DMatrix<C64>) -> DMatrix<C64> {
        unvectorize(&self.apply_vector(&vectorize(rho)), self.hilbert_dim)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        match &self.repr {
            Repr::Dense(m) => max_norm(m.iter()),
            Repr::Sparse(s) => max_norm(s.values()),
        }
    }
}

/// The generator in unmaterialized form: Hamiltonian, rates and site roles.
#[derive(Debug, Clone)]
pub struct Lindblad {
    h: DMatrix<C64>,
    channels: ChannelSet,
    inject: Vec<usize>,
    extract: Vec<usize>,
}

impl Lindblad {
    pub fn new(
        h: &Hamiltonian,
        channels: ChannelSet,
        spec: &NetworkSpec,
    ) -> Result<Self, LiouvilleError> {
        channels.validate()?;
        if h.dim() != spec.dim() {
            return Err(LiouvilleError::DimensionMismatch(format!(
                "Hamiltonian dimension {} but network has {} sites (+ vacuum)",
                h.dim(),
                spec.n_sites()
            )));
        }
        Ok(Lindblad {
            h: h.matrix().clone(),
            channels,
            inject: spec.inject.clone(),
            extract: spec.extract.clone(),
        })
    }

    /// Assembles the Hamiltonian of `spec` and wraps it with `channels`.
    pub fn from_network(spec: &NetworkSpec, channels: ChannelSet) -> Result<Self, LiouvilleError> {
        Self::new(&assemble_hamiltonian(spec), channels, spec)
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    pub fn n_sites(&self) -> usize {
        self.h.nrows() - 1
    }

    pub fn hamiltonian(&self) -> &DMatrix<C64> {
        &self.h
    }

    pub fn channels(&self) -> ChannelSet {
        self.channels
    }

    pub fn inject(&self) -> &[usize] {
        &self.inject
    }

    pub fn extract(&self) -> &[usize] {
        &self.extract
    }

    pub fn with_channels(&self, channels: ChannelSet) -> Result<Self, LiouvilleError> {
        channels.validate()?;
        Ok(Lindblad {
            channels,
            ..self.clone()
        })
    }

    pub fn build(&self, storage: StorageMode) -> Liouvillian {
        let d = self.dim();
        let mut t = Triplets::new(d * d);
        let id = DMatrix::<C64>::identity(d, d);
        let minus_i = C64::new(0.0, -1.0);
        t.add_kron(minus_i, &id, &self.h);
        t.add_kron(-minus_i, &self.h.transpose(), &id);
        for &s in &self.inject {
            t.add_dissipator(&creation(d, s), self.channels.gamma_inj);
        }
        for &s in &self.extract {
            t.add_dissipator(&annihilation(d, s), self.channels.gamma_ext);
        }
        for i in 1..d {
            t.add_dissipator(&number(d, i), self.channels.gamma_deph);
        }
        let sparse = match storage {
            StorageMode::Auto => self.n_sites() > DENSE_SITE_LIMIT,
            StorageMode::Dense => false,
            StorageMode::Sparse => true,
        };
        let repr = if sparse {
            Repr::Sparse(t.into_sparse())
        } else {
            Repr::Dense(t.into_dense())
        };
        Liouvillian {
            hilbert_dim: d,
            repr,
        }
    }

    fn check_dim(&self, rho: &DMatrix<C64>) -> Result<(), LiouvilleError> {
        let d = self.dim();
        if rho.nrows() != d || rho.ncols() != d {
            return Err(LiouvilleError::DimensionMismatch(format!(
                "ρ is {}x{}, generator acts on {d}x{d}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        Ok(())
    }

    /// L[ρ] evaluated directly on ρ.
    pub fn apply(&self, rho: &DMatrix<C64>) -> Result<DMatrix<C64>, LiouvilleError> {
        self.check_dim(rho)?;
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        self.apply_into(rho, &mut out);
        Ok(out)
    }

    /// Unchecked L[ρ] into a preallocated buffer.
    pub(crate) fn apply_into(&self, rho: &DMatrix<C64>, out: &mut DMatrix<C64>) {
        let minus_i = C64::new(0.0, -1.0);
        // out = −i(Hρ − ρH)
        out.gemm(minus_i, &self.h, rho, C64::new(0.0, 0.0));
        out.gemm(-minus_i, rho, &self.h, C64::new(1.0, 0.0));

        let c = self.channels;
        if c.gamma_inj != 0.0 {
            for &s in &self.inject {
                out[(s, s)] += rho[(0, 0)] * c.gamma_inj;
                anticommute_projector(rho, 0, -0.5 * c.gamma_inj, out);
            }
        }
        self.extraction_into(rho, out);
        if c.gamma_deph != 0.0 {
            for i in 1..self.dim() {
                out[(i, i)] += rho[(i, i)] * c.gamma_deph;
                anticommute_projector(rho, i, -0.5 * c.gamma_deph, out);
            }
        }
    }

    fn extraction_into(&self, rho: &DMatrix<C64>, out: &mut DMatrix<C64>) {
        let g = self.channels.gamma_ext;
        if g == 0.0 {
            return;
        }
        for &s in &self.extract {
            out[(0, 0)] += rho[(s, s)] * g;
            anticommute_projector(rho, s, -0.5 * g, out);
        }
    }

    /// The extraction part L_ext[ρ] alone.
    pub fn apply_extraction(&self, rho: &DMatrix<C64>) -> Result<DMatrix<C64>, LiouvilleError> {
        self.check_dim(rho)?;
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        self.extraction_into(rho, &mut out);
        Ok(out)
    }
}

/// out += scale · (P_k ρ + ρ P_k) with P_k = |k⟩⟨k|.
fn anticommute_projector(rho: &DMatrix<C64>, k: usize, scale: f64, out: &mut DMatrix<C64>) {
    let d = rho.nrows();
    for j in 0..d {
        out[(k, j)] += rho[(k, j)] * scale;
        out[(j, k)] += rho[(j, k)] * scale;
    }
}

/// Materialized generator with the default storage choice.
pub fn build_liouvillian(
    h: &Hamiltonian,
    channels: ChannelSet,
    spec: &NetworkSpec,
) -> Result<Liouvillian, LiouvilleError> {
    Ok(Lindblad::new(h, channels, spec)?.build(StorageMode::Auto))
}

/// L[ρ] without forming the superoperator.
pub fn apply_liouvillian(
    h: &Hamiltonian,
    channels: ChannelSet,
    spec: &NetworkSpec,
    rho: &DMatrix<C64>,
) -> Result<DMatrix<C64>, LiouvilleError> {
    Lindblad::new(h, channels, spec)?.apply(rho)
}
