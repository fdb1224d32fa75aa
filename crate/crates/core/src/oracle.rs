// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent references for the steady-state pipeline: the closed-form
//! occupations of a uniform end-to-end chain and a brute-force kernel
//! vector from a full singular value decomposition.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::density::{DensityMatrix, StateError, C64};
use crate::liouville::{ChannelSet, Liouvillian};
use crate::net::{Edge, NetworkSpec, Unit};
use crate::obs::Occupations;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),
    #[error("invalid chain parameters: {0}")]
    InvalidParams(String),
    #[error("steady state is not unique: two smallest singular values {0:e}, {1:e}")]
    NonUniqueSteadyState(f64, f64),
    #[error("kernel vector is not a physical state: {0}")]
    NonPhysicalState(#[from] StateError),
}

/// Uniform chain of `len` sites, injection at 1, extraction at `len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    pub len: usize,
    pub t: f64,
    pub gamma_inj: f64,
    pub gamma_ext: f64,
    pub gamma_deph: f64,
}

impl ChainParams {
    /// The same chain as a network (zero site energies, dimensionless).
    pub fn network(&self) -> NetworkSpec {
        NetworkSpec::new(
            Unit::Dimensionless,
            &vec![0.0; self.len],
            (1..self.len).map(|i| Edge::new(i, i + 1, self.t)).collect(),
            vec![1],
            vec![self.len],
        )
    }

    pub fn channels(&self) -> ChannelSet {
        ChannelSet {
            gamma_inj: self.gamma_inj,
            gamma_ext: self.gamma_ext,
            gamma_deph: self.gamma_deph,
        }
    }
}

/// n_i = m_i / (Σ_j m_j + (Γ_ext/Γ_inj) m_L) with
/// m_i = 4t² + (2(L−i)Γ_deph Γ_ext + Γ_ext²)(1 − δ_iL).
pub fn analytic_chain_occupations(p: &ChainParams) -> Result<Occupations, OracleError> {
    if p.gamma_inj == 0.0 {
        return Err(OracleError::DivisionByZero("gamma_inj = 0"));
    }
    if p.len < 2 {
        return Err(OracleError::InvalidParams(format!(
            "chain length {}",
            p.len
        )));
    }
    let l = p.len;
    let m: Vec<f64> = (1..=l)
        .map(|i| {
            let tail = if i == l {
                0.0
            } else {
                2.0 * (l - i) as f64 * p.gamma_deph * p.gamma_ext + p.gamma_ext * p.gamma_ext
            };
            4.0 * p.t * p.t + tail
        })
        .collect();
    let denom = m.iter().sum::<f64>() + p.gamma_ext / p.gamma_inj * m[l - 1];
    if denom == 0.0 {
        return Err(OracleError::DivisionByZero("occupation normalization"));
    }
    let values: Vec<f64> = m.iter().map(|mi| mi / denom).collect();
    let vacuum = 1.0 - values.iter().sum::<f64>();
    Ok(Occupations { vacuum, values })
}

/// Γ_ext · n_L.
pub fn analytic_chain_current(p: &ChainParams) -> Result<f64, OracleError> {
    let occ = analytic_chain_occupations(p)?;
    Ok(p.gamma_ext * occ.site(p.len))
}

/// Kernel of the materialized generator via full SVD: the right singular
/// vector of the smallest singular value, reshaped, Hermitized and scaled
/// to unit trace.
pub fn brute_force_steady_state(l: &Liouvillian) -> Result<DensityMatrix, OracleError> {
    let d = l.hilbert_dim();
    let svd = l.to_dense().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^H");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let norm = svd.singular_values[*order.last().expect("non-empty")];
    let (s0, s1) = (svd.singular_values[order[0]], svd.singular_values[order[1]]);
    if s1 < 1e-12 * norm {
        return Err(OracleError::NonUniqueSteadyState(s0, s1));
    }
    // Row k of V^H is the conjugate of the k-th right singular vector.
    let row = v_t.row(order[0]);
    let m = DMatrix::from_fn(d, d, |r, c| row[c * d + r].conj());
    let tr: C64 = m.trace();
    let rho = DensityMatrix::new_unchecked(m / tr)
        .expect("square")
        .hermitized();
    rho.check()?;
    Ok(rho)
}
