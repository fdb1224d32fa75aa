// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Observables of a density matrix and classification of dephasing sweeps.
//!
//! Currents are outflows through the extraction channel: J_p counts
//! excitons per ps leaving the network, J_q the energy they carry. Both are
//! minus the rate of change of ⟨n̂⟩ and ⟨H⟩ under the extraction dissipator.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::density::{vectorize, DensityMatrix, C64};
use crate::liouville::{annihilation, dissipator, ChannelSet};

/// Floor for occupations and currents; also the bound on imaginary parts of
/// diagonal entries.
pub const OCCUPATION_TOL: f64 = 1e-10;
/// Default relative prominence of an interior current maximum.
pub const DEFAULT_REL_TOL: f64 = 1e-3;
pub const MIN_SWEEP_POINTS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObsError {
    #[error("non-physical state: {0}")]
    NonPhysicalState(String),
    #[error("sweep has {0} points, at least {MIN_SWEEP_POINTS} are needed")]
    GridTooCoarse(usize),
    #[error("malformed sweep curve: {0}")]
    InvalidCurve(String),
    #[error("site {site} outside 1..={n_sites}")]
    SiteOutOfRange { site: usize, n_sites: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Occupations {
    pub vacuum: f64,
    /// n_i for sites 1..=n, stored 0-based.
    pub values: Vec<f64>,
}

impl Occupations {
    /// Checked constructor for occupations not read off a single state,
    /// such as time averages.
    pub fn from_parts(vacuum: f64, values: Vec<f64>) -> Result<Self, ObsError> {
        let occ = Occupations { vacuum, values };
        occ.check()?;
        Ok(occ)
    }

    pub fn n_sites(&self) -> usize {
        self.values.len()
    }

    /// Occupation of site `s` (1-based).
    pub fn site(&self, s: usize) -> f64 {
        self.values[s - 1]
    }

    pub fn total(&self) -> f64 {
        self.vacuum + self.values.iter().sum::<f64>()
    }

    fn check(&self) -> Result<(), ObsError> {
        let all = std::iter::once(&self.vacuum).chain(&self.values);
        if let Some(v) = all.clone().find(|v| !(**v >= -OCCUPATION_TOL)) {
            return Err(ObsError::NonPhysicalState(format!("occupation {v:e}")));
        }
        let total = self.total();
        if (total - 1.0).abs() > OCCUPATION_TOL {
            return Err(ObsError::NonPhysicalState(format!(
                "occupations sum to {total}"
            )));
        }
        Ok(())
    }
}

/// Diagonal of ρ: vacuum and per-site populations.
pub fn occupations(rho: &DensityMatrix) -> Result<Occupations, ObsError> {
    let m = rho.matrix();
    let diag: Vec<C64> = (0..m.nrows()).map(|k| m[(k, k)]).collect();
    if let Some(z) = diag.iter().find(|z| z.im.abs() >= OCCUPATION_TOL) {
        return Err(ObsError::NonPhysicalState(format!(
            "diagonal entry {z} is not real"
        )));
    }
    let occ = Occupations {
        vacuum: diag[0].re,
        values: diag[1..].iter().map(|z| z.re).collect(),
    };
    occ.check()?;
    Ok(occ)
}

/// J_p = Σ_s Γ_ext ρ_ss over extraction sites.
pub fn exciton_current(rho: &DMatrix<C64>, channels: &ChannelSet, extract: &[usize]) -> f64 {
    extract
        .iter()
        .map(|&s| channels.gamma_ext * rho[(s, s)].re)
        .sum()
}

/// J_q = Γ_ext Σ_e Re[H_ee ρ_ee + ½ Σ_{j≠e} (H_ej ρ_je + ρ_ej H_je)].
///
/// `h` is the Hamiltonian in the units the currents should carry. The
/// coupling terms use the matrix element H_ej = −t_ej.
pub fn heat_current(
    rho: &DMatrix<C64>,
    h: &DMatrix<C64>,
    channels: &ChannelSet,
    extract: &[usize],
) -> f64 {
    let mut total = 0.0;
    for &e in extract {
        let mut acc = h[(e, e)] * rho[(e, e)];
        for j in 0..h.nrows() {
            if j != e {
                acc += (h[(e, j)] * rho[(j, e)] + rho[(e, j)] * h[(j, e)]) * 0.5;
            }
        }
        total += acc.re;
    }
    channels.gamma_ext * total
}

/// n̂ = Σ_i |i⟩⟨i| over sites (vacuum excluded).
pub fn number_operator(dim: usize) -> DMatrix<C64> {
    let mut n = DMatrix::identity(dim, dim);
    n[(0, 0)] = C64::new(0.0, 0.0);
    n
}

/// −Re Tr(X · L_ext[ρ]) with L_ext materialized as a superoperator.
///
/// Shares no code with the closed forms above, which is the point: with
/// X = n̂ it reproduces [`exciton_current`], with X = H [`heat_current`].
pub fn extraction_outflow(
    observable: &DMatrix<C64>,
    rho: &DMatrix<C64>,
    channels: &ChannelSet,
    extract: &[usize],
) -> f64 {
    let d = rho.nrows();
    let v = vectorize(rho);
    let mut out = DMatrix::<C64>::zeros(d, d);
    for &s in extract {
        let sup = dissipator(&annihilation(d, s), channels.gamma_ext)
            .expect("finite non-negative extraction rate");
        out += DMatrix::from_column_slice(d, d, (sup * &v).as_slice());
    }
    -(observable * out).trace().re
}

/// Δₙ = 1 − √(Σ_i (n_i − n_ext)²), n_ext the mean occupation over sinks.
/// Can be negative for widely spread occupations; not clamped.
pub fn delta_n(occ: &Occupations, extract: &[usize]) -> Result<f64, ObsError> {
    if extract.is_empty() {
        return Err(ObsError::InvalidCurve("no extraction sites".into()));
    }
    let n = occ.n_sites();
    if let Some(&site) = extract.iter().find(|&&s| s == 0 || s > n) {
        return Err(ObsError::SiteOutOfRange { site, n_sites: n });
    }
    let n_ext = extract.iter().map(|&s| occ.site(s)).sum::<f64>() / extract.len() as f64;
    let spread: f64 = occ.values.iter().map(|v| (v - n_ext).powi(2)).sum();
    Ok(1.0 - spread.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCurve {
    pub gamma_grid: Vec<f64>,
    pub j_p: Vec<f64>,
    pub j_q: Vec<f64>,
    pub delta_n: Vec<f64>,
    pub occupations: Vec<Occupations>,
}

impl SweepCurve {
    pub fn len(&self) -> usize {
        self.gamma_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma_grid.is_empty()
    }

    pub fn validate(&self) -> Result<(), ObsError> {
        let n = self.len();
        for (name, len) in [
            ("j_p", self.j_p.len()),
            ("j_q", self.j_q.len()),
            ("delta_n", self.delta_n.len()),
            ("occupations", self.occupations.len()),
        ] {
            if len != n {
                return Err(ObsError::InvalidCurve(format!(
                    "{name} has {len} entries for {n} grid points"
                )));
            }
        }
        if let Some(w) = self.gamma_grid.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(ObsError::InvalidCurve(format!(
                "grid not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        if let Some(j) = self.j_p.iter().find(|j| !(**j >= -1e-12)) {
            return Err(ObsError::InvalidCurve(format!(
                "negative exciton current {j:e}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    MonotonicDecreasing,
    Enaqt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepClassification {
    pub kind: SweepKind,
    /// Γ_deph of the interior current maximum; only for `Enaqt`.
    pub gamma_star: Option<f64>,
    /// Γ_deph of the Δₙ maximum.
    pub delta_n_gamma_star: Option<f64>,
    pub j_p_argmax: usize,
    pub delta_n_argmax: usize,
}

/// First index of the largest value.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = k;
        }
    }
    best
}

pub fn classify_sweep(curve: &SweepCurve) -> Result<SweepClassification, ObsError> {
    classify_sweep_with(curve, DEFAULT_REL_TOL)
}

/// ENAQT iff the J_p maximum is interior and exceeds both endpoint values
/// by more than `rel_tol · J_max`.
pub fn classify_sweep_with(
    curve: &SweepCurve,
    rel_tol: f64,
) -> Result<SweepClassification, ObsError> {
    if curve.len() < MIN_SWEEP_POINTS {
        return Err(ObsError::GridTooCoarse(curve.len()));
    }
    curve.validate()?;
    let n = curve.len();
    let k = argmax(&curve.j_p);
    let j_max = curve.j_p[k];
    let margin = rel_tol * j_max;
    let enaqt =
        k > 0 && k + 1 < n && j_max - curve.j_p[0] > margin && j_max - curve.j_p[n - 1] > margin;
    let dn = argmax(&curve.delta_n);
    Ok(SweepClassification {
        kind: if enaqt {
            SweepKind::Enaqt
        } else {
            SweepKind::MonotonicDecreasing
        },
        gamma_star: enaqt.then(|| curve.gamma_grid[k]),
        delta_n_gamma_star: Some(curve.gamma_grid[dn]),
        j_p_argmax: k,
        delta_n_argmax: dn,
    })
}
