// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Exciton network specifications.
//!
//! A network is a set of chromophore sites with on-site energies, real
//! hopping couplings between site pairs, and two disjoint site sets where
//! excitons are injected (source) and extracted (sink). Site indices are
//! 1-based throughout, index 0 being reserved for the vacuum state of the
//! single-excitation Hilbert space.
//!
//! The on-disk form is a JSON object:
//!
//! ```json
//! {
//!   "unit": "wavenumber",
//!   "sites": [{"energy": 12300.0}, {"energy": 12300.0}],
//!   "edges": [{"i": 1, "j": 2, "t": 60.0}],
//!   "inject": [1],
//!   "extract": [2]
//! }
//! ```
//!
//! `unit` is one of `wavenumber` (cm⁻¹), `angular_ps` (rad ps⁻¹, ħ = 1) or
//! `dimensionless`. Unknown keys are rejected.

mod geometry;
mod hamiltonian;
mod symmetry;
mod units;

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use geometry::{generate_geometry, Geometry, GeometrySpec, ValueSpec};
pub use hamiltonian::{assemble_hamiltonian, Hamiltonian};
pub use symmetry::{
    detect_inversion_symmetry, detect_inversion_symmetry_with, SymmetryOptions, SymmetryReport,
};
pub use units::{convert_units, Unit, WAVENUMBER_TO_ANGULAR_PS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("network has no sites")]
    NoSites,
    #[error("{field}: site index {index} outside 1..={n_sites}")]
    IndexOutOfRange {
        field: String,
        index: usize,
        n_sites: usize,
    },
    #[error("{field}: duplicate coupling between sites {i} and {j}")]
    DuplicateEdge { field: String, i: usize, j: usize },
    #[error("{field}: site {site} listed twice")]
    DuplicateSite { field: String, site: usize },
    #[error("{field}: site {site} coupled to itself")]
    SelfCoupling { field: String, site: usize },
    #[error("inject/extract: site {site} is both a source and a sink")]
    OverlappingSourceSink { site: usize },
    #[error("{field}: site set is empty")]
    EmptySiteSet { field: String },
    #[error("{field}: non-finite value {value}")]
    NonFinite { field: String, value: f64 },
    #[error("unknown unit `{0}` (expected wavenumber, angular_ps or dimensionless)")]
    UnknownUnit(String),
    #[error("invalid geometry size: {0}")]
    InvalidSize(String),
    #[error("symmetry search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("network file: {0}")]
    Io(String),
    #[error("network file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Site {
    pub energy: f64,
}

/// Undirected coupling `t` between sites `i` and `j` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub t: f64,
}

impl Edge {
    pub fn new(i: usize, j: usize, t: f64) -> Self {
        Edge { i, j, t }
    }

    /// The pair as (min, max).
    pub fn key(&self) -> (usize, usize) {
        (self.i.min(self.j), self.i.max(self.j))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    pub unit: Unit,
    pub sites: Vec<Site>,
    pub edges: Vec<Edge>,
    pub inject: Vec<usize>,
    pub extract: Vec<usize>,
}

impl NetworkSpec {
    pub fn new(
        unit: Unit,
        energies: &[f64],
        edges: Vec<Edge>,
        inject: Vec<usize>,
        extract: Vec<usize>,
    ) -> Self {
        NetworkSpec {
            unit,
            sites: energies.iter().map(|&energy| Site { energy }).collect(),
            edges,
            inject,
            extract,
        }
    }

    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    /// Hilbert-space dimension: sites plus the vacuum.
    pub fn dim(&self) -> usize {
        self.sites.len() + 1
    }

    pub fn energies(&self) -> Vec<f64> {
        self.sites.iter().map(|s| s.energy).collect()
    }

    /// Copy with energies and couplings converted to angular ps⁻¹.
    /// Dimensionless networks are returned as they are.
    pub fn to_internal_units(&self) -> NetworkSpec {
        let target = match self.unit {
            Unit::Dimensionless => Unit::Dimensionless,
            _ => Unit::AngularPs,
        };
        let conv = |v: f64| convert_units(v, self.unit, target);
        NetworkSpec {
            unit: target,
            sites: self
                .sites
                .iter()
                .map(|s| Site {
                    energy: conv(s.energy),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.i, e.j, conv(e.t)))
                .collect(),
            inject: self.inject.clone(),
            extract: self.extract.clone(),
        }
    }

    /// Applies a site relabeling `perm[old - 1] = new` (1-based targets).
    pub fn relabeled(&self, perm: &[usize]) -> NetworkSpec {
        let n = self.n_sites();
        let mut sites = vec![Site { energy: 0.0 }; n];
        for (old, site) in self.sites.iter().enumerate() {
            sites[perm[old] - 1] = *site;
        }
        let map = |s: &usize| perm[*s - 1];
        NetworkSpec {
            unit: self.unit,
            sites,
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(map(&e.i), map(&e.j), e.t))
                .collect(),
            inject: self.inject.iter().map(map).collect(),
            extract: self.extract.iter().map(map).collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<NetworkSpec, NetError> {
        let spec: NetworkSpec =
            serde_json::from_str(text).map_err(|e| NetError::Parse(e.to_string()))?;
        validate_network(spec)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<NetworkSpec, NetError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| NetError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }
}

/// Checks every structural invariant of a parsed network.
pub fn validate_network(spec: NetworkSpec) -> Result<NetworkSpec, NetError> {
    let n = spec.n_sites();
    if n == 0 {
        return Err(NetError::NoSites);
    }
    for (k, site) in spec.sites.iter().enumerate() {
        if !site.energy.is_finite() {
            return Err(NetError::NonFinite {
                field: format!("sites[{k}].energy"),
                value: site.energy,
            });
        }
    }

    let in_range = |field: String, index: usize| {
        if index == 0 || index > n {
            Err(NetError::IndexOutOfRange {
                field,
                index,
                n_sites: n,
            })
        } else {
            Ok(())
        }
    };

    let mut seen = HashSet::new();
    for (k, e) in spec.edges.iter().enumerate() {
        let field = format!("edges[{k}]");
        in_range(field.clone(), e.i)?;
        in_range(field.clone(), e.j)?;
        if e.i == e.j {
            return Err(NetError::SelfCoupling { field, site: e.i });
        }
        if !e.t.is_finite() {
            return Err(NetError::NonFinite { field, value: e.t });
        }
        let (i, j) = e.key();
        if !seen.insert((i, j)) {
            return Err(NetError::DuplicateEdge { field, i, j });
        }
    }

    for (name, set) in [("inject", &spec.inject), ("extract", &spec.extract)] {
        if set.is_empty() {
            return Err(NetError::EmptySiteSet { field: name.into() });
        }
        let mut uniq = HashSet::new();
        for (k, &s) in set.iter().enumerate() {
            in_range(format!("{name}[{k}]"), s)?;
            if !uniq.insert(s) {
                return Err(NetError::DuplicateSite {
                    field: format!("{name}[{k}]"),
                    site: s,
                });
            }
        }
    }
    if let Some(&site) = spec.inject.iter().find(|s| spec.extract.contains(s)) {
        return Err(NetError::OverlappingSourceSink { site });
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_site() -> NetworkSpec {
        NetworkSpec::new(
            Unit::Dimensionless,
            &[0.0, 0.0],
            vec![Edge::new(1, 2, 1.0)],
            vec![1],
            vec![2],
        )
    }

    #[test]
    fn minimal_chain_is_valid() {
        let spec = two_site();
        assert_eq!(validate_network(spec.clone()).unwrap(), spec);
    }

    #[test]
    fn self_coupling() {
        let mut spec = two_site();
        spec.edges.push(Edge::new(1, 1, 0.5));
        match validate_network(spec) {
            Err(NetError::SelfCoupling { field, site }) => {
                assert_eq!(field, "edges[1]");
                assert_eq!(site, 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inject_out_of_range() {
        let mut spec = two_site();
        spec.inject = vec![3];
        assert!(matches!(
            validate_network(spec),
            Err(NetError::IndexOutOfRange { ref field, index: 3, n_sites: 2 }) if field == "inject[0]"
        ));
    }

    #[test]
    fn duplicate_edge_either_orientation() {
        let mut spec = two_site();
        spec.edges.push(Edge::new(2, 1, 1.0));
        assert!(matches!(
            validate_network(spec),
            Err(NetError::DuplicateEdge { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn overlapping_source_sink() {
        let mut spec = two_site();
        spec.extract = vec![2, 1];
        assert!(matches!(
            validate_network(spec),
            Err(NetError::OverlappingSourceSink { site: 1 })
        ));
    }

    #[test]
    fn empty_sets_and_sites() {
        let mut spec = two_site();
        spec.extract.clear();
        assert!(matches!(
            validate_network(spec),
            Err(NetError::EmptySiteSet { .. })
        ));
        let spec = NetworkSpec::new(Unit::Dimensionless, &[], vec![], vec![1], vec![2]);
        assert_eq!(validate_network(spec), Err(NetError::NoSites));
    }

    #[test]
    fn json_schema() {
        let text = r#"{
            "unit": "wavenumber",
            "sites": [{"energy": 12300.0}, {"energy": 12300.0}],
            "edges": [{"i": 1, "j": 2, "t": 60.0}],
            "inject": [1],
            "extract": [2]
        }"#;
        let spec = NetworkSpec::from_json_str(text).unwrap();
        assert_eq!(spec.unit, Unit::Wavenumber);
        assert_eq!(spec.edges, vec![Edge::new(1, 2, 60.0)]);

        let unknown_key = text.replace("\"inject\"", "\"source\"");
        assert!(matches!(
            NetworkSpec::from_json_str(&unknown_key),
            Err(NetError::Parse(_))
        ));
        let bad_unit = text.replace("wavenumber", "hartree");
        let err = NetworkSpec::from_json_str(&bad_unit).unwrap_err();
        assert!(err.to_string().contains("unknown unit"), "{err}");
        let bad_index = text.replace("\"j\": 2", "\"j\": 9");
        assert!(matches!(
            NetworkSpec::from_json_str(&bad_index),
            Err(NetError::IndexOutOfRange { index: 9, .. })
        ));
    }
}
