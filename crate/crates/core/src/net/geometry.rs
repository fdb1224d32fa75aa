// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Generators for the standard network geometries.
//!
//! Site numbering:
//! - chain/ring: 1..=L along the chain, ring closes with (L, 1)
//! - grid(w, h): row-major, site (x, y) with 0-based x < w, y < h is `y*w + x + 1`
//! - cube: site `b + 1` for the 3-bit corner label b; edges join labels differing in one bit
//! - pyramid: base square 1-2-3-4-1, apex 5 coupled to every base site
//! - full graph: every pair i < j

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{validate_network, Edge, NetError, NetworkSpec, Unit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    Chain { len: usize },
    Ring { len: usize },
    Grid { width: usize, height: usize },
    Cube,
    FullGraph { n: usize },
    Pyramid,
}

/// How site energies or couplings are filled in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueSpec {
    Uniform(f64),
    /// Independent uniform draws on `[lo, hi)`.
    Random {
        lo: f64,
        hi: f64,
    },
}

impl ValueSpec {
    fn check(&self, what: &str) -> Result<(), NetError> {
        match *self {
            ValueSpec::Uniform(v) if !v.is_finite() => Err(NetError::InvalidSize(format!(
                "{what}: non-finite uniform value {v}"
            ))),
            ValueSpec::Random { lo, hi } if !(lo < hi) || !lo.is_finite() || !hi.is_finite() => {
                Err(NetError::InvalidSize(format!(
                    "{what}: random range requires finite lo < hi, got [{lo}, {hi}]"
                )))
            }
            _ => Ok(()),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            ValueSpec::Uniform(v) => v,
            ValueSpec::Random { lo, hi } => rng.random_range(lo..hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub geometry: Geometry,
    pub energies: ValueSpec,
    pub couplings: ValueSpec,
    pub seed: u64,
    pub inject: Vec<usize>,
    pub extract: Vec<usize>,
    pub unit: Unit,
}

impl GeometrySpec {
    pub fn generate(&self) -> Result<NetworkSpec, NetError> {
        generate_geometry(self)
    }
}

impl Geometry {
    pub fn n_sites(&self) -> usize {
        match *self {
            Geometry::Chain { len } | Geometry::Ring { len } => len,
            Geometry::Grid { width, height } => width * height,
            Geometry::Cube => 8,
            Geometry::FullGraph { n } => n,
            Geometry::Pyramid => 5,
        }
    }

    fn check(&self) -> Result<(), NetError> {
        let bad = |msg: String| Err(NetError::InvalidSize(msg));
        match *self {
            Geometry::Chain { len: 0 } => bad("chain length must be positive".into()),
            Geometry::Ring { len } if len < 3 => {
                bad(format!("ring needs at least 3 sites, got {len}"))
            }
            Geometry::Grid { width, height } if width == 0 || height == 0 => {
                bad(format!("grid {width}x{height} is empty"))
            }
            Geometry::FullGraph { n: 0 } => bad("full graph needs at least 1 site".into()),
            _ => Ok(()),
        }
    }

    /// Unweighted edge list (i < j), in a fixed order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match *self {
            Geometry::Chain { len } => (1..len).map(|i| (i, i + 1)).collect(),
            Geometry::Ring { len } => {
                let mut p: Vec<_> = (1..len).map(|i| (i, i + 1)).collect();
                p.push((1, len));
                p
            }
            Geometry::Grid { width, height } => {
                let idx = |x: usize, y: usize| y * width + x + 1;
                let mut p = Vec::new();
                for y in 0..height {
                    for x in 0..width {
                        if x + 1 < width {
                            p.push((idx(x, y), idx(x + 1, y)));
                        }
                        if y + 1 < height {
                            p.push((idx(x, y), idx(x, y + 1)));
                        }
                    }
                }
                p
            }
            Geometry::Cube => {
                let mut p = Vec::new();
                for a in 0..8usize {
                    for b in (a + 1)..8 {
                        if (a ^ b).count_ones() == 1 {
                            p.push((a + 1, b + 1));
                        }
                    }
                }
                p
            }
            Geometry::FullGraph { n } => (1..=n)
                .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
                .collect(),
            Geometry::Pyramid => vec![
                (1, 2),
                (2, 3),
                (3, 4),
                (1, 4),
                (1, 5),
                (2, 5),
                (3, 5),
                (4, 5),
            ],
        }
    }
}

/// Builds and validates a network of the requested geometry.
///
/// Random values come from a ChaCha8 stream seeded by `seed`: all site
/// energies first (site order), then all couplings (edge order).
pub fn generate_geometry(g: &GeometrySpec) -> Result<NetworkSpec, NetError> {
    g.geometry.check()?;
    g.energies.check("energies")?;
    g.couplings.check("couplings")?;

    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let n = g.geometry.n_sites();
    let energies: Vec<f64> = (0..n).map(|_| g.energies.draw(&mut rng)).collect();
    let edges = g
        .geometry
        .pairs()
        .into_iter()
        .map(|(i, j)| Edge::new(i, j, g.couplings.draw(&mut rng)))
        .collect();

    validate_network(NetworkSpec::new(
        g.unit,
        &energies,
        edges,
        g.inject.clone(),
        g.extract.clone(),
    ))
}
