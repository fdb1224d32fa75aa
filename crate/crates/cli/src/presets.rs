// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Named network setups. All use site energies of 12300 cm⁻¹ and
//! couplings of 60 cm⁻¹ unless random.
//!
//! | name  | geometry                | inject | extract | notes |
//! |-------|-------------------------|--------|---------|-------|
//! | fig1  | 7-chain                 | 1      | 7       | |
//! | fig2  | 7-chain                 | 1      | 5       | extraction site configurable |
//! | fig3a | 5×5 grid                | 1      | 25      | opposite corners |
//! | fig3b | 5×5 grid                | 1      | 24      | |
//! | fig3c | 6-ring                  | 1      | 4       | |
//! | fig3d | 6-ring                  | 1      | 4       | energies U[1e2, 1e5) cm⁻¹ |
//! | fig3e | cube                    | 1      | 8       | opposite corners |
//! | fig3f | cube                    | 1      | 8       | site 2 detuned by +100 cm⁻¹ |
//! | fig3g | 16-site full graph      | 1      | 15, 16  | energies U[1e2, 1e5), couplings U[30, 90) cm⁻¹ |
//! | fig3h | user-supplied network   | file   | file    | needs `--fmo-file` |
//! | fig3i | pyramid                 | 1      | 5       | base corner to apex |
//!
//! The cube pair differs by a detuning rather than by moving the sink:
//! every pair of cube vertices is exchanged by some involutive symmetry of
//! the graph, so no sink placement alone makes the cube asymmetric.

use std::path::Path;

use enaqt::net::{generate_geometry, Geometry, GeometrySpec, ValueSpec};
use enaqt::{NetworkSpec, Unit};

use crate::error::CliError;

pub const SITE_ENERGY: f64 = 12300.0;
pub const COUPLING: f64 = 60.0;
pub const FIG2_EXTRACT: usize = 5;
pub const FIG3D_SEED: u64 = 1;
pub const FIG3G_SEED: u64 = 1;
pub const FIG3F_DETUNING: f64 = 100.0;

pub const FIG3_NAMES: [&str; 9] = [
    "fig3a", "fig3b", "fig3c", "fig3d", "fig3e", "fig3f", "fig3g", "fig3h", "fig3i",
];

pub fn all_names() -> Vec<&'static str> {
    let mut v = vec!["fig1", "fig2"];
    v.extend(FIG3_NAMES);
    v
}

/// Knobs that change a preset network.
#[derive(Debug, Clone, Default)]
pub struct PresetOptions<'a> {
    /// Replaces the pinned seed of random presets.
    pub seed: Option<u64>,
    /// Extraction site for fig2.
    pub fig2_extract: Option<usize>,
    /// Network file standing in for the FMO complex (fig3h).
    pub fmo_file: Option<&'a Path>,
}

/// A resolved preset: the network and the seed it was drawn with.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: String,
    pub network: NetworkSpec,
    pub seed: Option<u64>,
}

fn uniform(geometry: Geometry, inject: Vec<usize>, extract: Vec<usize>) -> GeometrySpec {
    GeometrySpec {
        geometry,
        energies: ValueSpec::Uniform(SITE_ENERGY),
        couplings: ValueSpec::Uniform(COUPLING),
        seed: 0,
        inject,
        extract,
        unit: Unit::Wavenumber,
    }
}

pub fn preset(name: &str, opts: &PresetOptions) -> Result<Preset, CliError> {
    let fixed = |g: GeometrySpec| -> Result<(NetworkSpec, Option<u64>), CliError> {
        Ok((generate_geometry(&g)?, None))
    };
    let random = |g: GeometrySpec, pinned: u64| -> Result<(NetworkSpec, Option<u64>), CliError> {
        let seed = opts.seed.unwrap_or(pinned);
        Ok((generate_geometry(&GeometrySpec { seed, ..g })?, Some(seed)))
    };
    let chain7 = Geometry::Chain { len: 7 };
    let grid = Geometry::Grid {
        width: 5,
        height: 5,
    };
    let ring = Geometry::Ring { len: 6 };
    let (network, seed) = match name {
        "fig1" => fixed(uniform(chain7, vec![1], vec![7]))?,
        "fig2" => fixed(uniform(
            chain7,
            vec![1],
            vec![opts.fig2_extract.unwrap_or(FIG2_EXTRACT)],
        ))?,
        "fig3a" => fixed(uniform(grid, vec![1], vec![25]))?,
        "fig3b" => fixed(uniform(grid, vec![1], vec![24]))?,
        "fig3c" => fixed(uniform(ring, vec![1], vec![4]))?,
        "fig3d" => random(
            GeometrySpec {
                energies: ValueSpec::Random { lo: 1e2, hi: 1e5 },
                ..uniform(ring, vec![1], vec![4])
            },
            FIG3D_SEED,
        )?,
        "fig3e" => fixed(uniform(Geometry::Cube, vec![1], vec![8]))?,
        "fig3f" => {
            let (mut net, _) = fixed(uniform(Geometry::Cube, vec![1], vec![8]))?;
            net.sites[1].energy += FIG3F_DETUNING;
            (net, None)
        }
        "fig3g" => random(
            GeometrySpec {
                energies: ValueSpec::Random { lo: 1e2, hi: 1e5 },
                couplings: ValueSpec::Random { lo: 30.0, hi: 90.0 },
                ..uniform(Geometry::FullGraph { n: 16 }, vec![1], vec![15, 16])
            },
            FIG3G_SEED,
        )?,
        "fig3h" => match opts.fmo_file {
            Some(path) => (NetworkSpec::from_json_file(path)?, None),
            None => {
                return Err(CliError::MissingExternalData(
                    "fig3h needs the FMO exciton Hamiltonian, which is not distributed with \
                     this tool. Supply it as a network file with --fmo-file <path> (site \
                     energies and couplings as tabulated by Cho, Vaswani, Brixner, Stenger and \
                     Fleming, J. Phys. Chem. B 109, 10542 (2005))."
                        .into(),
                ))
            }
        },
        "fig3i" => fixed(uniform(Geometry::Pyramid, vec![1], vec![5]))?,
        other => return Err(CliError::UnknownPreset(other.into())),
    };
    Ok(Preset {
        name: name.into(),
        network,
        seed,
    })
}

/// Expands `fig3` to its sub-figures; other names pass through.
pub fn expand(name: &str) -> Vec<&str> {
    if name == "fig3" {
        FIG3_NAMES.to_vec()
    } else {
        vec![name]
    }
}
