// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Networks shared by the benchmarks.

use enaqt::net::{generate_geometry, Geometry, GeometrySpec, ValueSpec};
use enaqt::{NetworkSpec, Unit};

/// Uniform network in physical units (12300 cm⁻¹ sites, 60 cm⁻¹ couplings),
/// converted to internal units.
pub fn network(geometry: Geometry, inject: usize, extract: usize) -> NetworkSpec {
    generate_geometry(&GeometrySpec {
        geometry,
        energies: ValueSpec::Uniform(12300.0),
        couplings: ValueSpec::Uniform(60.0),
        seed: 0,
        inject: vec![inject],
        extract: vec![extract],
        unit: Unit::Wavenumber,
    })
    .expect("valid benchmark network")
    .to_internal_units()
}

pub fn chain7() -> NetworkSpec {
    network(Geometry::Chain { len: 7 }, 1, 5)
}

pub fn grid5() -> NetworkSpec {
    network(
        Geometry::Grid {
            width: 5,
            height: 5,
        },
        1,
        24,
    )
}

pub fn chain40() -> NetworkSpec {
    network(Geometry::Chain { len: 40 }, 1, 40)
}
