// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Exciton transport on chromophore networks under a Lindblad master
//! equation with injection, extraction and pure dephasing.
//!
//! The single-excitation space has the vacuum at index 0 and sites 1..=n.
//! Internal energies and rates are angular frequencies in ps⁻¹ (ħ = 1).

// Validity checks are written as `!(x < y)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
pub mod liouville;
pub mod net;
pub mod obs;
pub mod oracle;
pub mod solver;

use thiserror::Error;

pub use density::{DensityMatrix, StateError, C64};
pub use liouville::{
    apply_liouvillian, build_liouvillian, ChannelSet, Lindblad, LiouvilleError, Liouvillian,
    StorageMode,
};
pub use net::{
    assemble_hamiltonian, convert_units, detect_inversion_symmetry, generate_geometry,
    validate_network, Edge, Geometry, GeometrySpec, Hamiltonian, NetError, NetworkSpec, Site,
    SymmetryReport, Unit, ValueSpec,
};
pub use obs::{
    classify_sweep, delta_n, exciton_current, heat_current, occupations, ObsError, Occupations,
    SweepClassification, SweepCurve, SweepKind,
};
pub use oracle::{
    analytic_chain_current, analytic_chain_occupations, brute_force_steady_state, ChainParams,
    OracleError,
};
pub use solver::{
    propagate, steady_state, transfer_efficiency, Method, SolverError, SteadyStateSolution,
    Trajectory,
};

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Liouville(#[from] LiouvilleError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Obs(#[from] ObsError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    State(#[from] StateError),
}
