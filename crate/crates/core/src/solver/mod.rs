// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Steady states and time propagation of the Lindblad generator.

mod gmres;
mod propagate;
mod steady;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::density::StateError;
use crate::liouville::LiouvilleError;

pub use propagate::{
    propagate, propagate_with, transfer_efficiency, PropagateOptions, Record, Trajectory,
};
pub use steady::{steady_state, steady_state_with, SteadyOptions, SteadyStateSolution};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(
        "steady state is not unique: two smallest singular values {0:e}, {1:e} below threshold"
    )]
    NonUniqueSteadyState(f64, f64),
    #[error("steady-state solve failed: {0}")]
    SolveFailure(String),
    #[error("solution is not a physical state: {0}")]
    NonPhysicalState(#[from] StateError),
    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepSizeUnderflow { t: f64, h: f64 },
    #[error("integration exceeded {0} steps")]
    MaxStepsExceeded(usize),
    #[error("invalid propagation request: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Liouville(#[from] LiouvilleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// One row of L replaced by the trace functional, then LU (dense) or
    /// GMRES (sparse).
    LinearSolve,
    /// Null vector of L by shifted inverse iteration.
    NullSpace,
}
