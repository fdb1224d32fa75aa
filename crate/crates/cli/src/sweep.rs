// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use enaqt::obs::{delta_n, exciton_current, heat_current, occupations, Occupations};
use enaqt::solver::{propagate_with, transfer_efficiency, PropagateOptions, Record};
use enaqt::{
    classify_sweep, steady_state, ChannelSet, DensityMatrix, Lindblad, StorageMode,
    SweepClassification, SweepCurve,
};

use crate::config::{Mode, SweepConfig};
use crate::error::CliError;

/// One evaluated grid point.
#[derive(Debug, Clone)]
pub struct PointResult {
    pub gamma_deph: f64,
    pub j_p: f64,
    pub j_q: f64,
    pub delta_n: f64,
    pub occupations: Occupations,
    /// Steady mode: the solved state. Pulse mode: ρ(T).
    pub state: DensityMatrix,
    /// Steady mode: ‖L[ρ]‖_max. Pulse mode: 0.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub config: SweepConfig,
    pub curve: SweepCurve,
    pub classification: SweepClassification,
    pub points: Vec<PointResult>,
}

/// Runs every grid point on a pool of `workers` threads (0 = all cores).
/// Results are assembled in grid order, so the output does not depend on
/// the worker count.
pub fn run_sweep(cfg: &SweepConfig, workers: usize) -> Result<SweepOutput, CliError> {
    cfg.validate()?;
    let internal = cfg.network.to_internal_units();
    let base =
        ChannelSet::new(cfg.gamma_inj, cfg.gamma_ext, 0.0).map_err(|e| CliError::Core(e.into()))?;
    let base = match cfg.mode {
        Mode::Steady => base,
        Mode::Pulse { .. } => ChannelSet {
            gamma_inj: 0.0,
            ..base
        },
    };
    let lindblad = Lindblad::from_network(&internal, base).map_err(|e| CliError::Core(e.into()))?;
    let grid = cfg.grid.values();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;
    let points: Vec<PointResult> = pool.install(|| {
        grid.par_iter()
            .map(|&g| {
                evaluate(&lindblad, &cfg.mode, g)
                    .map_err(|source| CliError::Point { gamma: g, source })
            })
            .collect::<Result<_, _>>()
    })?;

    let curve = SweepCurve {
        gamma_grid: grid,
        j_p: points.iter().map(|p| p.j_p).collect(),
        j_q: points.iter().map(|p| p.j_q).collect(),
        delta_n: points.iter().map(|p| p.delta_n).collect(),
        occupations: points.iter().map(|p| p.occupations.clone()).collect(),
    };
    let classification = classify_sweep(&curve).map_err(|e| CliError::Core(e.into()))?;
    Ok(SweepOutput {
        config: cfg.clone(),
        curve,
        classification,
        points,
    })
}

/// Observables at a single dephasing rate.
pub fn evaluate(
    base: &Lindblad,
    mode: &Mode,
    gamma_deph: f64,
) -> Result<PointResult, enaqt::Error> {
    let lb = base.with_channels(base.channels().with_dephasing(gamma_deph))?;
    let ch = lb.channels();
    let extract = lb.extract().to_vec();
    match *mode {
        Mode::Steady => {
            let sol = steady_state(&lb.build(StorageMode::Auto))?;
            let m = sol.rho.matrix();
            let occ = occupations(&sol.rho)?;
            Ok(PointResult {
                gamma_deph,
                j_p: exciton_current(m, &ch, &extract),
                j_q: heat_current(m, lb.hamiltonian(), &ch, &extract),
                delta_n: delta_n(&occ, &extract)?,
                occupations: occ,
                state: sol.rho,
                residual: sol.residual,
            })
        }
        Mode::Pulse {
            horizon,
            start_site,
        } => {
            let rho0 = DensityMatrix::basis_projector(lb.dim(), start_site);
            let opts = PropagateOptions {
                record: Record::Endpoints,
                ..Default::default()
            };
            let traj = propagate_with(&lb, &rho0, horizon, &opts)?;
            let avg: Vec<f64> = traj
                .occupation_integral
                .iter()
                .map(|v| v / horizon)
                .collect();
            let occ = Occupations::from_parts(avg[0], avg[1..].to_vec())?;
            Ok(PointResult {
                gamma_deph,
                j_p: transfer_efficiency(&traj),
                j_q: *traj.extracted_energy.last().expect("endpoint recorded"),
                delta_n: delta_n(&occ, &extract)?,
                occupations: occ,
                state: traj.final_state().clone(),
                residual: 0.0,
            })
        }
    }
}
