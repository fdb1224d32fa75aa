// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Dormand–Prince 5(4) integration of dρ/dt = L[ρ].
//!
//! Alongside ρ the integrator carries three running integrals evaluated at
//! the same stages: extracted population ∫J_p dt, extracted energy ∫J_q dt,
//! and ∫ρ_kk dt for every level (for time-averaged occupations). Only ρ
//! and the extracted population enter the error estimate; the energy
//! integral scales with site energies and would otherwise dictate the step.

use nalgebra::DMatrix;

use super::SolverError;
use crate::density::{DensityMatrix, C64};
use crate::liouville::Lindblad;
use crate::obs::{exciton_current, heat_current};

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights (identical to the last stage row: FSAL).
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Fifth minus fourth order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Record {
    /// Every accepted step.
    #[default]
    EveryStep,
    /// Only t = 0 and t = t_end.
    Endpoints,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagateOptions {
    /// Bound on the max-norm local error estimate per accepted step.
    pub tol: f64,
    pub initial_step: Option<f64>,
    pub max_steps: usize,
    /// Steps below `min_step_ratio · t_end` abort with StepSizeUnderflow.
    pub min_step_ratio: f64,
    pub record: Record,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        PropagateOptions {
            tol: 1e-9,
            initial_step: None,
            max_steps: 10_000_000,
            min_step_ratio: 1e-14,
            record: Record::EveryStep,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    /// Cumulative extracted population at each recorded time.
    pub extracted: Vec<f64>,
    /// Cumulative extracted energy at each recorded time.
    pub extracted_energy: Vec<f64>,
    /// ∫₀ᵀ ρ_kk dt per level (vacuum first) over the whole run.
    pub occupation_integral: Vec<f64>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl Trajectory {
    pub fn final_state(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory records t = 0")
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().expect("trajectory records t = 0")
    }
}

/// η(T): total population extracted by the end of the trajectory.
pub fn transfer_efficiency(traj: &Trajectory) -> f64 {
    *traj.extracted.last().expect("trajectory records t = 0")
}

pub fn propagate(
    gen: &Lindblad,
    rho0: &DensityMatrix,
    t_end: f64,
) -> Result<Trajectory, SolverError> {
    propagate_with(gen, rho0, t_end, &PropagateOptions::default())
}

/// Augmented state: ρ plus [extracted, energy, ∫ρ_00, …, ∫ρ_{d-1,d-1}].
struct Aug {
    rho: DMatrix<C64>,
    q: Vec<f64>,
}

impl Aug {
    fn zeros(d: usize) -> Self {
        Aug {
            rho: DMatrix::zeros(d, d),
            q: vec![0.0; d + 2],
        }
    }
}

fn rhs(gen: &Lindblad, y: &DMatrix<C64>, out: &mut Aug) {
    gen.apply_into(y, &mut out.rho);
    let ch = gen.channels();
    out.q[0] = exciton_current(y, &ch, gen.extract());
    out.q[1] = heat_current(y, gen.hamiltonian(), &ch, gen.extract());
    for k in 0..y.nrows() {
        out.q[2 + k] = y[(k, k)].re;
    }
}

/// y += a·x
fn axpy(y: &mut DMatrix<C64>, a: f64, x: &DMatrix<C64>) {
    for (yi, xi) in y.iter_mut().zip(x.iter()) {
        *yi += xi * a;
    }
}

pub fn propagate_with(
    gen: &Lindblad,
    rho0: &DensityMatrix,
    t_end: f64,
    opts: &PropagateOptions,
) -> Result<Trajectory, SolverError> {
    let d = gen.dim();
    if rho0.dim() != d {
        return Err(SolverError::InvalidInput(format!(
            "initial state is {}x{}, generator acts on {d}x{d}",
            rho0.dim(),
            rho0.dim()
        )));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(SolverError::InvalidInput(format!("t_end = {t_end}")));
    }
    if !(opts.tol > 0.0) {
        return Err(SolverError::InvalidInput(format!("tol = {}", opts.tol)));
    }
    rho0.check()?;

    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![rho0.clone()],
        extracted: vec![0.0],
        extracted_energy: vec![0.0],
        occupation_integral: vec![0.0; d],
        accepted_steps: 0,
        rejected_steps: 0,
    };
    if t_end == 0.0 {
        return Ok(traj);
    }

    let mut y = rho0.matrix().clone();
    let mut q = vec![0.0; d + 2];
    let mut k: Vec<Aug> = (0..7).map(|_| Aug::zeros(d)).collect();
    let mut stage = DMatrix::<C64>::zeros(d, d);
    let mut y_new = DMatrix::<C64>::zeros(d, d);
    let mut err = DMatrix::<C64>::zeros(d, d);
    rhs(gen, &y, &mut k[0]);

    let mut h = opts.initial_step.unwrap_or_else(|| {
        let slope = crate::density::max_norm(k[0].rho.iter()).max(f64::MIN_POSITIVE);
        (0.01 * opts.tol.powf(0.2) / slope).min(t_end)
    });
    let h_min = opts.min_step_ratio * t_end;
    let mut t = 0.0;
    while t < t_end {
        if traj.accepted_steps + traj.rejected_steps >= opts.max_steps {
            return Err(SolverError::MaxStepsExceeded(opts.max_steps));
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        for s in 1..7 {
            stage.copy_from(&y);
            for (j, a) in A[s][..s].iter().enumerate() {
                if *a != 0.0 {
                    axpy(&mut stage, h * a, &k[j].rho);
                }
            }
            rhs(gen, &stage, &mut k[s]);
            if s == 6 {
                y_new.copy_from(&stage);
            }
        }
        // k[6] = f(y_new) by FSAL; y_new is the fifth-order solution.
        err.fill(C64::new(0.0, 0.0));
        let mut err_q = 0.0f64;
        for (j, e) in E.iter().enumerate() {
            if *e != 0.0 {
                axpy(&mut err, h * e, &k[j].rho);
                err_q += h * e * k[j].q[0];
            }
        }
        let err_norm = crate::density::max_norm(err.iter()).max(err_q.abs());
        if !err_norm.is_finite() {
            return Err(SolverError::StepSizeUnderflow { t, h });
        }

        if err_norm <= opts.tol {
            for (qi, slot) in q.iter_mut().enumerate() {
                let mut inc = 0.0;
                for (j, b) in B.iter().enumerate() {
                    inc += b * k[j].q[qi];
                }
                *slot += h * inc;
            }
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6);
            t = if last { t_end } else { t + h };
            traj.accepted_steps += 1;
            if opts.record == Record::EveryStep || t >= t_end {
                traj.times.push(t);
                traj.states
                    .push(DensityMatrix::new_unchecked(y.clone()).expect("square"));
                traj.extracted.push(q[0]);
                traj.extracted_energy.push(q[1]);
            }
        } else {
            traj.rejected_steps += 1;
        }

        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * (opts.tol / err_norm).powf(0.2)).clamp(0.2, 5.0)
        };
        if t < t_end {
            h *= factor;
            if h < h_min {
                return Err(SolverError::StepSizeUnderflow { t, h });
            }
        }
    }
    traj.occupation_integral = q[2..].to_vec();
    Ok(traj)
}
