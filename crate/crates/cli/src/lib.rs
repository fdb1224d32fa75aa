// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Batch driver for dephasing sweeps: configuration, figure presets, the
//! parallel sweep runner and result files.

pub mod config;
pub mod emit;
pub mod error;
pub mod presets;
pub mod sweep;

use std::path::{Path, PathBuf};

pub use config::{GridSpec, Mode, Spacing, SweepConfig};
pub use emit::{emit_results, read_json, Format, ResultsFile};
pub use error::CliError;
pub use presets::{preset, Preset, PresetOptions};
pub use sweep::{run_sweep, SweepOutput};

/// Shared sweep settings applied to every sub-figure of a preset run.
#[derive(Debug, Clone)]
pub struct FigureOptions<'a> {
    pub grid: GridSpec,
    pub gamma_inj: f64,
    pub gamma_ext: f64,
    pub mode: Mode,
    pub workers: usize,
    pub preset: PresetOptions<'a>,
}

impl Default for FigureOptions<'_> {
    fn default() -> Self {
        FigureOptions {
            grid: GridSpec::default(),
            gamma_inj: config::DEFAULT_RATE,
            gamma_ext: config::DEFAULT_RATE,
            mode: Mode::Steady,
            workers: 0,
            preset: PresetOptions::default(),
        }
    }
}

/// Config for one named preset.
pub fn preset_config(name: &str, opts: &FigureOptions) -> Result<SweepConfig, CliError> {
    let p = preset(name, &opts.preset)?;
    Ok(SweepConfig {
        label: p.name,
        network: p.network,
        seed: p.seed,
        grid: opts.grid,
        gamma_inj: opts.gamma_inj,
        gamma_ext: opts.gamma_ext,
        mode: opts.mode,
    })
}

/// Runs a preset (`fig3` expands to its sub-figures) and writes one file
/// per sub-figure into `dir`. fig3h is skipped inside `fig3` when no FMO
/// file is given; asking for it by name without one is an error.
pub fn run_figure_preset(
    name: &str,
    opts: &FigureOptions,
    dir: &Path,
    format: Format,
) -> Result<Vec<(PathBuf, SweepOutput)>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let names = presets::expand(name);
    let bundle = names.len() > 1;
    let mut written = Vec::new();
    for sub in names {
        let cfg = match preset_config(sub, opts) {
            Err(CliError::MissingExternalData(_)) if bundle => continue,
            other => other?,
        };
        let out = run_sweep(&cfg, opts.workers)?;
        let path = dir.join(format!("{sub}.{}", format.extension()));
        emit_results(&out, format, &path)?;
        written.push((path, out));
    }
    Ok(written)
}
