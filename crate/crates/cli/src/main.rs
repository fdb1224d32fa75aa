// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use enaqt::net::{detect_inversion_symmetry_with, SymmetryOptions};
use enaqt::NetworkSpec;
use enaqt_cli::config::{DEFAULT_GAMMA_MAX, DEFAULT_GAMMA_MIN, DEFAULT_POINTS, DEFAULT_RATE};
use enaqt_cli::{
    emit_results, preset, preset_config, run_figure_preset, run_sweep, CliError, FigureOptions,
    Format, GridSpec, Mode, PresetOptions, Spacing, SweepConfig, SweepOutput,
};

#[derive(Parser)]
#[command(
    name = "enaqt",
    version,
    about = "Dephasing-assisted exciton transport on chromophore networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steady-state current versus dephasing rate.
    Sweep(SweepArgs),
    /// Transfer efficiency of a single excitation versus dephasing rate.
    Pulse {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Observation window T in ps.
        #[arg(long)]
        horizon: f64,
        /// Initially excited site; defaults to the first injection site.
        #[arg(long)]
        start_site: Option<usize>,
    },
    /// Run a figure preset (fig1, fig2, fig3, fig3a..fig3i), one file per sub-figure.
    Figure {
        #[arg(long)]
        preset: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        output: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check a network file and print a summary.
    Validate {
        #[arg(long)]
        network: PathBuf,
    },
    /// Report whether a network has an inversion symmetry exchanging sources and sinks.
    Symmetry {
        #[command(flatten)]
        source: NetworkSource,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = SymmetryOptions::default().max_sites)]
        max_sites: usize,
        #[arg(long)]
        fmo_file: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NetworkSource {
    /// Network JSON file.
    #[arg(long)]
    network: Option<PathBuf>,
    /// Named preset network.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = DEFAULT_GAMMA_MIN)]
    gamma_min: f64,
    #[arg(long, default_value_t = DEFAULT_GAMMA_MAX)]
    gamma_max: f64,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    points: usize,
    /// Log-spaced grid (the default).
    #[arg(long, conflicts_with = "linear")]
    log: bool,
    /// Linearly spaced grid.
    #[arg(long)]
    linear: bool,
    #[arg(long, default_value_t = DEFAULT_RATE)]
    gamma_inj: f64,
    #[arg(long, default_value_t = DEFAULT_RATE)]
    gamma_ext: f64,
    /// Seed for presets with random energies or couplings.
    #[arg(long)]
    seed: Option<u64>,
    /// Extraction site of the fig2 preset.
    #[arg(long)]
    fig2_extract: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Network file for the FMO preset (fig3h).
    #[arg(long)]
    fmo_file: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    source: NetworkSource,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

impl CommonArgs {
    fn grid(&self) -> GridSpec {
        GridSpec {
            min: self.gamma_min,
            max: self.gamma_max,
            points: self.points,
            spacing: if self.linear {
                Spacing::Linear
            } else {
                Spacing::Log
            },
        }
    }

    fn preset_options(&self) -> PresetOptions<'_> {
        PresetOptions {
            seed: self.seed,
            fig2_extract: self.fig2_extract,
            fmo_file: self.fmo_file.as_deref(),
        }
    }

    fn figure_options(&self, mode: Mode) -> FigureOptions<'_> {
        FigureOptions {
            grid: self.grid(),
            gamma_inj: self.gamma_inj,
            gamma_ext: self.gamma_ext,
            mode,
            workers: self.workers,
            preset: self.preset_options(),
        }
    }
}

fn load_network(
    source: &NetworkSource,
    opts: &PresetOptions,
) -> Result<(String, NetworkSpec, Option<u64>), CliError> {
    match (&source.network, &source.preset) {
        (Some(path), _) => Ok((
            path.display().to_string(),
            NetworkSpec::from_json_file(path)?,
            None,
        )),
        (None, Some(name)) => {
            let p = preset(name, opts)?;
            Ok((p.name, p.network, p.seed))
        }
        (None, None) => Err(CliError::Config("give --network or --preset".into())),
    }
}

fn sweep_config(
    args: &SweepArgs,
    mode: impl FnOnce(&NetworkSpec) -> Mode,
) -> Result<SweepConfig, CliError> {
    let c = &args.common;
    if let Some(name) = &args.source.preset {
        let mut cfg = preset_config(name, &c.figure_options(Mode::Steady))?;
        cfg.mode = mode(&cfg.network);
        return Ok(cfg);
    }
    let (label, network, seed) = load_network(&args.source, &c.preset_options())?;
    Ok(SweepConfig {
        label,
        mode: mode(&network),
        network,
        seed,
        grid: c.grid(),
        gamma_inj: c.gamma_inj,
        gamma_ext: c.gamma_ext,
    })
}

fn write_output(out: &SweepOutput, args: &SweepArgs) -> Result<(), CliError> {
    let format = args.common.format.into();
    match &args.output {
        Some(path) => emit_results(out, format, path),
        None => {
            let stdout = std::io::stdout().lock();
            match format {
                Format::Csv => enaqt_cli::emit::write_csv(out, stdout),
                Format::Json => enaqt_cli::emit::write_json(out, stdout),
            }
        }
    }
}

fn summary(out: &SweepOutput) -> String {
    let c = &out.classification;
    let kind = serde_json::to_string(&c.kind).unwrap_or_default();
    format!(
        "{}: {} (J_p argmax index {}, Δₙ argmax index {}{})",
        out.config.label,
        kind.trim_matches('"'),
        c.j_p_argmax,
        c.delta_n_argmax,
        c.gamma_star
            .map(|g| format!(", gamma_star = {g:.4} ps⁻¹"))
            .unwrap_or_default()
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => {
            let cfg = sweep_config(&args, |_| Mode::Steady)?;
            let out = run_sweep(&cfg, args.common.workers)?;
            write_output(&out, &args)?;
            eprintln!("{}", summary(&out));
        }
        Command::Pulse {
            sweep,
            horizon,
            start_site,
        } => {
            let cfg = sweep_config(&sweep, |net| Mode::Pulse {
                horizon,
                start_site: start_site.unwrap_or(net.inject[0]),
            })?;
            let out = run_sweep(&cfg, sweep.common.workers)?;
            write_output(&out, &sweep)?;
            eprintln!("{}", summary(&out));
        }
        Command::Figure {
            preset,
            output,
            common,
        } => {
            let opts = common.figure_options(Mode::Steady);
            for (path, out) in run_figure_preset(&preset, &opts, &output, common.format.into())? {
                eprintln!("{} -> {}", summary(&out), path.display());
            }
        }
        Command::Validate { network } => {
            let spec = NetworkSpec::from_json_file(&network)?;
            println!(
                "{}: valid, {} sites, {} couplings, unit {}, inject {:?}, extract {:?}",
                network.display(),
                spec.n_sites(),
                spec.edges.len(),
                spec.unit,
                spec.inject,
                spec.extract
            );
        }
        Command::Symmetry {
            source,
            seed,
            max_sites,
            fmo_file,
        } => {
            let opts = PresetOptions {
                seed,
                fig2_extract: None,
                fmo_file: fmo_file.as_deref(),
            };
            let (_, spec, _) = load_network(&source, &opts)?;
            let sym = SymmetryOptions {
                max_sites,
                ..Default::default()
            };
            let report = detect_inversion_symmetry_with(&spec, sym)?;
            println!(
                "{}",
                serde_json::json!({
                    "symmetric": report.symmetric,
                    "permutation": report.permutation,
                })
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = serde_json::json!({
                "error": { "kind": e.kind(), "message": e.to_string() }
            });
            eprintln!("{msg}");
            ExitCode::FAILURE
        }
    }
}
