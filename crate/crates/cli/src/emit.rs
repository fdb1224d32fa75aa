// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Result files.
//!
//! CSV: one `#` comment line with the tool version and config hash, a
//! header `gamma_deph,j_p,j_q,delta_n,vacuum,n_1,…,n_L`, then one row per
//! grid point in ascending Γ_deph with 17 significant digits.
//!
//! JSON: the same numbers plus the config echo and the classification.
//! Floats are written in shortest round-trip form, so reading a file back
//! reproduces the curve bit for bit.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use enaqt::{SweepClassification, SweepCurve};

use crate::config::SweepConfig;
use crate::error::CliError;
use crate::sweep::SweepOutput;

pub const TOOL: &str = "enaqt";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultsFile {
    pub tool: String,
    pub version: String,
    pub config_sha256: String,
    pub config: SweepConfig,
    pub classification: SweepClassification,
    pub curve: SweepCurve,
}

impl ResultsFile {
    pub fn new(out: &SweepOutput) -> Self {
        ResultsFile {
            tool: TOOL.into(),
            version: VERSION.into(),
            config_sha256: out.config.hash(),
            config: out.config.clone(),
            classification: out.classification.clone(),
            curve: out.curve.clone(),
        }
    }
}

pub fn header_comment(cfg: &SweepConfig) -> String {
    format!("# {TOOL} {VERSION} config_sha256={}", cfg.hash())
}

pub fn csv_columns(n_sites: usize) -> Vec<String> {
    let mut cols: Vec<String> = ["gamma_deph", "j_p", "j_q", "delta_n", "vacuum"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    cols.extend((1..=n_sites).map(|i| format!("n_{i}")));
    cols
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(out: &SweepOutput, w: impl Write) -> Result<(), CliError> {
    let to_err = |e: &dyn std::fmt::Display| CliError::Format(e.to_string());
    let mut w = w;
    writeln!(w, "{}", header_comment(&out.config)).map_err(|e| to_err(&e))?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(csv_columns(out.config.network.n_sites()))
        .map_err(|e| to_err(&e))?;
    let c = &out.curve;
    let mut order: Vec<usize> = (0..c.len()).collect();
    order.sort_by(|&a, &b| c.gamma_grid[a].total_cmp(&c.gamma_grid[b]));
    for k in order {
        let occ = &c.occupations[k];
        let mut row = vec![
            sci(c.gamma_grid[k]),
            sci(c.j_p[k]),
            sci(c.j_q[k]),
            sci(c.delta_n[k]),
            sci(occ.vacuum),
        ];
        row.extend(occ.values.iter().map(|&v| sci(v)));
        csv.write_record(&row).map_err(|e| to_err(&e))?;
    }
    csv.flush().map_err(|e| to_err(&e))
}

pub fn write_json(out: &SweepOutput, w: impl Write) -> Result<(), CliError> {
    let mut w = w;
    serde_json::to_writer_pretty(&mut w, &ResultsFile::new(out))
        .map_err(|e| CliError::Format(e.to_string()))?;
    writeln!(w).map_err(|e| CliError::Format(e.to_string()))
}

pub fn emit_results(out: &SweepOutput, format: Format, path: &Path) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        Format::Csv => write_csv(out, &mut w)?,
        Format::Json => write_json(out, &mut w)?,
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn read_json(path: &Path) -> Result<ResultsFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Format(e.to_string()))
}
