// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("{0}")]
    MissingExternalData(String),
    #[error("at gamma_deph = {gamma}: {source}")]
    Point {
        gamma: f64,
        #[source]
        source: enaqt::Error,
    },
    #[error(transparent)]
    Core(#[from] enaqt::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed results file: {0}")]
    Format(String),
}

impl CliError {
    /// Stable machine-readable tag for the structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::UnknownPreset(_) => "unknown_preset",
            CliError::MissingExternalData(_) => "missing_external_data",
            CliError::Point { .. } => "sweep_point",
            CliError::Core(_) => "core",
            CliError::Io { .. } => "io",
            CliError::Format(_) => "format",
        }
    }

    pub(crate) fn io(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}

impl From<enaqt::NetError> for CliError {
    fn from(e: enaqt::NetError) -> Self {
        CliError::Core(e.into())
    }
}
