// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use enaqt::obs::MIN_SWEEP_POINTS;
use enaqt::NetworkSpec;

pub const DEFAULT_GAMMA_MIN: f64 = 1e-2;
pub const DEFAULT_GAMMA_MAX: f64 = 1e3;
pub const DEFAULT_POINTS: usize = 60;
pub const DEFAULT_RATE: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

/// Dephasing-rate grid in ps⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            min: DEFAULT_GAMMA_MIN,
            max: DEFAULT_GAMMA_MAX,
            points: DEFAULT_POINTS,
            spacing: Spacing::Log,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.points < MIN_SWEEP_POINTS {
            return bad(format!(
                "grid needs at least {MIN_SWEEP_POINTS} points, got {}",
                self.points
            ));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return bad(format!(
                "grid bounds must satisfy min < max, got [{}, {}]",
                self.min, self.max
            ));
        }
        if self.min < 0.0 {
            return bad(format!(
                "dephasing rates must be non-negative, got min {}",
                self.min
            ));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return bad(format!("log spacing needs min > 0, got {}", self.min));
        }
        Ok(())
    }

    /// Grid values; the endpoints are exactly `min` and `max`.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        let last = (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k == 0 {
                    return self.min;
                }
                if k == n - 1 {
                    return self.max;
                }
                let f = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + f * (self.max - self.min),
                    Spacing::Log => {
                        let (a, b) = (self.min.log10(), self.max.log10());
                        10f64.powf(a + f * (b - a))
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    /// Steady state under continuous injection.
    Steady,
    /// Single excitation at `start_site`, no injection channel, observed
    /// over [0, horizon] ps.
    Pulse { horizon: f64, start_site: usize },
}

/// Everything that determines a sweep's numbers. Hashed into the output
/// header, so output paths and worker counts are deliberately absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub label: String,
    /// Network in its own unit; converted to ps⁻¹ when the sweep runs.
    pub network: NetworkSpec,
    /// Seed used to generate the network, when it is random.
    pub seed: Option<u64>,
    pub grid: GridSpec,
    pub gamma_inj: f64,
    pub gamma_ext: f64,
    pub mode: Mode,
}

impl SweepConfig {
    pub fn steady(label: impl Into<String>, network: NetworkSpec) -> Self {
        SweepConfig {
            label: label.into(),
            network,
            seed: None,
            grid: GridSpec::default(),
            gamma_inj: DEFAULT_RATE,
            gamma_ext: DEFAULT_RATE,
            mode: Mode::Steady,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.grid.validate()?;
        enaqt::validate_network(self.network.clone())?;
        for (name, v) in [("gamma_inj", self.gamma_inj), ("gamma_ext", self.gamma_ext)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(CliError::Config(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        if let Mode::Pulse {
            horizon,
            start_site,
        } = self.mode
        {
            if !(horizon.is_finite() && horizon > 0.0) {
                return Err(CliError::Config(format!(
                    "pulse horizon must be > 0, got {horizon}"
                )));
            }
            if start_site == 0 || start_site > self.network.n_sites() {
                return Err(CliError::Config(format!(
                    "pulse start site {start_site} outside 1..={}",
                    self.network.n_sites()
                )));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}
