// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::NetError;

/// Speed of light in cm/ps.
const SPEED_OF_LIGHT_CM_PER_PS: f64 = 2.99792458e-2;

/// Angular frequency (rad ps⁻¹) of one wavenumber: 2πc.
pub const WAVENUMBER_TO_ANGULAR_PS: f64 = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_CM_PER_PS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Unit {
    /// cm⁻¹
    Wavenumber,
    /// rad ps⁻¹ with ħ = 1; the internal unit.
    AngularPs,
    Dimensionless,
}

impl Unit {
    pub fn as_str(&self) -> &'static str {
        match self {
            Unit::Wavenumber => "wavenumber",
            Unit::AngularPs => "angular_ps",
            Unit::Dimensionless => "dimensionless",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Unit {
    type Err = NetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wavenumber" => Ok(Unit::Wavenumber),
            "angular_ps" => Ok(Unit::AngularPs),
            "dimensionless" => Ok(Unit::Dimensionless),
            other => Err(NetError::UnknownUnit(other.to_string())),
        }
    }
}

impl TryFrom<String> for Unit {
    type Error = NetError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Unit> for String {
    fn from(u: Unit) -> String {
        u.as_str().to_string()
    }
}

/// Converts an energy or rate between units. Conversions touching
/// `Dimensionless` pass the value through.
pub fn convert_units(value: f64, from: Unit, to: Unit) -> f64 {
    match (from, to) {
        (Unit::Wavenumber, Unit::AngularPs) => value * WAVENUMBER_TO_ANGULAR_PS,
        (Unit::AngularPs, Unit::Wavenumber) => value / WAVENUMBER_TO_ANGULAR_PS,
        _ => value,
    }
}
