//! Unit frames and boundary conversions.
//!
//! Dirac-sector computation runs in [`UnitFrame::DiracNatural`]; the graphene
//! sector in [`UnitFrame::GrapheneNatural`], whose scales depend on the
//! magnetic radius L and the Landau frequency Ω of the scenario.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Length,
    Time,
    Momentum,
    Energy,
    Frequency,
    MagneticField,
}

impl Dimension {
    pub const ALL: [Dimension; 6] = [
        Dimension::Length,
        Dimension::Time,
        Dimension::Momentum,
        Dimension::Energy,
        Dimension::Frequency,
        Dimension::MagneticField,
    ];
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "length" => Ok(Self::Length),
            "time" => Ok(Self::Time),
            "momentum" => Ok(Self::Momentum),
            "energy" => Ok(Self::Energy),
            "frequency" => Ok(Self::Frequency),
            "magnetic_field" | "magnetic-field" | "field" => Ok(Self::MagneticField),
            other => Err(Error::UnsupportedDimension(other.to_string())),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Length => "length",
            Self::Time => "time",
            Self::Momentum => "momentum",
            Self::Energy => "energy",
            Self::Frequency => "frequency",
            Self::MagneticField => "magnetic_field",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnitFrame {
    SI,
    /// Lengths in λ_c, momenta in mₑc, times in ħ/(mₑc²).
    DiracNatural,
    /// Lengths in L, times in 1/Ω (both SI).
    GrapheneNatural {
        magnetic_length: f64,
        omega: f64,
    },
}

impl UnitFrame {
    /// SI value of one unit of `dim` in this frame.
    pub fn scale(&self, dim: Dimension, k: &PhysicalConstants) -> Result<f64> {
        let s = match *self {
            UnitFrame::SI => 1.0,
            UnitFrame::DiracNatural => {
                let mc = k.m_e * k.c;
                match dim {
                    Dimension::Length => k.lambda_c,
                    Dimension::Time => k.hbar / k.rest_energy(),
                    Dimension::Momentum => mc,
                    Dimension::Energy => k.rest_energy(),
                    Dimension::Frequency => k.rest_energy() / k.hbar,
                    Dimension::MagneticField => mc * mc / (k.charge_magnitude() * k.hbar),
                }
            }
            UnitFrame::GrapheneNatural {
                magnetic_length: l,
                omega,
            } => {
                if !(l.is_finite() && l > 0.0 && omega.is_finite() && omega > 0.0) {
                    return Err(invalid("frame", "graphene frame needs positive L and Ω"));
                }
                match dim {
                    Dimension::Length => l,
                    Dimension::Time => 1.0 / omega,
                    Dimension::Momentum => k.hbar / l,
                    Dimension::Energy => k.hbar * omega,
                    Dimension::Frequency => omega,
                    Dimension::MagneticField => k.hbar / (k.charge_magnitude() * l * l),
                }
            }
        };
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub dim: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dim: Dimension) -> Self {
        Self { value, dim }
    }
}

pub fn convert(q: Quantity, from: UnitFrame, to: UnitFrame, k: &PhysicalConstants) -> Result<Quantity> {
    let si = q.value * from.scale(q.dim, k)?;
    Ok(Quantity::new(si / to.scale(q.dim, k)?, q.dim))
}

/// Convenience for a bare value in a known dimension.
pub fn convert_value(value: f64, dim: Dimension, from: UnitFrame, to: UnitFrame, k: &PhysicalConstants) -> Result<f64> {
    convert(Quantity::new(value, dim), from, to, k).map(|q| q.value)
}
