//! Quantities with SI values and a small unit grammar for human I/O.
//!
//! A quantity string is a decimal or scientific-notation number, whitespace,
//! then a unit symbol: `"300 nm"`, `"1.30 pc"`, `"2.726 K"`. Values are
//! stored in SI; formatting uses the shortest decimal that round-trips, so
//! `parse -> format -> parse` is exact to floating-point precision.

use crate::constants;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Physical dimension carried by a [`Quantity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Length,
    Time,
    Temperature,
    Probability,
    Dimensionless,
    /// Spectral radiance, W m^-2 Hz^-1 sr^-1.
    SpecificIntensity,
    /// Cross section, m^2.
    CrossSection,
    /// Number density, m^-3.
    NumberDensity,
    Angle,
    SolidAngle,
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Dimension::Length => "length",
            Dimension::Time => "time",
            Dimension::Temperature => "temperature",
            Dimension::Probability => "probability",
            Dimension::Dimensionless => "dimensionless",
            Dimension::SpecificIntensity => "specific_intensity",
            Dimension::CrossSection => "cross_section",
            Dimension::NumberDensity => "number_density",
            Dimension::Angle => "angle",
            Dimension::SolidAngle => "solid_angle",
        };
        f.write_str(name)
    }
}

/// A value in SI units tagged with its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dimension: Dimension) -> Self {
        Quantity { value, dimension }
    }

    pub fn length_m(value: f64) -> Self {
        Quantity::new(value, Dimension::Length)
    }
}

/// Supported unit symbols: scale factor to SI and dimension.
const UNITS: &[(&str, f64, Dimension)] = &[
    ("nm", 1e-9, Dimension::Length),
    ("um", 1e-6, Dimension::Length),
    ("mm", 1e-3, Dimension::Length),
    ("cm", 1e-2, Dimension::Length),
    ("m", 1.0, Dimension::Length),
    ("km", 1e3, Dimension::Length),
    ("au", constants::AU, Dimension::Length),
    ("ly", constants::LIGHT_YEAR, Dimension::Length),
    ("pc", constants::PARSEC, Dimension::Length),
    ("s", 1.0, Dimension::Time),
    ("yr", constants::JULIAN_YEAR, Dimension::Time),
    ("K", 1.0, Dimension::Temperature),
];

fn lookup_unit(symbol: &str) -> Result<(f64, Dimension)> {
    UNITS
        .iter()
        .find(|(sym, _, _)| *sym == symbol)
        .map(|&(_, scale, dim)| (scale, dim))
        .ok_or_else(|| Error::UnknownUnit(symbol.to_string()))
}

/// Parses `"<number> <unit>"` into an SI [`Quantity`].
///
/// Rejects unknown units, malformed or non-finite numbers, and negative
/// values (lengths, durations, and temperatures here are all non-negative).
pub fn parse_quantity(text: &str) -> Result<Quantity> {
    let mut parts = text.split_whitespace();
    let (number, unit) = match (parts.next(), parts.next(), parts.next()) {
        (Some(n), Some(u), None) => (n, u),
        _ => {
            return Err(Error::InvalidQuantity {
                text: text.to_string(),
                reason: "expected '<number> <unit>'".to_string(),
            })
        }
    };
    let value: f64 = number.parse().map_err(|_| Error::InvalidQuantity {
        text: text.to_string(),
        reason: format!("malformed number '{number}'"),
    })?;
    if !value.is_finite() {
        return Err(Error::InvalidQuantity {
            text: text.to_string(),
            reason: "value must be finite".to_string(),
        });
    }
    if value < 0.0 {
        return Err(Error::InvalidQuantity {
            text: text.to_string(),
            reason: "value must be non-negative".to_string(),
        });
    }
    let (scale, dimension) = lookup_unit(unit)?;
    let si = value * scale;
    if !si.is_finite() {
        return Err(Error::InvalidQuantity {
            text: text.to_string(),
            reason: "value overflows in SI units".to_string(),
        });
    }
    Ok(Quantity::new(si, dimension))
}

/// Formats a quantity in the requested unit, e.g. `(1.0019e5 m, "km")` as
/// `"100.19 km"`. The numeric part is the shortest decimal that parses back
/// to the same value. Errors if the unit is unknown or has a different
/// dimension than the quantity.
pub fn format_quantity(q: Quantity, unit: &str) -> Result<String> {
    let (scale, dimension) = lookup_unit(unit)?;
    if dimension != q.dimension {
        return Err(Error::DimensionMismatch {
            expected: q.dimension.to_string(),
            got: dimension.to_string(),
        });
    }
    Ok(format!("{} {}", q.value / scale, unit))
}

/// Parses a quantity and checks its dimension.
pub fn parse_dimensioned(text: &str, expected: Dimension) -> Result<Quantity> {
    let q = parse_quantity(text)?;
    if q.dimension != expected {
        return Err(Error::DimensionMismatch {
            expected: expected.to_string(),
            got: q.dimension.to_string(),
        });
    }
    Ok(q)
}
