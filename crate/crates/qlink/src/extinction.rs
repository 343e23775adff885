//! Interstellar extinction and ground-site atmospheric blocking.
//!
//! Extinction follows the Beer-Lambert law: a photon survives a column of
//! hydrogen number density `n_H` over distance `L` with probability
//! `exp(-n_H sigma_lambda L)`, where `sigma_lambda` is the effective
//! extinction cross section per H atom at the photon's wavelength. Cross
//! sections come from a tabulated curve (log-log interpolated); atmospheric
//! opacity for ground sites is a list of blocked wavelength bands.

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use std::path::Path;

/// Bundled illustrative extinction curve (see `data/extinction_illustrative.csv`).
const ILLUSTRATIVE_CSV: &str = include_str!("../data/extinction_illustrative.csv");

/// Bundled illustrative ground-site blocked bands (see `data/atmosphere_bands_earth.csv`).
const EARTH_BANDS_CSV: &str = include_str!("../data/atmosphere_bands_earth.csv");

const CURVE_HEADER: &str = "wavelength_m,sigma_m2";
const BANDS_HEADER: &str = "lo_m,hi_m";

/// Tabulated extinction cross section per hydrogen atom.
///
/// Samples are `(wavelength m, sigma m^2)` with strictly increasing
/// wavelengths and non-negative cross sections. Lookups interpolate
/// log-log, falling back to linear interpolation across any segment with a
/// zero endpoint; wavelengths outside the tabulated range are errors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtinctionCurve {
    curve: SampledCurve,
}

impl ExtinctionCurve {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        Ok(ExtinctionCurve {
            curve: SampledCurve::new(samples)?,
        })
    }

    /// Parses CSV with header `wavelength_m,sigma_m2`; `#` starts a comment.
    pub fn from_csv_str(text: &str, label: &str) -> Result<Self> {
        Ok(ExtinctionCurve {
            curve: SampledCurve::from_csv(text, CURVE_HEADER, label)?,
        })
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_csv_str(&text, &path.display().to_string())
    }

    /// The bundled illustrative curve: order-of-magnitude cross sections
    /// spanning gamma rays to decameter radio. Not survey data.
    pub fn builtin_illustrative() -> Self {
        Self::from_csv_str(ILLUSTRATIVE_CSV, "builtin:illustrative")
            .expect("bundled extinction curve is valid")
    }

    pub fn sample_count(&self) -> usize {
        self.curve.len()
    }

    pub fn min_wavelength(&self) -> f64 {
        self.curve.x_min()
    }

    pub fn max_wavelength(&self) -> f64 {
        self.curve.x_max()
    }

    /// Cross section at `wavelength`, m^2 per H atom.
    pub fn sigma_at(&self, wavelength: f64) -> Result<f64> {
        self.curve.value_at(wavelength, "wavelength")
    }
}

/// Wavelength bands blocked for a ground receiver, as half-open intervals
/// `[lo, hi)` in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct AtmosphereBands {
    bands: Vec<(f64, f64)>,
}

impl AtmosphereBands {
    pub fn new(mut bands: Vec<(f64, f64)>) -> Result<Self> {
        for &(lo, hi) in &bands {
            if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
                return Err(Error::InvalidInput(format!(
                    "band [{lo:e}, {hi:e}) must satisfy 0 <= lo < hi"
                )));
            }
        }
        bands.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(AtmosphereBands { bands })
    }

    /// Parses CSV with header `lo_m,hi_m`; `#` starts a comment.
    pub fn from_csv_str(text: &str, label: &str) -> Result<Self> {
        let mut bands = Vec::new();
        let mut header_seen = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if !header_seen {
                if content != BANDS_HEADER {
                    return Err(Error::DataFormat {
                        path: label.to_string(),
                        line,
                        message: format!("expected header '{BANDS_HEADER}', got '{content}'"),
                    });
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = content.split(',').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(Error::DataFormat {
                    path: label.to_string(),
                    line,
                    message: format!("expected 2 comma-separated fields, got {}", fields.len()),
                });
            }
            let lo: f64 = fields[0].parse().map_err(|_| Error::DataFormat {
                path: label.to_string(),
                line,
                message: format!("malformed number '{}'", fields[0]),
            })?;
            let hi: f64 = fields[1].parse().map_err(|_| Error::DataFormat {
                path: label.to_string(),
                line,
                message: format!("malformed number '{}'", fields[1]),
            })?;
            bands.push((lo, hi));
        }
        if !header_seen {
            return Err(Error::DataFormat {
                path: label.to_string(),
                line: 1,
                message: format!("missing header '{BANDS_HEADER}'"),
            });
        }
        Self::new(bands).map_err(|e| Error::DataFormat {
            path: label.to_string(),
            line: 1,
            message: e.to_string(),
        })
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_csv_str(&text, &path.display().to_string())
    }

    /// Bundled illustrative Earth bands: UV/X/gamma cutoff below 320 nm,
    /// major infrared absorption bands, the far-infrared wall, and the
    /// ionospheric cutoff beyond 10 m.
    pub fn builtin_earth() -> Self {
        Self::from_csv_str(EARTH_BANDS_CSV, "builtin:earth")
            .expect("bundled atmosphere bands are valid")
    }

    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    pub fn bands(&self) -> &[(f64, f64)] {
        &self.bands
    }

    /// True when `wavelength` falls inside any `[lo, hi)` band.
    pub fn blocked(&self, wavelength: f64) -> bool {
        self.bands
            .iter()
            .any(|&(lo, hi)| lo <= wavelength && wavelength < hi)
    }
}

/// Convenience wrapper matching [`AtmosphereBands::blocked`].
pub fn atmosphere_blocked(bands: &AtmosphereBands, wavelength: f64) -> bool {
    bands.blocked(wavelength)
}

/// Beer-Lambert erasure probability `1 - exp(-n_h sigma l)` over a path of
/// length `l` through hydrogen density `n_h` with cross section `sigma`.
pub fn extinction_probability(n_h: f64, sigma: f64, l: f64) -> f64 {
    debug_assert!(n_h > 0.0 && sigma >= 0.0 && l >= 0.0);
    -(-n_h * sigma * l).exp_m1()
}

/// Distance at which extinction reaches 1/2: `ln 2 / (n_h sigma)`. Returns
/// `None` when `sigma` is zero (no finite bound).
pub fn max_extinction_distance(n_h: f64, sigma: f64) -> Option<f64> {
    debug_assert!(n_h > 0.0 && sigma >= 0.0);
    if sigma == 0.0 {
        None
    } else {
        Some(std::f64::consts::LN_2 / (n_h * sigma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{N_H_DEFAULT, PARSEC};
    use proptest::prelude::*;

    fn assert_rel(actual: f64, expected: f64, tol: f64) {
        let denom = expected.abs().max(f64::MIN_POSITIVE);
        assert!(
            (actual - expected).abs() / denom <= tol,
            "actual {actual:e} expected {expected:e}"
        );
    }

    #[test]
    fn beer_lambert_at_one_parsec() {
        // Direct arithmetic oracle: n sigma L = 1.146e6 * 1e-26 * 1 pc.
        let exponent = N_H_DEFAULT * 1e-26 * PARSEC;
        assert_rel(exponent, 3.536_186_508_389_107e-4, 1e-12);
        let p = extinction_probability(N_H_DEFAULT, 1e-26, PARSEC);
        assert_rel(p, 3.535_561_351_328_82e-4, 1e-10);
    }

    #[test]
    fn beer_lambert_at_one_kiloparsec() {
        // At 1000 pc the same inputs give the familiar 1 - exp(-0.3536).
        let p = extinction_probability(N_H_DEFAULT, 1e-26, 1000.0 * PARSEC);
        assert_rel(p, 0.297_857_322_172_277_8, 1e-10);
    }

    #[test]
    fn max_distance_for_small_cross_section() {
        let l = max_extinction_distance(N_H_DEFAULT, 1e-26).unwrap();
        assert_rel(l, 6.048_404_716_927_97e19, 1e-12);
        assert_rel(l / PARSEC, 1.960_154_474_079_777e3, 1e-12);
        let p = extinction_probability(N_H_DEFAULT, 1e-26, l);
        assert_rel(p, 0.5, 1e-12);
    }

    #[test]
    fn zero_cross_section_is_unbounded() {
        assert_eq!(max_extinction_distance(N_H_DEFAULT, 0.0), None);
    }

    #[test]
    fn sigma_interpolates_log_log_between_samples() {
        let c = ExtinctionCurve::new(vec![(1e-7, 1e-25), (1e-5, 1e-27)]).unwrap();
        let mid = c.sigma_at(1e-6).unwrap();
        assert_rel(mid, 1e-26, 1e-12);
    }

    #[test]
    fn sigma_zero_segment_uses_linear_fallback() {
        let c = ExtinctionCurve::new(vec![(1e-7, 0.0), (3e-7, 2e-26)]).unwrap();
        assert_rel(c.sigma_at(2e-7).unwrap(), 1e-26, 1e-12);
    }

    #[test]
    fn sigma_out_of_range_errors() {
        let c = ExtinctionCurve::new(vec![(1e-7, 1e-25), (1e-5, 1e-27)]).unwrap();
        assert!(matches!(c.sigma_at(1e-8), Err(Error::OutOfRange { .. })));
        assert!(matches!(c.sigma_at(1e-4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn bundled_curve_loads_with_wide_coverage() {
        let c = ExtinctionCurve::builtin_illustrative();
        assert!(c.sample_count() > 50, "only {} samples", c.sample_count());
        assert!(c.min_wavelength() <= 1e-12);
        assert!(c.max_wavelength() >= 1.0);
        // Optical cross section is within an order of magnitude of the
        // canonical ~5e-26 m^2 per H.
        let sigma_v = c.sigma_at(5.5e-7).unwrap();
        assert!(sigma_v > 5e-27 && sigma_v < 5e-25);
    }

    #[test]
    fn bundled_bands_block_uv_but_not_320nm() {
        let b = AtmosphereBands::builtin_earth();
        assert!(b.blocked(2.0e-7));
        assert!(!b.blocked(3.2e-7), "320 nm is the open edge of the UV cutoff");
        assert!(!b.blocked(5.5e-7));
        assert!(b.blocked(1e-4));
        assert!(!b.blocked(0.2653));
        assert!(b.blocked(50.0));
    }

    #[test]
    fn band_boundaries_are_half_open() {
        let b = AtmosphereBands::new(vec![(1e-6, 2e-6)]).unwrap();
        assert!(b.blocked(1e-6));
        assert!(b.blocked(1.5e-6));
        assert!(!b.blocked(2e-6), "upper boundary excluded");
        assert!(!b.blocked(0.9e-6));
    }

    #[test]
    fn band_csv_rejects_inverted_interval() {
        let err = AtmosphereBands::from_csv_str("lo_m,hi_m\n2e-6,1e-6\n", "t.csv").unwrap_err();
        assert!(matches!(err, Error::DataFormat { .. }));
    }

    #[test]
    fn curve_csv_round_trips_from_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.csv");
        std::fs::write(&path, "wavelength_m,sigma_m2\n1e-7,1e-25\n1e-5,1e-27\n").unwrap();
        let c = ExtinctionCurve::from_csv_path(&path).unwrap();
        assert_eq!(c.sample_count(), 2);
        let missing = dir.path().join("absent.csv");
        assert!(matches!(
            ExtinctionCurve::from_csv_path(&missing),
            Err(Error::Io { .. })
        ));
    }

    proptest! {
        #[test]
        fn extinction_monotone_in_each_argument(
            n in 1e3f64..1e9,
            sigma in 1e-30f64..1e-20,
            l in 1e10f64..1e20,
            factor in 1.01f64..10.0,
        ) {
            let base = extinction_probability(n, sigma, l);
            prop_assert!(extinction_probability(n * factor, sigma, l) >= base);
            prop_assert!(extinction_probability(n, sigma * factor, l) >= base);
            prop_assert!(extinction_probability(n, sigma, l * factor) >= base);
        }

        #[test]
        fn extinction_composes_over_path_segments(
            n in 1e3f64..1e9,
            sigma in 1e-30f64..1e-22,
            l1 in 1e10f64..1e19,
            l2 in 1e10f64..1e19,
        ) {
            let whole = extinction_probability(n, sigma, l1 + l2);
            let a = extinction_probability(n, sigma, l1);
            let b = extinction_probability(n, sigma, l2);
            let combined = 1.0 - (1.0 - a) * (1.0 - b);
            prop_assert!((whole - combined).abs() <= 1e-12);
        }
    }
}
