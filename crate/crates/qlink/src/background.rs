//! Thermal background light and the depolarization it induces.
//!
//! A receiver that accepts one spatial mode, both polarizations, a fractional
//! bandwidth of order one, and a time bin matched to the photon's coherence
//! length sees at least `N = I_nu lambda^3 / (128 pi^2 hbar c)` background
//! photons per signal photon from isotropic radiation of specific intensity
//! `I_nu`. Treating signal replacement by a background photon as
//! depolarizing noise gives error rate `eps = N / (1 + N)`; requiring
//! `eps <= eps_c` bounds the tolerable intensity (and, for blackbody
//! radiation, the usable wavelength).

use crate::constants::{C, HBAR, K_BOLTZMANN, T_CMB};
use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use std::path::Path;

const SPECTRUM_HEADER: &str = "wavelength_m,intensity_si";

/// Planck specific intensity `B_nu(T)` at `wavelength`, W m^-2 Hz^-1 sr^-1:
/// `(4 pi hbar c / lambda^3) / (exp(2 pi hbar c / (lambda k T)) - 1)`.
pub fn planck_intensity(temperature: f64, wavelength: f64) -> f64 {
    debug_assert!(temperature > 0.0 && wavelength > 0.0);
    let x = 2.0 * std::f64::consts::PI * HBAR * C / (wavelength * K_BOLTZMANN * temperature);
    let prefactor = 4.0 * std::f64::consts::PI * HBAR * C / wavelength.powi(3);
    prefactor / x.exp_m1()
}

/// Rayleigh-Jeans limit `2 k T / lambda^2` of [`planck_intensity`].
pub fn rayleigh_jeans_intensity(temperature: f64, wavelength: f64) -> f64 {
    debug_assert!(temperature > 0.0 && wavelength > 0.0);
    2.0 * K_BOLTZMANN * temperature / (wavelength * wavelength)
}

/// Background photons per signal photon in the matched mode:
/// `I_nu lambda^3 / (128 pi^2 hbar c)`.
pub fn background_photon_count(intensity: f64, wavelength: f64) -> f64 {
    debug_assert!(intensity >= 0.0 && wavelength > 0.0);
    intensity * wavelength.powi(3) / (128.0 * std::f64::consts::PI.powi(2) * HBAR * C)
}

/// Depolarizing error rate from `n` background photons per signal photon:
/// `n / (1 + n)`.
pub fn depolarizing_epsilon(n: f64) -> f64 {
    debug_assert!(n >= 0.0);
    n / (1.0 + n)
}

/// Largest background intensity compatible with error threshold `eps_c`:
/// `(eps_c / (1 - eps_c)) * 128 pi^2 hbar c / lambda^3`.
pub fn max_intensity(wavelength: f64, eps_c: f64) -> f64 {
    debug_assert!(wavelength > 0.0 && eps_c > 0.0 && eps_c < 1.0);
    (eps_c / (1.0 - eps_c)) * 128.0 * std::f64::consts::PI.powi(2) * HBAR * C
        / wavelength.powi(3)
}

/// Longest usable wavelength against a blackbody background at temperature
/// `t`, in the Rayleigh-Jeans form:
/// `(64 pi^2 eps_c / (1 - eps_c)) * hbar c / (k t)`.
pub fn max_wavelength(eps_c: f64, t: f64) -> f64 {
    debug_assert!(t > 0.0 && eps_c > 0.0 && eps_c < 1.0);
    64.0 * std::f64::consts::PI.powi(2) * eps_c / (1.0 - eps_c) * HBAR * C / (K_BOLTZMANN * t)
}

/// Self-consistent wavelength threshold using the full Planck law instead of
/// its Rayleigh-Jeans limit. For a blackbody the matched-mode count reduces
/// to `N = 1 / (32 pi (exp(2 pi hbar c / (lambda k t)) - 1))`, so setting
/// `N = eps_c / (1 - eps_c)` gives
/// `lambda = 2 pi hbar c / (k t ln(1 + (1 - eps_c) / (32 pi eps_c)))`.
pub fn max_wavelength_planck(eps_c: f64, t: f64) -> f64 {
    debug_assert!(t > 0.0 && eps_c > 0.0 && eps_c < 1.0);
    let r = eps_c / (1.0 - eps_c);
    2.0 * std::f64::consts::PI * HBAR * C
        / (K_BOLTZMANN * t * (1.0 / (32.0 * std::f64::consts::PI * r)).ln_1p())
}

/// Minimum sender intensity needed to keep the error rate at or below
/// `eps_c` against a background of intensity `background`:
/// `((1 - eps_c) / eps_c) * background`.
pub fn min_sender_intensity(background: f64, eps_c: f64) -> f64 {
    debug_assert!(background >= 0.0 && eps_c > 0.0 && eps_c < 1.0);
    (1.0 - eps_c) / eps_c * background
}

/// A tabulated specific-intensity spectrum, `(wavelength m, I_nu SI)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    label: String,
    curve: SampledCurve,
}

impl SpectrumTable {
    pub fn new(label: &str, samples: Vec<(f64, f64)>) -> Result<Self> {
        Ok(SpectrumTable {
            label: label.to_string(),
            curve: SampledCurve::new(samples)?,
        })
    }

    /// Parses CSV with header `wavelength_m,intensity_si`; `#` comments.
    pub fn from_csv_str(text: &str, label: &str) -> Result<Self> {
        Ok(SpectrumTable {
            label: label.to_string(),
            curve: SampledCurve::from_csv(text, SPECTRUM_HEADER, label)?,
        })
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_csv_str(&text, &path.display().to_string())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn intensity_at(&self, wavelength: f64) -> Result<f64> {
        self.curve.value_at(wavelength, "wavelength")
    }
}

/// One source of background light.
#[derive(Debug, Clone, PartialEq)]
pub enum BackgroundComponent {
    /// Blackbody at the CMB temperature, evaluated with the full Planck law.
    Cmb,
    /// User-supplied tabulated spectrum.
    Table(SpectrumTable),
}

impl BackgroundComponent {
    pub fn label(&self) -> &str {
        match self {
            BackgroundComponent::Cmb => "cmb",
            BackgroundComponent::Table(t) => t.label(),
        }
    }

    pub fn intensity_at(&self, wavelength: f64) -> Result<f64> {
        match self {
            BackgroundComponent::Cmb => Ok(planck_intensity(T_CMB, wavelength)),
            BackgroundComponent::Table(t) => t.intensity_at(wavelength),
        }
    }
}

/// Sum of background components seen by the receiver. Always contains the
/// CMB; user spectra add on top.
#[derive(Debug, Clone, PartialEq)]
pub struct BackgroundModel {
    components: Vec<BackgroundComponent>,
}

impl Default for BackgroundModel {
    fn default() -> Self {
        Self::cmb_only()
    }
}

impl BackgroundModel {
    pub fn cmb_only() -> Self {
        BackgroundModel {
            components: vec![BackgroundComponent::Cmb],
        }
    }

    pub fn with_component(mut self, component: BackgroundComponent) -> Self {
        self.components.push(component);
        self
    }

    pub fn components(&self) -> &[BackgroundComponent] {
        &self.components
    }

    /// Total specific intensity at `wavelength`; errors if any tabulated
    /// component does not cover it.
    pub fn total_intensity(&self, wavelength: f64) -> Result<f64> {
        let mut total = 0.0;
        for component in &self.components {
            total += component.intensity_at(wavelength)?;
        }
        Ok(total)
    }
}
