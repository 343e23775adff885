//! Physical constants (SI) used throughout the crate.
//!
//! Fundamental constants are CODATA 2018 values; `C` and `K_BOLTZMANN` are
//! exact by definition of the SI. Astronomical lengths follow the IAU: the
//! astronomical unit is exact, the parsec is 648000/pi au, and the light
//! year is the distance light travels in one Julian year.

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum, m/s (exact).
pub const C: f64 = 299_792_458.0;

/// Boltzmann constant, J/K (exact).
pub const K_BOLTZMANN: f64 = 1.380_649e-23;

/// Cosmic microwave background temperature, K.
pub const T_CMB: f64 = 2.726;

/// Default interstellar hydrogen number density, m^-3 (1.146 cm^-3).
pub const N_H_DEFAULT: f64 = 1.146e6;

/// Astronomical unit, m (exact, IAU 2012).
pub const AU: f64 = 1.495_978_707e11;

/// Julian year, s (365.25 days).
pub const JULIAN_YEAR: f64 = 3.155_76e7;

/// Light year, m (c times one Julian year).
pub const LIGHT_YEAR: f64 = C * JULIAN_YEAR;

/// Parsec, m (648000/pi au).
pub const PARSEC: f64 = 3.085_677_581_491_367e16;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn light_year_is_c_times_julian_year() {
        assert_eq!(LIGHT_YEAR, 9.460_730_472_580_8e15);
    }

    #[test]
    fn parsec_matches_iau_definition() {
        let from_def = 648_000.0 / std::f64::consts::PI * AU;
        assert!((PARSEC - from_def).abs() / from_def < 1e-15);
    }

    #[test]
    fn codata_values_pinned() {
        assert_eq!(HBAR, 1.054571817e-34);
        assert_eq!(C, 2.99792458e8);
        assert_eq!(K_BOLTZMANN, 1.380649e-23);
        assert_eq!(T_CMB, 2.726);
        assert_eq!(N_H_DEFAULT, 1.146e6);
    }
}
