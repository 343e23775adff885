//! Gaussian beam propagation and diffraction-limited aperture sizing.
//!
//! A transverse Gaussian mode of waist `sigma0` grows with propagation
//! distance z as `sigma_z = sigma0 sqrt(1 + z^2/z0^2)` with Rayleigh range
//! `z0 = 2 k sigma0^2`. For two stations a distance L apart, the product of
//! mode radii at the stations obeys `sigma_z * sigma_(z-L) >= lambda L / 4 pi`
//! no matter where the waist sits, with equality for the optimal waist
//! `sqrt(lambda L / 8 pi)` placed at the midpoint. A circular aperture of
//! diameter D catches a mode of radius sigma with probability
//! `1 - exp(-D^2 / 8 sigma^2)`, and the two-aperture joint catch probability,
//! maximized over how the mode is split between sender and receiver planes,
//! crosses 1/2 exactly at the minimum-diameter condition implemented by
//! [`min_diameter`].

use crate::error::{Error, Result};

/// `ln(2 / (3 - 2 sqrt(2))) / pi`: the coefficient c1 in the minimum
/// diameter law `D_min = sqrt(c1 lambda L)`.
pub const MIN_DIAMETER_COEFF: f64 = 0.781_735_452_491_832_2;

/// A Gaussian beam: wavelength, waist radius, and the derived wavenumber and
/// Rayleigh range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamGeometry {
    pub wavelength: f64,
    pub waist_radius: f64,
    pub wavenumber: f64,
    pub rayleigh_range: f64,
}

impl BeamGeometry {
    /// Errors unless wavelength and waist radius are finite and positive.
    pub fn new(wavelength: f64, waist_radius: f64) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::InvalidInput(format!(
                "wavelength must be positive, got {wavelength:e}"
            )));
        }
        if !(waist_radius.is_finite() && waist_radius > 0.0) {
            return Err(Error::InvalidInput(format!(
                "waist radius must be positive, got {waist_radius:e}"
            )));
        }
        let wavenumber = 2.0 * std::f64::consts::PI / wavelength;
        let rayleigh_range = 2.0 * wavenumber * waist_radius * waist_radius;
        Ok(BeamGeometry {
            wavelength,
            waist_radius,
            wavenumber,
            rayleigh_range,
        })
    }

    /// Mode radius a signed distance `z` from the waist.
    pub fn beam_radius(&self, z: f64) -> f64 {
        let ratio = z / self.rayleigh_range;
        self.waist_radius * (1.0 + ratio * ratio).sqrt()
    }
}

/// Sender and receiver aperture diameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AperturePair {
    pub d1: f64,
    pub d2: f64,
}

impl AperturePair {
    pub fn new(d1: f64, d2: f64) -> Result<Self> {
        for (name, d) in [("d1", d1), ("d2", d2)] {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "aperture {name} must be positive, got {d:e}"
                )));
            }
        }
        Ok(AperturePair { d1, d2 })
    }

    /// Geometric-mean diameter `sqrt(d1 d2)`.
    pub fn geometric_mean(&self) -> f64 {
        (self.d1 * self.d2).sqrt()
    }
}

/// Lower bound on the product of mode radii at two stations separated by
/// `l`: `lambda l / 4 pi`.
pub fn min_radius_product(wavelength: f64, l: f64) -> f64 {
    wavelength * l / (4.0 * std::f64::consts::PI)
}

/// Waist radius minimizing that product: `sqrt(lambda l / 8 pi)`, waist at
/// the midpoint.
pub fn optimal_waist(wavelength: f64, l: f64) -> f64 {
    (wavelength * l / (8.0 * std::f64::consts::PI)).sqrt()
}

/// Probability that a circular aperture of diameter `d` catches a Gaussian
/// mode of radius `sigma`: `1 - exp(-d^2 / 8 sigma^2)`.
pub fn catch_probability(d: f64, sigma: f64) -> f64 {
    debug_assert!(d >= 0.0 && sigma > 0.0);
    let t = d * d / (8.0 * sigma * sigma);
    -(-t).exp_m1()
}

/// Joint probability that both apertures catch the mode, maximized over the
/// allowed split of mode radii `dx1 * dx2 = lambda l / 4 pi` between the two
/// planes. The split is located numerically by golden-section search on
/// `ln dx1` (relative tolerance 1e-12) rather than by assuming a symmetric
/// optimum.
pub fn joint_catch_probability(ap: AperturePair, wavelength: f64, l: f64) -> Result<f64> {
    optimize_split(ap, wavelength, l).map(|(_, _, p)| p)
}

/// The mode radii `(dx1, dx2)` at the sender and receiver planes that
/// maximize the joint catch probability, with `dx1 * dx2 = lambda l / 4 pi`.
pub fn optimal_uncertainty_split(
    ap: AperturePair,
    wavelength: f64,
    l: f64,
) -> Result<(f64, f64)> {
    optimize_split(ap, wavelength, l).map(|(dx1, dx2, _)| (dx1, dx2))
}

fn optimize_split(ap: AperturePair, wavelength: f64, l: f64) -> Result<(f64, f64, f64)> {
    if !(wavelength.is_finite() && wavelength > 0.0) || !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidInput(format!(
            "wavelength and distance must be positive, got {wavelength:e}, {l:e}"
        )));
    }
    let product = min_radius_product(wavelength, l);
    let joint = |x: f64| -> f64 {
        let dx1 = x.exp();
        let dx2 = product / dx1;
        catch_probability(ap.d1, dx1) * catch_probability(ap.d2, dx2)
    };
    // Center the bracket where the two exponents balance; +/- 20 in ln dx1
    // covers aperture ratios beyond e^40 while keeping the objective
    // strictly unimodal inside the bracket.
    let center = 0.5 * (product * ap.d1 / ap.d2).ln();
    let (x, fx) = golden_section_max(joint, center - 20.0, center + 20.0, 1e-12)?;
    if !fx.is_finite() || !(0.0..=1.0).contains(&fx) {
        return Err(Error::Numeric(format!(
            "joint catch optimization produced {fx:e} at ln dx1 = {x:e}"
        )));
    }
    let dx1 = x.exp();
    Ok((dx1, product / dx1, fx))
}

/// Minimum common aperture diameter for an above-1/2 joint catch probability
/// over distance `l`: `sqrt(c1 lambda l)` with `c1 = ln(2/(3-2 sqrt 2))/pi`.
/// For unequal apertures the same bound applies to `sqrt(d1 d2)`.
pub fn min_diameter(wavelength: f64, l: f64) -> f64 {
    debug_assert!(wavelength > 0.0 && l > 0.0);
    (MIN_DIAMETER_COEFF * wavelength * l).sqrt()
}

/// Partner diameter needed alongside `d1` to reach the 1/2 joint catch
/// boundary: `min_diameter^2 / d1`.
pub fn required_partner_diameter(d1: f64, wavelength: f64, l: f64) -> f64 {
    debug_assert!(d1 > 0.0);
    let dmin = min_diameter(wavelength, l);
    dmin * dmin / d1
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
/// Shrinks the bracket until its width is below `tol * max(1, |x|)`.
fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Numeric(format!("bad bracket [{a:e}, {b:e}]")));
    }
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol * a.abs().max(b.abs()).max(1.0) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
        if !fc.is_finite() || !fd.is_finite() {
            return Err(Error::Numeric(
                "objective became non-finite during golden-section search".to_string(),
            ));
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)))
}
