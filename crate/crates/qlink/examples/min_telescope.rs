//! How big must two telescopes be to keep a quantum link open?
//!
//! The joint probability that both apertures catch a diffraction-limited
//! Gaussian mode crosses 1/2 at D = sqrt(c1 lambda L), and an erasure
//! channel stops carrying quantum information at exactly that point.
//! This prints the minimum diameter across the spectrum for two targets.

use qlink::beam::{self, AperturePair};
use qlink::constants::PARSEC;

fn main() {
    let targets = [("1 pc", PARSEC), ("Proxima Centauri (1.30 pc)", 1.30 * PARSEC)];
    let bands = [
        ("gamma (1 pm)", 1.0e-12),
        ("X-ray (0.1 nm)", 1.0e-10),
        ("UV (300 nm)", 3.0e-7),
        ("near UV (320 nm)", 3.2e-7),
        ("CMB trough (3 mm)", 3.0e-3),
    ];

    for (target, distance) in targets {
        println!("minimum joint telescope diameter, {target}:");
        for (band, wavelength) in bands {
            let d = beam::min_diameter(wavelength, distance);
            println!("  {band:<22} {:>12.1} m  ({:.1} km)", d, d / 1e3);
        }
        println!();
    }

    // The bound constrains the geometric mean sqrt(D1 D2), so one side can
    // shrink if the other grows.
    let lambda = 3.0e-7;
    let d_min = beam::min_diameter(lambda, PARSEC);
    let d1 = 2.0 * d_min;
    let d2 = beam::required_partner_diameter(d1, lambda, PARSEC);
    let joint = beam::joint_catch_probability(
        AperturePair::new(d1, d2).unwrap(),
        lambda,
        PARSEC,
    )
    .unwrap();
    println!("asymmetric pair at 300 nm over 1 pc:");
    println!("  D1 = {:.1} km needs D2 = {:.1} km", d1 / 1e3, d2 / 1e3);
    println!("  joint catch probability there: {joint:.6} (the 1/2 boundary)");
}
