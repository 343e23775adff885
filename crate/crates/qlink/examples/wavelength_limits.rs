//! Where does thermal background light end the usable spectrum?
//!
//! Every background photon that lands in the signal mode can replace the
//! signal photon, acting as a depolarizing channel with error rate
//! N/(1+N) for N background photons per mode. One-way quantum capacity
//! dies at N = 1/2 (error 1/3); two-way assistance survives to N = 2
//! (error 2/3). Against the cosmic microwave background those thresholds
//! become hard wavelength ceilings.

use qlink::background::{
    background_photon_count, depolarizing_epsilon, max_wavelength, max_wavelength_planck,
    min_sender_intensity, planck_intensity, rayleigh_jeans_intensity,
};
use qlink::constants::T_CMB;

fn main() {
    println!("longest wavelength with positive capacity against the CMB ({T_CMB} K):");
    for (label, eps) in [("one-way (Q > 0)", 1.0 / 3.0), ("two-way (Q2 > 0)", 2.0 / 3.0)] {
        let rj = max_wavelength(eps, T_CMB);
        let exact = max_wavelength_planck(eps, T_CMB);
        println!(
            "  {label:<18} {:.1} cm  (Rayleigh-Jeans closed form; Planck-exact {:.1} cm)",
            rj * 100.0,
            exact * 100.0
        );
    }

    // The Rayleigh-Jeans form overstates the background at short
    // wavelengths; by a meter the two spectra agree to a fraction of a
    // percent, so the closed-form ceilings above are safe.
    println!("\nCMB spectral intensity, Planck vs Rayleigh-Jeans:");
    for lambda in [0.01, 0.1, 0.2653, 1.0] {
        let planck = planck_intensity(T_CMB, lambda);
        let rj = rayleigh_jeans_intensity(T_CMB, lambda);
        println!(
            "  {:>6.4} m   {planck:.4e}   {rj:.4e}   ratio {:.4}",
            lambda,
            planck / rj
        );
    }

    println!("\nbackground photons per mode and the induced error rate:");
    for lambda in [0.05, 0.1, 0.2653, 0.5, 1.0612] {
        let n = background_photon_count(rayleigh_jeans_intensity(T_CMB, lambda), lambda);
        let eps = depolarizing_epsilon(n);
        println!("  {lambda:>6.4} m   N = {n:.4}   eps = {eps:.4}");
    }

    // A sender can also outshine the background: the signal must carry at
    // least twice the background intensity at the one-way threshold.
    let lambda = 1.0;
    let background = rayleigh_jeans_intensity(T_CMB, lambda);
    let floor = min_sender_intensity(background, 1.0 / 3.0);
    println!(
        "\nat {lambda} m the sender needs {floor:.3e} W m^-2 Hz^-1 sr^-1 in the mode \
         ({}x the background)",
        (floor / background).round()
    );
}
