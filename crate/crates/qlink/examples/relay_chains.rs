//! Relay chains trade one giant telescope for many small ones.
//!
//! Splitting a distance L into n hops relaxes the per-element diameter
//! bound from sqrt(c1 lambda L) to sqrt(c1 lambda L / n): a million
//! relays shrink hundred-kilometer mirrors to hundred-meter ones. The
//! price is hardware count and per-hop loss accumulation.

use qlink::channels::{relay_count, relay_spacing, RelayMode};
use qlink::constants::{AU, PARSEC};
use qlink::feasibility::solve_min_design;

fn main() {
    let lambda = 3.0e-7;
    let distance = 1.30 * PARSEC;

    // Spacing for a fixed element size, in the quoted round-prefactor
    // form and the exact diffraction-bound form.
    println!("relay spacing for 100 m elements at 300 nm:");
    for mode in [RelayMode::Nominal, RelayMode::Exact] {
        let spacing = relay_spacing(100.0, lambda, mode);
        let count = relay_count(100.0, lambda, distance, mode);
        println!(
            "  {mode:?}: {spacing:.3e} m ({:.3} au) -> {count} hops to Proxima Centauri",
            spacing / AU
        );
    }

    // The full design table: direct-link diameter and the per-element
    // diameter for relay counts from ten to a hundred million.
    let plan = solve_min_design(lambda, distance).unwrap();
    println!(
        "\ndirect link needs D = {:.1} km; with relays:",
        plan.min_diameter_m / 1e3
    );
    println!("  {:>12}  {:>18}", "hops", "element diameter");
    for option in &plan.relay_options {
        println!(
            "  {:>12}  {:>15.1} m",
            option.n, option.element_diameter_m
        );
    }
}
