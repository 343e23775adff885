//! Full link verdict for the two bundled scenarios.
//!
//! A scenario bundles geometry, datasets, and policy; evaluating it runs
//! every gate (wavelength ceiling, depolarization, beam, extinction,
//! atmosphere) and reports which one binds. The bundled pair contrasts a
//! ground-based 50 km design that diffraction defeats with a space-based
//! 200 km design that clears every gate.

use qlink::channels::erasure_capacity;
use qlink::constants::JULIAN_YEAR;
use qlink::feasibility::{evaluate_scenario, Scenario, Tier};
use std::path::Path;

fn main() {
    let scenario_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/scenarios");
    for name in ["proxima_ground.json", "parsec_space.json"] {
        let path = scenario_dir.join(name);
        let scenario = Scenario::from_json_path(&path).expect("bundled scenario loads");
        let report = evaluate_scenario(&scenario).expect("bundled scenario evaluates");

        println!("{name}:");
        println!(
            "  {} pc, {:.0} nm, D1 = D2 = {} km, {:?} receiver",
            scenario.distance_m / qlink::constants::PARSEC,
            scenario.wavelength_m * 1e9,
            scenario.d1_m / 1e3,
            scenario.receiver_site
        );
        println!("  tier: {}", Tier::of(&report.verdict));
        println!("  binding constraint: {}", report.verdict.binding_constraint);
        println!(
            "  erasures: extinction {:.4}, atmosphere {:.1}, beam {:.4} -> combined {:.4}",
            report.budget.extinction_eps,
            report.budget.atmosphere_eps,
            report.budget.beam_eps,
            report.combined_eps
        );
        println!(
            "  one-way rate bound: {:.4} qubits/use (erasure capacity 1 - 2 eps)",
            report.verdict.q_rate_bound
        );
        println!(
            "  minimum diameter here: {:.1} km",
            report.min_diameter_required_m / 1e3
        );
        println!(
            "  two-way round trip: {:.2} yr",
            report.q2_delay_s / JULIAN_YEAR
        );
        println!();
    }

    // The capacity bound is tight only for pure erasure; it is the number
    // every verdict's q_rate_bound reports.
    println!(
        "erasure capacity falls linearly: eps 0.1 -> {:.1}, eps 0.3 -> {:.1}, eps 0.5 -> {:.1}",
        erasure_capacity(0.1),
        erasure_capacity(0.3),
        erasure_capacity(0.5)
    );
}
