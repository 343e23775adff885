//! Sweep a link design across the spectrum and find the open windows.
//!
//! For a fixed geometry the verdict changes with wavelength: extinction
//! and atmospheric bands carve notches out of the short end, diffraction
//! punishes the long end (the minimum diameter grows as sqrt(lambda)),
//! and the thermal background closes the spectrum entirely past the
//! one-way and two-way ceilings.

use qlink::feasibility::{log_grid, scan_wavelengths, Scenario, Tier};
use std::path::Path;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/scenarios/parsec_space.json");
    let mut scenario = Scenario::from_json_path(&path).expect("bundled scenario loads");
    // Widen the apertures so diffraction is not the binding gate across
    // the whole sweep.
    scenario.d1_m = 5.0e8;
    scenario.d2_m = 5.0e8;

    let grid = log_grid(1.0e-7, 2.0, 24).expect("valid grid");
    let rows = scan_wavelengths(&scenario, &grid).expect("scan evaluates");

    println!(
        "{:>12}  {:>10} {:>8} {:>10} {:>10}  {:<11} {:>14}",
        "lambda", "eps_ext", "eps_atm", "eps_beam", "eps_depol", "verdict", "min diameter"
    );
    for row in &rows {
        println!(
            "{:>10.4e} m  {:>10.2e} {:>8.1} {:>10.2e} {:>10.2e}  {:<11} {:>12.1} m",
            row.lambda_m,
            row.eps_ext,
            row.eps_atm,
            row.eps_beam,
            row.eps_depol,
            row.verdict.to_string(),
            row.min_diameter_m
        );
    }

    let open = rows.iter().filter(|r| r.verdict == Tier::QPositive).count();
    let q2 = rows.iter().filter(|r| r.verdict == Tier::Q2Only).count();
    println!(
        "\n{open} of {} grid points support one-way capacity, {q2} more two-way only",
        rows.len()
    );
}
