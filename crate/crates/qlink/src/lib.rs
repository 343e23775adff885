//! Feasibility analysis for interstellar quantum links.
//!
//! Sending qubits between stars with lasers and telescopes faces four
//! obstacles this crate quantifies: diffraction spreads the beam beyond
//! any finite receiving aperture, interstellar hydrogen absorbs and
//! scatters photons, a planetary atmosphere blocks whole wavelength
//! bands, and thermal background light depolarizes whatever arrives.
//! Photon loss behaves as an erasure channel, which carries quantum
//! information only while the loss probability stays below 1/2 (below 1
//! for two-way-assisted protocols); background light behaves as a
//! depolarizing channel with its own 1/3 and 2/3 thresholds.
//!
//! The building blocks live in focused modules:
//!
//! - [`beam`]: Gaussian mode propagation, aperture catch probabilities,
//!   and the minimum-diameter law for crossing the erasure threshold.
//! - [`extinction`]: tabulated absorption cross-sections, Beer-Lambert
//!   survival, and atmospheric blocking bands.
//! - [`background`]: blackbody spectra, background photons per mode, and
//!   the longest usable wavelength against a thermal background.
//! - [`channels`]: erasure and depolarizing capacity thresholds, relay
//!   spacing, and round-trip latency.
//! - [`feasibility`]: the scenario engine combining all gates into a
//!   verdict, plus wavelength scans and design solvers.
//! - [`montecarlo`]: a seeded photon simulator that reproduces every
//!   analytic loss probability empirically.
//! - [`units`] and [`constants`]: the unit grammar and physical
//!   constants; [`cli`]: the `qlink` command-line front end.
//!
//! ```
//! use qlink::beam;
//! use qlink::constants::PARSEC;
//!
//! // Telescopes this large keep the joint catch probability above 1/2
//! // across a parsec at 300 nm.
//! let d_min = beam::min_diameter(3.0e-7, PARSEC);
//! assert!((d_min - 8.5068e4).abs() < 1e1);
//! ```

pub mod background;
pub mod beam;
pub mod channels;
pub mod cli;
pub mod constants;
mod curve;
pub mod error;
pub mod extinction;
pub mod feasibility;
pub mod montecarlo;
pub mod units;

pub use error::{Error, Result};
