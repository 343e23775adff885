//! Seeded Monte Carlo photon transport for validating the analytic erasure
//! and depolarization probabilities.
//!
//! Each photon is an independent ChaCha8 stream: the generator is seeded
//! once from the run seed and `set_stream(photon_index)` selects the
//! photon's substream. Results are therefore bit-identical across runs and
//! across thread counts, and photons can be processed in any order.
//!
//! Per photon the draws happen in a fixed order regardless of earlier
//! outcomes: one uniform for extinction, then per hop one radial draw at
//! the sender plane and one at the receiver plane, then one uniform for
//! depolarization. Radial positions are Rayleigh samples
//! `r = dx * sqrt(-2 ln u)` with `u` in (0, 1], matching a circular
//! Gaussian mode of radius `dx`; the photon is caught when `r <= D/2`.
//! The mode radii per hop are the same optimal split the analytic joint
//! catch probability uses.
//!
//! The depolarization flip is drawn directly as a Bernoulli event with the
//! analytic probability `N / (1 + N)`. Sampling a thermal photon count
//! `K` and flipping with probability `K / (1 + K)` instead would estimate
//! `E[K/(1+K)]`, a different (smaller) quantity; the
//! `poisson_mixture_is_a_different_estimator` test pins the gap.
//!
//! The atmosphere gate is deterministic per wavelength (a band either
//! blocks or it does not), so the simulator does not roll dice for it; the
//! `combined` statistic covers extinction and beam loss.

use crate::background;
use crate::beam::{self, AperturePair};
use crate::channels::combine_erasures;
use crate::error::{Error, Result};
use crate::extinction::extinction_probability;
use crate::feasibility::Scenario;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Loss tally for one mechanism, with its analytic prediction and the
/// z-score of the observed count under that prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MechanismStats {
    /// Photons lost to this mechanism (marginal count; mechanisms are
    /// tallied independently).
    pub losses: u64,
    pub empirical_eps: f64,
    pub analytic_eps: f64,
    /// Binomial standard error under the analytic probability.
    pub std_error: f64,
    /// `(empirical - analytic) / std_error`, 0 when the standard error
    /// vanishes and the counts agree.
    pub z_score: f64,
}

impl MechanismStats {
    fn new(losses: u64, n: u64, analytic_eps: f64) -> Self {
        let empirical_eps = losses as f64 / n as f64;
        let std_error = (analytic_eps * (1.0 - analytic_eps) / n as f64).sqrt();
        let z_score = if std_error > 0.0 {
            (empirical_eps - analytic_eps) / std_error
        } else if empirical_eps == analytic_eps {
            0.0
        } else {
            f64::INFINITY * (empirical_eps - analytic_eps).signum()
        };
        MechanismStats {
            losses,
            empirical_eps,
            analytic_eps,
            std_error,
            z_score,
        }
    }
}

/// Full simulation output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub n_photons: u64,
    pub seed: u64,
    pub extinction: MechanismStats,
    /// Whole-path beam loss (any hop missing either aperture).
    pub beam: MechanismStats,
    pub depolarization: MechanismStats,
    /// Photons lost to extinction or beam loss; analytic value is the
    /// combined erasure of those two mechanisms.
    pub combined: MechanismStats,
}

#[derive(Debug, Default, Clone, Copy)]
struct Counts {
    ext: u64,
    beam: u64,
    depol: u64,
    either: u64,
}

impl Counts {
    fn add(self, other: Counts) -> Counts {
        Counts {
            ext: self.ext + other.ext,
            beam: self.beam + other.beam,
            depol: self.depol + other.depol,
            either: self.either + other.either,
        }
    }
}

/// Runs `n_photons` photons through the scenario's extinction, beam, and
/// depolarization stages.
pub fn simulate(scenario: &Scenario, n_photons: u64, seed: u64) -> Result<SimReport> {
    if n_photons == 0 {
        return Err(Error::InvalidInput(
            "simulation needs at least one photon".to_string(),
        ));
    }
    scenario.validate()?;
    let lambda = scenario.wavelength_m;
    let hop = scenario.hop_distance_m();
    let hops = scenario.relay_n;

    let sigma = scenario.extinction.sigma_at(lambda)?;
    let eps_ext = extinction_probability(scenario.n_h, sigma, scenario.distance_m);

    let ap = AperturePair::new(scenario.d1_m, scenario.d2_m)?;
    let (dx1, dx2) = beam::optimal_uncertainty_split(ap, lambda, hop)?;
    let catch_hop =
        beam::catch_probability(ap.d1, dx1) * beam::catch_probability(ap.d2, dx2);
    let eps_beam = 1.0 - catch_hop.powf(hops as f64);

    let intensity = scenario.background.total_intensity(lambda)?;
    let eps_depol =
        background::depolarizing_epsilon(background::background_photon_count(intensity, lambda));

    let r1_max = ap.d1 / 2.0;
    let r2_max = ap.d2 / 2.0;
    let base = ChaCha8Rng::seed_from_u64(seed);

    let counts = (0..n_photons)
        .into_par_iter()
        .fold(Counts::default, |mut c, photon| {
            let mut rng = base.clone();
            rng.set_stream(photon);
            let lost_ext = rng.gen::<f64>() < eps_ext;
            let mut lost_beam = false;
            for _ in 0..hops {
                let r1 = dx1 * (-2.0 * (1.0 - rng.gen::<f64>()).ln()).sqrt();
                let r2 = dx2 * (-2.0 * (1.0 - rng.gen::<f64>()).ln()).sqrt();
                if r1 > r1_max || r2 > r2_max {
                    lost_beam = true;
                }
            }
            let depol = rng.gen::<f64>() < eps_depol;
            c.ext += lost_ext as u64;
            c.beam += lost_beam as u64;
            c.depol += depol as u64;
            c.either += (lost_ext || lost_beam) as u64;
            c
        })
        .reduce(Counts::default, Counts::add);

    Ok(SimReport {
        n_photons,
        seed,
        extinction: MechanismStats::new(counts.ext, n_photons, eps_ext),
        beam: MechanismStats::new(counts.beam, n_photons, eps_beam),
        depolarization: MechanismStats::new(counts.depol, n_photons, eps_depol),
        combined: MechanismStats::new(
            counts.either,
            n_photons,
            combine_erasures(&[eps_ext, eps_beam]),
        ),
    })
}

/// Empirical single-aperture catch probability: `n_photons` Rayleigh radial
/// draws of mode radius `sigma` against a diameter-`d` aperture. Same
/// substream scheme as [`simulate`].
pub fn simulate_catch(d: f64, sigma: f64, n_photons: u64, seed: u64) -> Result<f64> {
    if !(d.is_finite() && d > 0.0) || !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidInput(format!(
            "diameter and mode radius must be positive, got {d:e}, {sigma:e}"
        )));
    }
    if n_photons == 0 {
        return Err(Error::InvalidInput(
            "simulation needs at least one photon".to_string(),
        ));
    }
    let r_max = d / 2.0;
    let base = ChaCha8Rng::seed_from_u64(seed);
    let hits: u64 = (0..n_photons)
        .into_par_iter()
        .map(|photon| {
            let mut rng = base.clone();
            rng.set_stream(photon);
            let r = sigma * (-2.0 * (1.0 - rng.gen::<f64>()).ln()).sqrt();
            (r <= r_max) as u64
        })
        .sum();
    Ok(hits as f64 / n_photons as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::background::BackgroundModel;
    use crate::constants::{N_H_DEFAULT, PARSEC};
    use crate::extinction::ExtinctionCurve;
    use crate::feasibility::{Policy, ReceiverSite, Thresholds};

    fn flat_curve(sigma: f64) -> ExtinctionCurve {
        ExtinctionCurve::new(vec![(1e-13, sigma), (1e2, sigma)]).unwrap()
    }

    fn test_scenario() -> Scenario {
        // Wavelength near the one-way background bound so the
        // depolarization probability is sizable, a flat cross-section
        // giving ~30% extinction over 1 pc, apertures 1.1 x the minimum.
        let lambda = 0.2653;
        let d = 1.1 * beam::min_diameter(lambda, PARSEC);
        Scenario {
            distance_m: PARSEC,
            wavelength_m: lambda,
            d1_m: d,
            d2_m: d,
            receiver_site: ReceiverSite::Space,
            n_h: N_H_DEFAULT,
            relay_n: 1,
            policy: Policy::Combined,
            thresholds: Thresholds::default(),
            extinction: flat_curve(1e-23),
            atmosphere: None,
            background: BackgroundModel::cmb_only(),
        }
    }

    #[test]
    fn poisson_mixture_is_a_different_estimator() {
        // E[K/(1+K)] for K ~ Poisson(N) equals 1 - (1 - e^-N)/N, which at
        // N = 0.5 is about 0.213, not the Bernoulli probability
        // N/(1+N) = 1/3. Drawing the flip directly is not a shortcut for
        // the mixture; they estimate different quantities.
        let n_mean = 0.5f64;
        let mut mixture = 0.0;
        let mut term = (-n_mean).exp(); // Poisson pmf at k = 0
        for k in 0..200u32 {
            mixture += term * k as f64 / (1.0 + k as f64);
            term *= n_mean / (k as f64 + 1.0);
        }
        let closed_form = 1.0 - (1.0 - (-n_mean).exp()) / n_mean;
        assert!((mixture - closed_form).abs() < 1e-12);
        let bernoulli = n_mean / (1.0 + n_mean);
        assert!((bernoulli - 1.0 / 3.0).abs() < 1e-15);
        assert!(
            (mixture - bernoulli).abs() > 1e-3,
            "estimators coincide: {mixture} vs {bernoulli}"
        );
    }

    #[test]
    fn empirical_rates_match_analytic_within_three_sigma() {
        let s = test_scenario();
        let r = simulate(&s, 200_000, 7).unwrap();
        for (name, stats) in [
            ("extinction", r.extinction),
            ("beam", r.beam),
            ("depolarization", r.depolarization),
            ("combined", r.combined),
        ] {
            assert!(
                stats.z_score.abs() <= 3.0,
                "{name}: z = {} (empirical {} analytic {})",
                stats.z_score,
                stats.empirical_eps,
                stats.analytic_eps
            );
        }
        assert!(r.extinction.analytic_eps > 0.25 && r.extinction.analytic_eps < 0.35);
        assert!(r.depolarization.analytic_eps > 0.3);
    }

    #[test]
    fn identical_across_thread_counts_and_reruns() {
        let s = test_scenario();
        let reference = simulate(&s, 50_000, 42).unwrap();
        let rerun = simulate(&s, 50_000, 42).unwrap();
        assert_eq!(reference, rerun);
        for threads in [1usize, 4] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let run = pool.install(|| simulate(&s, 50_000, 42)).unwrap();
            assert_eq!(reference, run, "{threads}-thread pool diverged");
        }
    }

    #[test]
    fn different_seeds_give_different_counts() {
        let s = test_scenario();
        let a = simulate(&s, 20_000, 1).unwrap();
        let b = simulate(&s, 20_000, 2).unwrap();
        assert_ne!(
            (a.extinction.losses, a.beam.losses, a.depolarization.losses),
            (b.extinction.losses, b.beam.losses, b.depolarization.losses)
        );
    }

    #[test]
    fn beam_loss_falls_as_apertures_grow() {
        let lambda = 3.0e-7;
        let dmin = beam::min_diameter(lambda, PARSEC);
        let mut rates = Vec::new();
        for factor in [0.8, 1.0, 1.25] {
            let mut s = test_scenario();
            s.wavelength_m = lambda;
            s.extinction = flat_curve(0.0);
            s.d1_m = factor * dmin;
            s.d2_m = factor * dmin;
            let r = simulate(&s, 100_000, 9).unwrap();
            rates.push(r.beam.empirical_eps);
        }
        assert!(rates[0] > rates[1] && rates[1] > rates[2], "{rates:?}");
        // At exactly the minimum diameter the loss sits at 1/2.
        assert!((rates[1] - 0.5).abs() < 0.01);
    }

    #[test]
    fn extinction_and_beam_losses_are_independent() {
        let s = test_scenario();
        let n = 200_000u64;
        let r = simulate(&s, n, 13).unwrap();
        // Joint losses from the marginal and union counts.
        let both = r.extinction.losses + r.beam.losses - r.combined.losses;
        let p_joint = r.extinction.analytic_eps * r.beam.analytic_eps;
        let se = (p_joint * (1.0 - p_joint) / n as f64).sqrt();
        assert!(
            (both as f64 / n as f64 - p_joint).abs() <= 3.0 * se,
            "joint rate {} vs independent product {}",
            both as f64 / n as f64,
            p_joint
        );
    }

    #[test]
    fn relay_hops_compound_beam_loss() {
        let mut s = test_scenario();
        s.wavelength_m = 3.0e-7;
        s.extinction = flat_curve(0.0);
        s.relay_n = 3;
        let hop = s.hop_distance_m();
        let d = 1.05 * beam::min_diameter(s.wavelength_m, hop);
        s.d1_m = d;
        s.d2_m = d;
        let r = simulate(&s, 150_000, 21).unwrap();
        let ap = AperturePair::new(d, d).unwrap();
        let p_hop = beam::joint_catch_probability(ap, s.wavelength_m, hop).unwrap();
        let expected = 1.0 - p_hop.powi(3);
        assert!((r.beam.analytic_eps - expected).abs() < 1e-9);
        assert!(r.beam.z_score.abs() <= 3.0);
        assert!(r.beam.empirical_eps > 1.0 - p_hop, "multi-hop loss exceeds single-hop");
    }

    #[test]
    fn simulate_catch_matches_closed_form() {
        for (case, (d, sigma)) in [(2.0, 1.0), (0.5, 1.0), (40.0, 17.0)].into_iter().enumerate() {
            let n = 100_000;
            let p_hat = simulate_catch(d, sigma, n, 100 + case as u64).unwrap();
            let p = beam::catch_probability(d, sigma);
            let se = (p * (1.0 - p) / n as f64).sqrt();
            assert!(
                (p_hat - p).abs() <= 3.0 * se,
                "d {d} sigma {sigma}: {p_hat} vs {p}"
            );
        }
    }

    #[test]
    fn rejects_empty_runs_and_bad_inputs() {
        let s = test_scenario();
        assert!(matches!(
            simulate(&s, 0, 1),
            Err(Error::InvalidInput(_))
        ));
        assert!(simulate_catch(0.0, 1.0, 10, 1).is_err());
        assert!(simulate_catch(1.0, -1.0, 10, 1).is_err());
        assert!(simulate_catch(1.0, 1.0, 0, 1).is_err());
    }
}
