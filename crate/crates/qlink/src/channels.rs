//! Channel capacity rules, erasure composition, relay chains, and the
//! two-way latency floor.
//!
//! Photon loss is an erasure channel: quantum capacity `1 - 2 eps`,
//! positive only for `eps < 1/2`. Independent loss mechanisms compose by
//! the complement-product rule. Background light acts as depolarizing
//! noise: one-way quantum capacity survives `eps <= 1/3`, two-way-assisted
//! capacity survives `eps <= 2/3` (the thresholds themselves sit on the
//! feasible side, since capacity vanishes only strictly beyond them). When
//! apertures are too small for one hop, a chain of refocusing relays
//! restores the hop-level catch probability at the cost of hardware; the
//! two-way tier always pays a round-trip latency of `2 L / c`.

use crate::beam::MIN_DIAMETER_COEFF;
use crate::constants::C;
use serde::{Deserialize, Serialize};

/// Quantum capacity of an erasure channel: `max(0, 1 - 2 eps)`.
pub fn erasure_capacity(eps: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&eps));
    (1.0 - 2.0 * eps).max(0.0)
}

/// Combines independent erasure probabilities: `1 - prod(1 - eps_i)`.
/// An empty list combines to 0.
pub fn combine_erasures(eps: &[f64]) -> f64 {
    debug_assert!(eps.iter().all(|e| (0.0..=1.0).contains(e)));
    1.0 - eps.iter().fold(1.0, |acc, e| acc * (1.0 - e))
}

/// Feasibility tier of a depolarizing channel with error rate `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepolFeasibility {
    /// One-way quantum capacity is positive (`eps <= 1/3`).
    QPositive,
    /// Only two-way-assisted capacity survives (`1/3 < eps <= 2/3`).
    Q2Only,
    /// No quantum communication (`eps > 2/3`).
    Infeasible,
}

/// Classifies `eps` against the 1/3 and 2/3 depolarizing thresholds.
/// Boundary values go to the more capable tier: capacity vanishes only for
/// `eps` strictly beyond a threshold.
pub fn depolarizing_feasibility(eps: f64) -> DepolFeasibility {
    debug_assert!((0.0..=1.0).contains(&eps));
    if eps <= 1.0 / 3.0 {
        DepolFeasibility::QPositive
    } else if eps <= 2.0 / 3.0 {
        DepolFeasibility::Q2Only
    } else {
        DepolFeasibility::Infeasible
    }
}

/// Round-trip classical latency over distance `l`: `2 l / c`, seconds.
pub fn q2_roundtrip_delay(l: f64) -> f64 {
    debug_assert!(l >= 0.0);
    2.0 * l / C
}

/// How relay spacing is computed from the element diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelayMode {
    /// Round-number form `(d / 100 m)^2 (300 nm / lambda) * 3e10 m`,
    /// the conventional order-of-magnitude figure.
    Nominal,
    /// Exact inversion of the minimum-diameter law: `d^2 / (c1 lambda)`.
    Exact,
}

/// Maximum hop length for refocusing elements of diameter `d` at wavelength
/// `lambda`.
pub fn relay_spacing(d: f64, lambda: f64, mode: RelayMode) -> f64 {
    debug_assert!(d > 0.0 && lambda > 0.0);
    match mode {
        RelayMode::Nominal => (d / 100.0).powi(2) * (3.0e-7 / lambda) * 3.0e10,
        RelayMode::Exact => d * d / (MIN_DIAMETER_COEFF * lambda),
    }
}

/// Smallest hop count `n >= 1` with `l / n <= relay_spacing(d, lambda)`.
/// `n` hops means `n - 1` relay stations between the endpoints.
pub fn relay_count(d: f64, lambda: f64, l: f64, mode: RelayMode) -> u64 {
    debug_assert!(l > 0.0);
    let spacing = relay_spacing(d, lambda, mode);
    let n = (l / spacing).ceil();
    if n < 1.0 {
        1
    } else {
        n as u64
    }
}

/// Diffraction-limited angular resolution of a baseline acting as one
/// aperture: `lambda / baseline`, radians.
pub fn albi_resolution(lambda: f64, baseline: f64) -> f64 {
    debug_assert!(lambda > 0.0 && baseline > 0.0);
    lambda / baseline
}

/// Per-mechanism erasure probabilities for one link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErasureBudget {
    pub extinction_eps: f64,
    pub atmosphere_eps: f64,
    pub beam_eps: f64,
}

impl ErasureBudget {
    /// Complement-product combination of the three mechanisms.
    pub fn combined(&self) -> f64 {
        combine_erasures(&[self.extinction_eps, self.atmosphere_eps, self.beam_eps])
    }
}

/// Gate that ruled out one-way quantum capacity, in fixed precedence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BindingConstraint {
    None,
    WavelengthBound,
    Depolarization,
    Beam,
    Extinction,
    Atmosphere,
}

impl std::fmt::Display for BindingConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            BindingConstraint::None => "none",
            BindingConstraint::WavelengthBound => "wavelength_bound",
            BindingConstraint::Depolarization => "depolarization",
            BindingConstraint::Beam => "beam",
            BindingConstraint::Extinction => "extinction",
            BindingConstraint::Atmosphere => "atmosphere",
        };
        f.write_str(name)
    }
}

/// Verdict for one link evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelVerdict {
    pub q_positive: bool,
    pub q2_positive: bool,
    /// Erasure-capacity upper bound `1 - 2 eps` for the policy's governing
    /// erasure; 0 whenever the link is not q_positive.
    pub q_rate_bound: f64,
    pub binding_constraint: BindingConstraint,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{AU, LIGHT_YEAR, PARSEC};
    use proptest::prelude::*;

    fn assert_rel(actual: f64, expected: f64, tol: f64) {
        let denom = expected.abs().max(f64::MIN_POSITIVE);
        assert!(
            (actual - expected).abs() / denom <= tol,
            "actual {actual:e} expected {expected:e}"
        );
    }

    #[test]
    fn erasure_capacity_anchor_points() {
        assert_eq!(erasure_capacity(0.0), 1.0);
        assert_rel(erasure_capacity(0.25), 0.5, 1e-15);
        assert_eq!(erasure_capacity(0.5), 0.0);
        assert_eq!(erasure_capacity(0.75), 0.0);
        assert_eq!(erasure_capacity(1.0), 0.0);
    }

    #[test]
    fn combine_erasures_printed_example() {
        let combined = combine_erasures(&[0.2978, 0.1, 0.5]);
        assert_rel(combined, 0.684_01, 1e-12);
    }

    #[test]
    fn combine_erasures_edge_cases() {
        assert_eq!(combine_erasures(&[]), 0.0);
        assert!((combine_erasures(&[0.3]) - 0.3).abs() < 1e-15);
        assert_eq!(combine_erasures(&[0.0, 0.0]), 0.0);
        assert_eq!(combine_erasures(&[1.0, 0.2]), 1.0);
    }

    #[test]
    fn depolarizing_tiers_and_boundaries() {
        assert_eq!(depolarizing_feasibility(0.0), DepolFeasibility::QPositive);
        assert_eq!(depolarizing_feasibility(1.0 / 3.0), DepolFeasibility::QPositive);
        assert_eq!(
            depolarizing_feasibility(1.0 / 3.0 + 1e-12),
            DepolFeasibility::Q2Only
        );
        assert_eq!(depolarizing_feasibility(0.5), DepolFeasibility::Q2Only);
        assert_eq!(depolarizing_feasibility(2.0 / 3.0), DepolFeasibility::Q2Only);
        assert_eq!(
            depolarizing_feasibility(2.0 / 3.0 + 1e-12),
            DepolFeasibility::Infeasible
        );
        assert_eq!(depolarizing_feasibility(0.7), DepolFeasibility::Infeasible);
    }

    #[test]
    fn roundtrip_delay_one_light_year_is_two_years() {
        let delay = q2_roundtrip_delay(LIGHT_YEAR);
        assert_rel(delay, 2.0 * 3.15576e7, 1e-12);
    }

    #[test]
    fn roundtrip_delay_to_proxima() {
        let delay = q2_roundtrip_delay(1.30 * PARSEC);
        assert_rel(delay, 2.676_105_251_412_814e8, 1e-12);
        let years = delay / 3.15576e7;
        assert_rel(years, 8.480_065_820_635_328, 1e-12);
        assert!(years >= 8.0);
    }

    #[test]
    fn relay_spacing_nominal_mode_round_numbers() {
        let s = relay_spacing(100.0, 3.0e-7, RelayMode::Nominal);
        assert_eq!(s, 3.0e10);
        assert_rel(s / AU, 0.200_537_613_668_053_37, 1e-12);
    }

    #[test]
    fn relay_spacing_exact_mode_inverts_min_diameter() {
        let s = relay_spacing(100.0, 3.0e-7, RelayMode::Exact);
        assert_rel(s, 4.264_017_095_179_857e10, 1e-12);
        // A hop of exactly this length needs exactly a 100 m element.
        let d = crate::beam::min_diameter(3.0e-7, s);
        assert_rel(d, 100.0, 1e-12);
    }

    #[test]
    fn relay_count_to_proxima_with_100m_elements() {
        let n = relay_count(100.0, 3.0e-7, 1.30 * PARSEC, RelayMode::Nominal);
        assert_eq!(n, 1_337_127);
    }

    #[test]
    fn relay_count_is_at_least_one_and_covers_the_path() {
        for &(d, lambda, l) in &[
            (100.0, 3.0e-7, 1e9),
            (100.0, 3.0e-7, 3.0e10),
            (1.0, 1e-6, 1e18),
            (1e4, 3e-3, 1.3 * PARSEC),
        ] {
            for mode in [RelayMode::Nominal, RelayMode::Exact] {
                let n = relay_count(d, lambda, l, mode);
                assert!(n >= 1);
                let spacing = relay_spacing(d, lambda, mode);
                assert!(l / n as f64 <= spacing * (1.0 + 1e-12));
                if n > 1 {
                    assert!(l / (n - 1) as f64 > spacing, "n not minimal");
                }
            }
        }
    }

    #[test]
    fn albi_resolution_anchors() {
        assert_rel(albi_resolution(3.0e-7, PARSEC), 9.722_337_868_333_095e-24, 1e-12);
        assert_rel(albi_resolution(3.0e-7, 1.2742e7), 2.354_418_458_640_715_7e-14, 1e-12);
    }

    #[test]
    fn budget_combines_like_the_free_function() {
        let b = ErasureBudget {
            extinction_eps: 0.2978,
            atmosphere_eps: 0.1,
            beam_eps: 0.5,
        };
        assert_rel(b.combined(), 0.684_01, 1e-12);
    }

    proptest! {
        #[test]
        fn combine_is_permutation_invariant_and_nests(
            a in 0.0f64..1.0,
            b in 0.0f64..1.0,
            c in 0.0f64..1.0,
        ) {
            let abc = combine_erasures(&[a, b, c]);
            let bca = combine_erasures(&[b, c, a]);
            prop_assert!((abc - bca).abs() <= 1e-15);
            let nested = combine_erasures(&[combine_erasures(&[a, b]), c]);
            prop_assert!((abc - nested).abs() <= 1e-12);
            prop_assert!(abc >= a.max(b).max(c) - 1e-15);
            prop_assert!((0.0..=1.0).contains(&abc));
        }

        #[test]
        fn capacity_zero_iff_eps_at_least_half(eps in 0.0f64..=1.0) {
            let q = erasure_capacity(eps);
            if eps < 0.5 {
                prop_assert!(q > 0.0);
            } else {
                prop_assert!(q == 0.0);
            }
        }
    }
}
