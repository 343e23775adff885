//! Scenario-level link evaluation: the gate logic that turns geometry,
//! extinction data, atmosphere bands, and background light into a verdict.
//!
//! Gates for one-way quantum capacity, in fixed precedence order:
//! wavelength bound (CMB Rayleigh-Jeans closed form), depolarization
//! (measured background at the scenario wavelength), then the erasure
//! mechanisms beam, extinction, atmosphere. Erasure gating follows the
//! scenario policy: `combined` requires the complement-product of all
//! mechanisms below 1/2 (strict); `per_mechanism` reproduces the weaker
//! per-mechanism reading, with beam loss judged per hop. The two-way tier
//! only requires depolarization within 2/3, the wavelength within the
//! two-way bound, and some photons arriving at all.

use crate::background::{
    self, BackgroundComponent, BackgroundModel, SpectrumTable,
};
use crate::beam::{self, AperturePair};
use crate::channels::{
    combine_erasures, erasure_capacity, q2_roundtrip_delay, BindingConstraint, ChannelVerdict,
    ErasureBudget,
};
use crate::constants::{N_H_DEFAULT, T_CMB};
use crate::error::{Error, Result};
use crate::extinction::{extinction_probability, AtmosphereBands, ExtinctionCurve};
use crate::units::{parse_dimensioned, Dimension};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Where the receiving aperture sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReceiverSite {
    Ground,
    Space,
}

/// How erasure mechanisms are gated against the 1/2 budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Combined erasure of all mechanisms must stay below 1/2 (default,
    /// strictly stronger).
    Combined,
    /// Each mechanism separately below 1/2, beam loss per hop.
    PerMechanism,
}

/// Fixed capacity thresholds used by the gates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Depolarizing error bound for one-way capacity.
    pub eps_q: f64,
    /// Depolarizing error bound for two-way-assisted capacity.
    pub eps_q2: f64,
    /// Erasure bound for one-way capacity.
    pub eps_erasure: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            eps_q: 1.0 / 3.0,
            eps_q2: 2.0 / 3.0,
            eps_erasure: 0.5,
        }
    }
}

/// A fully resolved link scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Endpoint separation, m.
    pub distance_m: f64,
    /// Signal wavelength, m.
    pub wavelength_m: f64,
    /// Sender aperture diameter, m.
    pub d1_m: f64,
    /// Receiver aperture diameter, m.
    pub d2_m: f64,
    pub receiver_site: ReceiverSite,
    /// Hydrogen number density along the path, m^-3.
    pub n_h: f64,
    /// Number of hops (1 = direct link; `n` hops use `n - 1` relays).
    pub relay_n: u64,
    pub policy: Policy,
    pub thresholds: Thresholds,
    pub extinction: ExtinctionCurve,
    /// Required when the receiver is on the ground.
    pub atmosphere: Option<AtmosphereBands>,
    pub background: BackgroundModel,
}

impl Scenario {
    /// Checks cross-field invariants. Called by the JSON loader; call it
    /// yourself after building a scenario by hand.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("distance", self.distance_m),
            ("wavelength", self.wavelength_m),
            ("d1", self.d1_m),
            ("d2", self.d2_m),
            ("n_H", self.n_h),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "{name} must be positive, got {v:e}"
                )));
            }
        }
        if self.relay_n < 1 {
            return Err(Error::InvalidScenario("relay_n must be >= 1".to_string()));
        }
        if self.receiver_site == ReceiverSite::Ground && self.atmosphere.is_none() {
            return Err(Error::InvalidScenario(
                "ground receiver requires atmosphere bands".to_string(),
            ));
        }
        let t = &self.thresholds;
        if !(t.eps_q > 0.0 && t.eps_q < t.eps_q2 && t.eps_q2 < 1.0)
            || !(t.eps_erasure > 0.0 && t.eps_erasure <= 0.5)
        {
            return Err(Error::InvalidScenario(format!(
                "thresholds out of order: eps_q {}, eps_q2 {}, eps_erasure {}",
                t.eps_q, t.eps_q2, t.eps_erasure
            )));
        }
        Ok(())
    }

    /// Loads a scenario from JSON text. `base_dir` anchors relative dataset
    /// paths; `builtin:` names resolve to bundled datasets.
    pub fn from_json_str(text: &str, base_dir: &Path, label: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|source| Error::Json {
            path: label.to_string(),
            source,
        })?;
        file.resolve(base_dir)
    }

    /// Loads a scenario from a JSON file; dataset paths inside it resolve
    /// relative to the file's directory.
    pub fn from_json_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_json_str(&text, base, &path.display().to_string())
    }

    /// Hop length `distance / relay_n`.
    pub fn hop_distance_m(&self) -> f64 {
        self.distance_m / self.relay_n as f64
    }
}

/// Serde shape of a scenario JSON file. Quantities are unit-grammar strings
/// (`"1.30 pc"`); datasets are `builtin:` names or paths relative to the
/// file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    distance: String,
    wavelength: String,
    d1: String,
    d2: String,
    receiver_site: ReceiverSite,
    #[serde(default, rename = "n_H")]
    n_h: Option<f64>,
    #[serde(default)]
    relay_n: Option<u64>,
    #[serde(default)]
    policy: Option<Policy>,
    extinction_curve: String,
    #[serde(default)]
    atmosphere_bands: Option<String>,
    #[serde(default)]
    background_components: Vec<String>,
}

fn resolve_path(base_dir: &Path, reference: &str) -> std::path::PathBuf {
    let p = Path::new(reference);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base_dir.join(p)
    }
}

/// Resolves an extinction-curve reference: `builtin:` name or path.
pub fn load_extinction(reference: &str, base_dir: &Path) -> Result<ExtinctionCurve> {
    match reference {
        "builtin:illustrative" => Ok(ExtinctionCurve::builtin_illustrative()),
        other if other.starts_with("builtin:") => Err(Error::InvalidInput(format!(
            "unknown builtin extinction curve '{other}' (available: builtin:illustrative)"
        ))),
        path => ExtinctionCurve::from_csv_path(&resolve_path(base_dir, path)),
    }
}

/// Resolves an atmosphere-bands reference: `builtin:` name or path.
pub fn load_atmosphere(reference: &str, base_dir: &Path) -> Result<AtmosphereBands> {
    match reference {
        "builtin:earth" => Ok(AtmosphereBands::builtin_earth()),
        other if other.starts_with("builtin:") => Err(Error::InvalidInput(format!(
            "unknown builtin atmosphere bands '{other}' (available: builtin:earth)"
        ))),
        path => AtmosphereBands::from_csv_path(&resolve_path(base_dir, path)),
    }
}

impl ScenarioFile {
    fn resolve(self, base_dir: &Path) -> Result<Scenario> {
        let distance_m = parse_dimensioned(&self.distance, Dimension::Length)?.value;
        let wavelength_m = parse_dimensioned(&self.wavelength, Dimension::Length)?.value;
        let d1_m = parse_dimensioned(&self.d1, Dimension::Length)?.value;
        let d2_m = parse_dimensioned(&self.d2, Dimension::Length)?.value;
        let extinction = load_extinction(&self.extinction_curve, base_dir)?;
        let atmosphere = self
            .atmosphere_bands
            .as_deref()
            .map(|r| load_atmosphere(r, base_dir))
            .transpose()?;
        let mut background = BackgroundModel::cmb_only();
        for reference in &self.background_components {
            let table = SpectrumTable::from_csv_path(&resolve_path(base_dir, reference))?;
            background = background.with_component(BackgroundComponent::Table(table));
        }
        let scenario = Scenario {
            distance_m,
            wavelength_m,
            d1_m,
            d2_m,
            receiver_site: self.receiver_site,
            n_h: self.n_h.unwrap_or(N_H_DEFAULT),
            relay_n: self.relay_n.unwrap_or(1),
            policy: self.policy.unwrap_or(Policy::Combined),
            thresholds: Thresholds::default(),
            extinction,
            atmosphere,
            background,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

/// Everything evaluate_scenario derives from a scenario; all numbers are
/// recomputable from the inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkReport {
    pub budget: ErasureBudget,
    /// Combined erasure of the three mechanisms.
    pub combined_eps: f64,
    /// Beam erasure of a single hop (equals `budget.beam_eps` for a direct
    /// link).
    pub beam_eps_per_hop: f64,
    /// Matched-mode background photons per signal photon at the scenario
    /// wavelength.
    pub background_photons: f64,
    /// Depolarizing error rate from the measured background.
    pub depol_eps: f64,
    pub verdict: ChannelVerdict,
    /// Minimum element diameter for the per-hop geometry (direct link:
    /// the full-path minimum).
    pub min_diameter_required_m: f64,
    /// Rayleigh-Jeans CMB wavelength bounds.
    pub max_wavelength_q_m: f64,
    pub max_wavelength_q2_m: f64,
    /// Full-Planck self-consistent counterparts.
    pub max_wavelength_q_planck_m: f64,
    pub max_wavelength_q2_planck_m: f64,
    /// True when the measured-background depolarization gate and the CMB
    /// closed-form wavelength gate disagree at the one-way (resp. two-way)
    /// threshold; the stricter gate governs the verdict.
    pub depol_gates_disagree_q: bool,
    pub depol_gates_disagree_q2: bool,
    /// Round-trip classical latency, s.
    pub q2_delay_s: f64,
    /// Minimum sender intensity to beat the background at the one-way
    /// threshold, W m^-2 Hz^-1 sr^-1.
    pub sender_intensity_floor_si: f64,
    pub hop_count: u64,
    pub hop_distance_m: f64,
}

struct GateInputs {
    eps_ext: f64,
    eps_atm: f64,
    eps_beam_hop: f64,
    eps_beam_path: f64,
    combined: f64,
}

fn erasure_gate_passes(s: &Scenario, g: &GateInputs) -> bool {
    let e = s.thresholds.eps_erasure;
    match s.policy {
        Policy::Combined => g.combined < e,
        Policy::PerMechanism => g.eps_ext < e && g.eps_atm < e && g.eps_beam_hop < e,
    }
}

/// Beam erasure as seen by the policy's erasure gate.
fn beam_eps_for_policy(s: &Scenario, g: &GateInputs) -> f64 {
    match s.policy {
        Policy::Combined => g.eps_beam_path,
        Policy::PerMechanism => g.eps_beam_hop,
    }
}

fn first_violated_gate(s: &Scenario, g: &GateInputs, lambda_ok: bool, depol_ok: bool) -> BindingConstraint {
    if !lambda_ok {
        return BindingConstraint::WavelengthBound;
    }
    if !depol_ok {
        return BindingConstraint::Depolarization;
    }
    let e = s.thresholds.eps_erasure;
    let beam = beam_eps_for_policy(s, g);
    if beam >= e {
        return BindingConstraint::Beam;
    }
    if g.eps_ext >= e {
        return BindingConstraint::Extinction;
    }
    if g.eps_atm >= e {
        return BindingConstraint::Atmosphere;
    }
    // Combined policy only: no single mechanism crosses 1/2 but their
    // product does; attribute the verdict to the largest contributor.
    let mechanisms = [
        (beam, BindingConstraint::Beam),
        (g.eps_ext, BindingConstraint::Extinction),
        (g.eps_atm, BindingConstraint::Atmosphere),
    ];
    mechanisms
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|&(_, c)| c)
        .unwrap_or(BindingConstraint::None)
}

/// Evaluates every gate for a scenario and assembles the full report.
pub fn evaluate_scenario(s: &Scenario) -> Result<LinkReport> {
    s.validate()?;
    let lambda = s.wavelength_m;
    let hop = s.hop_distance_m();

    let sigma = s.extinction.sigma_at(lambda)?;
    let eps_ext = extinction_probability(s.n_h, sigma, s.distance_m);

    let eps_atm = match (s.receiver_site, &s.atmosphere) {
        (ReceiverSite::Ground, Some(bands)) if bands.blocked(lambda) => 1.0,
        _ => 0.0,
    };

    let ap = AperturePair::new(s.d1_m, s.d2_m)?;
    let catch_hop = beam::joint_catch_probability(ap, lambda, hop)?;
    let eps_beam_hop = 1.0 - catch_hop;
    let eps_beam_path = 1.0 - catch_hop.powf(s.relay_n as f64);

    let intensity = s.background.total_intensity(lambda)?;
    let n_background = background::background_photon_count(intensity, lambda);
    let eps_depol = background::depolarizing_epsilon(n_background);

    let g = GateInputs {
        eps_ext,
        eps_atm,
        eps_beam_hop,
        eps_beam_path,
        combined: combine_erasures(&[eps_ext, eps_atm, eps_beam_path]),
    };

    let max_wavelength_q_m = background::max_wavelength(s.thresholds.eps_q, T_CMB);
    let max_wavelength_q2_m = background::max_wavelength(s.thresholds.eps_q2, T_CMB);

    let lambda_ok_q = lambda <= max_wavelength_q_m;
    let depol_ok_q = eps_depol <= s.thresholds.eps_q;
    let erasure_ok_q = erasure_gate_passes(s, &g);
    let q_positive = lambda_ok_q && depol_ok_q && erasure_ok_q;

    let lambda_ok_q2 = lambda <= max_wavelength_q2_m;
    let depol_ok_q2 = eps_depol <= s.thresholds.eps_q2;
    let some_photons_arrive = g.combined < 1.0;
    let q2_positive = lambda_ok_q2 && depol_ok_q2 && some_photons_arrive;

    let binding_constraint = if q_positive {
        BindingConstraint::None
    } else {
        first_violated_gate(s, &g, lambda_ok_q, depol_ok_q)
    };

    let q_rate_bound = if q_positive {
        let governing = match s.policy {
            Policy::Combined => g.combined,
            Policy::PerMechanism => g
                .eps_ext
                .max(g.eps_atm)
                .max(g.eps_beam_hop),
        };
        erasure_capacity(governing)
    } else {
        0.0
    };

    Ok(LinkReport {
        budget: ErasureBudget {
            extinction_eps: eps_ext,
            atmosphere_eps: eps_atm,
            beam_eps: eps_beam_path,
        },
        combined_eps: g.combined,
        beam_eps_per_hop: eps_beam_hop,
        background_photons: n_background,
        depol_eps: eps_depol,
        verdict: ChannelVerdict {
            q_positive,
            q2_positive,
            q_rate_bound,
            binding_constraint,
        },
        min_diameter_required_m: beam::min_diameter(lambda, hop),
        max_wavelength_q_m,
        max_wavelength_q2_m,
        max_wavelength_q_planck_m: background::max_wavelength_planck(s.thresholds.eps_q, T_CMB),
        max_wavelength_q2_planck_m: background::max_wavelength_planck(s.thresholds.eps_q2, T_CMB),
        depol_gates_disagree_q: lambda_ok_q != depol_ok_q,
        depol_gates_disagree_q2: lambda_ok_q2 != depol_ok_q2,
        q2_delay_s: q2_roundtrip_delay(s.distance_m),
        sender_intensity_floor_si: background::min_sender_intensity(
            intensity,
            s.thresholds.eps_q,
        ),
        hop_count: s.relay_n,
        hop_distance_m: hop,
    })
}

/// Feasibility tier of one scan row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    QPositive,
    Q2Only,
    Infeasible,
}

impl Tier {
    /// Collapses a verdict into its tier.
    pub fn of(v: &ChannelVerdict) -> Tier {
        if v.q_positive {
            Tier::QPositive
        } else if v.q2_positive {
            Tier::Q2Only
        } else {
            Tier::Infeasible
        }
    }
}

impl std::fmt::Display for Tier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Tier::QPositive => "q_positive",
            Tier::Q2Only => "q2_only",
            Tier::Infeasible => "infeasible",
        };
        f.write_str(name)
    }
}

/// One row of a wavelength scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub lambda_m: f64,
    pub eps_ext: f64,
    pub eps_atm: f64,
    pub eps_beam: f64,
    pub eps_depol: f64,
    pub verdict: Tier,
    /// Direct-link minimum diameter at the full scenario distance.
    pub min_diameter_m: f64,
}

/// Evaluates the scenario's gates across a wavelength grid. Every grid
/// point must lie inside the extinction data range (and any background
/// table ranges); the first failure aborts the scan.
pub fn scan_wavelengths(s: &Scenario, grid: &[f64]) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::with_capacity(grid.len());
    for &lambda in grid {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidInput(format!(
                "scan wavelength must be positive, got {lambda:e}"
            )));
        }
        let mut point = s.clone();
        point.wavelength_m = lambda;
        let report = evaluate_scenario(&point)?;
        let tier = Tier::of(&report.verdict);
        rows.push(ScanRow {
            lambda_m: lambda,
            eps_ext: report.budget.extinction_eps,
            eps_atm: report.budget.atmosphere_eps,
            eps_beam: report.budget.beam_eps,
            eps_depol: report.depol_eps,
            verdict: tier,
            min_diameter_m: beam::min_diameter(lambda, s.distance_m),
        });
    }
    Ok(rows)
}

/// Geometric wavelength grid with `points >= 2` entries from `lo` to `hi`
/// inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(Error::InvalidInput(format!(
            "grid needs 0 < lo < hi, got [{lo:e}, {hi:e}]"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidInput("grid needs at least 2 points".to_string()));
    }
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let mut grid: Vec<f64> = (0..points)
        .map(|i| (ln_lo + (ln_hi - ln_lo) * i as f64 / (points - 1) as f64).exp())
        .collect();
    grid[0] = lo;
    grid[points - 1] = hi;
    Ok(grid)
}

/// One relay option in a design plan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelayOption {
    /// Hop count.
    pub n: u64,
    /// Element diameter that makes each hop exactly diffraction-feasible.
    pub element_diameter_m: f64,
}

/// Minimum direct-link diameter plus the relay trade-off table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignPlan {
    pub wavelength_m: f64,
    pub distance_m: f64,
    pub min_diameter_m: f64,
    /// Options for n = 10, 100, ..., 1e8 hops; element diameter shrinks as
    /// 1/sqrt(n).
    pub relay_options: Vec<RelayOption>,
}

/// Computes the direct minimum diameter and the per-element diameters for
/// hop counts 10^1 .. 10^8.
pub fn solve_min_design(wavelength: f64, l: f64) -> Result<DesignPlan> {
    if !(wavelength.is_finite() && wavelength > 0.0) || !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidInput(format!(
            "wavelength and distance must be positive, got {wavelength:e}, {l:e}"
        )));
    }
    let min_diameter_m = beam::min_diameter(wavelength, l);
    let relay_options = (1..=8)
        .map(|k| {
            let n = 10u64.pow(k);
            RelayOption {
                n,
                element_diameter_m: beam::min_diameter(wavelength, l / n as f64),
            }
        })
        .collect();
    Ok(DesignPlan {
        wavelength_m: wavelength,
        distance_m: l,
        min_diameter_m,
        relay_options,
    })
}
