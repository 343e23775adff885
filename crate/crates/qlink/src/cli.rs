//! Command-line front end. All numbers are computed by the library and
//! only formatted here.
//!
//! Exit codes: 0 success, 1 feasibility failure under
//! `--fail-on-infeasible`, 2 usage error (bad flags or flag values),
//! 3 data error (unreadable or invalid scenario and dataset files,
//! wavelengths outside dataset coverage).
//!
//! Output formats: `text` prints lengths to 3 significant digits in an
//! auto-picked unit and probabilities to 6 significant digits; `json`
//! carries full-precision values under stable keys with a `"schema": 1`
//! version marker; `scan` emits CSV with the documented header.

use crate::background;
use crate::beam;
use crate::channels::{self, RelayMode};
use crate::constants::{AU, JULIAN_YEAR, PARSEC};
use crate::error::Error;
use crate::feasibility::{
    self, evaluate_scenario, LinkReport, Policy, Scenario, Tier,
};
use crate::montecarlo;
use crate::units::{parse_dimensioned, Dimension};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Interstellar quantum link feasibility tools.
#[derive(Debug, Parser)]
#[command(
    name = "qlink",
    version,
    about = "Decide whether an interstellar quantum channel can carry qubits",
    max_term_width = 100
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a scenario file and report the channel verdict.
    Analyze(AnalyzeArgs),
    /// Minimum telescope diameter for a wavelength and distance.
    MinDiameter(MinDiameterArgs),
    /// Longest wavelength with positive capacity against a thermal
    /// background.
    MaxWavelength(MaxWavelengthArgs),
    /// Relay spacing and count for a given element diameter, or the
    /// hop-count design table.
    RelayPlan(RelayPlanArgs),
    /// Sweep a scenario across a wavelength grid.
    Scan(ScanArgs),
    /// Monte Carlo validation of the analytic loss probabilities.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CsvOrJson {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrJson,
    /// Exit 1 when the one-way verdict is not q_positive.
    #[arg(long)]
    fail_on_infeasible: bool,
    /// Gate each erasure mechanism separately instead of their combination.
    #[arg(long)]
    per_mechanism: bool,
    /// Override the scenario's extinction curve (builtin:illustrative or a
    /// path).
    #[arg(long)]
    extinction: Option<String>,
    /// Override the scenario's atmosphere bands (builtin:earth, a path, or
    /// "none").
    #[arg(long)]
    atmosphere: Option<String>,
}

#[derive(Debug, Args)]
struct MinDiameterArgs {
    /// Signal wavelength, e.g. "300 nm".
    #[arg(long)]
    wavelength: String,
    /// Link distance, e.g. "1 pc".
    #[arg(long)]
    distance: String,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CapacityMode {
    /// One-way capacity (depolarizing error within 1/3).
    Q,
    /// Two-way-assisted capacity (error within 2/3).
    Q2,
}

#[derive(Debug, Args)]
struct MaxWavelengthArgs {
    #[arg(long, value_enum)]
    mode: CapacityMode,
    /// Background temperature, e.g. "2.726 K".
    #[arg(long, default_value = "2.726 K")]
    temperature: String,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpacingMode {
    /// Conventional spacing law with its round prefactor.
    Nominal,
    /// Diffraction bound d^2 / (c1 lambda).
    Exact,
}

impl From<SpacingMode> for RelayMode {
    fn from(m: SpacingMode) -> RelayMode {
        match m {
            SpacingMode::Nominal => RelayMode::Nominal,
            SpacingMode::Exact => RelayMode::Exact,
        }
    }
}

#[derive(Debug, Args)]
struct RelayPlanArgs {
    #[arg(long)]
    wavelength: String,
    #[arg(long)]
    distance: String,
    /// Relay element diameter, e.g. "100 m". Without it, print the
    /// hop-count design table instead.
    #[arg(long)]
    diameter: Option<String>,
    #[arg(long, value_enum, default_value = "nominal")]
    mode: SpacingMode,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrJson,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Shortest wavelength in the grid, e.g. "100 nm".
    #[arg(long)]
    lambda_min: String,
    /// Longest wavelength in the grid, e.g. "1 m".
    #[arg(long)]
    lambda_max: String,
    /// Grid points, log-spaced inclusive of both ends.
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: CsvOrJson,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    photons: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: TextOrJson,
}

enum CliError {
    Usage(String),
    Data(Error),
    Output(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e)
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn data(e: Error) -> CliError {
    CliError::Data(e)
}

type CmdResult = std::result::Result<i32, CliError>;

/// Parses `args` (argv style, program name first) and runs the command,
/// writing reports to `stdout` and diagnostics to `stderr`. Returns the
/// process exit code.
pub fn run_with_io<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                2
            } else {
                // --help and --version land here.
                let _ = write!(stdout, "{rendered}");
                0
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(CliError::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            3
        }
        // A reader that hangs up early (`qlink ... | head`) is not an
        // error worth reporting; exit quietly like other pipeline tools.
        Err(CliError::Output(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(CliError::Output(e)) => {
            let _ = writeln!(stderr, "error: failed to write output: {e}");
            3
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Analyze(args) => cmd_analyze(args, out),
        Command::MinDiameter(args) => cmd_min_diameter(args, out),
        Command::MaxWavelength(args) => cmd_max_wavelength(args, out),
        Command::RelayPlan(args) => cmd_relay_plan(args, out),
        Command::Scan(args) => cmd_scan(args, out),
        Command::Simulate(args) => cmd_simulate(args, out),
    }
}

/// Rounds to `digits` significant digits and prints without an exponent.
fn sig(x: f64, digits: i32) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(exp - digits + 1);
    let rounded = (x / scale).round() * scale;
    let decimals = (digits - 1 - exp).max(0) as usize;
    format!("{rounded:.decimals$}")
}

/// 3-significant-digit length in the largest unit with a value of at
/// least 1; falls back to scientific meters outside sensible ranges.
fn format_length(m: f64) -> String {
    const TEXT_UNITS: &[(&str, f64)] = &[
        ("pc", PARSEC),
        ("au", AU),
        ("km", 1e3),
        ("m", 1.0),
        ("cm", 1e-2),
        ("mm", 1e-3),
        ("um", 1e-6),
        ("nm", 1e-9),
    ];
    for &(name, scale) in TEXT_UNITS {
        let v = m / scale;
        if v >= 1.0 {
            if v >= 1e5 {
                break;
            }
            return format!("{} {}", sig(v, 3), name);
        }
    }
    format!("{m:.2e} m")
}

/// 6-significant-digit probability or rate.
fn format_prob(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.abs() >= 1e-4 {
        sig(x, 6)
    } else {
        format!("{x:.5e}")
    }
}

fn parse_length_flag(text: &str, flag: &str) -> std::result::Result<f64, CliError> {
    parse_dimensioned(text, Dimension::Length)
        .map(|q| q.value)
        .map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn load_scenario(path: &Path) -> std::result::Result<Scenario, CliError> {
    Scenario::from_json_path(path).map_err(data)
}

#[derive(Serialize)]
struct AnalyzeOutput<'a> {
    schema: u32,
    scenario: String,
    tier: Tier,
    report: &'a LinkReport,
}

fn cmd_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> CmdResult {
    let mut scenario = load_scenario(&args.scenario)?;
    if args.per_mechanism {
        scenario.policy = Policy::PerMechanism;
    }
    let cwd = Path::new(".");
    if let Some(reference) = &args.extinction {
        scenario.extinction = feasibility::load_extinction(reference, cwd).map_err(|e| {
            match e {
                Error::InvalidInput(msg) => CliError::Usage(format!("--extinction: {msg}")),
                other => data(other),
            }
        })?;
    }
    if let Some(reference) = &args.atmosphere {
        if reference == "none" {
            scenario.atmosphere = None;
        } else {
            scenario.atmosphere =
                Some(feasibility::load_atmosphere(reference, cwd).map_err(|e| match e {
                    Error::InvalidInput(msg) => {
                        CliError::Usage(format!("--atmosphere: {msg}"))
                    }
                    other => data(other),
                })?);
        }
    }
    let report = evaluate_scenario(&scenario).map_err(data)?;
    let tier = Tier::of(&report.verdict);
    match args.format {
        TextOrJson::Json => {
            let output = AnalyzeOutput {
                schema: 1,
                scenario: args.scenario.display().to_string(),
                tier,
                report: &report,
            };
            writeln!(out, "{}", to_pretty_json(&output)?)?;
        }
        TextOrJson::Text => write_analyze_text(&args.scenario, tier, &report, out)?,
    }
    if args.fail_on_infeasible && !report.verdict.q_positive {
        return Ok(1);
    }
    Ok(0)
}

fn write_analyze_text(
    path: &Path,
    tier: Tier,
    r: &LinkReport,
    out: &mut dyn Write,
) -> std::result::Result<(), CliError> {
    writeln!(out, "scenario: {}", path.display())?;
    writeln!(out, "tier: {tier}")?;
    writeln!(out, "q_positive: {}", r.verdict.q_positive)?;
    writeln!(out, "q2_positive: {}", r.verdict.q2_positive)?;
    writeln!(out, "binding_constraint: {}", r.verdict.binding_constraint)?;
    writeln!(out, "q_rate_bound: {}", format_prob(r.verdict.q_rate_bound))?;
    writeln!(out, "combined_erasure: {}", format_prob(r.combined_eps))?;
    writeln!(
        out,
        "  extinction: {}",
        format_prob(r.budget.extinction_eps)
    )?;
    writeln!(
        out,
        "  atmosphere: {}",
        format_prob(r.budget.atmosphere_eps)
    )?;
    writeln!(out, "  beam (path): {}", format_prob(r.budget.beam_eps))?;
    writeln!(
        out,
        "  beam (per hop, {} hop{}): {}",
        r.hop_count,
        if r.hop_count == 1 { "" } else { "s" },
        format_prob(r.beam_eps_per_hop)
    )?;
    writeln!(
        out,
        "depolarization_eps: {}",
        format_prob(r.depol_eps)
    )?;
    writeln!(
        out,
        "background_photons_per_mode: {}",
        format_prob(r.background_photons)
    )?;
    writeln!(
        out,
        "min_diameter (per hop of {}): {}",
        format_length(r.hop_distance_m),
        format_length(r.min_diameter_required_m)
    )?;
    writeln!(
        out,
        "max_wavelength_q: {} (Planck-exact {})",
        format_length(r.max_wavelength_q_m),
        format_length(r.max_wavelength_q_planck_m)
    )?;
    writeln!(
        out,
        "max_wavelength_q2: {} (Planck-exact {})",
        format_length(r.max_wavelength_q2_m),
        format_length(r.max_wavelength_q2_planck_m)
    )?;
    if r.depol_gates_disagree_q || r.depol_gates_disagree_q2 {
        writeln!(
            out,
            "note: measured-background and closed-form wavelength gates disagree; the stricter one governs"
        )?;
    }
    writeln!(
        out,
        "q2_roundtrip_delay: {} yr ({:.4e} s)",
        sig(r.q2_delay_s / JULIAN_YEAR, 3),
        r.q2_delay_s
    )?;
    let floor = if r.sender_intensity_floor_si == 0.0 {
        "0".to_string()
    } else {
        format!("{:.4e}", r.sender_intensity_floor_si)
    };
    writeln!(out, "sender_intensity_floor: {floor} W m^-2 Hz^-1 sr^-1")?;
    Ok(())
}

#[derive(Serialize)]
struct MinDiameterOutput {
    schema: u32,
    wavelength_m: f64,
    distance_m: f64,
    min_diameter_m: f64,
}

fn cmd_min_diameter(args: MinDiameterArgs, out: &mut dyn Write) -> CmdResult {
    let wavelength = parse_length_flag(&args.wavelength, "wavelength")?;
    let distance = parse_length_flag(&args.distance, "distance")?;
    if wavelength <= 0.0 || distance <= 0.0 {
        return Err(CliError::Usage(
            "wavelength and distance must be positive".to_string(),
        ));
    }
    let min_diameter_m = beam::min_diameter(wavelength, distance);
    match args.format {
        TextOrJson::Json => {
            let output = MinDiameterOutput {
                schema: 1,
                wavelength_m: wavelength,
                distance_m: distance,
                min_diameter_m,
            };
            writeln!(out, "{}", to_pretty_json(&output)?)?;
        }
        TextOrJson::Text => {
            writeln!(out, "min_diameter: {}", format_length(min_diameter_m))?;
            writeln!(
                out,
                "  (geometric mean of the two diameters; joint catch crosses 1/2 here)"
            )?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct MaxWavelengthOutput {
    schema: u32,
    mode: &'static str,
    epsilon: f64,
    temperature_k: f64,
    max_wavelength_m: f64,
    max_wavelength_planck_m: f64,
}

fn cmd_max_wavelength(args: MaxWavelengthArgs, out: &mut dyn Write) -> CmdResult {
    let temperature = parse_dimensioned(&args.temperature, Dimension::Temperature)
        .map_err(|e| CliError::Usage(format!("--temperature: {e}")))?
        .value;
    if temperature <= 0.0 {
        return Err(CliError::Usage("temperature must be positive".to_string()));
    }
    let (mode, epsilon) = match args.mode {
        CapacityMode::Q => ("q", 1.0 / 3.0),
        CapacityMode::Q2 => ("q2", 2.0 / 3.0),
    };
    let rj = background::max_wavelength(epsilon, temperature);
    let planck = background::max_wavelength_planck(epsilon, temperature);
    match args.format {
        TextOrJson::Json => {
            let output = MaxWavelengthOutput {
                schema: 1,
                mode,
                epsilon,
                temperature_k: temperature,
                max_wavelength_m: rj,
                max_wavelength_planck_m: planck,
            };
            writeln!(out, "{}", to_pretty_json(&output)?)?;
        }
        TextOrJson::Text => {
            // The thresholds are conventionally quoted in centimeters.
            writeln!(out, "max_wavelength ({mode}): {} cm", sig(rj / 1e-2, 3))?;
            writeln!(
                out,
                "  Planck-exact threshold: {} cm",
                sig(planck / 1e-2, 3)
            )?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct RelaySpacingOutput {
    schema: u32,
    mode: &'static str,
    diameter_m: f64,
    wavelength_m: f64,
    distance_m: f64,
    spacing_m: f64,
    spacing_au: f64,
    relay_count: u64,
}

#[derive(Serialize)]
struct RelayTableOutput<'a> {
    schema: u32,
    #[serde(flatten)]
    plan: &'a feasibility::DesignPlan,
}

fn cmd_relay_plan(args: RelayPlanArgs, out: &mut dyn Write) -> CmdResult {
    let wavelength = parse_length_flag(&args.wavelength, "wavelength")?;
    let distance = parse_length_flag(&args.distance, "distance")?;
    if wavelength <= 0.0 || distance <= 0.0 {
        return Err(CliError::Usage(
            "wavelength and distance must be positive".to_string(),
        ));
    }
    let mode_name = match args.mode {
        SpacingMode::Nominal => "nominal",
        SpacingMode::Exact => "exact",
    };
    match args.diameter {
        Some(text) => {
            let diameter = parse_length_flag(&text, "diameter")?;
            if diameter <= 0.0 {
                return Err(CliError::Usage("diameter must be positive".to_string()));
            }
            let spacing = channels::relay_spacing(diameter, wavelength, args.mode.into());
            let count = channels::relay_count(diameter, wavelength, distance, args.mode.into());
            match args.format {
                TextOrJson::Json => {
                    let output = RelaySpacingOutput {
                        schema: 1,
                        mode: mode_name,
                        diameter_m: diameter,
                        wavelength_m: wavelength,
                        distance_m: distance,
                        spacing_m: spacing,
                        spacing_au: spacing / AU,
                        relay_count: count,
                    };
                    writeln!(out, "{}", to_pretty_json(&output)?)?;
                }
                TextOrJson::Text => {
                    writeln!(
                        out,
                        "relay_spacing ({mode_name}): {:.4e} m ({} au)",
                        spacing,
                        sig(spacing / AU, 3)
                    )?;
                    writeln!(out, "relay_count over {}: {count}", format_length(distance))?;
                }
            }
        }
        None => {
            let plan = feasibility::solve_min_design(wavelength, distance).map_err(data)?;
            match args.format {
                TextOrJson::Json => {
                    let output = RelayTableOutput { schema: 1, plan: &plan };
                    writeln!(out, "{}", to_pretty_json(&output)?)?;
                }
                TextOrJson::Text => {
                    writeln!(
                        out,
                        "direct min_diameter: {}",
                        format_length(plan.min_diameter_m)
                    )?;
                    writeln!(out, "hops  element_diameter")?;
                    for option in &plan.relay_options {
                        writeln!(
                            out,
                            "{:>8}  {}",
                            option.n,
                            format_length(option.element_diameter_m)
                        )?;
                    }
                }
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ScanOutput<'a> {
    schema: u32,
    scenario: String,
    rows: &'a [feasibility::ScanRow],
}

fn cmd_scan(args: ScanArgs, out: &mut dyn Write) -> CmdResult {
    let scenario = load_scenario(&args.scenario)?;
    let lo = parse_length_flag(&args.lambda_min, "lambda-min")?;
    let hi = parse_length_flag(&args.lambda_max, "lambda-max")?;
    let grid = feasibility::log_grid(lo, hi, args.points).map_err(usage)?;
    let rows = feasibility::scan_wavelengths(&scenario, &grid).map_err(data)?;
    match args.format {
        CsvOrJson::Json => {
            let output = ScanOutput {
                schema: 1,
                scenario: args.scenario.display().to_string(),
                rows: &rows,
            };
            writeln!(out, "{}", to_pretty_json(&output)?)?;
        }
        CsvOrJson::Csv => {
            writeln!(
                out,
                "lambda_m,eps_ext,eps_atm,eps_beam,eps_depol,verdict,min_diameter_m"
            )?;
            // Scientific notation keeps cells compact for values like
            // 1e-300 (Display would expand every leading zero) and still
            // round-trips: Rust prints the shortest re-parseable digits.
            for row in &rows {
                writeln!(
                    out,
                    "{:e},{:e},{:e},{:e},{:e},{},{:e}",
                    row.lambda_m,
                    row.eps_ext,
                    row.eps_atm,
                    row.eps_beam,
                    row.eps_depol,
                    row.verdict,
                    row.min_diameter_m
                )?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SimulateOutput<'a> {
    schema: u32,
    scenario: String,
    #[serde(flatten)]
    report: &'a montecarlo::SimReport,
}

fn cmd_simulate(args: SimulateArgs, out: &mut dyn Write) -> CmdResult {
    let scenario = load_scenario(&args.scenario)?;
    if args.photons == 0 {
        return Err(CliError::Usage("--photons must be at least 1".to_string()));
    }
    let report = montecarlo::simulate(&scenario, args.photons, args.seed).map_err(data)?;
    match args.format {
        TextOrJson::Json => {
            let output = SimulateOutput {
                schema: 1,
                scenario: args.scenario.display().to_string(),
                report: &report,
            };
            writeln!(out, "{}", to_pretty_json(&output)?)?;
        }
        TextOrJson::Text => {
            writeln!(out, "photons: {}  seed: {}", report.n_photons, report.seed)?;
            writeln!(out, "mechanism       empirical    analytic     z")?;
            for (name, stats) in [
                ("extinction", &report.extinction),
                ("beam", &report.beam),
                ("depolarization", &report.depolarization),
                ("combined", &report.combined),
            ] {
                writeln!(
                    out,
                    "{name:<15} {:<12} {:<12} {:+.2}",
                    format_prob(stats.empirical_eps),
                    format_prob(stats.analytic_eps),
                    stats.z_score
                )?;
            }
        }
    }
    Ok(0)
}

fn to_pretty_json<T: Serialize>(value: &T) -> std::result::Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| {
        CliError::Data(Error::Json {
            path: "<output>".to_string(),
            source: e,
        })
    })
}
