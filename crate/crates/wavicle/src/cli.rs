//! The `wavicle` command line: reproducible batch runs over the simulator,
//! the feasibility engine, and the finite-statistics tooling.
//!
//! Exit codes: 0 success (and feasible verdicts), 1 usage or input error,
//! 2 infeasible timing geometry, 3 infeasible hidden-variable verdicts.
//! All outputs are deterministic; wall-clock diagnostics go to stderr so
//! identical invocations produce byte-identical stdout/files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::experiment::{
    apply_inefficiency, chi_square_test, sample_outcomes, timing_plan, DetectorModel,
    ExperimentError, Geometry,
};
use crate::feasibility::{
    check_assumptions, check_delayed_choice_with, check_independence_with, FeasibilityError,
    FeasibilityReport, Verdict, DEFAULT_F_GRID,
};
use crate::hv::{Assumption, AssumptionSet, Determinism, HvError};
use crate::quantum::{
    analytic_distribution, analytic_pair_distribution, simulate_distribution, CircuitVariant,
    JointDistribution, PairDistribution, QuantumError, VariantDistribution,
};

/// Environment variable naming the directory relative output paths resolve
/// against.
pub const OUTPUT_DIR_ENV: &str = "WAVICLE_OUT_DIR";

/// A parsed command-line invocation.
#[derive(Debug, Parser)]
#[command(
    name = "wavicle",
    version,
    about = "Delayed-choice interferometry: exact distributions, hidden-variable feasibility, \
             finite statistics, and timing plans"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Read angle arguments as degrees (canonical output stays radians).
    #[arg(long, global = true)]
    pub degrees: bool,
    /// Write the primary output here instead of stdout. Relative paths
    /// resolve against $WAVICLE_OUT_DIR when that is set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint outcome table from both the simulator and the closed form.
    Distribution(DistributionArgs),
    /// Hidden-variable feasibility under a chosen assumption set.
    Feasibility(FeasibilityArgs),
    /// Feasibility verdicts over an (alpha, phi) grid, as CSV.
    Sweep(SweepArgs),
    /// Seeded finite-statistics sampling with detector losses.
    Simulate(SimulateArgs),
    /// Arm delays and light-cone verdict for a geometry file.
    Timing(TimingArgs),
}

#[derive(Debug, Args)]
pub struct DistributionArgs {
    /// Interferometer phase.
    #[arg(long)]
    pub phi: f64,
    /// Ancilla rotation (ignored by the classical-control variant).
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Network variant.
    #[arg(long, default_value = "entanglement-assisted")]
    pub variant: String,
    /// table, json, or csv.
    #[arg(long, default_value = "table")]
    pub format: String,
}

#[derive(Debug, Args)]
pub struct FeasibilityArgs {
    /// Comma-separated assumptions, e.g. realism,strong-det,independence.
    #[arg(long)]
    pub assume: String,
    /// Rotation setting.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Interferometer phase recorded with the verdict.
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    /// Two rotations "a1,a2" whose choice is delayed past photon creation.
    #[arg(long, value_delimiter = ',')]
    pub delayed_alpha: Option<Vec<f64>>,
    /// Hidden-variable cardinality.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Particle-fraction grid resolution for independence scans.
    #[arg(long, default_value_t = DEFAULT_F_GRID)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Alpha range "start,stop,points" with points >= 2.
    #[arg(long, value_delimiter = ',')]
    pub alpha_range: Vec<f64>,
    /// Optional phi range "start,stop,points"; a single phi = 0 otherwise.
    #[arg(long, value_delimiter = ',')]
    pub phi_range: Option<Vec<f64>>,
    /// Comma-separated assumptions.
    #[arg(long)]
    pub assume: String,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_F_GRID)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub phi: f64,
    #[arg(long)]
    pub alpha: f64,
    /// Trials.
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    /// Seed for the deterministic generator.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Detector efficiencies "eta_a,eta_b,eta_c".
    #[arg(long, value_delimiter = ',')]
    pub eta: Option<Vec<f64>>,
    /// Dark-count rate.
    #[arg(long, default_value_t = 0.0)]
    pub dark: f64,
    /// json or csv (csv emits the raw count table).
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Debug, Args)]
pub struct TimingArgs {
    /// Geometry JSON file.
    #[arg(long)]
    pub geometry: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Hv(#[from] HvError),
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Experiment(ExperimentError::GeometryInfeasible { .. }) => 2,
            _ => 1,
        }
    }
}

/// Entry point used by the `wavicle` binary.
pub fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&config) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

/// Executes a parsed configuration, returning the process exit code.
pub fn run(config: &RunConfig) -> Result<u8, CliError> {
    match &config.command {
        Command::Distribution(args) => cmd_distribution(config, args),
        Command::Feasibility(args) => cmd_feasibility(config, args),
        Command::Sweep(args) => cmd_sweep(config, args),
        Command::Simulate(args) => cmd_simulate(config, args),
        Command::Timing(args) => cmd_timing(config, args),
    }
}

fn to_radians(config: &RunConfig, angle: f64) -> f64 {
    if config.degrees {
        angle.to_radians()
    } else {
        angle
    }
}

/// 15 significant digits, '.' decimal, locale-free.
fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

fn write_output(config: &RunConfig, content: &str) -> Result<(), CliError> {
    match &config.output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let resolved = resolve_output(path);
            std::fs::write(&resolved, content).map_err(|source| CliError::Io {
                path: resolved,
                source,
            })
        }
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

fn parse_variant(name: &str, phi: f64, alpha: f64) -> Result<CircuitVariant, CliError> {
    match name {
        "entanglement-assisted" | "ea" => {
            CircuitVariant::entanglement_assisted(phi, alpha).map_err(CliError::Quantum)
        }
        "quantum-control" | "qc" => {
            CircuitVariant::quantum_control(phi, alpha).map_err(CliError::Quantum)
        }
        "classical-control" | "cc" => {
            CircuitVariant::classical_control(phi).map_err(CliError::Quantum)
        }
        other => Err(CliError::Usage(format!(
            "unknown variant '{other}' (expected entanglement-assisted, quantum-control, \
             or classical-control)"
        ))),
    }
}

fn cmd_distribution(config: &RunConfig, args: &DistributionArgs) -> Result<u8, CliError> {
    let phi = to_radians(config, args.phi);
    let alpha = to_radians(config, args.alpha);
    let variant = parse_variant(&args.variant, phi, alpha)?;
    let simulated = simulate_distribution(&variant)?;
    let rendered = match (&simulated, &variant) {
        (VariantDistribution::Joint(sim), _) => {
            let analytic = analytic_distribution(variant.phi(), variant.alpha().unwrap())?;
            render_joint(args, &variant, sim, &analytic)?
        }
        (VariantDistribution::Pair(sim), CircuitVariant::QuantumControl { .. }) => {
            let analytic = analytic_pair_distribution(variant.phi(), variant.alpha().unwrap())?;
            render_pair(args, &variant, sim, &analytic)?
        }
        (VariantDistribution::Pair(sim), _) => {
            // Classical coin: the closed form is the EA table marginalized
            // over the remote outcome, independent of alpha.
            let analytic = analytic_distribution(variant.phi(), 0.0)?.marginal_ab();
            render_pair(args, &variant, sim, &analytic)?
        }
    };
    write_output(config, &rendered)?;
    Ok(0)
}

fn variant_name(variant: &CircuitVariant) -> &'static str {
    match variant {
        CircuitVariant::ClassicalControl { .. } => "classical-control",
        CircuitVariant::QuantumControl { .. } => "quantum-control",
        CircuitVariant::EntanglementAssisted { .. } => "entanglement-assisted",
    }
}

fn render_joint(
    args: &DistributionArgs,
    variant: &CircuitVariant,
    simulated: &JointDistribution,
    analytic: &JointDistribution,
) -> Result<String, CliError> {
    let deviation = simulated.max_deviation(analytic);
    let mut out = String::new();
    match args.format.as_str() {
        "table" => {
            writeln!(
                out,
                "variant: {}  phi: {}  alpha: {}",
                variant_name(variant),
                sig15(variant.phi()),
                sig15(variant.alpha().unwrap_or(0.0)),
            )
            .unwrap();
            writeln!(out, "a b c  simulated              analytic").unwrap();
            for i in 0..8usize {
                let (a, b, c) = (((i >> 2) & 1) as u8, ((i >> 1) & 1) as u8, (i & 1) as u8);
                writeln!(
                    out,
                    "{a} {b} {c}  {:<21}  {:<21}",
                    sig15(simulated.prob(a, b, c)),
                    sig15(analytic.prob(a, b, c))
                )
                .unwrap();
            }
            writeln!(out, "max |simulated - analytic| = {:e}", deviation).unwrap();
        }
        "json" => {
            writeln!(
                out,
                "{{\"variant\": \"{}\", \"phi\": {}, \"alpha\": {}, \"simulated\": {}, \
                 \"analytic\": {}, \"max_deviation\": {:e}}}",
                variant_name(variant),
                sig15(variant.phi()),
                sig15(variant.alpha().unwrap_or(0.0)),
                simulated.to_json_string(),
                analytic.to_json_string(),
                deviation
            )
            .unwrap();
        }
        "csv" => {
            writeln!(out, "a,b,c,simulated,analytic").unwrap();
            for i in 0..8usize {
                let (a, b, c) = (((i >> 2) & 1) as u8, ((i >> 1) & 1) as u8, (i & 1) as u8);
                writeln!(
                    out,
                    "{a},{b},{c},{},{}",
                    sig15(simulated.prob(a, b, c)),
                    sig15(analytic.prob(a, b, c))
                )
                .unwrap();
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown format '{other}' (expected table, json, or csv)"
            )))
        }
    }
    Ok(out)
}

fn render_pair(
    args: &DistributionArgs,
    variant: &CircuitVariant,
    simulated: &PairDistribution,
    analytic: &PairDistribution,
) -> Result<String, CliError> {
    let deviation = simulated.max_deviation(analytic);
    let mut out = String::new();
    match args.format.as_str() {
        "table" => {
            writeln!(
                out,
                "variant: {}  phi: {}{}",
                variant_name(variant),
                sig15(variant.phi()),
                variant
                    .alpha()
                    .map(|a| format!("  alpha: {}", sig15(a)))
                    .unwrap_or_default(),
            )
            .unwrap();
            writeln!(out, "a b  simulated              analytic").unwrap();
            for i in 0..4usize {
                let (a, b) = (((i >> 1) & 1) as u8, (i & 1) as u8);
                writeln!(
                    out,
                    "{a} {b}  {:<21}  {:<21}",
                    sig15(simulated.prob(a, b)),
                    sig15(analytic.prob(a, b))
                )
                .unwrap();
            }
            writeln!(out, "max |simulated - analytic| = {:e}", deviation).unwrap();
        }
        "json" => {
            let cells = |d: &PairDistribution| {
                (0..4usize)
                    .map(|i| {
                        format!(
                            "\"{}{}\": {:.17e}",
                            (i >> 1) & 1,
                            i & 1,
                            d.prob(((i >> 1) & 1) as u8, (i & 1) as u8)
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            writeln!(
                out,
                "{{\"variant\": \"{}\", \"phi\": {}, \"simulated\": {{{}}}, \
                 \"analytic\": {{{}}}, \"max_deviation\": {:e}}}",
                variant_name(variant),
                sig15(variant.phi()),
                cells(simulated),
                cells(analytic),
                deviation
            )
            .unwrap();
        }
        "csv" => {
            writeln!(out, "a,b,simulated,analytic").unwrap();
            for i in 0..4usize {
                let (a, b) = (((i >> 1) & 1) as u8, (i & 1) as u8);
                writeln!(
                    out,
                    "{a},{b},{},{}",
                    sig15(simulated.prob(a, b)),
                    sig15(analytic.prob(a, b))
                )
                .unwrap();
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown format '{other}' (expected table, json, or csv)"
            )))
        }
    }
    Ok(out)
}

fn determinism_of(assumptions: &AssumptionSet) -> Result<Determinism, CliError> {
    assumptions
        .require_determinism()
        .map_err(|_| CliError::Usage("pick one of strong-det or weak-det in --assume".into()))
}

fn cmd_feasibility(config: &RunConfig, args: &FeasibilityArgs) -> Result<u8, CliError> {
    let assumptions = AssumptionSet::parse_list(&args.assume)?;
    let determinism = determinism_of(&assumptions)?;
    let started = Instant::now();
    let report: FeasibilityReport = match &args.delayed_alpha {
        Some(pair) => {
            if pair.len() != 2 {
                return Err(CliError::Usage(
                    "--delayed-alpha expects exactly two angles \"a1,a2\"".into(),
                ));
            }
            if assumptions.contains(Assumption::Independence) {
                return Err(CliError::Usage(
                    "--delayed-alpha and independence are separate checks; each alone \
                     already rules the theories out"
                        .into(),
                ));
            }
            let a1 = to_radians(config, pair[0]);
            let a2 = to_radians(config, pair[1]);
            check_delayed_choice_with(a1, a2, args.n, determinism)?
        }
        None => {
            let alpha = args.alpha.ok_or_else(|| {
                CliError::Usage("--alpha is required unless --delayed-alpha is given".into())
            })?;
            let alpha = to_radians(config, alpha);
            let phi = to_radians(config, args.phi);
            if assumptions.contains(Assumption::Independence) {
                let mut report = check_independence_with(alpha, args.n, args.grid, determinism)?;
                report.settings.phi = Some(phi);
                report.settings.assumptions = assumptions.labels();
                report
            } else {
                check_assumptions(alpha, phi, args.n, &assumptions)?
            }
        }
    };
    eprintln!("wall time: {:.3?}", started.elapsed());
    let mut rendered = report.to_json_string();
    rendered.push('\n');
    write_output(config, &rendered)?;
    Ok(report.exit_code())
}

fn parse_range(range: &[f64], what: &str) -> Result<Vec<f64>, CliError> {
    let [start, stop, points] = range else {
        return Err(CliError::Usage(format!("{what} expects start,stop,points")));
    };
    let count = *points as usize;
    if points.fract() != 0.0 || count < 2 {
        return Err(CliError::Usage(format!(
            "{what} needs an integer point count of at least 2"
        )));
    }
    if !start.is_finite() || !stop.is_finite() {
        return Err(CliError::Usage(format!("{what} bounds must be finite")));
    }
    Ok((0..count)
        .map(|k| start + (stop - start) * k as f64 / (count - 1) as f64)
        .collect())
}

fn cmd_sweep(config: &RunConfig, args: &SweepArgs) -> Result<u8, CliError> {
    let assumptions = AssumptionSet::parse_list(&args.assume)?;
    let determinism = determinism_of(&assumptions)?;
    if args.alpha_range.is_empty() {
        return Err(CliError::Usage("--alpha-range is required".into()));
    }
    let alphas: Vec<f64> = parse_range(&args.alpha_range, "--alpha-range")?
        .into_iter()
        .map(|a| to_radians(config, a))
        .collect();
    let phis: Vec<f64> = match &args.phi_range {
        Some(range) => parse_range(range, "--phi-range")?
            .into_iter()
            .map(|p| to_radians(config, p))
            .collect(),
        None => vec![0.0],
    };
    let mut out = String::from("alpha,phi,verdict,margin\n");
    for &alpha in &alphas {
        for &phi in &phis {
            let report = if assumptions.contains(Assumption::Independence) {
                check_independence_with(alpha, args.n, args.grid, determinism)?
            } else {
                check_assumptions(alpha, phi, args.n, &assumptions)?
            };
            let verdict = match report.verdict {
                Verdict::Feasible => "feasible",
                Verdict::Infeasible => "infeasible",
            };
            writeln!(
                out,
                "{},{},{verdict},{}",
                sig15(alpha),
                sig15(phi),
                sig15(report.margin)
            )
            .unwrap();
        }
    }
    write_output(config, &out)?;
    Ok(0)
}

fn cmd_simulate(config: &RunConfig, args: &SimulateArgs) -> Result<u8, CliError> {
    if args.n < 100 {
        return Err(CliError::Usage("--n must be at least 100".into()));
    }
    let phi = to_radians(config, args.phi);
    let alpha = to_radians(config, args.alpha);
    let q = analytic_distribution(phi, alpha)?;
    let eta = match &args.eta {
        Some(values) => {
            if values.len() != 3 {
                return Err(CliError::Usage(
                    "--eta expects three efficiencies \"eta_a,eta_b,eta_c\"".into(),
                ));
            }
            [values[0], values[1], values[2]]
        }
        None => [1.0, 1.0, 1.0],
    };
    let lossless = eta == [1.0, 1.0, 1.0] && args.dark == 0.0;
    let counts = if lossless {
        sample_outcomes(&q, args.n, args.seed)?
    } else {
        let detectors = DetectorModel::new(eta, args.dark)?;
        apply_inefficiency(&q, &detectors, args.n, args.seed)?
    };
    let chi = chi_square_test(&counts, &q)?;
    let rendered = match args.format.as_str() {
        "json" => {
            let frequencies: Vec<String> = (0..8usize)
                .map(|i| {
                    let (a, b, c) = (((i >> 2) & 1) as u8, ((i >> 1) & 1) as u8, (i & 1) as u8);
                    format!("\"{a}{b}{c}\": {:.17e}", counts.frequency(a, b, c))
                })
                .collect();
            format!(
                "{{\"config\": {{\"phi\": {}, \"alpha\": {}, \"n\": {}, \"seed\": {}, \
                 \"eta\": [{}, {}, {}], \"dark\": {}}}, \"table\": {}, \
                 \"frequencies\": {{{}}}, \"chi_square\": {{\"statistic\": {:e}, \
                 \"p_value\": {:e}, \"dof\": {}}}}}\n",
                sig15(phi),
                sig15(alpha),
                args.n,
                args.seed,
                eta[0],
                eta[1],
                eta[2],
                args.dark,
                counts.to_json_string(),
                frequencies.join(", "),
                chi.statistic,
                chi.p_value,
                chi.dof
            )
        }
        "csv" => counts.to_csv_string(),
        other => {
            return Err(CliError::Usage(format!(
                "unknown format '{other}' (expected json or csv)"
            )))
        }
    };
    write_output(config, &rendered)?;
    Ok(0)
}

fn cmd_timing(config: &RunConfig, args: &TimingArgs) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(&args.geometry).map_err(|source| CliError::Io {
        path: args.geometry.clone(),
        source,
    })?;
    let geometry = Geometry::from_json_str(&text)?;
    let plan = timing_plan(&geometry)?;
    let mut rendered = serde_json::to_string_pretty(&plan).expect("plan serializes");
    rendered.push('\n');
    write_output(config, &rendered)?;
    Ok(0)
}
