//! `vbl`: cell-size moments, secure-degree distributions and Monte Carlo checks for
//! Poisson-Voronoi cells near boundaries.

mod output;
mod range;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vbl_core::mc_sim::{self, Point, SimConfig};
use vbl_core::moments::{self, MomentResult};
use vbl_core::secrecy::{self, IntensityRatio};
use vbl_core::{Error, QuadSpec, SeedLocation};

use output::{Envelope, Format, Record};

#[derive(Parser, Debug)]
#[command(name = "vbl", version, about = "Poisson-Voronoi cell sizes near boundaries")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mean cell size with bounds.
    Mean(MeanArgs),
    /// Mean, variance and Gamma fit at the corner, on the edge and in the bulk.
    Table1(Table1Args),
    /// Secure in-/out-degree distributions.
    #[command(subcommand)]
    Secrecy(SecrecyCommand),
    /// Monte Carlo simulations.
    #[command(subcommand)]
    Simulate(SimulateCommand),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "location")]
struct MeanLocation {
    /// Seed on a quadrant boundary at these distances from the corner.
    #[arg(long, value_name = "A_LIST")]
    corner_offset: Option<String>,
    /// Seed at these distances from a half-plane boundary.
    #[arg(long, value_name = "H_LIST")]
    halfplane_offset: Option<String>,
    /// Seed at the corner of a quadrant.
    #[arg(long)]
    corner: bool,
    /// Seed on the boundary of a half-plane.
    #[arg(long)]
    edge: bool,
}

#[derive(Args, Debug)]
struct MeanArgs {
    #[command(flatten)]
    location: MeanLocation,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// Relative tolerance of the second-moment integrals.
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
}

#[derive(Args, Debug, Clone)]
struct DegreeArgs {
    /// Intensity of legitimate users.
    #[arg(long, default_value_t = 10.0)]
    lambda_l: f64,
    /// Intensity of eavesdroppers.
    #[arg(long, default_value_t = 1.0)]
    lambda_e: f64,
    /// corner, edge or bulk.
    #[arg(long, default_value = "bulk")]
    location: String,
    /// Largest degree to tabulate.
    #[arg(long, default_value_t = 20)]
    n_max: u64,
}

#[derive(Subcommand, Debug)]
enum SecrecyCommand {
    /// Probability mass functions of the in- and out-degree.
    Pmf(DegreeArgs),
    /// Cumulative distribution functions of the in- and out-degree.
    Cdf(DegreeArgs),
    /// In- and out-isolation probabilities over eavesdropper intensities.
    Isolation(IsolationArgs),
}

#[derive(Args, Debug)]
struct IsolationArgs {
    #[arg(long, default_value_t = 10.0)]
    lambda_l: f64,
    /// Eavesdropper intensities (list or range).
    #[arg(long, default_value = "0.1:10:log")]
    lambda_e: String,
    /// corner, edge or bulk.
    #[arg(long, default_value = "bulk")]
    location: String,
}

#[derive(Args, Debug, Clone)]
struct SimCommon {
    /// Number of trials.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Seed of the random streams.
    #[arg(long, default_value_t = 1)]
    rng_seed: u64,
    /// Side of the simulation square.
    #[arg(long, default_value_t = 10.0)]
    side: f64,
}

#[derive(Subcommand, Debug)]
enum SimulateCommand {
    /// Cell-size statistics for one seed position.
    Cell {
        #[command(flatten)]
        common: SimCommon,
        /// Point-process intensity.
        #[arg(long, default_value_t = 1.0)]
        intensity: f64,
        /// corner, edge, bulk or X,Y.
        #[arg(long, default_value = "corner")]
        at: String,
    },
    /// Cell-size statistics on a grid of seed positions near the corner.
    Grid {
        #[command(flatten)]
        common: SimCommon,
        #[arg(long, default_value_t = 1.0)]
        intensity: f64,
        /// Grid spacing.
        #[arg(long, default_value_t = 0.3)]
        delta: f64,
        /// Positions per axis.
        #[arg(long, default_value_t = 11)]
        n: usize,
    },
    /// Empirical secure in- and out-degree distributions.
    Degree {
        #[command(flatten)]
        common: SimCommon,
        #[arg(long, default_value_t = 10.0)]
        lambda_l: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda_e: f64,
        /// corner, edge, bulk or X,Y.
        #[arg(long, default_value = "corner")]
        at: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::InvalidParameter(_)
            | Error::Region(_)
            | Error::Degenerate(_) => CliError::Invalid(e.to_string()),
            Error::ToleranceNotMet { .. } | Error::NonConvergence { .. } => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("vbl: {e}");
        return ExitCode::from(e.code());
    }
    // A command may produce output and still report a failure (rows flagged).
    let (env, failure) = match run(&cli.command) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("vbl: {e}");
            return ExitCode::from(e.code());
        }
    };
    if let Err(e) = emit(&env, cli.format, cli.out.as_ref()) {
        let e = CliError::from(e);
        eprintln!("vbl: {e}");
        return ExitCode::from(e.code());
    }
    match failure {
        Some(e) => {
            eprintln!("vbl: {e}");
            ExitCode::from(e.code())
        }
        None => ExitCode::SUCCESS,
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("VBL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("VBL_THREADS must be an integer, got {raw:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Invalid(e.to_string()))?;
    }
    Ok(())
}

fn emit(env: &Envelope, format: Format, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            output::render(env, format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            output::render(env, format, &mut w)?;
            w.flush()
        }
    }
}

type Outcome = Result<(Envelope, Option<CliError>), CliError>;

fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Mean(args) => cmd_mean(args),
        Command::Table1(args) => cmd_table1(args),
        Command::Secrecy(sub) => cmd_secrecy(sub).map(|e| (e, None)),
        Command::Simulate(sub) => cmd_simulate(sub).map(|e| (e, None)),
    }
}

fn quad_spec(rel_tol: f64, base: QuadSpec) -> Result<QuadSpec, CliError> {
    let spec = QuadSpec { rel_tol, ..base };
    spec.validate()?;
    Ok(spec)
}

fn list(s: &str) -> Result<Vec<f64>, CliError> {
    range::parse_list(s).map_err(CliError::Invalid)
}

fn cmd_mean(args: &MeanArgs) -> Outcome {
    let spec = quad_spec(args.tol, QuadSpec::default())?;
    let loc = &args.location;
    let mut params = Record::default();
    params.push("tol", args.tol);
    let mut env;
    let mut failure = None;

    let mut push_row = |env: &mut Envelope,
                        position: f64,
                        label: &str,
                        m: Result<MomentResult, Error>,
                        lower: f64,
                        upper: Option<f64>|
     -> Result<(), CliError> {
        let mut row = Record::default()
            .with("location", label)
            .with("position", position);
        match m {
            Ok(m) => {
                row.push("mean", m.value)
                    .push("err_estimate", m.err_estimate)
                    .push("method", m.method.label());
            }
            Err(Error::ToleranceNotMet {
                value,
                err_estimate,
            }) => {
                row.push("mean", value)
                    .push("err_estimate", err_estimate)
                    .push("method", "quadrature_failed");
                failure.get_or_insert(CliError::Numerical(format!(
                    "quadrature tolerance not met at {label} offset {position}"
                )));
            }
            Err(e) => return Err(e.into()),
        }
        row.push("lower_bound", lower).push("upper_bound", upper);
        env.rows.push(row);
        Ok(())
    };

    if let Some(list_text) = &loc.corner_offset {
        let values = list(list_text)?;
        params.push("corner_offset", list_text.as_str());
        env = Envelope::new("mean", params);
        for a in values {
            let lower = moments::lower_bound_mean_quadrant(a)?.value;
            let upper = moments::upper_bound_mean_quadrant(a)?.value;
            push_row(&mut env, a, "quadrant", moments::mean_quadrant(a, &spec), lower, Some(upper))?;
        }
    } else if let Some(list_text) = &loc.halfplane_offset {
        let values = list(list_text)?;
        params.push("halfplane_offset", list_text.as_str());
        env = Envelope::new("mean", params);
        for h in values {
            let lower = moments::lower_bound_mean_halfplane(h)?.value;
            push_row(&mut env, h, "halfplane", moments::mean_halfplane(h, &spec), lower, None)?;
        }
    } else if loc.corner {
        params.push("corner", "true");
        env = Envelope::new("mean", params);
        let lower = moments::lower_bound_mean_quadrant(0.0)?.value;
        let upper = moments::upper_bound_mean_quadrant(0.0)?.value;
        push_row(&mut env, 0.0, "corner", Ok(moments::mean_corner()), lower, Some(upper))?;
    } else {
        params.push("edge", "true");
        env = Envelope::new("mean", params);
        let lower = moments::trivial_lower_bound_mean_halfplane(0.0)?.value;
        push_row(&mut env, 0.0, "edge", Ok(moments::mean_edge()), lower, Some(2f64.ln()))?;
    }
    Ok((env, failure))
}

fn cmd_table1(args: &Table1Args) -> Outcome {
    let spec = quad_spec(args.tol, QuadSpec::triple())?;
    let rows = moments::fit_table(&spec)?;
    let mut env = Envelope::new("table1", Record::default().with("tol", args.tol));
    for r in rows {
        env.rows.push(
            Record::default()
                .with("location", r.location.label())
                .with("mean", r.mean.value)
                .with("second_moment", r.second_moment.value)
                .with("variance", r.variance)
                .with("k", r.gamma.k)
                .with("nu", r.gamma.nu)
                .with("err_estimate", r.second_moment.err_estimate),
        );
    }
    Ok((env, None))
}

fn parse_fitted_location(s: &str) -> Result<SeedLocation, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "corner" => Ok(SeedLocation::Corner),
        "edge" => Ok(SeedLocation::Edge),
        "bulk" => Ok(SeedLocation::Bulk),
        other => Err(CliError::Invalid(format!(
            "location must be corner, edge or bulk, got {other:?}"
        ))),
    }
}

fn cmd_secrecy(cmd: &SecrecyCommand) -> Result<Envelope, CliError> {
    match cmd {
        SecrecyCommand::Pmf(a) | SecrecyCommand::Cdf(a) => {
            let cdf = matches!(cmd, SecrecyCommand::Cdf(_));
            let location = parse_fitted_location(&a.location)?;
            let ratio = IntensityRatio::new(a.lambda_l, a.lambda_e)?;
            let g = moments::fitted_gamma(location)?;
            let p = ratio.p();
            let name = if cdf { "secrecy cdf" } else { "secrecy pmf" };
            let mut env = Envelope::new(
                name,
                Record::default()
                    .with("lambda_l", a.lambda_l)
                    .with("lambda_e", a.lambda_e)
                    .with("location", location.label())
                    .with("n_max", a.n_max)
                    .with("k", g.k)
                    .with("nu", g.nu),
            );
            for n in 0..=a.n_max {
                let (vin, vout) = if cdf {
                    (secrecy::in_degree_cdf(n, p, g)?, secrecy::out_degree_cdf(n, p)?)
                } else {
                    (secrecy::in_degree_pmf(n, p, g)?, secrecy::out_degree_pmf(n, p)?)
                };
                env.rows.push(
                    Record::default()
                        .with("n", n)
                        .with("in_degree", vin)
                        .with("out_degree", vout),
                );
            }
            Ok(env)
        }
        SecrecyCommand::Isolation(a) => {
            let location = parse_fitted_location(&a.location)?;
            let grid = list(&a.lambda_e)?;
            let rows = secrecy::isolation_comparison(a.lambda_l, &grid, location)?;
            let mut env = Envelope::new(
                "secrecy isolation",
                Record::default()
                    .with("lambda_l", a.lambda_l)
                    .with("lambda_e", a.lambda_e.as_str())
                    .with("location", location.label()),
            );
            for r in rows {
                env.rows.push(
                    Record::default()
                        .with("lambda_e", r.lambda_e)
                        .with("p", a.lambda_l / r.lambda_e)
                        .with("p_in_isolated", r.p_in_isolated)
                        .with("p_out_isolated", r.p_out_isolated),
                );
            }
            Ok(env)
        }
    }
}

fn parse_position(s: &str, side: f64) -> Result<Point, CliError> {
    let p = match s.trim().to_ascii_lowercase().as_str() {
        "corner" => Point::new(0.0, 0.0),
        "edge" => Point::new(side / 2.0, 0.0),
        "bulk" | "center" => Point::new(side / 2.0, side / 2.0),
        other => {
            let parts = range::parse_list(other).map_err(CliError::Invalid)?;
            if parts.len() != 2 {
                return Err(CliError::Invalid(format!(
                    "position must be corner, edge, bulk or X,Y, got {s:?}"
                )));
            }
            Point::new(parts[0], parts[1])
        }
    };
    if !(0.0..=side).contains(&p.x) || !(0.0..=side).contains(&p.y) {
        return Err(CliError::Invalid(format!(
            "position ({}, {}) lies outside the square [0, {side}]^2",
            p.x, p.y
        )));
    }
    Ok(p)
}

fn sim_params(c: &SimCommon) -> Record {
    Record::default()
        .with("trials", c.trials)
        .with("rng_seed", c.rng_seed)
        .with("side", c.side)
}

fn stats_row(row: Record, s: &mc_sim::SimStats) -> Record {
    row.with("mean", s.mean)
        .with("variance", s.variance)
        .with("std_err", s.std_err_mean)
        .with("std_err_variance", s.std_err_variance)
        .with("trials", s.trials)
}

fn cmd_simulate(cmd: &SimulateCommand) -> Result<Envelope, CliError> {
    let mut env = match cmd {
        SimulateCommand::Cell {
            common,
            intensity,
            at,
        } => {
            let seed0 = parse_position(at, common.side)?;
            let cfg = SimConfig {
                side_l: common.side,
                intensity: *intensity,
                seed0,
                trials: common.trials,
                rng_seed: common.rng_seed,
            };
            let stats = mc_sim::simulate_cell_area(&cfg)?;
            let mut env = Envelope::new(
                "simulate cell",
                sim_params(common)
                    .with("intensity", *intensity)
                    .with("at", at.as_str()),
            );
            let row = Record::default()
                .with("position_x", seed0.x)
                .with("position_y", seed0.y);
            env.rows.push(stats_row(row, &stats));
            env
        }
        SimulateCommand::Grid {
            common,
            intensity,
            delta,
            n,
        } => {
            let base = SimConfig {
                side_l: common.side,
                intensity: *intensity,
                seed0: Point::new(0.0, 0.0),
                trials: common.trials,
                rng_seed: common.rng_seed,
            };
            if (*n as f64 - 1.0) * delta > common.side {
                return Err(CliError::Invalid(format!(
                    "grid of {n} x {n} positions with spacing {delta} exceeds the square of side {}",
                    common.side
                )));
            }
            let grid = mc_sim::grid_scan(*delta, *n, common.trials, &base)?;
            let mut env = Envelope::new(
                "simulate grid",
                sim_params(common)
                    .with("intensity", *intensity)
                    .with("delta", *delta)
                    .with("n", *n),
            );
            for g in grid {
                let row = Record::default()
                    .with("position_x", g.x)
                    .with("position_y", g.y);
                env.rows.push(stats_row(row, &g.stats));
            }
            env
        }
        SimulateCommand::Degree {
            common,
            lambda_l,
            lambda_e,
            at,
        } => {
            let seed0 = parse_position(at, common.side)?;
            let samples = mc_sim::simulate_secure_degrees(
                *lambda_l,
                *lambda_e,
                seed0,
                common.side,
                common.trials,
                common.rng_seed,
            )?;
            let (pin, pout) = (samples.in_pmf(), samples.out_pmf());
            let mut env = Envelope::new(
                "simulate degree",
                sim_params(common)
                    .with("lambda_l", *lambda_l)
                    .with("lambda_e", *lambda_e)
                    .with("at", at.as_str()),
            );
            for n in 0..pin.len().max(pout.len()) {
                env.rows.push(
                    Record::default()
                        .with("n", n)
                        .with("in_pmf", pin.get(n).copied().unwrap_or(0.0))
                        .with("out_pmf", pout.get(n).copied().unwrap_or(0.0)),
                );
            }
            env
        }
    };
    let seed = match cmd {
        SimulateCommand::Cell { common, .. }
        | SimulateCommand::Grid { common, .. }
        | SimulateCommand::Degree { common, .. } => common.rng_seed,
    };
    env.rng_seed = Some(seed);
    Ok(env)
}
