//! Command-line front end: single solves, polyline traces, benchmark runs
//! over reference test files, and convergence sweeps.
//!
//! Exit codes: 0 success, 2 argument errors, 3 solver errors, 4 I/O errors.

mod bench;
mod output;

use clap::{Args, Parser, Subcommand};
use geodesic_ivp::solver::select_steps;
use geodesic_ivp::{
    solve_direct, trace_direct, CoordinateSystem, DirectProblem, Ellipsoid, GeodesicError,
    GeodeticCoord,
};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "geodesic-ivp",
    version,
    about = "Direct geodesic problems on an oblate spheroid by numerical integration"
)]
struct Cli {
    /// Major semiaxis of the ellipsoid, meters
    #[arg(long, global = true, default_value_t = geodesic_ivp::spheroid::WGS84_A)]
    a: f64,

    /// Flattening of the ellipsoid (0 gives a sphere)
    #[arg(long, global = true, default_value_t = geodesic_ivp::spheroid::WGS84_F)]
    f: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one direct problem and print the endpoint and diagnostics
    Solve(SolveArgs),
    /// Trace a geodesic as a polyline (table, CSV, or GeoJSON)
    Trace(TraceArgs),
    /// Evaluate a reference test file and report group-wise error maxima
    Bench(bench::BenchArgs),
    /// Solve one geodesic over a list of step counts and report the
    /// observed convergence order against the finest run
    Convergence(ConvergenceArgs),
}

#[derive(Args, Clone)]
struct GeodesicSpec {
    /// Start latitude, degrees
    #[arg(long)]
    lat0: f64,

    /// Start longitude, degrees
    #[arg(long)]
    lon0: f64,

    /// Start azimuth, degrees clockwise from north
    #[arg(long)]
    azi0: f64,

    /// Arc length, meters
    #[arg(long)]
    s: f64,

    /// Coordinate system to integrate in
    #[arg(long, default_value = "cartesian", value_parser = parse_system)]
    system: CoordinateSystem,

    /// Number of integration steps (default: arc length / target step)
    #[arg(long, conflicts_with = "target_ds")]
    steps: Option<usize>,

    /// Target step length in meters used to pick the step count
    #[arg(long)]
    target_ds: Option<f64>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    spec: GeodesicSpec,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    spec: GeodesicSpec,

    /// Keep every k-th step (the final step is always kept)
    #[arg(long, default_value_t = 1)]
    every: usize,

    /// Output format
    #[arg(long, default_value = "table", value_parser = ["table", "csv", "geojson"])]
    format: String,

    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    spec: GeodesicSpec,

    /// Comma-separated step counts; needs at least 3, the largest is the
    /// self-reference
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
}

fn parse_system(s: &str) -> Result<CoordinateSystem, String> {
    s.parse().map_err(|e: GeodesicError| e.to_string())
}

/// Application error carrying the process exit code.
enum AppError {
    Usage(String),
    Solver(GeodesicError),
    Io(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Solver(_) => 3,
            AppError::Io(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            AppError::Usage(m) | AppError::Io(m) => m.clone(),
            AppError::Solver(e) => e.to_string(),
        }
    }
}

impl From<GeodesicError> for AppError {
    fn from(e: GeodesicError) -> Self {
        AppError::Solver(e)
    }
}

type AppResult<T> = Result<T, AppError>;

impl GeodesicSpec {
    fn problem(&self) -> DirectProblem {
        let mut prob = DirectProblem::new(GeodeticCoord::new(self.lat0, self.lon0), self.azi0, self.s)
            .with_system(self.system);
        if let Some(n) = self.steps {
            prob = prob.with_steps(n);
        } else if let Some(target) = self.target_ds {
            prob = prob.with_steps(select_steps(self.s, target));
        }
        prob
    }
}

fn ellipsoid(cli: &Cli) -> AppResult<Ellipsoid> {
    Ellipsoid::new(cli.a, cli.f).map_err(|e| AppError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => cmd_solve(&cli, args),
        Command::Trace(args) => cmd_trace(&cli, args),
        Command::Bench(args) => bench::cmd_bench(&cli.a, &cli.f, args),
        Command::Convergence(args) => cmd_convergence(&cli, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn cmd_solve(cli: &Cli, args: &SolveArgs) -> AppResult<()> {
    let ell = ellipsoid(cli)?;
    let prob = args.spec.problem();
    let res = solve_direct(&ell, &prob)?;
    print!("{}", output::solve_report(&res));
    Ok(())
}

fn cmd_trace(cli: &Cli, args: &TraceArgs) -> AppResult<()> {
    if args.every == 0 {
        return Err(AppError::Usage("--every must be at least 1".into()));
    }
    let ell = ellipsoid(cli)?;
    let prob = args.spec.problem();
    let samples = trace_direct(&ell, &prob, args.every)?;
    let rendered = match args.format.as_str() {
        "table" => output::trace_table(&samples),
        "csv" => output::trace_csv(&samples),
        "geojson" => output::trace_geojson(&samples),
        _ => unreachable!("clap validates the format"),
    };
    match &args.output {
        None => {
            print!("{rendered}");
            Ok(())
        }
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| AppError::Io(format!("cannot write {}: {e}", path.display()))),
    }
}

fn cmd_convergence(cli: &Cli, args: &ConvergenceArgs) -> AppResult<()> {
    if args.n_list.len() < 3 {
        return Err(AppError::Usage(
            "--n-list needs at least 3 step counts".into(),
        ));
    }
    let ell = ellipsoid(cli)?;
    let mut ns = args.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    if *ns.first().unwrap() == 0 {
        return Err(AppError::Usage("step counts must be positive".into()));
    }

    let spec = &args.spec;
    let base = DirectProblem::new(GeodeticCoord::new(spec.lat0, spec.lon0), spec.azi0, spec.s)
        .with_system(spec.system);
    let reference_n = *ns.last().unwrap();
    let reference = solve_direct(&ell, &base.with_steps(reference_n))?;
    for w in &reference.diagnostics.warnings {
        println!("warning: {w}");
    }

    let mut errors = Vec::new();
    for &n in ns.iter().take(ns.len() - 1) {
        let res = solve_direct(&ell, &base.with_steps(n))?;
        errors.push((
            n,
            geodesic_ivp::solver::endpoint_distance(res.end_cartesian, reference.end_cartesian),
        ));
    }

    println!("reference: n = {reference_n}");
    println!("{:>10} {:>14} {:>10}  note", "n", "err_m", "order");
    let mut prev: Option<(usize, f64)> = None;
    for &(n, err) in &errors {
        let order = prev.map(|(pn, pe)| {
            let ratio = (n as f64 / pn as f64).log2();
            (pe / err).log2() / ratio
        });
        let (order_text, note) = match order {
            None => ("-".to_string(), ""),
            Some(o) if !o.is_finite() => ("-".to_string(), "errors at rounding floor"),
            Some(o) if !(3.5..=4.5).contains(&o) => (format!("{o:.2}"), "outside [3.5, 4.5]"),
            Some(o) => (format!("{o:.2}"), ""),
        };
        println!("{:>10} {:>14.6e} {:>10}  {}", n, err, order_text, note);
        prev = Some((n, err));
    }
    if errors.iter().all(|&(_, e)| e == 0.0) {
        println!("all errors are zero (degenerate geodesic)");
    }
    Ok(())
}
