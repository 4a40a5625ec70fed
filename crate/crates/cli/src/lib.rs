//! Experiment runner behind the `advlab` binary.
//!
//! Every subcommand produces a CSV report: `# key=value` comment lines,
//! a header row, then data rows with 17 significant digits.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use advlab::analysis::RunConfig;
use advlab::method::Method;
use advlab::spectral::FftMode;
use advlab::splitting::CompositionScheme;
use advlab::{IcKind, InitialCondition};

pub mod commands;
pub mod report;

pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Analysis(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Analysis(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<advlab::Error> for CliError {
    fn from(e: advlab::Error) -> Self {
        match e {
            advlab::Error::Analysis(_) => CliError::Analysis(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "advlab", version, about = "Periodic advection error-propagation experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Advance one configuration and record the error against the exact solution.
    Propagate(PropagateArgs),
    /// Compare closed-form averaged errors with brute-force quadrature.
    AvgError(AvgErrorArgs),
    /// Advection with a source term: error at the final time for a list of step sizes.
    Split(SplitArgs),
    /// Pointwise error after a run, with shape statistics.
    Pointwise(PointwiseArgs),
    /// Fit the log-log slope of an existing error series.
    Slope(SlopeArgs),
    /// Cell-averaged error of a single step as a function of the step size.
    OneStep(OneStepArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Lagrange,
    Spline,
    Dg,
    Fft,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IcArg {
    #[value(name = "runge_cos")]
    RungeCos,
    Cos4,
    Convex,
    Concave,
    #[value(name = "random_phase")]
    RandomPhase,
}

impl From<IcArg> for IcKind {
    fn from(a: IcArg) -> Self {
        match a {
            IcArg::RungeCos => IcKind::RungeCos,
            IcArg::Cos4 => IcKind::Cos4,
            IcArg::Convex => IcKind::Convex,
            IcArg::Concave => IcKind::Concave,
            IcArg::RandomPhase => IcKind::RandomPhase,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Standard,
    Extended,
}

impl From<ModeArg> for FftMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Standard => FftMode::Standard,
            ModeArg::Extended => FftMode::Extended,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeArg {
    Strang,
    Compose6,
}

impl From<SchemeArg> for CompositionScheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Strang => CompositionScheme::Strang,
            SchemeArg::Compose6 => CompositionScheme::Compose6,
        }
    }
}

/// Solver selection shared by several subcommands.
#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value = "lagrange")]
    pub method: MethodArg,
    /// Number of grid points (cells for dG).
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Polynomial degree; defaults to 3 for Lagrange and 2 for dG.
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub v: f64,
    #[arg(long, value_enum, default_value = "runge_cos")]
    pub ic: IcArg,
    /// Seed for the random-phase profile.
    #[arg(long)]
    pub phase_seed: Option<u64>,
    #[arg(long, value_enum, default_value = "standard")]
    pub fft_mode: ModeArg,
}

impl SolverArgs {
    pub fn method(&self) -> Method {
        match self.method {
            MethodArg::Lagrange => Method::Lagrange { degree: self.degree.unwrap_or(3) },
            MethodArg::Spline => Method::Spline,
            MethodArg::Dg => Method::Dg { degree: self.degree.unwrap_or(2) },
            MethodArg::Fft => Method::Fft { mode: self.fft_mode.into() },
        }
    }

    pub fn initial_condition(&self) -> Result<InitialCondition<f64>, CliError> {
        match (self.ic, self.phase_seed) {
            (IcArg::RandomPhase, Some(seed)) => Ok(InitialCondition::random_phase(seed)),
            (IcArg::RandomPhase, None) => {
                Err(CliError::Config("phase-seed: random_phase needs --phase-seed".into()))
            }
            (ic, _) => Ok(InitialCondition::new(ic.into())),
        }
    }

    /// Default step size `h (sqrt(2) - 1)`, which keeps the fractional shift
    /// away from 0 and from a whole cell.
    pub fn default_tau(&self) -> f64 {
        2.0 / self.n.max(1) as f64 * (2f64.sqrt() - 1.0)
    }

    pub fn run_config(&self, tau: Option<f64>, steps: u64) -> Result<RunConfig<f64>, CliError> {
        let config = RunConfig {
            method: self.method(),
            n: self.n,
            v: self.v,
            tau: tau.unwrap_or_else(|| self.default_tau()),
            steps,
            ic: self.initial_condition()?,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args, Debug)]
pub struct PropagateArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Step size; defaults to h (sqrt(2) - 1).
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
    /// `geometric`, `all`, or a comma-separated list of step counts.
    #[arg(long, default_value = "geometric")]
    pub schedule: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script that plots the CSV (requires --out).
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AvgErrorArgs {
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 64)]
    pub quad_points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    #[arg(long, value_enum, default_value = "strang")]
    pub scheme: SchemeArg,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Comma-separated step sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub tau: Vec<f64>,
    #[arg(long, default_value_t = 1.8)]
    pub final_time: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PointwiseArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SlopeArgs {
    /// CSV written by `propagate`.
    pub input: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub window_min: u64,
    #[arg(long, default_value_t = 10_000)]
    pub window_max: u64,
}

#[derive(Args, Debug)]
pub struct OneStepArgs {
    #[arg(long, value_enum, default_value = "convex")]
    pub ic: IcArg,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// dG degree.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Number of step sizes, evenly spaced strictly inside (0, h).
    #[arg(long, default_value_t = 19)]
    pub taus: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, S>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(CliError::Config(e.to_string().trim_end().to_string())),
    };
    execute(&cli.command)
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Propagate(a) => {
            let report = commands::propagate(a)?;
            emit(&report, a.out.as_deref())?;
            if let Some(script) = &a.plot {
                let csv = a.out.as_deref().ok_or_else(|| {
                    CliError::Config("plot: --plot needs --out for the data file".into())
                })?;
                write_file(script, &report::gnuplot_script(csv, &report.title))?;
            }
            Ok(())
        }
        Command::AvgError(a) => emit(&commands::avg_error(a)?, a.out.as_deref()),
        Command::Split(a) => emit(&commands::split(a)?, a.out.as_deref()),
        Command::Pointwise(a) => emit(&commands::pointwise(a)?, a.out.as_deref()),
        Command::Slope(a) => {
            let slope = commands::slope(a)?;
            println!("{slope:.16e}");
            Ok(())
        }
        Command::OneStep(a) => emit(&commands::one_step(a)?, a.out.as_deref()),
    }
}

fn emit(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, &report.to_csv()),
        None => std::io::stdout()
            .write_all(report.to_csv().as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
