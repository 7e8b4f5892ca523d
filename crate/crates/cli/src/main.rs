//! `zeta-workbench`: enumeration, zeta evaluation, trace formulas,
//! verification suites and continuation from the command line.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse or usage error,
//! 3 non-loxodromic element, 4 point outside the convergence region,
//! 5 verification failure, 6 parity violation, 7 point at a singularity.

mod commands;
mod config;
mod grid;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grid::{Pair, Reals};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] zeta_core::Error),
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use zeta_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::VerifyFailed => 5,
            CliError::Core(e) => match e {
                E::Schema(_)
                | E::Invariant { .. }
                | E::InvalidPresentation(_)
                | E::InvalidRep(_)
                | E::UnknownSymbol(_)
                | E::Io(_) => 2,
                E::NotLoxodromic { .. } => 3,
                E::ConvergenceRegion { .. } => 4,
                E::ParityViolation { .. } => 6,
                E::AtSingularity { .. } => 7,
                _ => 1,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "zeta-workbench", version, about = "Twisted Selberg and Ruelle zeta function workbench")]
pub struct Cli {
    /// Configuration file with one [section] per command; flags win over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the length spectrum of a group presentation.
    Enumerate(EnumerateArgs),
    /// Evaluate a zeta function on an s-grid inside its convergence region.
    Zeta(ZetaArgs),
    /// Compare geometric and spectral sides of a trace formula on a t-grid.
    Trace(TraceArgs),
    /// Run seeded verification suites.
    Verify(VerifyArgs),
    /// Singularity catalog and continued zeta values from operator spectra.
    Continue(ContinueArgs),
    /// Summarize a length spectrum.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    /// M-weight as comma-separated entries, e.g. `1` or `0.5`.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<Reals>,
    /// Γ-representation JSON; trivial one-dimensional when absent.
    #[arg(long)]
    pub chi: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    /// Exponent g of the geodesic counting bound N(L) ≤ C e^{gL}.
    #[arg(long)]
    pub growth_exponent: Option<f64>,
    /// Constant C of the counting bound; fitted when absent.
    #[arg(long)]
    pub growth_constant: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SGridArgs {
    /// First grid point as re,im.
    #[arg(long, allow_hyphen_values = true)]
    pub s_start: Option<Pair>,
    /// Last grid point as re,im; defaults to the start.
    #[arg(long, allow_hyphen_values = true)]
    pub s_stop: Option<Pair>,
    /// Steps along the real and imaginary axes as re,im.
    #[arg(long, allow_hyphen_values = true)]
    pub s_step: Option<Pair>,
}

#[derive(Debug, Args)]
pub struct PlancherelArgs {
    /// Even coefficients c₀, c₂, … of the Plancherel polynomial in λ.
    #[arg(long)]
    pub plancherel_coefficients: Option<Reals>,
    /// Overall normalization of the Plancherel polynomial.
    #[arg(long)]
    pub plancherel_normalization: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Group presentation JSON.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    #[arg(long)]
    pub max_word_length: Option<usize>,
    /// Length cutoff L.
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long)]
    pub bucket_tolerance: Option<f64>,
    /// Worker threads.
    #[arg(long)]
    pub parallel_width: Option<usize>,
    /// Cache directory; ZETA_CACHE_DIR overrides the configured one.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Length spectrum JSON.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// selberg, ruelle, symmetrized, super or super_ruelle.
    #[arg(long)]
    pub kind: Option<String>,
    #[command(flatten)]
    pub rep: RepArgs,
    #[command(flatten)]
    pub grid: SGridArgs,
    #[command(flatten)]
    pub growth: GrowthArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// heat or dirac.
    #[arg(long)]
    pub formula: Option<String>,
    /// Length spectrum JSON.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// Dirac spectrum JSON.
    #[arg(long)]
    pub dirac: Option<PathBuf>,
    /// Laplace spectrum JSON; the square of the Dirac spectrum when absent.
    #[arg(long)]
    pub laplace: Option<PathBuf>,
    /// Volume of the manifold; overrides the spectrum's.
    #[arg(long)]
    pub volume: Option<f64>,
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_stop: Option<f64>,
    /// Number of log-spaced heat times.
    #[arg(long)]
    pub t_count: Option<usize>,
    #[command(flatten)]
    pub rep: RepArgs,
    #[command(flatten)]
    pub plancherel: PlancherelArgs,
    #[command(flatten)]
    pub growth: GrowthArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random cases per suite.
    #[arg(long)]
    pub cases: Option<usize>,
    /// Feed a parity-violating spectrum to the parity suite.
    #[arg(long)]
    pub inject_violation: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ContinueArgs {
    /// Dirac spectrum JSON.
    #[arg(long)]
    pub dirac: Option<PathBuf>,
    /// Laplace spectrum JSON checked for parity; the square of the Dirac spectrum when absent.
    #[arg(long)]
    pub laplace: Option<PathBuf>,
    /// Volume of the manifold.
    #[arg(long)]
    pub volume: Option<f64>,
    /// selberg, super or symmetrized.
    #[arg(long)]
    pub kind: Option<String>,
    /// Point where log S is normalized, as re,im.
    #[arg(long, allow_hyphen_values = true)]
    pub anchor: Option<Pair>,
    /// Value of log S at the anchor, as re,im.
    #[arg(long, allow_hyphen_values = true)]
    pub anchor_log: Option<Pair>,
    /// Clearance kept between integration paths and singularities.
    #[arg(long)]
    pub detour_radius: Option<f64>,
    /// Also write the singularity catalog JSON here when evaluating a grid.
    #[arg(long)]
    pub catalog_output: Option<PathBuf>,
    #[command(flatten)]
    pub rep: RepArgs,
    #[command(flatten)]
    pub grid: SGridArgs,
    #[command(flatten)]
    pub plancherel: PlancherelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Length spectrum JSON.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    #[command(flatten)]
    pub growth: GrowthArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
