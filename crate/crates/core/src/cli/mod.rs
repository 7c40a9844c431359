//! Command-line runner: norm reports, verification suites and Poisson solves
//! written as CSV or JSON tables.

mod commands;
mod table;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use crate::error::{Error, Result};
use crate::potential::SourceKind;

pub use table::{render, Row, CSV_HEADER};

/// Tolerance on `rel_err` for rows gated by a Monte Carlo estimate.
pub const MC_TOL: f64 = 1e-2;
/// Tolerance on `rel_err` for rows comparing a closed form with deterministic quadrature.
pub const CLOSED_FORM_TOL: f64 = 1e-8;
pub const DEFAULT_SAMPLES: usize = 200_000;
pub const DEFAULT_T_GRID: usize = 64;
pub const DEFAULT_SEED: u64 = 7;
pub const SEED_ENV: &str = "BALLGREEN_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// `‖𝒢 : L^p → L^∞‖` against sup_x (∫ G(x,y)^q dy)^{1/q}
    NormLinf,
    /// `‖𝒢 : L^p → L^p‖` bounds, endpoint norms and numeric witnesses
    NormLp,
    /// Radial profile I(t): value at 0 and location of its maximum
    Lemma2,
    /// ∫ G(x,y)^q dy at |x| = t by deterministic and Monte Carlo routes
    GreenQ,
    /// u = -𝒢[g] on a radial line against the closed-form solution
    Solve,
    /// First Dirichlet eigenvalue against the eigen relation of 𝒢
    Lambda1,
    /// Property batteries
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Specfun,
    Geometry,
    Quadrature,
    Norms,
    Potential,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    #[value(name = "const_one")]
    ConstOne,
    #[value(name = "coord_1")]
    Coord1,
    Phi1,
}

impl From<Source> for SourceKind {
    fn from(s: Source) -> Self {
        match s {
            Source::ConstOne => SourceKind::ConstOne,
            Source::Coord1 => SourceKind::Coord1,
            Source::Phi1 => SourceKind::Phi1,
        }
    }
}

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(
    name = "ballgreen",
    version,
    about = "Green operator of the Dirichlet Laplacian on the unit ball"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Dimension n >= 3 (verify: restrict dimension-dependent checks to n)
    #[arg(long)]
    pub n: Option<usize>,
    /// Exponent p in (1, ∞]
    #[arg(long, conflicts_with = "q")]
    pub p: Option<f64>,
    /// Conjugate exponent q in [1, ∞)
    #[arg(long)]
    pub q: Option<f64>,
    /// Radius |x| for green-q
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// Radial grid size for sup scans and solve
    #[arg(long, default_value_t = DEFAULT_T_GRID)]
    pub t_grid: usize,
    /// Monte Carlo samples per estimate
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Override every rel_err tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (stdout when absent)
    #[arg(long = "out")]
    pub out_path: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Source term for solve
    #[arg(long, value_enum, default_value_t = Source::ConstOne)]
    pub source: Source,
    /// Record wall-clock time per row (output is then not reproducible)
    #[arg(long)]
    pub timing: bool,
}

/// Validated run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub t: f64,
    pub t_grid: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub format: Format,
    pub out_path: Option<PathBuf>,
    pub suite: Suite,
    pub source: Source,
    pub timing: bool,
}

impl RunConfig {
    /// Defaults for `command`, as the command line would give them.
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            p: None,
            q: None,
            t: 0.0,
            t_grid: DEFAULT_T_GRID,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tol: None,
            format: Format::Csv,
            out_path: None,
            suite: Suite::All,
            source: Source::ConstOne,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.n {
            if n < 3 {
                return Err(Error::InvalidParameter(format!("n must be >= 3, got {n}")));
            }
        }
        if self.samples < 1000 {
            return Err(Error::InvalidParameter(format!(
                "samples must be >= 1000, got {}",
                self.samples
            )));
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "tol must be positive, got {tol}"
                )));
            }
        }
        if self.t_grid < 2 {
            return Err(Error::InvalidParameter(
                "t-grid needs at least 2 points".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.t) {
            return Err(Error::Domain(format!(
                "t must lie in [0, 1), got {}",
                self.t
            )));
        }
        Ok(())
    }

    pub(crate) fn mc_tol(&self) -> f64 {
        self.tol.unwrap_or(MC_TOL)
    }

    pub(crate) fn closed_tol(&self) -> f64 {
        self.tol.unwrap_or(CLOSED_FORM_TOL)
    }
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        Self {
            command: c.command,
            n: c.n,
            p: c.p,
            q: c.q,
            t: c.t,
            t_grid: c.t_grid,
            samples: c.samples,
            seed: c.seed,
            tol: c.tol,
            format: c.format,
            out_path: c.out_path,
            suite: c.suite,
            source: c.source,
            timing: c.timing,
        }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Computes the table rows of a run.
pub fn execute(config: &RunConfig) -> Result<Vec<Row>> {
    config.validate()?;
    let start = Instant::now();
    let mut rows = match config.command {
        Command::NormLinf => commands::norm_linf(config)?,
        Command::NormLp => commands::norm_lp(config)?,
        Command::Lemma2 => commands::lemma2(config)?,
        Command::GreenQ => commands::green_q(config)?,
        Command::Solve => commands::solve(config)?,
        Command::Lambda1 => commands::lambda1(config)?,
        Command::Verify => verify::run_suite(config)?,
    };
    for r in &mut rows {
        r.seed = config.seed;
    }
    if config.timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        for r in &mut rows {
            r.runtime_ms = ms;
        }
    }
    Ok(rows)
}

/// Runs a configuration end to end and returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    let rows = match execute(config) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("ballgreen: {e}");
            return EXIT_INVALID;
        }
    };
    let text = render(&rows, config.format);
    let written = match &config.out_path {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("ballgreen: cannot write output: {e}");
        return EXIT_INVALID;
    }
    if rows.iter().all(|r| r.passed) {
        EXIT_PASS
    } else {
        for r in rows.iter().filter(|r| !r.passed) {
            eprintln!(
                "ballgreen: failed {} (n = {}, rel_err = {:e})",
                r.quantity, r.n, r.rel_err
            );
        }
        EXIT_TOLERANCE
    }
}
