//! IO, file formats and the command-line front end for `linkinv-core`.

pub mod commands;
pub mod error;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use linkinv_core::linalg::cyclotomic::DEFAULT_PRECISION_BITS;
use linkinv_core::linalg::inertia::SIGN_SEPARATION_TOL;
use linkinv_core::linalg::Rat;
use linkinv_core::signatures::ProfileOptions;

pub use error::{exit, CliError, Result};

/// Link invariants of integer Seifert forms.
#[derive(Debug, Parser)]
#[command(name = "linkinv", version)]
pub struct Cli {
    /// Relative eigenvalue separation below which a sign counts as undecided.
    #[arg(long, global = true, default_value_t = SIGN_SEPARATION_TOL, value_parser = parse_tol)]
    pub tol: f64,
    /// Bits of precision for enclosures of irrational angles.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_BITS, value_parser = clap::value_parser!(u32).range(16..=4096))]
    pub precision: u32,
    /// Also evaluate the classical curve inequality (n = 1 only).
    #[arg(long, global = true)]
    pub strict: bool,
    /// Write the result here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// μ, n, ε, n₀, Alexander polynomial and eigenvalue angles as JSON.
    Invariants {
        /// Seifert matrix JSON file, `-` for stdin, or a catalog name.
        input: String,
    },
    /// Signature and nullity profile as CSV.
    Profile {
        input: String,
        /// Extra sample points in (0, 1), e.g. `1/3,0.25`.
        #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
        grid: Vec<Rat>,
        /// Adds the points k/N for 0 < k < N.
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=100_000))]
        steps: Option<u32>,
    },
    /// Mod-2 spectrum as JSON.
    Spectrum { input: String },
    /// Semicontinuity scenario; exit 0 holds, 1 fails, 4 vacuous.
    Check {
        /// Scenario JSON file or `-` for stdin.
        scenario: String,
    },
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t > 0.0 && t < 1.0 {
        Ok(t)
    } else {
        Err(format!("tolerance must lie in (0, 1), got {s}"))
    }
}

fn parse_alpha(s: &str) -> std::result::Result<Rat, String> {
    input::parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

impl Cli {
    pub fn profile_options(&self) -> ProfileOptions {
        ProfileOptions { evaluate_jumps: false, precision_bits: self.precision, tolerance: self.tol }
    }

    /// Runs the command and writes its output; returns the exit code.
    pub fn execute(&self) -> Result<i32> {
        let opts = self.profile_options();
        if self.strict && !matches!(self.command, Command::Check { .. }) {
            return Err(CliError::Usage("--strict applies to check only".into()));
        }
        let outcome = match &self.command {
            Command::Invariants { input } => commands::invariants(&input::load_matrix(input)?, &opts)?,
            Command::Profile { input, grid, steps } => {
                let mut points = grid.clone();
                if let Some(n) = steps {
                    points.extend((1..*n).map(|k| Rat::new(k.into(), (*n).into())));
                }
                commands::profile(&input::load_matrix(input)?, &points, &opts)?
            }
            Command::Spectrum { input } => commands::spectrum(&input::load_matrix(input)?, &opts)?,
            Command::Check { scenario } => {
                let v = input::parse_json(&input::read_source(scenario)?, scenario)?;
                commands::check(&input::parse_scenario(&v, scenario)?, &opts, self.strict)?
            }
        };
        output::emit(&outcome.text, self.out.as_deref())?;
        Ok(outcome.code)
    }
}

/// Parses arguments, runs, reports errors on stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::INPUT } else { exit::HOLDS };
        }
    };
    match cli.execute() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
