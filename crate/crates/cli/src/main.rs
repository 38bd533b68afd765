//! `staircase-kit`: numerical semigroups, valuation ideals, conductor
//! staircases and reduction certificates from the command line.
//!
//! Exit codes: 0 success, 1 a check or certificate failed, 2 bad usage or
//! unparseable input.

mod certs;
mod inspect;
mod output;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::{render_report, render_rows, Format};
use sweep::{Check, Family, SweepSpec};

const THREADS_VAR: &str = "STAIRCASE_KIT_THREADS";

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input; exit 2.
    Usage(String),
    /// A semantic failure; `output` still goes to stdout. Exit 1.
    Failed { output: String, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "staircase-kit", version, about = "Numerical semigroup rings, conductor staircases and reduction certificates")]
struct Cli {
    /// Suppress the version banner and summaries on stderr
    #[arg(long, global = true)]
    quiet: bool,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Numerical semigroup queries
    Sgp {
        #[command(subcommand)]
        command: SgpCommand,
    },
    /// Sweep a semigroup family, comparing closed forms with brute force
    Check {
        #[arg(long, value_enum, default_value_t = Family::Arithmetic)]
        family: Family,
        /// Largest `a` in the sweep (default 30 for arithmetic, 40 for two-generator)
        #[arg(long)]
        a_max: Option<u64>,
        /// Comma-separated checks (default: all that apply to the family)
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
    },
    /// Arithmetic of monomial ideals given as "gens=.. @ sgp=.."
    Ideal {
        #[command(subcommand)]
        command: IdealCommand,
    },
    /// Monomial staircases
    Stair {
        #[command(subcommand)]
        command: StairCommand,
    },
    /// Reduce a staircase to (x, y) and emit a certificate, or fuzz the engine
    Reduce {
        /// Relation ring, e.g. "a=5,b=3,sign=-"
        #[arg(long, required_unless_present = "fuzz", conflicts_with = "fuzz")]
        ring: Option<String>,
        /// Staircase generators, e.g. "3,0;1,1;0,2"
        #[arg(long, required_unless_present = "fuzz", conflicts_with = "fuzz")]
        ideal: Option<String>,
        /// Certificate path (must end in .redcert.json); stdout if omitted
        #[arg(long, conflicts_with = "fuzz")]
        out: Option<PathBuf>,
        /// Reduce and verify this many random staircases instead
        #[arg(long)]
        fuzz: Option<usize>,
        /// Seed for --fuzz
        #[arg(long, default_value_t = 0, requires = "fuzz")]
        seed: u64,
        /// Largest ring exponent for --fuzz
        #[arg(long, default_value_t = 12, requires = "fuzz", value_parser = clap::value_parser!(u32).range(2..=64))]
        a_max: u32,
    },
    /// Check a certificate file; exit 0 iff it is valid
    Verify { path: PathBuf },
}

#[derive(Debug, Subcommand)]
enum SgpCommand {
    /// Minimal generators, conductor, Frobenius number, gaps and Apéry set
    Info {
        /// Comma-separated generators, e.g. "5,6"
        generators: String,
    },
}

#[derive(Debug, Subcommand)]
enum IdealCommand {
    /// n-th power
    Power { ideal: String, n: u64 },
    /// Colon ideal I : J inside the semigroup ring
    Colon { ideal: String, divisor: String },
    /// Whether the value set is a full tail {n >= v}
    Stable { ideal: String },
}

#[derive(Debug, Subcommand)]
enum StairCommand {
    /// Staircase of the conductor ideal of k[[t^b, t^a]], coprime a > b >= 2
    Conductor { a: u64, b: u64 },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::usage(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot configure threads: {e}")))
}

fn summarize(passed: usize, total: usize, what: &str) -> Result<String, String> {
    if passed == total {
        Ok(format!("{passed} of {total} {what} passed"))
    } else {
        Err(format!("{} of {total} {what} failed", total - passed))
    }
}

fn run(cli: &Cli) -> Result<(String, Option<String>), CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Sgp { command: SgpCommand::Info { generators } } => {
            Ok((render_report(format, &inspect::semigroup_info(generators)?), None))
        }
        Command::Check { family, a_max, checks } => {
            let a_max = a_max.unwrap_or(match family {
                Family::Arithmetic => 30,
                Family::TwoGenerator => 40,
            });
            let checks = if checks.is_empty() { family.default_checks() } else { checks.clone() };
            let spec = SweepSpec::new(*family, a_max, checks).map_err(CliError::Usage)?;
            let rows = sweep::run(&spec);
            let text = render_rows(format, &rows);
            match summarize(rows.iter().filter(|r| r.pass).count(), rows.len(), "rows") {
                Ok(summary) => Ok((text, Some(summary))),
                Err(message) => Err(CliError::Failed { output: text, message }),
            }
        }
        Command::Ideal { command } => {
            let text = match command {
                IdealCommand::Power { ideal, n } => render_report(format, &inspect::ideal_power(ideal, *n)?),
                IdealCommand::Colon { ideal, divisor } => render_report(format, &inspect::ideal_colon(ideal, divisor)?),
                IdealCommand::Stable { ideal } => render_report(format, &inspect::ideal_stable(ideal)?),
            };
            Ok((text, None))
        }
        Command::Stair { command: StairCommand::Conductor { a, b } } => {
            Ok((render_report(format, &inspect::conductor_staircase(*a, *b)?), None))
        }
        Command::Reduce { fuzz: Some(count), seed, a_max, .. } => {
            let rows = certs::fuzz(*count, *seed, *a_max);
            let text = render_rows(format, &rows);
            match summarize(rows.iter().filter(|r| r.valid).count(), rows.len(), "certificates") {
                Ok(summary) => Ok((text, Some(summary))),
                Err(message) => Err(CliError::Failed { output: text, message }),
            }
        }
        Command::Reduce { ring, ideal, out, .. } => {
            let (ring, ideal) = ring.as_deref().zip(ideal.as_deref()).ok_or_else(|| CliError::usage("reduce needs --ring and --ideal"))?;
            Ok((certs::reduce(ring, ideal, out.as_deref())?, None))
        }
        Command::Verify { path } => Ok((certs::verify_file(path, format)?, None)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if !cli.quiet {
        eprintln!("staircase-kit {}", env!("CARGO_PKG_VERSION"));
    }
    let result = configure_threads().and_then(|()| run(&cli));
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok((text, summary)) => {
            let _ = stdout.write_all(text.as_bytes());
            if let (Some(s), false) = (summary, cli.quiet) {
                eprintln!("{s}");
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Failed { output, message }) => {
            let _ = stdout.write_all(output.as_bytes());
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
