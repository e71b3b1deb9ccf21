use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zerodist_core::{Error, FamilySpec, Precision};

mod commands;
mod output;

use output::{Format, Sink};

#[derive(Parser, Debug)]
#[command(name = "zerodist", version, about = "Zeros of orthogonal polynomials and their limiting distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write a gnuplot script next to the output file (`<out>.gp`).
    #[arg(long, global = true)]
    plot: bool,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

/// Family and solver settings shared by the zero-based subcommands.
#[derive(Args, Debug, Clone)]
pub struct Solve {
    /// hermite, charlier:a=V, meixner:beta=V,c=V or mp:lambda=V,phi=V (radians).
    #[arg(long, value_parser = parse_family)]
    pub family: FamilySpec,

    /// Degree of the polynomial.
    #[arg(long)]
    pub n: usize,

    /// Absolute bisection tolerance; without it zeros are polished to full precision.
    #[arg(long)]
    pub tol: Option<f64>,

    /// double, dd or multi.
    #[arg(long, value_parser = parse_precision)]
    pub precision: Option<Precision>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zeros as `k,x_k,z_k`.
    Zeros(Solve),
    /// Limiting density on a grid: `z,rho,ln_chi`.
    Density {
        #[arg(long, value_parser = parse_family)]
        family: FamilySpec,
        #[arg(long, default_value_t = 0.01)]
        grid: f64,
    },
    /// KS distance and extreme zeros against the limiting density.
    Compare {
        #[command(flatten)]
        solve: Solve,
        #[arg(long, default_value_t = 0.03)]
        ks_max: f64,
        #[arg(long, default_value_t = 0.02)]
        edge_max: f64,
    },
    /// Residuals of the sum rule (Hermite) or the product identities.
    Bethe {
        #[command(flatten)]
        solve: Solve,
        #[arg(long, value_enum, default_value = "exact")]
        identity: commands::Identity,
        #[arg(long, default_value_t = 1e-8)]
        max_residual: f64,
    },
    /// Gap-deviation ratios against the closed-form rate.
    Chi {
        #[command(flatten)]
        solve: Solve,
        /// Consecutive gap ratios averaged per output row.
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
    /// Moments of the limiting law against normalized traces, or against
    /// quadrature of the density when `--a/--b/--gamma` are given.
    Moments {
        #[arg(long, value_parser = parse_family, conflicts_with_all = ["a", "b", "gamma"])]
        family: Option<FamilySpec>,
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, requires_all = ["b", "gamma"])]
        a: Option<f64>,
        #[arg(long, requires_all = ["a", "gamma"])]
        b: Option<f64>,
        #[arg(long, requires_all = ["a", "b"])]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Largest allowed relative error (default 0.02 for traces, 1e-6 for quadrature).
        #[arg(long)]
        max_error: Option<f64>,
    },
    /// Density of the class `(a, b, gamma)` on a grid: `z,rho`.
    Nudensity {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.01)]
        grid: f64,
    },
}

fn parse_family(s: &str) -> Result<FamilySpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_precision(s: &str) -> Result<Precision, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// How a run ended, mapped to the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// A check exceeded its threshold (exit 1).
    Verification(String),
    /// Bad input detected after parsing (exit 2).
    Usage(String),
    /// The computation itself failed (exit 3).
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::FamilyParse { .. }
            | Error::UnsupportedFamily { .. }
            | Error::IndexOutOfRange { .. }
            | Error::DegenerateParameters { .. }
            | Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numeric(format!("i/o error: {e}"))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let Common { format, out, plot, threads } = cli.common;
    if plot && out.is_none() {
        return Err(Failure::Usage("--plot needs --out".into()));
    }
    if plot && format != Format::Csv {
        return Err(Failure::Usage("--plot needs --format csv".into()));
    }
    if let Some(t) = threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let sink = Sink { format, out, plot };
    let (table, verdict) = match cli.command {
        Command::Zeros(solve) => (commands::zeros(&solve)?, Ok(())),
        Command::Density { family, grid } => (commands::density(&family, grid)?, Ok(())),
        Command::Compare { solve, ks_max, edge_max } => commands::compare(&solve, ks_max, edge_max)?,
        Command::Bethe { solve, identity, max_residual } => commands::bethe(&solve, identity, max_residual)?,
        Command::Chi { solve, window } => (commands::chi(&solve, window)?, Ok(())),
        Command::Moments { family, n, a, b, gamma, kmax, max_error } => {
            let source = match (family, a, b, gamma) {
                (Some(f), None, None, None) => commands::MomentSource::Trace(f, n),
                (None, Some(a), Some(b), Some(g)) => commands::MomentSource::Quadrature(a, b, g),
                _ => return Err(Failure::Usage("give either --family or all of --a, --b, --gamma".into())),
            };
            commands::moments(source, kmax, max_error)?
        }
        Command::Nudensity { a, b, gamma, grid } => (commands::nudensity(a, b, gamma, grid)?, Ok(())),
    };
    sink.emit(&table)?;
    verdict.map_err(Failure::Verification)
}

fn main() -> ExitCode {
    // clap reports usage errors itself, with exit code 2
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Verification(m) => (1, "verification failed", m),
                Failure::Usage(m) => (2, "usage error", m),
                Failure::Numeric(m) => (3, "numeric failure", m),
            };
            eprintln!("zerodist: {kind}: {msg}");
            ExitCode::from(code)
        }
    }
}
