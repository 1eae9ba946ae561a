//! `mrl`: Möbius sums, Riesz means and zero-sum identities from the shell.
//!
//! Exit codes: 0 success, 2 bad arguments or domain error, 3 missing
//! resource (no zero table), 4 unsupported parameter.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;
use config::{OutputFormat, PrecisionMode, RunConfig, DEFAULT_L, DEFAULT_T};

#[derive(Parser, Debug)]
#[command(name = "mrl", version, about = "Mertens function, Riesz means and sums over zeta zeros")]
struct Cli {
    /// Ordinate file (one γ per line) or "builtin" for the internal finder.
    #[arg(long, env = "MRL_ZEROS", global = true)]
    zeros: Option<String>,
    /// Directory for the zero table and Mertens checkpoint caches.
    #[arg(long, env = "MRL_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, env = "MRL_PRECISION", value_enum, default_value = "double", global = true)]
    precision: PrecisionMode,
    #[arg(long, env = "MRL_FORMAT", value_enum, default_value = "csv", global = true)]
    format: OutputFormat,
    /// Zero cutoff: sums run over 0 < γ <= T.
    #[arg(long = "T", env = "MRL_T", default_value_t = DEFAULT_T, global = true)]
    t: f64,
    /// Residue cutoff for the trivial-zero series.
    #[arg(long = "L", env = "MRL_L", default_value_t = DEFAULT_L, global = true)]
    l: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// M(x) = Σ_{n<=x} μ(n).
    Mertens { x: u64 },
    /// Riesz mean M_τ(x).
    Riesz {
        x: f64,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
    },
    /// ∫₁ˣ M(u)u^{−κ}du, or ∫₁ˣ(M(u)/u)²du with --weak.
    Integral {
        x: f64,
        #[arg(long, default_value_t = 0.0)]
        kappa: f64,
        #[arg(long)]
        weak: bool,
    },
    /// Explicit formula for M_τ(x) over the zero table.
    Explicit {
        #[arg(required = true, num_args = 1..)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// Also sieve M_τ(x) and report the difference.
        #[arg(long)]
        compare: bool,
    },
    /// Identities and aggregates over the zeros (JSON report).
    Identity(IdentityArgs),
    /// Grid scans (CSV).
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
    /// List the zero table, or check it against the Riemann–von Mangoldt count.
    Zeros {
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IdentityKind {
    InvZeta,
    AConst,
    ZetaReal,
    Swmh,
    ImConst,
    Jsum,
    Hko,
    IntegralM,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(value_enum)]
    kind: IdentityKind,
    /// Real part of s (inv-zeta).
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    s: f64,
    /// Imaginary part of s (inv-zeta).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    s_im: f64,
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    kappa: f64,
    #[arg(long, default_value_t = 1e6)]
    x: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = mrl_core::analytics::DEFAULT_PRIME_CUTOFF)]
    prime_cutoff: u64,
    #[arg(long, default_value_t = mrl_core::analytics::DEFAULT_G_TERMS)]
    g_terms: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScheduleName {
    Constant,
    InverseLog,
    Aszc,
}

#[derive(Subcommand, Debug)]
enum ScanKind {
    /// M_τ(x)/√x along a τ schedule over a log grid of x.
    TauRegime {
        #[arg(long, default_value_t = 10.0)]
        from: f64,
        #[arg(long, default_value_t = 1e6)]
        to: f64,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, value_enum, default_value = "constant")]
        schedule: ScheduleName,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Logarithmic density of {t : |M(t)| <= c√t} up to X.
    Density {
        #[arg(long = "X", default_value_t = 1e6)]
        x: f64,
        #[arg(long, default_value_t = 1)]
        grid: usize,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Sign changes of (∫₁ˣM(u)u^{−κ}du − offset)/x^{3/2−κ}.
    #[command(name = "divIM-sign")]
    DivimSign {
        #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
        kappa: f64,
        #[arg(long = "X", default_value_t = 1e6)]
        x: f64,
        #[arg(long, default_value_t = 100)]
        keep: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        zeros: cli.zeros,
        cache_dir: cli.cache_dir,
        precision: cli.precision,
        format: cli.format,
        t: cli.t,
        l: cli.l,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = commands::run(&cfg, cli.command, &mut out).and_then(|()| out.flush().map_err(Into::into));
    match result {
        Ok(()) | Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mrl: {}", e.message());
            ExitCode::from(e.code() as u8)
        }
    }
}
