//! `monarith`: factorization invariants of finitely presented monoids.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "monarith",
    version,
    about = "Factorization invariants of finitely presented monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Atoms inside the search box
    Atoms,
    /// All factorizations of --target
    Factorize,
    /// Set of lengths of --target
    Lengths,
    /// Distances of --target, or a lower bound for the distance set of the monoid
    Delta,
    /// Exact elasticity with a witness relation
    Elasticity,
    /// Unions of sets of lengths for k in --k
    Unions,
    /// Decompose --set as an almost arithmetical progression
    Aap,
    /// Class semigroup table over the box
    ClassTable,
    /// Essential supports, simplicity and primes with a power in the monoid
    Essential,
    /// Merge primes lying in the same class
    Transfer,
    /// Per-k structure report on unions of sets of lengths
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Atoms => "atoms",
            Command::Factorize => "factorize",
            Command::Lengths => "lengths",
            Command::Delta => "delta",
            Command::Elasticity => "elasticity",
            Command::Unions => "unions",
            Command::Aap => "aap",
            Command::ClassTable => "class-table",
            Command::Essential => "essential",
            Command::Transfer => "transfer",
            Command::Report => "report",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Opts {
    /// JSON monoid presentation
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the result here (plus `<out>.manifest.json`) instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Per-prime exponent bound of the search box
    #[arg(long = "box", global = true, default_value_t = 12)]
    pub search_box: u32,
    /// Per-prime depth of the class fingerprint probe
    #[arg(long, global = true, default_value_t = 12)]
    pub probe: u32,
    /// Range of k, as A..B (inclusive)
    #[arg(long, global = true, default_value = "1..10", value_parser = parse_range)]
    pub k: (u32, u32),
    /// Element budget for enumerations
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub budget: usize,
    /// Largest exponent tried when looking for a prime power in the monoid
    #[arg(long, global = true, default_value_t = 64)]
    pub power_bound: u32,
    /// Difference for `aap`
    #[arg(long, global = true)]
    pub d: Option<u32>,
    /// Comma-separated integers for `aap`
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub set: Option<Vec<i64>>,
    /// Comma-separated exponent vector
    #[arg(long, global = true, value_delimiter = ',')]
    pub target: Option<Vec<u32>>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("need 1 <= A <= B, got {a}..{b}"));
    }
    Ok((a, b))
}

/// Outcome of a command run: the payload and whether a budget cut it short.
pub struct Output {
    pub payload: String,
    pub truncated: bool,
}

/// Failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<monarith::Error> for Failure {
    fn from(e: monarith::Error) -> Self {
        let code = if matches!(e, monarith::Error::Internal(_)) {
            1
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if let Some(w) = cli.opts.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .map_err(|e| Failure::input(e.to_string()))?;
    }
    let started = Instant::now();
    let input = match &cli.opts.input {
        Some(path) => {
            Some(std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?)
        }
        None => None,
    };
    let out = commands::dispatch(cli.command, &cli.opts, input.as_deref())?;
    if let Some(path) = &cli.opts.out {
        std::fs::write(path, &out.payload).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let m = manifest::RunManifest::new(cli.command, &cli.opts, input.as_deref(), started.elapsed());
        let mpath = manifest::manifest_path(path);
        std::fs::write(&mpath, m.to_json()).map_err(|e| Failure::input(format!("{}: {e}", mpath.display())))?;
    } else {
        print!("{}", out.payload);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) if out.truncated => {
            eprintln!("warning: element budget exhausted; result truncated");
            ExitCode::from(3)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
