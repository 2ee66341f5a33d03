//! `prosaic`: command-line front end for prosaic-core.

mod commands;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use prosaic_core::FamilyKind;

use report::Emit;

/// Largest prime bound any command accepts.
pub const MAX_BOUND: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "prosaic",
    version,
    about = "Prime classification, dihedral F2-modules and genus-2 families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    pub emit: Emit,
    /// Worker threads for parallel commands.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Capacity guard on prime ranges (at most 10^7).
    #[arg(long, default_value_t = MAX_BOUND, global = true)]
    pub bound: u64,
    /// JSON file holding computed (h, h2) pairs.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Seed for commands that draw random input.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// P1/P3/P1* labels of the primes ≡ 1 mod 8 in a range.
    Classify {
        /// `HI` or `LO..HI`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
    },
    /// Class number and 2-part h2 of Q(√−p).
    H2 {
        /// A single prime.
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Whether a dimension g is allowed by the class-group bound at p.
    Feasibility {
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        /// Dimension; defaults to the largest one the bound allows.
        #[arg(long)]
        g: Option<u32>,
    },
    /// The module Λ_k with exponent 2^e.
    Lambda {
        k: usize,
        #[arg(long, default_value_t = 0)]
        e: u32,
    },
    /// Obstruction for Φ-blocs of length d inside Ξ with given h2.
    PhiBound {
        #[arg(long)]
        h2: u64,
        #[arg(long, default_value_t = 16)]
        max_d: usize,
    },
    /// Split a balanced module into Φ-blocs.
    Decompose {
        /// Module JSON file, `-` for standard input.
        input: Option<PathBuf>,
        /// Instead of reading input, plant random blocs up to this dimension.
        #[arg(long, conflicts_with = "input")]
        random_dim: Option<usize>,
    },
    /// One member of a curve family.
    Family {
        #[arg(value_parser = parse_kind)]
        kind: FamilyKind,
        #[arg(allow_hyphen_values = true)]
        p1: i64,
        #[arg(allow_hyphen_values = true)]
        p2: i64,
    },
    /// Richelot partner of a family member or of the conductor-1797 curve.
    Richelot {
        /// `ab1`, `ex2`, `mild` or `1797`.
        target: String,
        #[arg(allow_hyphen_values = true)]
        p1: Option<i64>,
        #[arg(allow_hyphen_values = true)]
        p2: Option<i64>,
    },
    /// Recompute every row of the golden tables.
    VerifyTables {
        /// Directory holding ab1.csv, ex2.csv, mild.csv, rm.csv; defaults to the built-in copies.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Write the built-in tables to this directory and exit.
        #[arg(long, conflicts_with = "dir")]
        export: Option<PathBuf>,
    },
    /// Family members with prime (m, n) on a parameter grid.
    SearchPairs {
        #[arg(value_parser = parse_kind)]
        kind: FamilyKind,
        /// Two ranges `LO..HI`, one per parameter.
        #[arg(long, allow_hyphen_values = true, num_args = 1, required = true)]
        range: Vec<String>,
    },
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    s.to_ascii_uppercase()
        .parse()
        .map_err(|e: prosaic_core::Error| e.to_string())
}

/// Failure carried to `main`: a stable code and an exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub status: u8,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: "USAGE_ERROR",
            message: msg.into(),
            status: 2,
        }
    }
}

impl From<prosaic_core::Error> for Failure {
    fn from(e: prosaic_core::Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
            status: 1,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: "IO_ERROR",
            message: e.to_string(),
            status: 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = commands::run(&cli);
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let result = out.and_then(|(report, status)| {
        report.write(cli.global.emit, &mut lock)?;
        lock.flush()?;
        Ok(status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(f.status)
        }
    }
}
