//! The `dsfaces` command line: dumps of the structured matrices, bases and
//! subspaces, f/h-vectors of face-system files, lattice-point enumeration,
//! Table-4 reproduction and the identity suites.
//!
//! Exit codes: 0 success, 1 identity or verification failure, 2 input error,
//! 3 resource cap exceeded.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Default worker count for enumeration.
pub const WORKERS_ENV: &str = "DSFACES_WORKERS";
/// Largest `m` accepted by the enumeration commands.
pub const MAX_M_ENV: &str = "DSFACES_MAX_M";
pub const DEFAULT_MAX_M: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "dsfaces", version, about = "Exact Dehn-Sommerville toolkit for face systems in a simplex")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct WorkerArgs {
    /// Enumeration threads. Output does not depend on this.
    #[arg(long, env = WORKERS_ENV, default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    /// Scan the binomial box with the h-vector test.
    Box,
    /// Scan every face system of 2^[m].
    Powerset,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump U, T, I, S, S_inv or D of size (m+1)x(m+1).
    Matrix {
        name: String,
        #[arg(long)]
        m: usize,
    },
    /// Characteristic polynomial of U(m), checked against its closed forms.
    Charpoly {
        #[arg(long)]
        m: usize,
    },
    /// Long and classical f/h-vectors and the DS verdict of a face-system file.
    Vectors {
        /// JSON document {"m": .., "faces": [[..], ..]} with 1-based elements.
        #[arg(long)]
        faces: PathBuf,
    },
    /// One of the bases S, Hbullet, Fup, Hup, Fdown, Hdown.
    Basis {
        kind: String,
        #[arg(long)]
        m: usize,
    },
    /// Exact coordinates of a vector in one of the bases.
    Coords {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        m: usize,
        /// Comma-separated entries, e.g. 1,0,-1/2.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Closed-form coordinates of the boundary-complex vectors, next to the
    /// exact values.
    Table1 {
        #[arg(long)]
        m: usize,
        /// Restrict to f or h.
        #[arg(long)]
        vector: Option<String>,
        /// Restrict to one basis.
        #[arg(long)]
        basis: Option<String>,
        /// Use the corrected form of the f-bar row in the Fdown basis.
        #[arg(long)]
        corrected: bool,
    },
    /// Spanning sets of E^h, H, E^f, F, the vector pi and the cone generators.
    Spaces {
        #[arg(long)]
        m: usize,
    },
    /// Orthogonal projector onto H(m) or F(m), or a rank-1 projector.
    Projector {
        /// h (onto H) or f (onto F).
        which: String,
        #[arg(long)]
        m: usize,
        /// Project onto the single boundary vector with this k instead.
        #[arg(long)]
        rank1: Option<usize>,
        /// Use the corrected closed form for rank-1 f entries.
        #[arg(long)]
        corrected: bool,
    },
    /// Norm closed forms and biorthogonality of the boundary h-vectors.
    Norms {
        #[arg(long)]
        m: usize,
    },
    /// Exact membership of a rational point in Qf, Pf, Qh or Pi.
    Contains {
        polytope: String,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Distinct DS long f-vectors of 2^[m] by parity class.
    Enumerate {
        #[arg(long)]
        m: usize,
        /// matching, opposite or all.
        #[arg(long, default_value = "matching")]
        class: String,
        #[arg(long)]
        count_only: bool,
        /// Also total the number of face systems behind the vectors.
        #[arg(long)]
        multiplicities: bool,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// Lattice points of {x : x D(m) = x, 0 <= x <= b}.
    Lattice {
        #[arg(long)]
        m: usize,
        /// Comma-separated box b_0..b_m; defaults to the binomial box.
        #[arg(long)]
        bounds: Option<String>,
        /// Report the points in h-coordinates (x S(m)).
        #[arg(long)]
        h: bool,
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// The counts of DS long f-vectors per parity class for m = min..max.
    Table4 {
        #[arg(long, default_value_t = 2)]
        min_m: usize,
        #[arg(long, default_value_t = 10)]
        max_m: usize,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// Brute-force DS f-vectors, compared with the enumerator.
    Oracle {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = OracleKind::Box)]
        kind: OracleKind,
    },
    /// Generating-function identity for the DS f-vectors of 2^[m].
    Genfun {
        #[arg(long)]
        m: usize,
    },
    /// Run identity suites over a range of m.
    Verify {
        /// spectra, tables, faces, bases, spaces, polytopes, projectors,
        /// prism, genfun, oracle, enumeration or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// A single m or a range a..b (inclusive).
        #[arg(long)]
        m: String,
        /// Use the corrected forms of the two closed forms that disagree
        /// with exact computation.
        #[arg(long)]
        corrected: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Internal(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(s) | CliError::Cap(s) | CliError::Internal(s) => s,
        }
    }
}

impl From<dsfaces::Error> for CliError {
    fn from(e: dsfaces::Error) -> Self {
        use dsfaces::Error as E;
        match e {
            E::ScanTooLarge { .. } | E::Overflow(_) => CliError::Cap(e.to_string()),
            E::Singular | E::NotSquare { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Result of one invocation: what to print and how to exit.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    run_config(&config)
}

pub fn run_config(config: &RunConfig) -> Outcome {
    let result = commands::dispatch(config).and_then(|(body, code)| match &config.output {
        Some(path) => std::fs::write(path, body)
            .map(|_| (String::new(), code))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => Ok((body, code)),
    });
    match result {
        Ok((stdout, code)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message()),
        },
    }
}
