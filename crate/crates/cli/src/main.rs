//! `ncfactor`: generators, checkers, closures, factorization derivation and
//! verification suites over exact rationals.
//!
//! Exit codes: 0 success or true, 1 property false, 2 input error,
//! 3 numeric failure (a singular matrix where an inverse was needed).

mod commands;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncfactor::verify::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "ncfactor", version, about = "Pseudo-roots and DU-completions with exact rational arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format. `gen` and `divisors` default to json, the rest to text.
    #[arg(long, short = 'f', global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Hasse diagram of the subsets of {1..n}.
    Boolean,
    /// Refinement order on the partitions of n.
    Partition,
    /// Hasse diagram of a simplicial complex given by `--faces`.
    Complex,
    /// A generic root set of n random d×d matrices.
    Roots,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a host graph or a generic root set.
    Gen {
        kind: GenKind,
        #[arg(short)]
        n: Option<usize>,
        /// Matrix dimension for `roots`.
        #[arg(short, default_value_t = 2)]
        d: usize,
        /// JSON list of faces for `complex`, e.g. [[1,2],[1],[2],[]].
        #[arg(long)]
        faces: Option<PathBuf>,
    },
    /// Report simplicity, acyclicity, layering, modularity, sources and sinks.
    Check { graph: PathBuf },
    /// DU-completion of an edge set, with the operations that produced it.
    Closure { graph: PathBuf, edgeset: PathBuf },
    /// Whether the completion contains a source-to-sink path.
    Sufficient { graph: PathBuf, edgeset: PathBuf },
    /// Whether the spanned vertex set is ample.
    Ample { graph: PathBuf, edgeset: PathBuf },
    /// Polynomial, pseudo-root table and factorizations of a generic root set.
    Factor {
        rootset: PathBuf,
        /// Root ordering such as `2,1,3`; may be repeated. Defaults to 1,…,n.
        #[arg(long = "ordering")]
        orderings: Vec<String>,
    },
    /// Factor the polynomial determined by a labeled edge set.
    Derive { graph: PathBuf, labeled: PathBuf },
    /// Divisor graph of a monic polynomial over a set of named elements.
    Divisors { poly: PathBuf, labeled: PathBuf },
    /// Run a verification suite, or `all` of them.
    Verify {
        suite: String,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short, default_value_t = 2)]
        d: usize,
        /// Number of random cases for sampled suites.
        #[arg(long)]
        count: Option<usize>,
        /// Host graph for `ample-sufficient`: boolean or partition.
        #[arg(long, default_value = "boolean")]
        host: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
