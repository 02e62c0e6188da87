use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub(crate) const VERSION_TEXT: &str = concat!(env!("CARGO_PKG_VERSION"), " (presentation grammar 1)");

#[derive(Debug, Parser)]
#[command(name = "cc-growth", version = VERSION_TEXT, arg_required_else_help = true)]
#[command(about = "Rips-construction groups, Dehn's algorithm and conjugacy growth experiments")]
pub(crate) struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub(crate) enum Cmd {
    /// Parse a presentation and print it in normal form.
    Parse {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metric small cancellation check, JSON report.
    ScCheck {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, default_value = "1/6")]
        lambda: String,
        /// Treat the file as Q and check its Rips presentation.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value = "complete")]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Rips presentation of G from Q.
    RipsGen {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "complete")]
        mode: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dehn-reduce a word; exit 0 trivial, 1 non-trivial, 2 undecided.
    Dehn {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Exact lengths of powers of the central commutator.
    Heisenberg {
        #[arg(long)]
        n_max: u64,
        /// Defaults to the smallest radius containing every sampled power.
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Growth curve n -> ln ||Φ^n(c)|| for Φ = χ(q).
    Growth {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        n_max: i64,
        #[arg(long, default_value = "counts")]
        mode: String,
        #[arg(long)]
        csv: PathBuf,
        /// Ball radius of the exact Q metric; chosen from n_max when absent.
        #[arg(long)]
        q_radius: Option<u32>,
        /// Enables the exact N-norm oracle column at this search radius.
        #[arg(long)]
        oracle_radius: Option<usize>,
    },
    /// Check the length-function axioms for ceil(|n|^alpha).
    Lenfun {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        rmax: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth of a class in a product of Rips kernels, one factor per --k.
    ProductGrowth {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, required = true)]
        k: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// One component per factor; an empty string is the identity.
        #[arg(long, allow_hyphen_values = true, required = true)]
        class: Vec<String>,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        q_radius: Option<u32>,
    },
    /// Lipschitz displacement bracket of χ(q).
    Lip {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub(crate) fn parse_cli<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}
