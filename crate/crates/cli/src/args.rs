use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sumprod_core::sumprod::{parse_rational, DEFAULT_EXHAUSTIVE_LIMIT};
use sumprod_core::Rational;

#[derive(Parser, Debug)]
#[command(name = "sumprod", version, about = "Sum-product experiments over prime fields")]
pub struct Cli {
    /// Output encoding for tables and records.
    #[arg(long, global = true, value_enum, default_value_t = Format::JsonLines)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Append-only result cache.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads for the searches.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    JsonLines,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate f(alpha) with its minimizing l and branch.
    Falpha(FalphaArgs),
    /// Search for sets minimizing max(|A+A|, |A.A|).
    Search(SearchArgs),
    /// Build [1, N] cap H for the index-l multiplicative subgroup H.
    Construct(ConstructArgs),
    /// Regularize each set of a set file and report the popular-sum superset.
    Regularity(RegularityArgs),
    /// Run a named invariant suite, or `all`.
    Verify(VerifyArgs),
}

pub fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct FalphaArgs {
    /// Explicit values, comma separated; `a/b` and decimals accepted.
    #[arg(long, value_delimiter = ',', value_parser = rational, conflicts_with = "from")]
    pub alpha: Vec<Rational>,
    /// Start of an inclusive range.
    #[arg(long, value_parser = rational, requires_all = ["to", "step"])]
    pub from: Option<Rational>,
    #[arg(long, value_parser = rational, requires = "from")]
    pub to: Option<Rational>,
    #[arg(long, value_parser = rational, requires = "from")]
    pub step: Option<Rational>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Primes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    /// Density floor; sets need at least ceil(alpha p) elements.
    #[arg(long, value_parser = rational)]
    pub alpha: Rational,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,
    /// Largest prime the exhaustive search accepts.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    pub limit: u64,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub ell: u64,
    /// Sets N = ceil(l alpha p).
    #[arg(long, value_parser = rational, required_unless_present = "n", conflicts_with = "n")]
    pub alpha: Option<Rational>,
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Args, Debug)]
pub struct RegularityArgs {
    /// One set per line: `p=<prime>;elems=...` or `p=<prime>;hexbits=...`.
    pub set_file: PathBuf,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, value_parser = rational)]
    pub eps: Rational,
    /// Energy increment floor c0.
    #[arg(long)]
    pub c0: Option<f64>,
    /// Correlation floor c1.
    #[arg(long)]
    pub c1: Option<f64>,
    /// Arc length constant c in l = c delta^2.
    #[arg(long)]
    pub arc_constant: Option<f64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: String,
}
