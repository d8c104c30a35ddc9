//! `kiselman`: enumerate, count, verify and export.
//!
//! Exit codes: 0 success, 1 verification failure or disagreement,
//! 2 usage error, 3 resource guard exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::TypedValueParser as _;
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "kiselman",
    version,
    about = "Kiselman's semigroup and its endomorphism monoid"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format (table by default, json for export).
    #[arg(long, short = 'f', global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for parallel searches (0 picks automatically).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Cap on the number of elements enumerated in K_n.
    #[arg(long, global = true, env = "KISELMAN_MAX_ELEMENTS",
          default_value_t = kiselman::kiselman::DEFAULT_MAX_ELEMENTS,
          value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    pub max_elements: usize,
    /// Cap on the number of rules produced by completion.
    #[arg(long, global = true, env = "KISELMAN_MAX_RULES",
          default_value_t = kiselman::kiselman::DEFAULT_MAX_RULES,
          value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    pub max_rules: usize,
    /// Largest m·n scanned by brute-force counting.
    #[arg(long, global = true, env = "KISELMAN_GUARD_BITS",
          value_parser = clap::value_parser!(u64).range(1..=64).map(|v| v as usize))]
    pub guard_bits: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the elements of K_n by normal form.
    Elements {
        #[arg(short, value_parser = rank)]
        n: usize,
        #[arg(long)]
        idempotents_only: bool,
    },
    /// List End(K_n) as image tuples, monotone sequences and matrices.
    Endos {
        #[arg(short, value_parser = rank)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Monotone)]
        method: Method,
    },
    /// Count m×n matrices avoiding [[0,1],[1,0]] by formula and by search.
    Count(CountArgs),
    /// Run the property suites.
    Verify {
        /// Largest rank checked.
        #[arg(short, value_parser = rank, default_value_t = 3)]
        n: usize,
        /// Restrict to these suites (repeatable).
        #[arg(long, value_enum)]
        suite: Vec<SuiteArg>,
        /// Samples per check once exhaustive search exceeds its budget.
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = kiselman::verify::DEFAULT_SEED)]
        seed: u64,
        /// Omit the timing fields so reports compare byte for byte.
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Write Cayley tables or listings.
    Export {
        #[arg(short, value_parser = rank)]
        n: usize,
        #[arg(long, value_enum)]
        what: ExportWhat,
    },
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(short, value_parser = rank, required_unless_present = "grid", conflicts_with = "grid")]
    pub m: Option<usize>,
    #[arg(short, value_parser = rank, required_unless_present = "grid", conflicts_with = "grid")]
    pub n: Option<usize>,
    /// Every (m, n) with m·n up to --max-bits.
    #[arg(long)]
    pub grid: bool,
    #[arg(long, requires = "grid", default_value_t = 20)]
    pub max_bits: usize,
    /// Skip the closed formula (allows any number of rows).
    #[arg(long, conflicts_with = "closed_only")]
    pub brute_only: bool,
    /// Skip the exhaustive search.
    #[arg(long)]
    pub closed_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Monotone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Kiselman,
    Monotone,
    Boolmat,
    Units,
    Morphisms,
    Counting,
}

impl From<SuiteArg> for kiselman::Suite {
    fn from(s: SuiteArg) -> Self {
        use kiselman::Suite;
        match s {
            SuiteArg::Kiselman => Suite::Kiselman,
            SuiteArg::Monotone => Suite::Monotone,
            SuiteArg::Boolmat => Suite::Boolmat,
            SuiteArg::Units => Suite::Units,
            SuiteArg::Morphisms => Suite::Morphisms,
            SuiteArg::Counting => Suite::Counting,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    KnTable,
    DnTable,
    Endos,
    Elements,
    Rules,
}

fn rank(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 || n > kiselman::subset::MAX_INDEX {
        return Err(format!(
            "must be between 1 and {}",
            kiselman::subset::MAX_INDEX
        ));
    }
    Ok(n)
}

/// Why a command did not succeed, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    /// Results were produced, but a check or comparison failed.
    Check(String),
    Usage(String),
    Lib(kiselman::Error),
    Io(std::io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        use kiselman::Error as E;
        match self {
            Failure::Check(_) | Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Lib(
                E::GuardExceeded { .. }
                | E::ElementLimitExceeded { .. }
                | E::RuleLimitExceeded { .. },
            ) => 3,
            Failure::Lib(E::InvalidRank { .. } | E::UnsupportedRows { .. }) => 2,
            Failure::Lib(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Check(m) | Failure::Usage(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<kiselman::Error> for Failure {
    fn from(e: kiselman::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global();
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("kiselman: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
