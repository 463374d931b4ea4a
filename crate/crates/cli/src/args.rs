use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use brace_forge::brace::{BraceCheck, BRACE_SAMPLE_TRIPLES, BRACE_SEED};
use brace_forge::search::{CACHE_ENV, SUBGROUP_LIMIT};

#[derive(Debug, Parser)]
#[command(name = "brace-forge", version, about = "Solvable realizations, skew braces and their certificates")]
pub struct Cli {
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realize PSL2(q) by a solvable group and check everything downstream
    Psl2 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        brace: BraceArgs,
    },
    /// Build a regular subgroup from a factorization certificate or search result
    Realize {
        #[arg(long)]
        factorization: PathBuf,
        /// which certificate of a search result to use
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, value_enum, default_value_t = ConstructionArg::Auto)]
        construction: ConstructionArg,
        /// Code 4 only: scan every automorphism of A and B, not just generators
        #[arg(long)]
        full_scan: bool,
        /// add brace and Yang–Baxter checks to the certificate
        #[arg(long)]
        with_brace: bool,
        #[command(flatten)]
        brace: BraceArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Factorization searches
    Search {
        #[arg(value_enum)]
        code: SearchCode,
        #[command(flatten)]
        group: GroupArgs,
        /// automorphism group record `{kind, group}` acting on N (code2, code3)
        #[arg(long)]
        aut: Option<PathBuf>,
        /// code3: also report pairs with nontrivial intersection
        #[arg(long)]
        allow_nonexact: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the skew brace of a realization certificate
    Brace {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        brace: BraceArgs,
    },
    /// Export the Yang–Baxter solution of a brace certificate
    Ybe {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay every invariant of a certificate
    VerifyCert {
        file: PathBuf,
    },
    /// Recompute the instance table
    Table {
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        /// PSL2 field sizes
        #[arg(long, value_delimiter = ',', default_values_t = [4u64, 5, 7, 8, 9, 11, 13])]
        q: Vec<u64>,
        /// skip the PSL(3,3) and M11 rows
        #[arg(long)]
        no_code1: bool,
        #[command(flatten)]
        brace: BraceArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GroupArgs {
    /// group record `{degree, generators}`
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// built-in group, e.g. PSL(3,3), M11, PSL2(7), S4, D4
    #[arg(long)]
    pub named: Option<String>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// largest group order the subgroup enumeration accepts
    #[arg(long, default_value_t = SUBGROUP_LIMIT)]
    pub max_order: u64,
    #[arg(long, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BraceArgs {
    #[arg(long, value_enum, default_value_t = BraceMode::Auto)]
    pub brace_mode: BraceMode,
    /// sampled mode: number of triples
    #[arg(long, default_value_t = BRACE_SAMPLE_TRIPLES)]
    pub triples: u64,
    /// sampled mode: RNG seed
    #[arg(long, default_value_t = BRACE_SEED)]
    pub seed: u64,
}

impl BraceArgs {
    pub fn check(&self) -> BraceCheck {
        match self.brace_mode {
            BraceMode::Auto => BraceCheck::Auto,
            BraceMode::Exhaustive => BraceCheck::Exhaustive,
            BraceMode::Sampled => BraceCheck::Sampled {
                triples: self.triples,
                seed: self.seed,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BraceMode {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    Auto,
    Prop24,
    Prop27,
    Code4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchCode {
    Code1,
    Code2,
    Code3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
}
