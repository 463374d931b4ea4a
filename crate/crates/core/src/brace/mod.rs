//! Skew braces by transport along `ξ`, and their Yang–Baxter solutions.

pub mod skew;
pub mod ybe;

pub use skew::{
    transport_brace, transport_brace_with, verify_brace, BraceCheck, BraceReport, CheckMode, SkewBrace,
    BRACE_EXHAUSTIVE_LIMIT, BRACE_SAMPLE_TRIPLES, BRACE_SEED, SOUNDNESS_PAIRS, TABLE_LIMIT,
};
pub use ybe::{check_solution, yb_solution, YbMap, YbReport, YbTables, YBE_EXHAUSTIVE_LIMIT, YBE_SAMPLE_TRIPLES};
