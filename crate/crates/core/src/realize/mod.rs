//! Solvable realizations: exact factorizations of `N`, fixed point free
//! pairs into `Aut(N)`, and the `P = AB` construction, with the `PSL₂(q)`
//! driver.

pub mod conj;
pub mod construct;
pub mod pair;
pub mod psl2;

pub use conj::{
    conj_invariance_check, conj_pair_check, is_product, ConjugationReport, Implication, PairConjugationReport,
};
pub use construct::{
    check_exact_factorization, realize_centerless, realize_exact_factorization, realize_prop27, Construction,
    KernelData, Prop27Data, RealizationCert,
};
pub use pair::{trace_values, FpfPair, FpfReport, PairTarget, FPF_LIMIT};
pub use psl2::{psl2_realize, psl2_realize_in};
