//! The holomorph `Hol(N) = ρ(N) ⋊ Aut(N)`, regular subgroups and their
//! decomposition into `(f, g, h)`.

pub mod aut;
pub mod hol;
pub mod regular;

pub use aut::{AutGroup, AutKind, BRUTE_FORCE_AUT_LIMIT};
pub use hol::{HolElem, HolGroup, HOLOMORPH_LIMIT};
pub use regular::{
    decompose, is_regular, trace_delta, validate_prop22, DeltaTrace, ProductCheck, Prop22Report, RegularSubgroup,
    RegularSubgroupCert,
};
