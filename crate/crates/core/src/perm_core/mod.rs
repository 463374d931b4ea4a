//! Permutation groups: elements, stabilizer chains, homomorphisms,
//! quotients, products and isomorphism testing.

pub mod bits;
pub(crate) mod chain;
pub mod group;
pub mod hom;
pub mod iso;
pub mod perm;
pub mod product;
pub mod quotient;

pub use bits::BitSet;
pub use group::{ElementTable, FinGroup};
pub use hom::{hom_from_images, GroupHom, HomCheck, HomVerify, HOM_EXHAUSTIVE_LIMIT, HOM_SAMPLE_PAIRS, HOM_SAMPLE_SEED};
pub use iso::{invariants, is_isomorphic, GroupInvariants, ISO_LIMIT};
pub use perm::Perm;
pub use product::{
    check_automorphism, conjugation_action, conjugation_action_hom, direct_product, semidirect_product,
    DirectProduct, SemidirectProduct,
};
pub use quotient::{normal_subgroups, normal_subgroups_of_order, quotient, subgroup_bits, ELEMENT_LIMIT};
