//! Finite fields, 2×2 matrix groups and the projective line constructions.

pub mod complement;
pub mod field;
pub mod linear;

pub use complement::complement;
pub use field::{field, prime_power, FieldRecord, FieldSpec};
pub use linear::{
    borel_subgroup, det_index2_subgroups, gl2, pgammal2, pgl2, pgl2_exact_factorization, pgl2_order, psl2,
    psl2_order, reduction_hom, singer_data, singer_subgroup, DetIndex2, Mat2, Pgl2Factorization, SingerData,
};
