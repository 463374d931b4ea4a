//! Solvable subgroup enumeration and factorization searches.

pub mod cache;
pub mod code4;
pub mod factor;
pub mod psu38;
pub mod subgroups;

pub use code4::{code4_generator_scan, code4_part1, code4_part2, code4_search, AutScan, Code4Pair, KernelPair};
pub use cache::{solvable_subgroups_cached, SubgroupCache, CACHE_ENV};
pub use factor::{
    code2_in, code2_search, code3_search, exact_factorization_search, overgroups_of_inn, Code3Tuple,
    FactorizationCert, SearchConfig,
};
pub use subgroups::{
    solvable_subgroups, solvable_subgroups_with_limit, OrderFilter, SubgroupClass, SubgroupList, SUBGROUP_LIMIT,
};
