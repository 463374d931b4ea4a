//! Small library of named permutation groups.

use crate::error::{Error, Result};
use crate::matgrp::linear::{sl2_generators, vec_perm};
use crate::matgrp::{field, pgl2, psl2};
use crate::perm_core::{FinGroup, Perm};
use crate::record::GroupRecord;

fn from_images(gens: &[&[u32]], degree: usize) -> FinGroup {
    let gens = gens.iter().map(|g| Perm::from_images(g.to_vec()).unwrap()).collect();
    FinGroup::from_generators(gens, degree).unwrap()
}

/// `PSL(3,3)` on the 13 points of the projective plane over `F₃`.
pub fn psl3_3() -> FinGroup {
    from_images(
        &[
            &[0, 7, 8, 9, 4, 5, 6, 10, 12, 11, 1, 3, 2],
            &[4, 0, 5, 6, 1, 7, 10, 2, 8, 12, 3, 9, 11],
        ],
        13,
    )
}

/// Mathieu group `M₁₁` on 11 points.
pub fn m11() -> FinGroup {
    from_images(
        &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0], &[0, 1, 6, 9, 5, 3, 10, 2, 8, 4, 7]],
        11,
    )
}

/// `SL₂(3)` on the 8 nonzero vectors of `F₃²`.
pub fn sl2_3() -> FinGroup {
    let f = field(3).unwrap();
    let gens = sl2_generators(&f).iter().map(|m| vec_perm(&f, m)).collect();
    FinGroup::from_generators(gens, 8).unwrap()
}

/// Quaternion group of order 8, inside [`sl2_3`].
pub fn quaternion8() -> FinGroup {
    sl2_3().derived_subgroup()
}

/// Klein four-group on 4 points.
pub fn klein4() -> FinGroup {
    from_images(&[&[1, 0, 3, 2], &[2, 3, 0, 1]], 4)
}

fn parse_num(s: &str) -> Option<u64> {
    s.parse().ok().filter(|&n| n > 0)
}

fn parse_q(name: &str, prefix: &str) -> Option<u64> {
    name.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
}

/// Looks up a group by name.
///
/// Accepted: `C<n>`, `D<n>` (dihedral of order `2n`), `S<n>`, `A<n>`,
/// `V4`, `Q8`, `SL2(3)`, `PSL2(<q>)`, `PGL2(<q>)`, `PSL(3,3)`, `M11`.
pub fn named_group(name: &str) -> Result<FinGroup> {
    let bad = || Error::Schema(format!("unknown group name {name:?}"));
    let upper = name.trim().to_ascii_uppercase();
    let g = match upper.as_str() {
        "V4" => klein4(),
        "Q8" => quaternion8(),
        "SL2(3)" => sl2_3(),
        "PSL(3,3)" | "L3(3)" => psl3_3(),
        "M11" => m11(),
        _ => {
            if let Some(q) = parse_q(&upper, "PSL2(") {
                psl2(&field(q)?)?
            } else if let Some(q) = parse_q(&upper, "PGL2(") {
                pgl2(&field(q)?)?
            } else {
                let (head, tail) = upper.split_at(1);
                let n = parse_num(tail).ok_or_else(bad)? as usize;
                match head {
                    "C" => FinGroup::cyclic(n),
                    "D" if n >= 3 => FinGroup::dihedral(n),
                    "S" => FinGroup::symmetric(n),
                    "A" if n >= 3 => FinGroup::alternating(n),
                    _ => return Err(bad()),
                }
            }
        }
    };
    Ok(g)
}

pub fn named_record(name: &str) -> Result<GroupRecord> {
    Ok(GroupRecord::named(&named_group(name)?, name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (name, order) in [
            ("C6", 6),
            ("D4", 8),
            ("D5", 10),
            ("S4", 24),
            ("A5", 60),
            ("V4", 4),
            ("Q8", 8),
            ("SL2(3)", 24),
            ("PSL2(7)", 168),
            ("PGL2(5)", 120),
            ("PSL(3,3)", 5616),
            ("M11", 7920),
        ] {
            assert_eq!(named_group(name).unwrap().order(), order, "{name}");
        }
        assert!(named_group("X9").is_err());
        assert!(named_group("D2").is_err());
    }

    #[test]
    fn sl2_3_is_not_s4() {
        let g = sl2_3();
        assert_eq!(g.center().order(), 2);
        assert!(g.is_solvable());
        assert!(!quaternion8().is_abelian());
    }
}
