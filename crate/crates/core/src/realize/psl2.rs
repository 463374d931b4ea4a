use super::construct::{realize_exact_factorization, realize_prop27, Construction, RealizationCert};
use crate::error::Result;
use crate::holomorph::{AutGroup, HolGroup};
use crate::matgrp::{field, pgl2_exact_factorization, psl2_order, FieldSpec};

/// A solvable group of order `|PSL₂(q)|` realizing `PSL₂(q)`.
///
/// Even `q`: `PGL₂(q) = PSL₂(q) = AB` and `G = A × B`. Odd `q`: inside
/// `PΓL₂(q)` with `P = PGL₂(q)`, `G = A₀ ⋊ B` for `q ≡ 1 (4)` and
/// `G = B₀ ⋊ A` for `q ≡ 3 (4)`.
pub fn psl2_realize(q: u64) -> Result<RealizationCert> {
    let f = field(q)?;
    psl2_realize_in(&f)
}

pub fn psl2_realize_in(f: &FieldSpec) -> Result<RealizationCert> {
    let q = f.q() as u64;
    let fac = pgl2_exact_factorization(f)?;
    let hol = HolGroup::new(AutGroup::explicit_psl2(f)?)?;
    let mut cert = if q.is_multiple_of(2) {
        let mut c = realize_exact_factorization(&hol, &fac.a, &fac.b)?;
        c.construction = Construction::Psl2Even;
        c
    } else if q % 4 == 1 {
        let mut c = realize_prop27(&hol, &fac.pgl2, &fac.a, &fac.b)?;
        c.construction = Construction::Psl2Q1mod4;
        c
    } else {
        let mut c = realize_prop27(&hol, &fac.pgl2, &fac.b, &fac.a)?;
        c.construction = Construction::Psl2Q3mod4;
        c.role_swap = true;
        c
    };
    cert.q = Some(q);
    debug_assert_eq!(cert.g().order(), psl2_order(q));
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn branches_and_orders() {
        for (q, branch, order) in [
            (4, Construction::Psl2Even, 60),
            (5, Construction::Psl2Q1mod4, 60),
            (7, Construction::Psl2Q3mod4, 168),
        ] {
            let c = psl2_realize(q).unwrap();
            assert_eq!(c.construction, branch);
            assert_eq!(c.g().order(), order);
            assert_eq!(c.n(), order as usize);
            c.check().unwrap();
        }
    }

    #[test]
    fn odd_q_order_bookkeeping() {
        for q in [5u64, 7, 9, 11, 13] {
            let g = if q % 4 == 1 {
                q.div_ceil(2) * q * (q - 1)
            } else {
                q * (q - 1) / 2 * (q + 1)
            };
            assert_eq!(g, psl2_order(q));
        }
    }

    #[test]
    fn q5_semidirect_shape() {
        let c = psl2_realize(5).unwrap();
        let d = c.prop27.as_ref().unwrap();
        assert_eq!(d.a.order(), 6);
        assert_eq!(d.b.order(), 20);
        assert_eq!(d.a0.order(), 3);
        assert_eq!(d.c.order(), 2);
    }

    #[test]
    fn small_q_is_excluded() {
        assert!(matches!(psl2_realize(3), Err(Error::ExcludedQ(3))));
        assert!(matches!(psl2_realize(6), Err(Error::NotPrimePower(6))));
    }
}
