use serde::{Deserialize, Serialize};

use super::field::{prime_factors, FieldSpec};
use crate::error::{Error, Result};
use crate::perm_core::{hom_from_images, FinGroup, GroupHom, HomVerify, Perm};

/// 2×2 matrix `[[m[0], m[1]], [m[2], m[3]]]` over an encoded field.
pub type Mat2 = [u32; 4];

pub fn mat_mul(f: &FieldSpec, a: &Mat2, b: &Mat2) -> Mat2 {
    [
        f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
        f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
        f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
        f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
    ]
}

pub fn det(f: &FieldSpec, m: &Mat2) -> u32 {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

pub fn mat_identity() -> Mat2 {
    [1, 0, 0, 1]
}

pub fn mat_pow(f: &FieldSpec, m: &Mat2, mut k: u64) -> Mat2 {
    let mut acc = mat_identity();
    let mut base = *m;
    while k > 0 {
        if k & 1 == 1 {
            acc = mat_mul(f, &acc, &base);
        }
        base = mat_mul(f, &base, &base);
        k >>= 1;
    }
    acc
}

/// `M (x, y)ᵀ`
pub fn mat_apply(f: &FieldSpec, m: &Mat2, v: (u32, u32)) -> (u32, u32) {
    (
        f.add(f.mul(m[0], v.0), f.mul(m[1], v.1)),
        f.add(f.mul(m[2], v.0), f.mul(m[3], v.1)),
    )
}

/// Index of the projective point of a nonzero vector: `[1 : y] ↦ y`,
/// `[0 : 1] ↦ q`.
pub fn proj_index(f: &FieldSpec, v: (u32, u32)) -> usize {
    if v.0 == 0 {
        f.q() as usize
    } else {
        f.mul(v.1, f.inv(v.0).unwrap()) as usize
    }
}

pub fn proj_point(f: &FieldSpec, i: usize) -> (u32, u32) {
    if i == f.q() as usize {
        (0, 1)
    } else {
        (1, i as u32)
    }
}

/// Index of a nonzero vector among the `q² − 1` nonzero vectors.
pub fn vec_index(f: &FieldSpec, v: (u32, u32)) -> usize {
    (v.0 + f.q() * v.1) as usize - 1
}

pub fn vec_point(f: &FieldSpec, i: usize) -> (u32, u32) {
    let k = i as u32 + 1;
    (k % f.q(), k / f.q())
}

/// Action of an invertible matrix on the projective line.
pub fn proj_perm(f: &FieldSpec, m: &Mat2) -> Perm {
    let n = f.q() as usize + 1;
    let images: Vec<usize> = (0..n)
        .map(|i| proj_index(f, mat_apply(f, m, proj_point(f, i))))
        .collect();
    Perm::from_usize(&images).expect("invertible matrix")
}

/// Action of an invertible matrix on the nonzero vectors.
pub fn vec_perm(f: &FieldSpec, m: &Mat2) -> Perm {
    let n = (f.q() * f.q()) as usize - 1;
    let images: Vec<usize> = (0..n)
        .map(|i| vec_index(f, mat_apply(f, m, vec_point(f, i))))
        .collect();
    Perm::from_usize(&images).expect("invertible matrix")
}

/// Coordinatewise Frobenius on the projective line.
pub fn frobenius_proj_perm(f: &FieldSpec) -> Perm {
    let n = f.q() as usize + 1;
    let images: Vec<usize> = (0..n)
        .map(|i| {
            let (x, y) = proj_point(f, i);
            proj_index(f, (f.frobenius(x), f.frobenius(y)))
        })
        .collect();
    Perm::from_usize(&images).unwrap()
}

/// The generator `β` of `F_{q²}^×` and its minimal polynomial `X² + cX + d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingerData {
    /// `β = x + yβ` coordinates, always `(0, 1)`.
    pub beta: (u32, u32),
    pub c: u32,
    pub d: u32,
    pub companion: Mat2,
}

/// `(x1 + y1 β)(x2 + y2 β)` using `β² = −d − cβ`.
pub fn f2_mul(f: &FieldSpec, c: u32, d: u32, a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
    let yy = f.mul(a.1, b.1);
    (
        f.sub(f.mul(a.0, b.0), f.mul(d, yy)),
        f.sub(f.add(f.mul(a.0, b.1), f.mul(b.0, a.1)), f.mul(c, yy)),
    )
}

fn f2_pow(f: &FieldSpec, c: u32, d: u32, a: (u32, u32), mut k: u64) -> (u32, u32) {
    let mut acc = (1, 0);
    let mut base = a;
    while k > 0 {
        if k & 1 == 1 {
            acc = f2_mul(f, c, d, acc, base);
        }
        base = f2_mul(f, c, d, base, base);
        k >>= 1;
    }
    acc
}

/// Matrix of multiplication by `x + yβ`: `[[x, −dy], [y, x − cy]]`.
pub fn singer_matrix(f: &FieldSpec, s: &SingerData, v: (u32, u32)) -> Mat2 {
    let (x, y) = v;
    [x, f.neg(f.mul(s.d, y)), y, f.sub(x, f.mul(s.c, y))]
}

/// Least `(c, d)`, ordered by `c·q + d`, such that `X² + cX + d` is the
/// minimal polynomial of a generator of `F_{q²}^×`.
pub fn singer_data(f: &FieldSpec) -> SingerData {
    let q = f.q() as u64;
    let n = q * q - 1;
    let primes = prime_factors(n);
    for c in 0..f.q() {
        for d in 1..f.q() {
            let has_root = f
                .elements()
                .any(|x| f.add(f.add(f.mul(x, x), f.mul(c, x)), d) == 0);
            if has_root {
                continue;
            }
            let primitive = primes
                .iter()
                .all(|&r| f2_pow(f, c, d, (0, 1), n / r) != (1, 0));
            if primitive {
                return SingerData {
                    beta: (0, 1),
                    c,
                    d,
                    companion: [0, f.neg(d), 1, f.neg(c)],
                };
            }
        }
    }
    unreachable!("F_q² has a primitive element")
}

fn check_q(q: u64) -> Result<()> {
    if q == 2 || q == 3 {
        return Err(Error::ExcludedQ(q));
    }
    Ok(())
}

fn diag(a: u32, b: u32) -> Mat2 {
    [a, 0, 0, b]
}

fn upper(a: u32) -> Mat2 {
    [1, a, 0, 1]
}

/// Generators of `GL₂(q)`: `diag(ω, 1)`, upper unitriangular matrices over
/// an additive basis, and `[[0, −1], [1, 0]]`.
pub fn gl2_generators(f: &FieldSpec) -> Vec<Mat2> {
    let mut gens = vec![diag(f.primitive(), 1)];
    gens.extend(sl2_generators(f));
    gens
}

/// Generators of `SL₂(q)`.
pub fn sl2_generators(f: &FieldSpec) -> Vec<Mat2> {
    let mut gens: Vec<Mat2> = f.additive_basis().into_iter().map(upper).collect();
    gens.push([0, f.neg(1), 1, 0]);
    gens
}

/// Generators of the upper triangular group `B̃`.
pub fn borel_generators(f: &FieldSpec) -> Vec<Mat2> {
    let w = f.primitive();
    let mut gens = vec![diag(w, 1), diag(1, w)];
    gens.extend(f.additive_basis().into_iter().map(upper));
    gens
}

fn vec_group(f: &FieldSpec, mats: &[Mat2]) -> FinGroup {
    let degree = (f.q() * f.q()) as usize - 1;
    FinGroup::from_generators(mats.iter().map(|m| vec_perm(f, m)).collect(), degree).unwrap()
}

fn proj_group(f: &FieldSpec, mats: &[Mat2]) -> FinGroup {
    let degree = f.q() as usize + 1;
    FinGroup::from_generators(mats.iter().map(|m| proj_perm(f, m)).collect(), degree).unwrap()
}

/// `GL₂(q)` acting on the nonzero vectors of `F_q²`.
pub fn gl2(f: &FieldSpec) -> FinGroup {
    vec_group(f, &gl2_generators(f))
}

/// Singer cycle `Ã ≤ GL₂(q)` on nonzero vectors.
pub fn singer_subgroup(f: &FieldSpec) -> (SingerData, FinGroup) {
    let s = singer_data(f);
    let g = vec_group(f, &[s.companion]);
    (s, g)
}

/// Upper triangular `B̃ ≤ GL₂(q)` on nonzero vectors.
pub fn borel_subgroup(f: &FieldSpec) -> FinGroup {
    vec_group(f, &borel_generators(f))
}

/// `PGL₂(q)` on the `q + 1` projective points.
pub fn pgl2(f: &FieldSpec) -> Result<FinGroup> {
    check_q(f.q() as u64)?;
    Ok(proj_group(f, &gl2_generators(f)))
}

/// `PSL₂(q)` on the `q + 1` projective points.
pub fn psl2(f: &FieldSpec) -> Result<FinGroup> {
    check_q(f.q() as u64)?;
    Ok(proj_group(f, &sl2_generators(f)))
}

/// `PΓL₂(q)`: `PGL₂(q)` extended by the coordinatewise Frobenius.
pub fn pgammal2(f: &FieldSpec) -> Result<FinGroup> {
    let pgl = pgl2(f)?;
    Ok(pgl.join(&[frobenius_proj_perm(f)]))
}

/// Reduction `GL₂(q) → PGL₂(q)` on generators.
pub fn reduction_hom(f: &FieldSpec) -> Result<GroupHom> {
    let gl = gl2(f);
    let pgl = pgl2(f)?;
    let images = gl2_generators(f).iter().map(|m| proj_perm(f, m)).collect();
    hom_from_images(&gl, &pgl, images, HomVerify::Auto)
}

pub fn pgl2_order(q: u64) -> u64 {
    q * (q - 1) * (q + 1)
}

pub fn psl2_order(q: u64) -> u64 {
    pgl2_order(q) / crate::perm_core::perm::gcd(2, q - 1)
}

/// `PGL₂(q) = AB` with `A = Ã/Z` cyclic and `B = B̃/Z`.
#[derive(Clone, Debug)]
pub struct Pgl2Factorization {
    pub singer: SingerData,
    pub pgl2: FinGroup,
    pub a: FinGroup,
    pub b: FinGroup,
}

pub fn pgl2_exact_factorization(f: &FieldSpec) -> Result<Pgl2Factorization> {
    let q = f.q() as u64;
    let pgl = pgl2(f)?;
    let singer = singer_data(f);
    let a = proj_group(f, &[singer.companion]);
    let b = proj_group(f, &borel_generators(f));
    if a.order() != q + 1 || b.order() != q * (q - 1) {
        return Err(Error::NotExactFactorization(format!(
            "|A| = {}, |B| = {}",
            a.order(),
            b.order()
        )));
    }
    let meet = a.intersection(&b);
    if !meet.is_trivial() || a.order() * b.order() != pgl.order() {
        return Err(Error::NotExactFactorization(format!(
            "|A ∩ B| = {}, |A||B| = {}, |PGL₂| = {}",
            meet.order(),
            a.order() * b.order(),
            pgl.order()
        )));
    }
    Ok(Pgl2Factorization {
        singer,
        pgl2: pgl,
        a,
        b,
    })
}

/// `A₀ = A ∩ PSL₂(q)` and `B₀ = B ∩ PSL₂(q)` for odd `q`.
#[derive(Clone, Debug)]
pub struct DetIndex2 {
    pub psl2: FinGroup,
    pub a0: FinGroup,
    pub b0: FinGroup,
}

pub fn det_index2_subgroups(f: &FieldSpec, fac: &Pgl2Factorization) -> Result<DetIndex2> {
    let q = f.q() as u64;
    if q.is_multiple_of(2) {
        return Err(Error::EvenQ(q));
    }
    let psl = psl2(f)?;
    let a0 = fac.a.intersection(&psl);
    let b0 = fac.b.intersection(&psl);
    if fac.a.order() != 2 * a0.order() || fac.b.order() != 2 * b0.order() {
        return Err(Error::Precondition(format!(
            "[A : A₀] = {}, [B : B₀] = {}",
            fac.a.order() / a0.order(),
            fac.b.order() / b0.order()
        )));
    }
    let a_psl = psl.join(fac.a.generators());
    let b_psl = psl.join(fac.b.generators());
    if a_psl != b_psl {
        return Err(Error::Precondition("A·PSL₂(q) ≠ B·PSL₂(q)".into()));
    }
    Ok(DetIndex2 { psl2: psl, a0, b0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::field::field;

    #[test]
    fn singer_invariants() {
        for q in [4u64, 5, 7, 8, 9, 11, 13] {
            let f = field(q).unwrap();
            let s = singer_data(&f);
            // β² = −d − cβ
            assert_eq!(
                f2_mul(&f, s.c, s.d, s.beta, s.beta),
                (f.neg(s.d), f.neg(s.c))
            );
            assert_eq!(f.order(s.d), q - 1, "d generates F_q^× for q = {q}");
            assert_eq!(det(&f, &s.companion), s.d);
            let m = s.companion;
            assert_eq!(mat_pow(&f, &m, q * q - 1), mat_identity());
            for r in prime_factors(q * q - 1) {
                assert_ne!(mat_pow(&f, &m, (q * q - 1) / r), mat_identity());
            }
        }
    }

    #[test]
    fn singer_correspondence_is_multiplicative() {
        for q in [4u64, 5, 7, 8] {
            let f = field(q).unwrap();
            let s = singer_data(&f);
            let nonzero: Vec<(u32, u32)> = (0..f.q())
                .flat_map(|x| (0..f.q()).map(move |y| (x, y)))
                .filter(|&v| v != (0, 0))
                .collect();
            for &a in &nonzero {
                for &b in &nonzero {
                    let lhs = singer_matrix(&f, &s, f2_mul(&f, s.c, s.d, a, b));
                    let rhs = mat_mul(&f, &singer_matrix(&f, &s, a), &singer_matrix(&f, &s, b));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn matrix_group_orders() {
        for q in [4u64, 5, 7] {
            let f = field(q).unwrap();
            assert_eq!(gl2(&f).order(), q * (q - 1) * (q * q - 1));
            let (_, a) = singer_subgroup(&f);
            assert_eq!(a.order(), q * q - 1);
            assert_eq!(a.generators().len(), 1);
            let b = borel_subgroup(&f);
            assert_eq!(b.order(), q * (q - 1) * (q - 1));
            // Ã ∩ B̃ is the group of scalars
            let meet = a.intersection(&b);
            assert_eq!(meet.order(), q - 1);
            assert_eq!(meet, gl2(&f).center());
        }
    }

    #[test]
    fn borel_fixes_the_first_point() {
        let f = field(7).unwrap();
        for m in borel_generators(&f) {
            assert_eq!(proj_perm(&f, &m).apply(0), 0);
        }
    }

    #[test]
    fn projective_group_orders() {
        for q in [4u64, 5, 7, 8, 9, 11, 13] {
            let f = field(q).unwrap();
            let pgl = pgl2(&f).unwrap();
            let psl = psl2(&f).unwrap();
            assert_eq!(pgl.order(), pgl2_order(q));
            assert_eq!(psl.order(), psl2_order(q));
            assert!(psl.is_normal_in(&pgl));
            let e = f.e() as u64;
            assert_eq!(pgammal2(&f).unwrap().order(), pgl2_order(q) * e);
        }
        assert_eq!(psl2_order(5), 60);
        assert_eq!(psl2_order(7), 168);
    }

    #[test]
    fn pgl2_is_two_transitive() {
        let f = field(9).unwrap();
        let pgl = pgl2(&f).unwrap();
        assert!(pgl.is_transitive());
        let stab = pgl.filter_subgroup(|g| g.apply(0) == 0);
        assert_eq!(stab.orbit(1).len(), f.q() as usize);
    }

    #[test]
    fn excluded_q() {
        let f = field(3).unwrap();
        assert!(matches!(psl2(&f), Err(Error::ExcludedQ(3))));
    }

    #[test]
    fn reduction_map() {
        let f = field(5).unwrap();
        let r = reduction_hom(&f).unwrap();
        assert!(r.is_surjective());
        assert_eq!(r.kernel().order(), 4);
    }

    #[test]
    fn factorization_orders() {
        for (q, a, b) in [(4u64, 5, 12), (7, 8, 42), (9, 10, 72)] {
            let fac = pgl2_exact_factorization(&field(q).unwrap()).unwrap();
            assert_eq!((fac.a.order(), fac.b.order()), (a, b));
            assert!(fac.a.is_solvable() && fac.b.is_solvable());
        }
    }

    #[test]
    fn index_two_pieces() {
        for (q, a0, b0) in [(5u64, 3, 10), (7, 4, 21), (13, 7, 78)] {
            let f = field(q).unwrap();
            let fac = pgl2_exact_factorization(&f).unwrap();
            let d = det_index2_subgroups(&f, &fac).unwrap();
            assert_eq!((d.a0.order(), d.b0.order()), (a0, b0));
            // elements of nonsquare determinant class lie outside PSL₂
            let s = &fac.singer;
            assert!(!f.is_square(det(&f, &s.companion)));
            assert!(!d.psl2.contains(&proj_perm(&f, &s.companion)));
            let w = diag(f.primitive(), 1);
            assert!(!f.is_square(det(&f, &w)));
            assert!(!d.psl2.contains(&proj_perm(&f, &w)));
        }
        let f = field(8).unwrap();
        let fac = pgl2_exact_factorization(&f).unwrap();
        assert!(matches!(det_index2_subgroups(&f, &fac), Err(Error::EvenQ(8))));
    }
}
