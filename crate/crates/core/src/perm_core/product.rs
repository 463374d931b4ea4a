use super::group::{ElementTable, FinGroup};
use super::hom::{hom_from_images, GroupHom, HomVerify};
use super::perm::Perm;
use crate::error::{Error, Result};

/// `A × B` acting on the disjoint union of the two domains.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FinGroup,
    pub left_degree: usize,
    pub right_degree: usize,
}

pub fn direct_product(a: &FinGroup, b: &FinGroup) -> DirectProduct {
    let (da, db) = (a.degree(), b.degree());
    let total = da + db;
    let mut gens: Vec<Perm> = a.generators().iter().map(|g| g.shifted(0, total)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(da, total)));
    DirectProduct {
        group: FinGroup::generated(gens, total),
        left_degree: da,
        right_degree: db,
    }
}

impl DirectProduct {
    pub fn pair(&self, a: &Perm, b: &Perm) -> Perm {
        let total = self.left_degree + self.right_degree;
        a.shifted(0, total).compose(&b.shifted(self.left_degree, total))
    }

    pub fn left(&self, x: &Perm) -> Perm {
        x.restrict(0, self.left_degree)
    }

    pub fn right(&self, x: &Perm) -> Perm {
        x.restrict(self.left_degree, self.right_degree)
    }
}

/// `K ⋊ H` acting faithfully on `K`-element indices followed by the points
/// of `H`: `(k, h)` sends `x ↦ k·α_h(x)` on the first block and acts as `h`
/// on the second.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FinGroup,
    pub k_table: ElementTable,
    pub action: GroupHom,
    pub k_embed: GroupHom,
    pub h_embed: GroupHom,
}

/// Checks that `a` (a permutation of element indices) is an automorphism.
pub fn check_automorphism(table: &ElementTable, a: &Perm) -> Result<()> {
    if a.degree() != table.len() {
        return Err(Error::DegreeMismatch {
            expected: table.len(),
            found: a.degree(),
        });
    }
    if a.apply(0) != 0 {
        return Err(Error::NotAutomorphism("identity is not fixed".into()));
    }
    for s in table.generator_indices() {
        let as_ = a.apply(s);
        for x in 0..table.len() {
            if a.apply(table.mul(x, s)) != table.mul(a.apply(x), as_) {
                return Err(Error::NotAutomorphism(format!(
                    "fails on element {x} and generator {s}"
                )));
            }
        }
    }
    Ok(())
}

/// `action` maps `H` into permutations of `K`'s element table indices.
pub fn semidirect_product(k: &FinGroup, h: &FinGroup, action: &GroupHom) -> Result<SemidirectProduct> {
    let k_table = k.element_table();
    let kn = k_table.len();
    if action.target().degree() != kn {
        return Err(Error::DegreeMismatch {
            expected: kn,
            found: action.target().degree(),
        });
    }
    if action.source() != h {
        return Err(Error::Precondition("action is not defined on H".into()));
    }
    for a in action.gen_images() {
        check_automorphism(&k_table, a)?;
    }
    let dh = h.degree();
    let total = kn + dh;

    let k_gens: Vec<Perm> = k
        .generators()
        .iter()
        .map(|s| {
            let si = k_table.index_of(s).unwrap();
            left_mult(&k_table, si).shifted(0, total)
        })
        .collect();
    let h_gens: Vec<Perm> = h
        .generators()
        .iter()
        .zip(action.gen_images())
        .map(|(hg, a)| a.shifted(0, total).compose(&hg.shifted(kn, total)))
        .collect();
    let mut gens = k_gens.clone();
    gens.extend(h_gens.iter().cloned());
    let group = FinGroup::generated(gens, total);
    if group.order() != k.order() * h.order() {
        return Err(Error::NotAutomorphism(
            "action does not produce a group of order |K||H|".into(),
        ));
    }
    let k_embed = hom_from_images(k, &group, k_gens, HomVerify::Auto)?;
    let h_embed = hom_from_images(h, &group, h_gens, HomVerify::Auto)?;
    Ok(SemidirectProduct {
        group,
        k_table,
        action: action.clone(),
        k_embed,
        h_embed,
    })
}

fn left_mult(table: &ElementTable, k: usize) -> Perm {
    Perm::from_images_unchecked((0..table.len()).map(|x| table.mul(k, x) as u32).collect())
}

impl SemidirectProduct {
    fn k_len(&self) -> usize {
        self.k_table.len()
    }

    /// The element `(k, h)`.
    pub fn element(&self, k: &Perm, h: &Perm) -> Perm {
        let total = self.group.degree();
        let ki = self.k_table.index_of(k).expect("k lies in K");
        let a = self.action.eval(h);
        let first: Vec<u32> = (0..self.k_len())
            .map(|x| self.k_table.mul(ki, a.apply(x)) as u32)
            .collect();
        Perm::from_images_unchecked(first)
            .shifted(0, total)
            .compose(&h.shifted(self.k_len(), total))
    }

    /// `(k, h) ↦ h`
    pub fn h_part(&self, x: &Perm) -> Perm {
        x.restrict(self.k_len(), self.group.degree() - self.k_len())
    }

    /// `(k, h) ↦ k`, read off as the image of the identity of `K`.
    pub fn k_part(&self, x: &Perm) -> Perm {
        self.k_table.element(x.apply(0)).clone()
    }
}

/// Conjugation action of `h` on the element indices of a normal subgroup
/// `k` (both inside a common group).
pub fn conjugation_action(k_table: &ElementTable, h: &Perm) -> Perm {
    let images = k_table
        .elements()
        .iter()
        .map(|x| {
            k_table
                .index_of(&x.conjugate_by(h))
                .expect("conjugation preserves K") as u32
        })
        .collect();
    Perm::from_images_unchecked(images)
}

/// Action of `h` by conjugation, as a homomorphism into `Sym(|K|)`.
pub fn conjugation_action_hom(k_table: &ElementTable, h: &FinGroup) -> Result<GroupHom> {
    let images: Vec<Perm> = h
        .generators()
        .iter()
        .map(|g| conjugation_action(k_table, g))
        .collect();
    let target = FinGroup::generated(images.clone(), k_table.len());
    hom_from_images(h, &target, images, HomVerify::Auto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_core::iso::is_isomorphic;

    #[test]
    fn trivial_action_gives_direct_product() {
        let k = FinGroup::cyclic(3);
        let h = FinGroup::cyclic(4);
        let kn = k.order() as usize;
        let trivial = FinGroup::trivial(kn);
        let action = hom_from_images(&h, &trivial, vec![Perm::identity(kn)], HomVerify::Auto).unwrap();
        let sd = semidirect_product(&k, &h, &action).unwrap();
        assert_eq!(sd.group.order(), 12);
        let dp = direct_product(&k, &h);
        assert!(is_isomorphic(&sd.group, &dp.group).unwrap().is_some());
    }

    #[test]
    fn c3_by_inversion_is_s3() {
        let k = FinGroup::cyclic(3);
        let h = FinGroup::cyclic(2);
        let table = k.element_table();
        let inv = Perm::from_images_unchecked((0..3).map(|x| table.inv(x) as u32).collect());
        let target = FinGroup::generated(vec![inv.clone()], 3);
        let action = hom_from_images(&h, &target, vec![inv], HomVerify::Auto).unwrap();
        let sd = semidirect_product(&k, &h, &action).unwrap();
        assert_eq!(sd.group.order(), 6);
        assert!(!sd.group.is_abelian());
        assert!(is_isomorphic(&sd.group, &FinGroup::symmetric(3)).unwrap().is_some());
        // embeddings and element/part round trip
        for kk in k.elements() {
            for hh in h.elements() {
                let x = sd.element(&kk, &hh);
                assert!(sd.group.contains(&x));
                assert_eq!(sd.k_part(&x), kk);
                assert_eq!(sd.h_part(&x), hh);
            }
        }
        let k_img = sd.k_embed.image();
        assert!(k_img.is_normal_in(&sd.group));
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let k = FinGroup::cyclic(4);
        let h = FinGroup::cyclic(2);
        // swap the generator with its square: not an automorphism
        let table = k.element_table();
        let g = table.index_of(&k.generators()[0]).unwrap();
        let g2 = table.mul(g, g);
        let mut images: Vec<u32> = (0..4).collect();
        images.swap(g, g2);
        let bad = Perm::from_images(images).unwrap();
        let target = FinGroup::generated(vec![bad.clone()], 4);
        let action = hom_from_images(&h, &target, vec![bad], HomVerify::Auto).unwrap();
        assert!(matches!(
            semidirect_product(&k, &h, &action),
            Err(Error::NotAutomorphism(_))
        ));
    }
}
