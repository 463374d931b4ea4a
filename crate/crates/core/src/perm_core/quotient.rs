use std::collections::HashSet;

use super::bits::BitSet;
use super::group::{ElementTable, FinGroup};
use super::hom::{hom_from_images, GroupHom, HomVerify};
use super::perm::Perm;
use crate::error::{Error, Result};

/// Groups whose elements are materialized by the coset and lattice routines.
pub const ELEMENT_LIMIT: u64 = 2_000_000;

pub(crate) fn check_enumerable(g: &FinGroup, what: &str) -> Result<()> {
    if g.order() > ELEMENT_LIMIT {
        return Err(Error::size_limit(what, ELEMENT_LIMIT, g.order()));
    }
    Ok(())
}

/// `G / K` acting faithfully on the left cosets of `K`, with the natural map.
pub fn quotient(g: &FinGroup, k: &FinGroup) -> Result<(FinGroup, GroupHom)> {
    if !k.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    check_enumerable(g, "quotient")?;
    let table = g.element_table();
    let k_elems = k.elements();
    let n = table.len();
    let mut coset = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        let xe = table.element(x);
        for ke in &k_elems {
            coset[table.index_of(&xe.compose(ke)).unwrap()] = id;
        }
        reps.push(x);
    }
    let index = reps.len();
    let images: Vec<Perm> = g
        .generators()
        .iter()
        .map(|s| {
            let imgs = reps
                .iter()
                .map(|&r| coset[table.index_of(&s.compose(table.element(r))).unwrap()])
                .collect();
            Perm::from_images_unchecked(imgs)
        })
        .collect();
    let q = FinGroup::generated(images.clone(), index);
    let hom = hom_from_images(g, &q, images, HomVerify::Auto)?;
    debug_assert_eq!(q.order() * k.order(), g.order());
    Ok((q, hom))
}

/// Elements of a subgroup as a bitset over `table` indices.
pub fn subgroup_bits(table: &ElementTable, sub: &FinGroup) -> BitSet {
    let mut bits = BitSet::new(table.len());
    for e in sub.elements() {
        bits.insert(table.index_of(&e).expect("subgroup of the tabled group"));
    }
    bits
}

/// All normal subgroups, sorted by order then by element set.
pub fn normal_subgroups(g: &FinGroup) -> Result<Vec<FinGroup>> {
    check_enumerable(g, "normal subgroup lattice")?;
    let table = g.element_table();
    let classes = table.conjugacy_classes();
    let nclasses = classes.iter().max().map_or(0, |&m| m as usize + 1);
    let mut class_rep = vec![usize::MAX; nclasses];
    for (i, &c) in classes.iter().enumerate() {
        if class_rep[c as usize] == usize::MAX {
            class_rep[c as usize] = i;
        }
    }

    let mut found: Vec<(BitSet, FinGroup)> = Vec::new();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let trivial = FinGroup::trivial(g.degree());
    let tb = subgroup_bits(&table, &trivial);
    seen.insert(tb.clone());
    found.push((tb, trivial));

    for &rep in &class_rep {
        let x = table.element(rep);
        if x.is_identity() {
            continue;
        }
        let ncl = g.normal_closure(std::slice::from_ref(x));
        let bits = subgroup_bits(&table, &ncl);
        if seen.insert(bits.clone()) {
            found.push((bits, ncl));
        }
    }
    // close under products of pairs
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            if found[i].0.is_subset(&found[j].0) || found[j].0.is_subset(&found[i].0) {
                continue;
            }
            let joined = found[i].1.join(found[j].1.generators());
            let bits = subgroup_bits(&table, &joined);
            if seen.insert(bits.clone()) {
                found.push((bits, joined));
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.1.order().cmp(&b.1.order()).then_with(|| a.0.cmp(&b.0)));
    Ok(found.into_iter().map(|(_, n)| n).collect())
}

pub fn normal_subgroups_of_order(g: &FinGroup, order: u64) -> Result<Vec<FinGroup>> {
    if order == 0 || !g.order().is_multiple_of(order) {
        return Err(Error::Precondition(format!(
            "{order} does not divide |G| = {}",
            g.order()
        )));
    }
    if order == 1 {
        return Ok(vec![FinGroup::trivial(g.degree())]);
    }
    if order == g.order() {
        return Ok(vec![g.clone()]);
    }
    Ok(normal_subgroups(g)?
        .into_iter()
        .filter(|n| n.order() == order)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v4() -> FinGroup {
        FinGroup::from_generators(
            vec![
                Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(4, &[&[2, 3]]).unwrap(),
            ],
            4,
        )
        .unwrap()
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let s3 = FinGroup::symmetric(3);
        let (q, hom) = quotient(&s3, &s3).unwrap();
        assert_eq!(q.order(), 1);
        assert!(hom.is_surjective());
    }

    #[test]
    fn s3_mod_a3() {
        let s3 = FinGroup::symmetric(3);
        let (q, hom) = quotient(&s3, &FinGroup::alternating(3)).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(hom.kernel(), FinGroup::alternating(3));
    }

    #[test]
    fn quotient_requires_normality() {
        let s3 = FinGroup::symmetric(3);
        let c2 = s3.subgroup(vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        assert!(matches!(quotient(&s3, &c2), Err(Error::NotNormal)));
    }

    #[test]
    fn normal_subgroups_of_klein_four() {
        let g = v4();
        assert_eq!(normal_subgroups_of_order(&g, 1).unwrap().len(), 1);
        assert_eq!(normal_subgroups_of_order(&g, 4).unwrap().len(), 1);
        assert_eq!(normal_subgroups_of_order(&g, 2).unwrap().len(), 3);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let orders: Vec<u64> = normal_subgroups(&FinGroup::symmetric(4))
            .unwrap()
            .iter()
            .map(|n| n.order())
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }
}
