use std::collections::{BTreeMap, VecDeque};

use super::group::{ElementTable, FinGroup};
use super::hom::{hom_from_images, GroupHom, HomVerify};
use crate::error::{Error, Result};

/// Largest order accepted by [`is_isomorphic`].
pub const ISO_LIMIT: u64 = 10_000;

/// Isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub order: u64,
    pub abelian: bool,
    pub center_order: u64,
    pub derived_orders: Vec<u64>,
    /// `(element order, class size) -> number of elements`
    pub class_profile: BTreeMap<(u64, u64), u64>,
}

fn class_data(table: &ElementTable) -> (Vec<u32>, Vec<u64>) {
    let classes = table.conjugacy_classes();
    let nclasses = classes.iter().max().map_or(0, |&m| m as usize + 1);
    let mut sizes = vec![0u64; nclasses];
    for &c in &classes {
        sizes[c as usize] += 1;
    }
    (classes, sizes)
}

fn profile(table: &ElementTable, classes: &[u32], sizes: &[u64]) -> Vec<(u64, u64)> {
    table
        .elements()
        .iter()
        .zip(classes)
        .map(|(e, &c)| (e.order(), sizes[c as usize]))
        .collect()
}

pub fn invariants(g: &FinGroup) -> GroupInvariants {
    let table = g.element_table();
    let (classes, sizes) = class_data(&table);
    let mut class_profile = BTreeMap::new();
    for key in profile(&table, &classes, &sizes) {
        *class_profile.entry(key).or_insert(0) += 1;
    }
    GroupInvariants {
        order: g.order(),
        abelian: g.is_abelian(),
        center_order: g.center().order(),
        derived_orders: g.derived_series().iter().map(|d| d.order()).collect(),
        class_profile,
    }
}

/// Finds an isomorphism `a -> b`, or `None` when the groups are not
/// isomorphic.
pub fn is_isomorphic(a: &FinGroup, b: &FinGroup) -> Result<Option<GroupHom>> {
    for g in [a, b] {
        if g.order() > ISO_LIMIT {
            return Err(Error::size_limit("isomorphism test", ISO_LIMIT, g.order()));
        }
    }
    if a.order() != b.order() {
        return Ok(None);
    }
    if invariants(a) != invariants(b) {
        return Ok(None);
    }
    let gens = a.small_generating_set();
    let a_sub = a.subgroup(gens.clone())?;
    if gens.is_empty() {
        let images = Vec::new();
        return hom_from_images(&a_sub, b, images, HomVerify::Exhaustive).map(Some);
    }

    let at = a_sub.element_table();
    let bt = b.element_table();
    let (a_classes, a_sizes) = class_data(&at);
    let (b_classes, b_sizes) = class_data(&bt);
    let a_prof = profile(&at, &a_classes, &a_sizes);
    let b_prof = profile(&bt, &b_classes, &b_sizes);

    let gen_idx: Vec<usize> = gens.iter().map(|g| at.index_of(g).unwrap()).collect();
    let mut candidates: Vec<Vec<usize>> = gen_idx
        .iter()
        .map(|&gi| (0..bt.len()).filter(|&y| b_prof[y] == a_prof[gi]).collect())
        .collect();
    // the first image only matters up to conjugacy in b
    let mut seen_class = vec![false; b_sizes.len()];
    candidates[0].retain(|&y| {
        let c = b_classes[y] as usize;
        !std::mem::replace(&mut seen_class[c], true)
    });

    let mut chosen = vec![0usize; gens.len()];
    if let Some(images) = backtrack(&at, &bt, &gen_idx, &candidates, &mut chosen, 0) {
        let images = images.into_iter().map(|y| bt.element(y).clone()).collect();
        let hom = hom_from_images(&a_sub, b, images, HomVerify::Exhaustive)?;
        // re-express on the original generators of `a`
        let images = a.generators().iter().map(|g| hom.eval(g)).collect();
        return hom_from_images(a, b, images, HomVerify::Exhaustive).map(Some);
    }
    Ok(None)
}

fn backtrack(
    at: &ElementTable,
    bt: &ElementTable,
    gens: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    depth: usize,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        return extend_to_isomorphism(at, bt, gens, chosen).map(|_| chosen.clone());
    }
    for &y in &candidates[depth] {
        if chosen[..depth].contains(&y) {
            continue;
        }
        // products of pairs of generators must keep their orders
        let ok = (0..depth).all(|i| {
            let a_ord = at.element(at.mul(gens[i], gens[depth])).order();
            let b_ord = bt.element(bt.mul(chosen[i], y)).order();
            a_ord == b_ord
        });
        if !ok {
            continue;
        }
        chosen[depth] = y;
        if let Some(found) = backtrack(at, bt, gens, candidates, chosen, depth + 1) {
            return Some(found);
        }
    }
    None
}

/// Extends generator images (element indices) to a bijective homomorphism,
/// returning the image of every element index.
pub(crate) fn extend_to_isomorphism(
    at: &ElementTable,
    bt: &ElementTable,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = at.len();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; bt.len()];
    img[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = at.mul(x, s);
            let fy = bt.mul(img[x], t);
            if img[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                img[y] = fy;
                reached += 1;
                queue.push_back(y);
            } else if img[y] != fy {
                return None;
            }
        }
    }
    (reached == n && n == bt.len()).then_some(img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_core::perm::Perm;

    #[test]
    fn s3_is_d3() {
        let h = is_isomorphic(&FinGroup::symmetric(3), &FinGroup::dihedral(3)).unwrap();
        assert!(h.unwrap().is_injective());
    }

    #[test]
    fn c6_is_not_s3() {
        assert!(is_isomorphic(&FinGroup::cyclic(6), &FinGroup::symmetric(3)).unwrap().is_none());
    }

    #[test]
    fn q8_is_not_d4() {
        // quaternion group as its left regular representation
        let i = Perm::from_cycles(8, &[&[0, 2, 1, 3], &[4, 6, 5, 7]]).unwrap();
        let j = Perm::from_cycles(8, &[&[0, 4, 1, 5], &[2, 7, 3, 6]]).unwrap();
        let q8 = FinGroup::from_generators(vec![i, j], 8).unwrap();
        assert_eq!(q8.order(), 8);
        assert!(is_isomorphic(&q8, &FinGroup::dihedral(4)).unwrap().is_none());
        assert!(is_isomorphic(&q8, &q8.conjugate(&Perm::from_cycles(8, &[&[0, 5]]).unwrap()))
            .unwrap()
            .is_some());
    }

    #[test]
    fn a4_in_two_embeddings() {
        let a4 = FinGroup::alternating(4);
        let a4_on_6: Vec<Perm> = {
            // action on the six 2-subsets of {0,1,2,3}
            let pairs: Vec<(usize, usize)> = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .collect();
            a4.generators()
                .iter()
                .map(|g| {
                    let imgs: Vec<usize> = pairs
                        .iter()
                        .map(|&(i, j)| {
                            let (x, y) = (g.apply(i), g.apply(j));
                            let key = (x.min(y), x.max(y));
                            pairs.iter().position(|&p| p == key).unwrap()
                        })
                        .collect();
                    Perm::from_usize(&imgs).unwrap()
                })
                .collect()
        };
        let other = FinGroup::from_generators(a4_on_6, 6).unwrap();
        let h = is_isomorphic(&a4, &other).unwrap().unwrap();
        assert!(h.is_injective() && h.is_surjective());
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            is_isomorphic(&FinGroup::symmetric(8), &FinGroup::symmetric(8)),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }
}
