use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm_core::{BitSet, ElementTable, FinGroup, Perm};

/// Default largest parent order for subgroup enumeration.
pub const SUBGROUP_LIMIT: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "n")]
pub enum OrderFilter {
    All,
    Dividing(u64),
    Equal(u64),
}

impl OrderFilter {
    pub fn accepts(&self, order: u64) -> bool {
        match *self {
            OrderFilter::All => true,
            OrderFilter::Dividing(n) => n % order == 0,
            OrderFilter::Equal(n) => n == order,
        }
    }

    /// Whether a subgroup of this order can lie below an accepted one.
    fn may_extend(&self, order: u64) -> bool {
        match *self {
            OrderFilter::All => true,
            OrderFilter::Dividing(n) | OrderFilter::Equal(n) => n % order == 0,
        }
    }
}

/// One conjugacy class of subgroups, with every member as a bitset over the
/// parent's element table.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: FinGroup,
    pub bits: BitSet,
    /// All conjugates in breadth-first order from `bits`.
    pub conjugates: Vec<BitSet>,
}

impl SubgroupClass {
    pub fn order(&self) -> u64 {
        self.rep.order()
    }
}

/// Solvable subgroups of a parent group up to conjugacy.
#[derive(Clone, Debug)]
pub struct SubgroupList {
    pub parent: FinGroup,
    pub table: ElementTable,
    pub filter: OrderFilter,
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupList {
    pub fn reps(&self) -> Vec<FinGroup> {
        self.classes.iter().map(|c| c.rep.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Rebuilds a list from class representatives, recomputing every
    /// conjugate.
    pub fn from_reps(parent: &FinGroup, filter: OrderFilter, reps: Vec<FinGroup>) -> Result<Self> {
        let table = parent.element_table();
        let conj = generator_conjugations(&table);
        let mut classes = Vec::with_capacity(reps.len());
        for rep in reps {
            if !rep.is_subgroup_of(parent) {
                return Err(Error::Precondition("representative is not a subgroup of the parent".into()));
            }
            let bits = crate::perm_core::subgroup_bits(&table, &rep);
            let conjugates = conjugate_orbit(&bits, &conj);
            classes.push(SubgroupClass { rep, bits, conjugates });
        }
        Ok(SubgroupList {
            parent: parent.clone(),
            table,
            filter,
            classes,
        })
    }

    /// Group generated by the elements of a bitset.
    pub fn group_of(&self, bits: &BitSet) -> FinGroup {
        group_from_bits(&self.table, bits)
    }
}

pub(crate) fn group_from_bits(table: &ElementTable, bits: &BitSet) -> FinGroup {
    let g = table.group();
    let mut sub = FinGroup::trivial(g.degree());
    for i in bits.iter() {
        let e = table.element(i);
        if !sub.contains(e) {
            sub = sub.join(std::slice::from_ref(e));
            if sub.order() as usize == bits.count() {
                break;
            }
        }
    }
    sub
}

/// Conjugation by each generator as a permutation of element indices.
pub(crate) fn generator_conjugations(table: &ElementTable) -> Vec<Vec<u32>> {
    table
        .group()
        .generators()
        .iter()
        .map(|s| {
            table
                .elements()
                .iter()
                .map(|x| table.index_of(&x.conjugate_by(s)).unwrap() as u32)
                .collect()
        })
        .collect()
}

pub(crate) fn conjugate_orbit(start: &BitSet, conj: &[Vec<u32>]) -> Vec<BitSet> {
    let mut seen: HashSet<BitSet> = HashSet::from([start.clone()]);
    let mut orbit = vec![start.clone()];
    let mut k = 0;
    while k < orbit.len() {
        for c in conj {
            let mut img = BitSet::new(start.universe());
            for i in orbit[k].iter() {
                img.insert(c[i] as usize);
            }
            if seen.insert(img.clone()) {
                orbit.push(img);
            }
        }
        k += 1;
    }
    orbit
}

pub fn solvable_subgroups(g: &FinGroup, filter: OrderFilter) -> Result<SubgroupList> {
    solvable_subgroups_with_limit(g, filter, SUBGROUP_LIMIT)
}

/// Cyclic-extension enumeration: every solvable `S ≠ 1` has a normal
/// subgroup `T` of prime index, so `S` is reached from a class
/// representative of `T` by adjoining an element of `N(T)` of prime order
/// modulo `T`.
pub fn solvable_subgroups_with_limit(g: &FinGroup, filter: OrderFilter, limit: u64) -> Result<SubgroupList> {
    if g.order() > limit {
        return Err(Error::size_limit("solvable subgroup enumeration", limit, g.order()));
    }
    let table = g.element_table();
    let n = table.len();
    let conj = generator_conjugations(&table);

    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut trivial_bits = BitSet::new(n);
    trivial_bits.insert(0);
    seen.insert(trivial_bits.clone());
    classes.push(SubgroupClass {
        rep: FinGroup::trivial(g.degree()),
        bits: trivial_bits.clone(),
        conjugates: vec![trivial_bits],
    });

    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(ci) = queue.pop_front() {
        let t = classes[ci].rep.clone();
        let t_bits = classes[ci].bits.clone();
        let t_elems: Vec<usize> = t_bits.iter().collect();
        let mut covered = t_bits.clone();
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            let xe = table.element(x);
            let normalizes = t
                .generators()
                .iter()
                .all(|s| t_bits.contains(table.index_of(&s.conjugate_by(xe)).unwrap()));
            if !normalizes {
                covered.insert(x);
                continue;
            }
            // order of x modulo T
            let mut k = 1u64;
            let mut y = x;
            while !t_bits.contains(y) {
                y = table.mul(y, x);
                k += 1;
            }
            if !is_prime(k) || !filter.may_extend(t.order() * k) {
                continue;
            }
            let mut s_bits = t_bits.clone();
            let mut layer: Vec<usize> = t_elems.clone();
            for _ in 1..k {
                layer = layer.iter().map(|&e| table.mul(x, e)).collect();
                for &e in &layer {
                    s_bits.insert(e);
                    covered.insert(e);
                }
            }
            if seen.contains(&s_bits) {
                continue;
            }
            let conjugates = conjugate_orbit(&s_bits, &conj);
            for c in &conjugates {
                seen.insert(c.clone());
            }
            let rep = t.join(std::slice::from_ref(xe));
            debug_assert_eq!(rep.order() as usize, s_bits.count());
            classes.push(SubgroupClass {
                rep,
                bits: s_bits,
                conjugates,
            });
            queue.push_back(classes.len() - 1);
        }
    }

    classes.retain(|c| filter.accepts(c.order()));
    classes.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| generator_key(&a.rep).cmp(&generator_key(&b.rep)))
    });
    Ok(SubgroupList {
        parent: g.clone(),
        table,
        filter,
        classes,
    })
}

fn generator_key(g: &FinGroup) -> Vec<Vec<u32>> {
    g.generators().iter().map(|p| p.images().to_vec()).collect()
}

fn is_prime(k: u64) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

/// Whether two subgroups of `parent` are conjugate in it, by scanning
/// conjugates of `a`.
pub fn are_conjugate(parent: &FinGroup, a: &FinGroup, b: &FinGroup) -> Option<Perm> {
    if a.order() != b.order() {
        return None;
    }
    parent
        .elements()
        .into_iter()
        .find(|x| a.generators().iter().all(|s| b.contains(&s.conjugate_by(x))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(list: &SubgroupList) -> Vec<u64> {
        list.classes.iter().map(|c| c.order()).collect()
    }

    #[test]
    fn s4_has_eleven_classes() {
        let l = solvable_subgroups(&FinGroup::symmetric(4), OrderFilter::All).unwrap();
        assert_eq!(l.len(), 11);
        assert_eq!(orders(&l), vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);
        let total: usize = l.classes.iter().map(|c| c.conjugates.len()).sum();
        assert_eq!(total, 30);
    }

    #[test]
    fn a5_solvable_classes() {
        let l = solvable_subgroups(&FinGroup::alternating(5), OrderFilter::All).unwrap();
        // 1, 2, 3, 4 (V4), 5, 6 (S3), 10 (D5), 12 (A4)
        assert_eq!(orders(&l), vec![1, 2, 3, 4, 5, 6, 10, 12]);
        for c in &l.classes {
            assert!(c.rep.is_solvable());
        }
    }

    #[test]
    fn filters() {
        let s4 = FinGroup::symmetric(4);
        let l = solvable_subgroups(&s4, OrderFilter::Equal(4)).unwrap();
        assert_eq!(orders(&l), vec![4, 4, 4]);
        let l = solvable_subgroups(&s4, OrderFilter::Dividing(6)).unwrap();
        assert_eq!(orders(&l), vec![1, 2, 2, 3, 6]);
    }

    #[test]
    fn limit() {
        assert!(matches!(
            solvable_subgroups_with_limit(&FinGroup::symmetric(5), OrderFilter::All, 100),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn reps_are_pairwise_non_conjugate() {
        let g = FinGroup::symmetric(4);
        let l = solvable_subgroups(&g, OrderFilter::All).unwrap();
        for (i, a) in l.classes.iter().enumerate() {
            for b in &l.classes[i + 1..] {
                assert!(are_conjugate(&g, &a.rep, &b.rep).is_none());
            }
        }
    }
}
