use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::chain::StabChain;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A permutation group given by generators, with a stabilizer chain for
/// order, membership and element iteration.
#[derive(Clone)]
pub struct FinGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Arc<StabChain>,
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FinGroup {
    /// Equality as subgroups of the same symmetric group.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains(g))
    }
}

impl FinGroup {
    pub fn from_generators(gens: Vec<Perm>, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDomain);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::from_generators(degree, &generators);
        Ok(FinGroup {
            degree,
            generators,
            chain: Arc::new(chain),
        })
    }

    /// Generators already known to share `degree`.
    pub(crate) fn generated(gens: Vec<Perm>, degree: usize) -> Self {
        Self::from_generators(gens, degree).expect("generators share the degree")
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generated(Vec::new(), degree)
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree > 1 {
            let mut cyc: Vec<usize> = (0..degree).collect();
            cyc.rotate_left(1);
            gens.push(Perm::from_cycles(degree, &[&[0, 1]]).unwrap());
            gens.push(Perm::from_usize(&cyc).unwrap());
        }
        Self::generated(gens, degree)
    }

    pub fn cyclic(n: usize) -> Self {
        let mut cyc: Vec<usize> = (0..n).collect();
        cyc.rotate_left(1);
        Self::generated(vec![Perm::from_usize(&cyc).unwrap()], n)
    }

    /// Dihedral group of order `2n` on `n` points (`n >= 3`).
    pub fn dihedral(n: usize) -> Self {
        let mut cyc: Vec<usize> = (0..n).collect();
        cyc.rotate_left(1);
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::generated(
            vec![Perm::from_usize(&cyc).unwrap(), Perm::from_usize(&refl).unwrap()],
            n,
        )
    }

    pub fn alternating(degree: usize) -> Self {
        let gens = (2..degree)
            .map(|k| Perm::from_cycles(degree, &[&[0, 1, k]]).unwrap())
            .collect();
        Self::generated(gens, degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn order(&self) -> u64 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain.strong_generators()
    }

    /// Membership by sifting; permutations of another degree are not members.
    pub fn contains(&self, p: &Perm) -> bool {
        self.chain.contains(p)
    }

    pub fn try_contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.contains(p))
    }

    pub fn rank(&self, p: &Perm) -> Option<u64> {
        self.chain.rank(p)
    }

    pub fn element_at_rank(&self, rank: u64) -> Perm {
        self.chain.unrank(rank)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        self.chain.random_element(rng)
    }

    /// Elements in chain order; the identity first.
    pub fn elements(&self) -> Vec<Perm> {
        self.chain.elements_lex().into_iter().map(|(g, _)| g).collect()
    }

    pub fn element_table(&self) -> ElementTable {
        ElementTable::new(self.clone())
    }

    pub fn is_subgroup_of(&self, other: &FinGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<FinGroup> {
        FinGroup::from_generators(gens, self.degree)
    }

    /// Group generated by `self` and `extra`.
    pub fn join(&self, extra: &[Perm]) -> FinGroup {
        let mut chain = (*self.chain).clone();
        let mut gens = self.generators.clone();
        for g in extra {
            if chain.add_generator(g) {
                gens.push(g.clone());
            }
        }
        FinGroup {
            degree: self.degree,
            generators: gens,
            chain: Arc::new(chain),
        }
    }

    /// `g * self * g^-1`
    pub fn conjugate(&self, g: &Perm) -> FinGroup {
        let gens = self.generators.iter().map(|s| s.conjugate_by(g)).collect();
        FinGroup::generated(gens, self.degree)
    }

    pub fn is_normal_in(&self, parent: &FinGroup) -> bool {
        self.is_subgroup_of(parent)
            && parent.generators.iter().all(|p| {
                self.generators
                    .iter()
                    .all(|s| self.contains(&s.conjugate_by(p)))
            })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a * b == b * a))
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Perm]) -> FinGroup {
        let mut chain = StabChain::new(self.degree);
        let mut closure_gens: Vec<Perm> = Vec::new();
        let mut queue: Vec<Perm> = gens.to_vec();
        while let Some(x) = queue.pop() {
            if chain.add_generator(&x) {
                closure_gens.push(x.clone());
                for g in &self.generators {
                    queue.push(x.conjugate_by(g));
                }
            }
        }
        // every conjugate of a generator by a generator of `self` is a member
        FinGroup {
            degree: self.degree,
            generators: closure_gens,
            chain: Arc::new(chain),
        }
    }

    pub fn derived_subgroup(&self) -> FinGroup {
        let gens = &self.generators;
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = &(&(a * b) * &a.inverse()) * &b.inverse();
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Derived series `G = G0 > G1 > ...` down to its terminal member.
    pub fn derived_series(&self) -> Vec<FinGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            k += 1;
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Subgroup of elements satisfying `keep`, scanned in element order.
    /// `keep` must describe a subgroup.
    pub fn filter_subgroup(&self, keep: impl Fn(&Perm) -> bool) -> FinGroup {
        let mut chain = StabChain::new(self.degree);
        let mut gens = Vec::new();
        for (g, _) in self.chain.elements_lex() {
            if keep(&g) && chain.add_generator(&g) {
                gens.push(g);
            }
        }
        FinGroup {
            degree: self.degree,
            generators: gens,
            chain: Arc::new(chain),
        }
    }

    pub fn intersection(&self, other: &FinGroup) -> FinGroup {
        if self.order() <= other.order() {
            self.filter_subgroup(|g| other.contains(g))
        } else {
            other.filter_subgroup(|g| self.contains(g))
        }
    }

    pub fn center(&self) -> FinGroup {
        let gens = self.generators.clone();
        self.filter_subgroup(|g| gens.iter().all(|s| (g * s) == (s * g)))
    }

    pub fn centralizer_of(&self, elems: &[Perm]) -> FinGroup {
        self.filter_subgroup(|g| elems.iter().all(|s| (g * s) == (s * g)))
    }

    /// Normalizer of `sub` inside `self`.
    pub fn normalizer_of(&self, sub: &FinGroup) -> FinGroup {
        self.filter_subgroup(|g| sub.generators.iter().all(|s| sub.contains(&s.conjugate_by(g))))
    }

    /// Histogram `element order -> count`.
    pub fn element_order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for g in self.elements() {
            *hist.entry(g.order()).or_insert(0) += 1;
        }
        hist
    }

    /// Small generating set chosen greedily from elements of large order.
    pub fn small_generating_set(&self) -> Vec<Perm> {
        if self.generators.len() <= 2 {
            return self.generators.clone();
        }
        let mut elems: Vec<Perm> = self.elements();
        elems.sort_by_key(|g| std::cmp::Reverse(g.order()));
        let mut chain = StabChain::new(self.degree);
        let mut gens = Vec::new();
        for g in elems {
            if chain.order() == self.order() {
                break;
            }
            if chain.add_generator(&g) {
                gens.push(g);
            }
        }
        if gens.len() < self.generators.len() {
            gens
        } else {
            self.generators.clone()
        }
    }
}

/// All elements of a group in chain-lexicographic order, with O(levels) lookup.
#[derive(Clone, Debug)]
pub struct ElementTable {
    group: FinGroup,
    elements: Vec<Perm>,
    index_of_rank: Vec<u32>,
}

impl ElementTable {
    pub fn new(group: FinGroup) -> Self {
        let lex = group.chain.elements_lex();
        let mut index_of_rank = vec![0u32; lex.len()];
        let mut elements = Vec::with_capacity(lex.len());
        for (i, (g, rank)) in lex.into_iter().enumerate() {
            index_of_rank[rank as usize] = i as u32;
            elements.push(g);
        }
        ElementTable {
            group,
            elements,
            index_of_rank,
        }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    #[inline]
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.group
            .rank(p)
            .map(|r| self.index_of_rank[r as usize] as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.elements[a].compose(&self.elements[b]))
            .expect("closed under products")
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index_of(&self.elements[a].inverse())
            .expect("closed under inverses")
    }

    /// Indices of the group generators.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.group
            .generators()
            .iter()
            .map(|g| self.index_of(g).unwrap())
            .collect()
    }

    /// Full multiplication table, row-major.
    pub fn multiplication_table(&self) -> Vec<u32> {
        use rayon::prelude::*;
        let n = self.len();
        let mut table = vec![0u32; n * n];
        table.par_chunks_mut(n).enumerate().for_each(|(a, row)| {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = self.mul(a, b) as u32;
            }
        });
        table
    }

    /// Conjugacy class id of every element; ids numbered in order of first
    /// appearance.
    pub fn conjugacy_classes(&self) -> Vec<u32> {
        let n = self.len();
        let mut class = vec![u32::MAX; n];
        let gens = self.group.generators();
        let mut next = 0u32;
        for start in 0..n {
            if class[start] != u32::MAX {
                continue;
            }
            class[start] = next;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for s in gens {
                    let y = self.index_of(&self.elements[x].conjugate_by(s)).unwrap();
                    if class[y] == u32::MAX {
                        class[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        class
    }
}
