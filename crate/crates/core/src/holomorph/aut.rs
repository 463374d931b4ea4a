use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matgrp::{pgammal2, psl2, FieldSpec};
use crate::perm_core::chain::StabChain;
use crate::perm_core::iso::extend_to_isomorphism;
use crate::perm_core::{check_automorphism, ElementTable, FinGroup, Perm};

/// Largest `|N|` for brute-force automorphism computation.
pub const BRUTE_FORCE_AUT_LIMIT: u64 = 360;

/// How automorphisms of `N` are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutKind {
    /// `M ≤ Sym(degree of N)` normalizing `N ≤ M`; `m` acts by conjugation.
    Normalizer,
    /// `M` permutes the element indices of `N` directly.
    ElementPerm,
}

/// A group `M` acting faithfully on `N` by automorphisms, together with the
/// map `conj: N → M`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    kind: AutKind,
    n_table: ElementTable,
    group: FinGroup,
    inn: FinGroup,
    full: bool,
    inn_lookup: Option<HashMap<Perm, usize>>,
}

impl AutGroup {
    /// `M` normalizing `N ≤ M`, acting by conjugation. `full` records whether
    /// `M` is all of `Aut(N)`.
    pub fn normalizer(n: &FinGroup, m: &FinGroup, full: bool) -> Result<Self> {
        if !n.is_subgroup_of(m) {
            return Err(Error::Precondition("N is not contained in M".into()));
        }
        if !n.is_normal_in(m) {
            return Err(Error::NotNormal);
        }
        let centralizer = m.centralizer_of(n.generators());
        if !centralizer.is_trivial() {
            return Err(Error::NotAutomorphism(
                "M does not act faithfully on N (nontrivial centralizer)".into(),
            ));
        }
        Ok(AutGroup {
            kind: AutKind::Normalizer,
            n_table: n.element_table(),
            group: m.clone(),
            inn: n.clone(),
            full,
            inn_lookup: None,
        })
    }

    /// `M` generated by `gens` (permutations of element indices of `N`) and
    /// the inner automorphisms. Every generator is checked to be an
    /// automorphism.
    pub fn element_perm(n: &FinGroup, gens: Vec<Perm>, full: bool) -> Result<Self> {
        let table = n.element_table();
        for g in &gens {
            check_automorphism(&table, g)?;
        }
        let inn_gens: Vec<Perm> = n.generators().iter().map(|s| conj_index_perm(&table, s)).collect();
        let inn = FinGroup::from_generators(inn_gens.clone(), table.len())?;
        let group = FinGroup::from_generators(gens, table.len())?.join(&inn_gens);
        let mut lookup = HashMap::new();
        for (i, x) in table.elements().iter().enumerate() {
            lookup.entry(conj_index_perm(&table, x)).or_insert(i);
        }
        Ok(AutGroup {
            kind: AutKind::ElementPerm,
            n_table: table,
            group,
            inn,
            full,
            inn_lookup: Some(lookup),
        })
    }

    /// `Inn(N)` only. Centerless `N` acts on itself by conjugation.
    pub fn inner(n: &FinGroup) -> Result<Self> {
        if n.center().is_trivial() {
            Self::normalizer(n, n, false)
        } else {
            Self::element_perm(n, Vec::new(), false)
        }
    }

    /// `Aut(N)` by exhaustive search over generator images, `|N| ≤ 360`.
    pub fn brute_force(n: &FinGroup) -> Result<Self> {
        if n.order() > BRUTE_FORCE_AUT_LIMIT {
            return Err(Error::size_limit(
                "brute-force automorphism group",
                BRUTE_FORCE_AUT_LIMIT,
                n.order(),
            ));
        }
        let gens = brute_force_automorphisms(n);
        Self::element_perm(n, gens, true)
    }

    /// `PΓL₂(q)` acting on `PSL₂(q)` by conjugation on the projective line.
    pub fn explicit_psl2(f: &FieldSpec) -> Result<Self> {
        let n = psl2(f)?;
        let m = pgammal2(f)?;
        Self::normalizer(&n, &m, true)
    }

    pub fn kind(&self) -> AutKind {
        self.kind
    }

    pub fn n_table(&self) -> &ElementTable {
        &self.n_table
    }

    pub fn n_group(&self) -> &FinGroup {
        self.n_table.group()
    }

    pub fn n(&self) -> usize {
        self.n_table.len()
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    /// `Inn(N)` as a subgroup of `M`.
    pub fn inn(&self) -> &FinGroup {
        &self.inn
    }

    /// Whether `M` is known to be all of `Aut(N)`.
    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn identity(&self) -> Perm {
        self.group.identity()
    }

    /// `α_m(y)` on element indices.
    pub fn apply(&self, m: &Perm, y: usize) -> usize {
        match self.kind {
            AutKind::Normalizer => {
                let img = self.n_table.element(y).conjugate_by(m);
                self.n_table.index_of(&img).expect("M normalizes N")
            }
            AutKind::ElementPerm => m.apply(y),
        }
    }

    /// `α_m` as a permutation of element indices.
    pub fn index_perm(&self, m: &Perm) -> Vec<u32> {
        match self.kind {
            AutKind::Normalizer => (0..self.n()).map(|y| self.apply(m, y) as u32).collect(),
            AutKind::ElementPerm => m.images().to_vec(),
        }
    }

    /// `conj(x)`, the inner automorphism `y ↦ x y x⁻¹`, as an element of `M`.
    pub fn conj(&self, x: usize) -> Perm {
        match self.kind {
            AutKind::Normalizer => self.n_table.element(x).clone(),
            AutKind::ElementPerm => conj_index_perm(&self.n_table, self.n_table.element(x)),
        }
    }

    /// The element `x` with `conj(x) = m`, when `m` is inner and the center
    /// is trivial.
    pub fn conj_inv(&self, m: &Perm) -> Option<usize> {
        match self.kind {
            AutKind::Normalizer => self.n_table.index_of(m),
            AutKind::ElementPerm => self.inn_lookup.as_ref().unwrap().get(m).copied(),
        }
    }
}

/// Conjugation by `x` as a permutation of element indices.
pub(crate) fn conj_index_perm(table: &ElementTable, x: &Perm) -> Perm {
    let images = table
        .elements()
        .iter()
        .map(|y| table.index_of(&y.conjugate_by(x)).unwrap() as u32)
        .collect();
    Perm::from_images(images).expect("conjugation is a bijection")
}

/// Generators of `Aut(N)` as permutations of element indices, found by
/// checking every candidate image tuple of a small generating set.
fn brute_force_automorphisms(n: &FinGroup) -> Vec<Perm> {
    let table = n.element_table();
    let gens: Vec<usize> = n
        .small_generating_set()
        .iter()
        .map(|g| table.index_of(g).unwrap())
        .collect();
    if gens.is_empty() {
        return Vec::new();
    }
    let size = table.len();
    let orders: Vec<u64> = table.elements().iter().map(|e| e.order()).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (1..size).filter(|&y| orders[y] == orders[g]).collect())
        .collect();
    let mut chain = StabChain::new(size);
    let mut found = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    'tuples: loop {
        let images: Vec<usize> = idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_to_isomorphism(&table, &table, &gens, &images) {
            let p = Perm::from_images(map.into_iter().map(|v| v as u32).collect()).unwrap();
            if chain.add_generator(&p) {
                found.push(p);
            }
        }
        for d in (0..idx.len()).rev() {
            idx[d] += 1;
            if idx[d] < candidates[d].len() {
                continue 'tuples;
            }
            idx[d] = 0;
        }
        break;
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::field;

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(AutGroup::brute_force(&FinGroup::cyclic(5)).unwrap().group().order(), 4);
        let s3 = AutGroup::brute_force(&FinGroup::symmetric(3)).unwrap();
        assert_eq!(s3.group().order(), 6);
        assert_eq!(s3.inn().order(), 6);
        let v4 = FinGroup::from_generators(
            vec![
                Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
            4,
        )
        .unwrap();
        assert_eq!(AutGroup::brute_force(&v4).unwrap().group().order(), 6);
        assert_eq!(AutGroup::brute_force(&FinGroup::dihedral(4)).unwrap().group().order(), 8);
    }

    #[test]
    fn psl2_4_explicit_matches_brute_force() {
        let f = field(4).unwrap();
        let explicit = AutGroup::explicit_psl2(&f).unwrap();
        let brute = AutGroup::brute_force(explicit.n_group()).unwrap();
        assert_eq!(explicit.group().order(), 120);
        assert_eq!(brute.group().order(), 120);
        // the explicit automorphisms lie in the brute-force group
        for m in explicit.group().generators() {
            let p = Perm::from_images(explicit.index_perm(m)).unwrap();
            assert!(brute.group().contains(&p));
        }
    }

    #[test]
    fn conj_roundtrip() {
        let f = field(5).unwrap();
        let a = AutGroup::explicit_psl2(&f).unwrap();
        for x in 0..a.n() {
            assert_eq!(a.conj_inv(&a.conj(x)), Some(x));
        }
        let b = AutGroup::brute_force(&FinGroup::symmetric(4)).unwrap();
        for x in 0..b.n() {
            assert_eq!(b.conj_inv(&b.conj(x)), Some(x));
            // α_{conj(x)}(y) = x y x⁻¹
            let t = b.n_table();
            for y in 0..b.n() {
                assert_eq!(b.apply(&b.conj(x), y), t.mul(t.mul(x, y), t.inv(x)));
            }
        }
    }

    #[test]
    fn brute_force_limit() {
        let f = field(11).unwrap();
        let n = psl2(&f).unwrap();
        assert!(matches!(AutGroup::brute_force(&n), Err(Error::SizeLimitExceeded { .. })));
    }
}
