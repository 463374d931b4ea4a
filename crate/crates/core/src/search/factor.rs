use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::{solvable_subgroups_cached, SubgroupCache};
use super::subgroups::{group_from_bits, solvable_subgroups, OrderFilter, SubgroupList, SUBGROUP_LIMIT};
use crate::error::{Error, Result};
use crate::holomorph::AutGroup;
use crate::matgrp::complement;
use crate::perm_core::{quotient, FinGroup, Perm};

/// Limits and cache shared by the searches.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_order: u64,
    pub cache: Option<SubgroupCache>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_order: SUBGROUP_LIMIT,
            cache: None,
        }
    }
}

impl SearchConfig {
    pub(crate) fn subgroups(&self, g: &FinGroup, filter: OrderFilter) -> Result<SubgroupList> {
        solvable_subgroups_cached(g, filter, self.max_order, self.cache.as_ref())
    }
}

/// `P = AB` with the conditions evaluated on it.
#[derive(Clone, Debug)]
pub struct FactorizationCert {
    pub p: FinGroup,
    pub a: FinGroup,
    pub b: FinGroup,
    pub meet_order: u64,
    /// `A·Inn(N) = B·Inn(N)`, when `Inn(N)` is part of the search
    pub coset_equality: Option<bool>,
    /// `A` splits over `A ∩ Inn(N)`
    pub split: Option<bool>,
}

impl FactorizationCert {
    pub fn exact(&self) -> bool {
        self.meet_order == 1 && self.a.order() * self.b.order() == self.p.order()
    }

    /// Recomputes every recorded condition.
    pub fn check(&self, inn: Option<&FinGroup>) -> Result<()> {
        if !self.a.is_subgroup_of(&self.p) || !self.b.is_subgroup_of(&self.p) {
            return Err(Error::verification("factorization", "A or B is not in P"));
        }
        if !self.a.is_solvable() || !self.b.is_solvable() {
            return Err(Error::verification("factorization", "A or B is not solvable"));
        }
        let meet = self.a.intersection(&self.b).order();
        if meet != self.meet_order || self.a.order() * self.b.order() != self.p.order() * meet {
            return Err(Error::verification("factorization", "|A||B| ≠ |P||A ∩ B|"));
        }
        if let Some(inn) = inn {
            if let Some(expected) = self.coset_equality {
                if coset_equal(inn, &self.a, &self.b) != expected {
                    return Err(Error::verification("coset_equality", "A·Inn = B·Inn differs"));
                }
            }
            if let Some(expected) = self.split {
                let a0 = self.a.intersection(inn);
                if complement(&self.a, &a0)?.is_some() != expected {
                    return Err(Error::verification("split", "complement existence differs"));
                }
            }
        }
        Ok(())
    }
}

fn coset_equal(inn: &FinGroup, a: &FinGroup, b: &FinGroup) -> bool {
    inn.join(a.generators()) == inn.join(b.generators())
}

/// Pairs `(i, j)` of class indices whose orders multiply to `target`.
fn feasible_pairs(list: &SubgroupList, target: u64, ordered: bool) -> Vec<(usize, usize)> {
    let k = list.len();
    let mut pairs = Vec::new();
    for i in 0..k {
        let start = if ordered { 0 } else { i };
        for j in start..k {
            if list.classes[i].order() * list.classes[j].order() == target {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// First conjugate of class `j` meeting the representative of class `i`
/// trivially, and passing `accept`.
fn sweep_conjugates(
    list: &SubgroupList,
    i: usize,
    j: usize,
    accept: impl Fn(&FinGroup) -> bool,
) -> Option<FinGroup> {
    let a_bits = &list.classes[i].bits;
    list.classes[j]
        .conjugates
        .iter()
        .filter(|b| a_bits.intersection_count(b) == 1)
        .map(|b| group_from_bits(&list.table, b))
        .find(|b| accept(b))
}

/// Code 1: solvable `A, B ≤ N` with `N = AB` exact, first in scan order.
pub fn exact_factorization_search(n: &FinGroup, config: &SearchConfig) -> Result<Option<FactorizationCert>> {
    let list = config.subgroups(n, OrderFilter::Dividing(n.order()))?;
    let pairs = feasible_pairs(&list, n.order(), false);
    let found = pairs
        .par_iter()
        .map(|&(i, j)| sweep_conjugates(&list, i, j, |_| true).map(|b| (i, b)))
        .find_first(|r| r.is_some())
        .flatten();
    Ok(found.map(|(i, b)| FactorizationCert {
        p: n.clone(),
        a: list.classes[i].rep.clone(),
        b,
        meet_order: 1,
        coset_equality: None,
        split: None,
    }))
}

/// All `P` with `Inn(N) ≤ P ≤ M`, pulled back from the subgroups of
/// `M / Inn(N)`, largest first.
pub fn overgroups_of_inn(aut: &AutGroup) -> Result<Vec<FinGroup>> {
    let m = aut.group();
    let inn = aut.inn();
    let (out, hom) = quotient(m, inn)?;
    // a preimage of every element of Out, by breadth-first search on words
    let out_table = out.element_table();
    let mut lift: Vec<Option<Perm>> = vec![None; out_table.len()];
    lift[0] = Some(m.identity());
    let mut queue = VecDeque::from([0usize]);
    let gens: Vec<(Perm, usize)> = m
        .generators()
        .iter()
        .map(|g| (g.clone(), out_table.index_of(&hom.eval(g)).unwrap()))
        .collect();
    while let Some(x) = queue.pop_front() {
        for (g, gi) in &gens {
            let y = out_table.mul(x, *gi);
            if lift[y].is_none() {
                lift[y] = Some(lift[x].as_ref().unwrap().compose(g));
                queue.push_back(y);
            }
        }
    }
    if !out.is_solvable() {
        return Err(Error::Precondition("Out(N) is not solvable".into()));
    }
    let subs = solvable_subgroups(&out, OrderFilter::All)?;
    let mut result = Vec::new();
    for class in &subs.classes {
        for bits in &class.conjugates {
            let lifts: Vec<Perm> = bits.iter().filter_map(|i| lift[i].clone()).collect();
            result.push(inn.join(&lifts));
        }
    }
    result.sort_by(|a, b| {
        b.order()
            .cmp(&a.order())
            .then_with(|| gen_key(a).cmp(&gen_key(b)))
    });
    Ok(result)
}

fn gen_key(g: &FinGroup) -> Vec<Vec<u32>> {
    g.generators().iter().map(|p| p.images().to_vec()).collect()
}

/// Code 2: some `Inn(N) ≤ P` with `P = AB` exact, `A, B` solvable,
/// `A·Inn = B·Inn` and `A` split over `A ∩ Inn`.
pub fn code2_search(aut: &AutGroup, config: &SearchConfig) -> Result<Option<FactorizationCert>> {
    let inn = aut.inn();
    for p in overgroups_of_inn(aut)? {
        if let Some(cert) = code2_in(inn, &p, config)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// The Code 2 scan inside one overgroup `P`.
pub fn code2_in(inn: &FinGroup, p: &FinGroup, config: &SearchConfig) -> Result<Option<FactorizationCert>> {
    let list = config.subgroups(p, OrderFilter::All)?;
    let mut split_cache: Vec<Option<bool>> = vec![None; list.len()];
    for (i, j) in feasible_pairs(&list, p.order(), true) {
        let a = &list.classes[i].rep;
        let a_inn = inn.join(a.generators());
        let b = sweep_conjugates(&list, i, j, |b| a_inn == inn.join(b.generators()));
        let Some(b) = b else { continue };
        let split = match split_cache[i] {
            Some(s) => s,
            None => {
                let a0 = a.intersection(inn);
                let s = complement(a, &a0)?.is_some();
                split_cache[i] = Some(s);
                s
            }
        };
        if split {
            return Ok(Some(FactorizationCert {
                p: p.clone(),
                a: a.clone(),
                b,
                meet_order: 1,
                coset_equality: Some(true),
                split: Some(true),
            }));
        }
    }
    Ok(None)
}

/// One Code 3 output row, with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Code3Tuple {
    pub p_index: usize,
    pub a_index: usize,
    pub b_index: usize,
    pub a_order: u64,
    pub b_order: u64,
    pub meet_order: u64,
    pub p_over_inn: u64,
}

/// Code 3: over every overgroup `P` and class representatives `A, B`
/// (`b ≥ a`) of solvable subgroups of order dividing `|N|`, the pairs with
/// `|A||B| = |P||A ∩ B|` and `A·Inn = B·Inn`. With `allow_nonexact` false,
/// only `A ∩ B = 1` is reported.
pub fn code3_search(
    aut: &AutGroup,
    allow_nonexact: bool,
    config: &SearchConfig,
) -> Result<Vec<(Code3Tuple, FactorizationCert)>> {
    let inn = aut.inn();
    let n_order = inn.order();
    let mut out = Vec::new();
    for (pi, p) in overgroups_of_inn(aut)?.into_iter().enumerate() {
        let list = config.subgroups(&p, OrderFilter::Dividing(n_order))?;
        let k = list.len();
        let rows: Vec<Vec<(Code3Tuple, FactorizationCert)>> = (0..k)
            .into_par_iter()
            .map(|a| {
                let ra = &list.classes[a].rep;
                let a_inn = inn.join(ra.generators());
                let mut rows = Vec::new();
                for b in a..k {
                    let rb = &list.classes[b].rep;
                    let meet = list.classes[a].bits.intersection_count(&list.classes[b].bits) as u64;
                    if ra.order() * rb.order() != p.order() * meet {
                        continue;
                    }
                    if !allow_nonexact && meet != 1 {
                        continue;
                    }
                    if a_inn != inn.join(rb.generators()) {
                        continue;
                    }
                    rows.push((
                        Code3Tuple {
                            p_index: pi + 1,
                            a_index: a + 1,
                            b_index: b + 1,
                            a_order: ra.order(),
                            b_order: rb.order(),
                            meet_order: meet,
                            p_over_inn: p.order() / n_order,
                        },
                        FactorizationCert {
                            p: p.clone(),
                            a: ra.clone(),
                            b: rb.clone(),
                            meet_order: meet,
                            coset_equality: Some(true),
                            split: None,
                        },
                    ));
                }
                rows
            })
            .collect();
        out.extend(rows.into_iter().flatten());
    }
    Ok(out)
}
