use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holomorph::AutGroup;
use crate::matgrp::complement;
use crate::perm_core::{FinGroup, Perm};

/// `hypothesis ⟹ conclusion`, both evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl Implication {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Conditions on `(P, A, B)` transported by conjugation with `π ∈ Aut(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationReport {
    pub contains_inn: Implication,
    pub factorization: Implication,
    pub trivial_intersection: Implication,
    pub coset_equality: Implication,
    pub splitting: Implication,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        [
            self.contains_inn,
            self.factorization,
            self.trivial_intersection,
            self.coset_equality,
            self.splitting,
        ]
        .iter()
        .all(Implication::holds)
    }
}

/// Conditions on `(A_{π₁}, B_{π₂})` for `π₁, π₂ ∈ P = AB`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairConjugationReport {
    pub factorization: bool,
    pub trivial_intersection: Implication,
    pub coset_equality: Implication,
}

impl PairConjugationReport {
    pub fn passed(&self) -> bool {
        self.factorization && self.trivial_intersection.holds() && self.coset_equality.holds()
    }
}

/// `P = AB` as sets: `A, B ≤ P` and `|A||B| = |P||A ∩ B|`.
pub fn is_product(p: &FinGroup, a: &FinGroup, b: &FinGroup) -> bool {
    a.is_subgroup_of(p) && b.is_subgroup_of(p) && a.order() * b.order() == p.order() * a.intersection(b).order()
}

fn coset_equal(inn: &FinGroup, a: &FinGroup, b: &FinGroup) -> bool {
    inn.join(a.generators()) == inn.join(b.generators())
}

fn splits(inn: &FinGroup, a: &FinGroup) -> Result<bool> {
    let a0 = a.intersection(inn);
    Ok(complement(a, &a0)?.is_some())
}

/// Evaluates each condition on `(P, A, B)` and on `(P_π, A_π, B_π)` where
/// `Γ_π = πΓπ⁻¹`.
pub fn conj_invariance_check(
    aut: &AutGroup,
    p: &FinGroup,
    a: &FinGroup,
    b: &FinGroup,
    pi: &Perm,
) -> Result<ConjugationReport> {
    let m = aut.group();
    if !m.contains(pi) {
        return Err(Error::Precondition("π is not in Aut(N)".into()));
    }
    if !p.is_subgroup_of(m) || !a.is_subgroup_of(p) || !b.is_subgroup_of(p) {
        return Err(Error::Precondition("need A, B ≤ P ≤ Aut(N)".into()));
    }
    let inn = aut.inn();
    let (pp, ap, bp) = (p.conjugate(pi), a.conjugate(pi), b.conjugate(pi));
    let imp = |hypothesis, conclusion| Implication { hypothesis, conclusion };
    Ok(ConjugationReport {
        contains_inn: imp(inn.is_subgroup_of(p), inn.is_subgroup_of(&pp)),
        factorization: imp(is_product(p, a, b), is_product(&pp, &ap, &bp)),
        trivial_intersection: imp(a.intersection(b).is_trivial(), ap.intersection(&bp).is_trivial()),
        coset_equality: imp(coset_equal(inn, a, b), coset_equal(inn, &ap, &bp)),
        splitting: imp(splits(inn, a)?, splits(inn, &ap)?),
    })
}

/// Evaluates the conditions on `(A_{π₁}, B_{π₂})` for `P = AB ⊇ Inn(N)`
/// and `π₁, π₂ ∈ P`.
pub fn conj_pair_check(
    aut: &AutGroup,
    p: &FinGroup,
    a: &FinGroup,
    b: &FinGroup,
    pi1: &Perm,
    pi2: &Perm,
) -> Result<PairConjugationReport> {
    let inn = aut.inn();
    if !inn.is_subgroup_of(p) {
        return Err(Error::Precondition("P does not contain Inn(N)".into()));
    }
    if !is_product(p, a, b) {
        return Err(Error::Precondition("P ≠ AB".into()));
    }
    if !p.contains(pi1) || !p.contains(pi2) {
        return Err(Error::Precondition("π₁, π₂ must lie in P".into()));
    }
    let (a1, b2) = (a.conjugate(pi1), b.conjugate(pi2));
    let imp = |hypothesis, conclusion| Implication { hypothesis, conclusion };
    Ok(PairConjugationReport {
        factorization: is_product(p, &a1, &b2),
        trivial_intersection: imp(a.intersection(b).is_trivial(), a1.intersection(&b2).is_trivial()),
        coset_equality: imp(coset_equal(inn, a, b), coset_equal(inn, &a1, &b2)),
    })
}
