use serde::{Deserialize, Serialize};

use super::pair::{FpfPair, FpfReport, PairTarget};
use crate::error::{Error, Result};
use crate::holomorph::{decompose, HolElem, HolGroup, RegularSubgroupCert};
use crate::matgrp::complement;
use crate::perm_core::{
    conjugation_action, direct_product, hom_from_images, semidirect_product, FinGroup, HomVerify, Perm,
};

/// Which construction produced a realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Prop24,
    Prop26,
    Prop27,
    Psl2Even,
    Psl2Q1mod4,
    Psl2Q3mod4,
    Code4,
}

impl Construction {
    pub fn tag(&self) -> &'static str {
        match self {
            Construction::Prop24 => "prop24",
            Construction::Prop26 => "prop26",
            Construction::Prop27 => "prop27",
            Construction::Psl2Even => "psl2-even",
            Construction::Psl2Q1mod4 => "psl2-q1mod4",
            Construction::Psl2Q3mod4 => "psl2-q3mod4",
            Construction::Code4 => "code4",
        }
    }
}

/// Intermediate data of the `P = AB` construction, all inside `M`.
#[derive(Clone, Debug)]
pub struct Prop27Data {
    pub p: FinGroup,
    pub a: FinGroup,
    pub b: FinGroup,
    pub a0: FinGroup,
    pub b0: FinGroup,
    /// complement of `A₀` in `A`
    pub c: FinGroup,
    /// `θ(b B₀)` for each generator `b` of `B`
    pub theta_images: Vec<Perm>,
}

/// A solvable `G` with a regular subgroup `Δ ≅ G` of `Hol(N)`.
#[derive(Clone, Debug)]
pub struct RealizationCert {
    pub construction: Construction,
    pub regular: RegularSubgroupCert,
    pub pair: FpfPair,
    pub fpf: FpfReport,
    pub derived_series_orders: Vec<u64>,
    pub prop27: Option<Prop27Data>,
    /// the roles of `A` and `B` were exchanged before applying the
    /// `P = AB` construction
    pub role_swap: bool,
    pub q: Option<u64>,
    pub code4: Option<KernelData>,
}

/// Images and kernels of `f` and `h` fixed in advance.
#[derive(Clone, Debug)]
pub struct KernelData {
    pub a: FinGroup,
    pub b: FinGroup,
    pub kf: FinGroup,
    pub kh: FinGroup,
}

impl RealizationCert {
    pub fn g(&self) -> &FinGroup {
        &self.regular.g
    }

    pub fn hol(&self) -> &HolGroup {
        &self.regular.hol
    }

    pub fn n(&self) -> usize {
        self.regular.n()
    }

    /// Replays the decomposition, the pair checks and solvability.
    pub fn check(&self) -> Result<()> {
        let hol = self.hol();
        let replay = decompose(hol, Some(self.g()), &self.regular.delta_generators)?;
        if replay.trace.xi != self.regular.trace.xi {
            return Err(Error::verification("delta", "replayed ξ values differ"));
        }
        let fpf = self.pair.check(hol.aut())?;
        if !fpf.passed() {
            return Err(Error::NotFpf(format!("{fpf:?}")));
        }
        let series: Vec<u64> = self.g().derived_series().iter().map(|d| d.order()).collect();
        if series.last() != Some(&1) {
            return Err(Error::verification("solvable", "derived series does not reach 1"));
        }
        if series != self.derived_series_orders {
            return Err(Error::verification("solvable", "derived series orders differ"));
        }
        Ok(())
    }
}

fn solvable_series(g: &FinGroup) -> Result<Vec<u64>> {
    let series: Vec<u64> = g.derived_series().iter().map(|d| d.order()).collect();
    if series.last() != Some(&1) {
        return Err(Error::Precondition("G is not solvable".into()));
    }
    Ok(series)
}

/// Checks `A, B ≤ H`, `|A||B| = |H|` and `A ∩ B = 1`.
pub fn check_exact_factorization(h: &FinGroup, a: &FinGroup, b: &FinGroup) -> Result<()> {
    if !a.is_subgroup_of(h) || !b.is_subgroup_of(h) {
        return Err(Error::NotExactFactorization("A or B is not a subgroup".into()));
    }
    if a.order() * b.order() != h.order() {
        return Err(Error::NotExactFactorization(format!(
            "|A||B| = {} but the group has order {}",
            a.order() * b.order(),
            h.order()
        )));
    }
    let meet = a.intersection(b);
    if !meet.is_trivial() {
        return Err(Error::NotExactFactorization(format!("|A ∩ B| = {}", meet.order())));
    }
    Ok(())
}

/// `N = AB` exact gives `Δ = {λ(a)ρ(b)}` realizing `G = A × B`.
pub fn realize_exact_factorization(hol: &HolGroup, a: &FinGroup, b: &FinGroup) -> Result<RealizationCert> {
    let aut = hol.aut();
    let n = aut.n_group();
    check_exact_factorization(n, a, b)?;
    let dp = direct_product(a, b);
    let g = dp.group.clone();
    let derived_series_orders = solvable_series(&g)?;
    let nt = aut.n_table();
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    let mut delta = Vec::new();
    for s in g.generators() {
        let (x, y) = (dp.left(s), dp.right(s));
        let xi = nt.index_of(&x).expect("A ≤ N");
        let yi = nt.index_of(&y).expect("B ≤ N");
        delta.push(hol.mul(&hol.lambda(xi), &hol.rho(yi)));
        phi.push(x);
        psi.push(y);
    }
    let pair = FpfPair {
        target: PairTarget::N,
        g: g.clone(),
        first: phi,
        second: psi,
    };
    let fpf = pair.check(aut)?;
    if !fpf.passed() {
        return Err(Error::NotFpf(format!("{} fixed points", fpf.fixed_points)));
    }
    let regular = decompose(hol, Some(&g), &delta)?;
    Ok(RealizationCert {
        construction: Construction::Prop24,
        regular,
        pair,
        fpf,
        derived_series_orders,
        prop27: None,
        role_swap: false,
        q: None,
        code4: None,
    })
}

/// `Δ = {ρ(conj⁻¹(h(σ)f(σ)⁻¹))·f(σ)}` for a fixed point free pair
/// `f, h: G → M` congruent modulo `Inn(N)`, with `Z(N) = 1`.
pub fn realize_centerless(hol: &HolGroup, g: &FinGroup, f: Vec<Perm>, h: Vec<Perm>) -> Result<RealizationCert> {
    let aut = hol.aut();
    if !aut.n_group().center().is_trivial() {
        return Err(Error::CenterNotTrivial);
    }
    let pair = FpfPair {
        target: PairTarget::Aut,
        g: g.clone(),
        first: f,
        second: h,
    };
    if let Some(generator) = pair.congruence_failure(aut) {
        return Err(Error::CongruenceFails { generator });
    }
    let fpf = pair.check(aut)?;
    if fpf.fixed_points > 0 {
        return Err(Error::NotFpf(format!(
            "{} non-identity elements with f(σ) = h(σ)",
            fpf.fixed_points
        )));
    }
    let derived_series_orders = solvable_series(g)?;
    let delta: Vec<HolElem> = pair
        .first
        .iter()
        .zip(&pair.second)
        .map(|(fs, hs)| HolElem {
            shift: aut
                .conj_inv(&hs.compose(&fs.inverse()))
                .expect("congruence puts h f⁻¹ in Inn(N)"),
            aut: fs.clone(),
        })
        .collect();
    let regular = decompose(hol, Some(g), &delta)?;
    Ok(RealizationCert {
        construction: Construction::Prop26,
        regular,
        pair,
        fpf,
        derived_series_orders,
        prop27: None,
        role_swap: false,
        q: None,
        code4: None,
    })
}

/// `θ: B → C`, `b ↦` the unique `c ∈ C` with `b ∈ c·Inn(N)`.
fn theta_image(inn: &FinGroup, c_elems: &[Perm], b: &Perm) -> Option<Perm> {
    c_elems
        .iter()
        .find(|c| inn.contains(&c.inverse().compose(b)))
        .cloned()
}

/// `P = AB` exact inside `M` with `A·Inn = B·Inn` and `A` split over
/// `A₀ = A ∩ Inn` realizes `G = A₀ ⋊_α B`, `α(b) = conjugation by θ(bB₀)`.
pub fn realize_prop27(hol: &HolGroup, p: &FinGroup, a: &FinGroup, b: &FinGroup) -> Result<RealizationCert> {
    let aut = hol.aut();
    if !aut.n_group().center().is_trivial() {
        return Err(Error::CenterNotTrivial);
    }
    let inn = aut.inn();
    if !p.is_subgroup_of(aut.group()) {
        return Err(Error::Precondition("P is not contained in Aut(N)".into()));
    }
    if !inn.is_subgroup_of(p) {
        return Err(Error::Precondition("P does not contain Inn(N)".into()));
    }
    check_exact_factorization(p, a, b)?;
    if inn.join(a.generators()) != inn.join(b.generators()) {
        return Err(Error::Precondition("A·Inn(N) ≠ B·Inn(N)".into()));
    }
    let a0 = a.intersection(inn);
    let b0 = b.intersection(inn);
    if a0.order() * b.order() != inn.order() {
        return Err(Error::Precondition(format!(
            "|A₀||B| = {} but |Inn(N)| = {}",
            a0.order() * b.order(),
            inn.order()
        )));
    }
    let c = complement(a, &a0)?
        .ok_or_else(|| Error::Precondition("A does not split over A ∩ Inn(N)".into()))?;

    let c_elems = c.elements();
    let theta_images: Vec<Perm> = b
        .generators()
        .iter()
        .map(|bg| theta_image(inn, &c_elems, bg))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("B·Inn(N) is not covered by C·Inn(N)".into()))?;
    let theta = hom_from_images(b, &c, theta_images.clone(), HomVerify::Exhaustive)?;
    if theta.kernel() != b0 {
        return Err(Error::verification("theta", "ker θ ≠ B₀"));
    }

    let a0_table = a0.element_table();
    let alpha_images: Vec<Perm> = theta_images.iter().map(|t| conjugation_action(&a0_table, t)).collect();
    let alpha_target = FinGroup::from_generators(alpha_images.clone(), a0_table.len())?;
    let alpha = hom_from_images(b, &alpha_target, alpha_images, HomVerify::Exhaustive)?;
    let sd = semidirect_product(&a0, b, &alpha)?;
    let g = sd.group.clone();

    let mut f = Vec::new();
    let mut h = Vec::new();
    for s in g.generators() {
        let (k, bb) = (sd.k_part(s), sd.h_part(s));
        f.push(k.compose(&theta.eval(&bb)));
        h.push(bb);
    }
    let mut cert = realize_centerless(hol, &g, f, h)?;
    cert.construction = Construction::Prop27;
    cert.prop27 = Some(Prop27Data {
        p: p.clone(),
        a: a.clone(),
        b: b.clone(),
        a0,
        b0,
        c,
        theta_images,
    });
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorph::AutGroup;
    use crate::perm_core::is_isomorphic;
    use std::collections::HashSet;

    fn s3_setup() -> (HolGroup, FinGroup, FinGroup) {
        let s3 = FinGroup::symmetric(3);
        let hol = HolGroup::new(AutGroup::inner(&s3).unwrap()).unwrap();
        let a = FinGroup::alternating(3);
        let b = FinGroup::from_generators(vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()], 3).unwrap();
        (hol, a, b)
    }

    fn delta_set(c: &RealizationCert) -> HashSet<HolElem> {
        c.regular.trace.delta.iter().cloned().collect()
    }

    #[test]
    fn s3_exact_factorization() {
        let (hol, a, b) = s3_setup();
        let cert = realize_exact_factorization(&hol, &a, &b).unwrap();
        assert_eq!(cert.g().order(), 6);
        assert!(cert.g().is_abelian());
        cert.check().unwrap();
    }

    #[test]
    fn non_exact_is_rejected() {
        let (hol, a, _) = s3_setup();
        let n = hol.aut().n_group().clone();
        assert!(matches!(
            realize_exact_factorization(&hol, &n, &n),
            Err(Error::NotExactFactorization(_))
        ));
        assert!(matches!(
            realize_exact_factorization(&hol, &a, &a),
            Err(Error::NotExactFactorization(_))
        ));
    }

    #[test]
    fn inner_valued_centerless_equals_exact_factorization() {
        let (hol, a, b) = s3_setup();
        let exact = realize_exact_factorization(&hol, &a, &b).unwrap();
        let dp = direct_product(&a, &b);
        let aut = hol.aut();
        let conj = |x: &Perm| aut.conj(aut.n_table().index_of(x).unwrap());
        let f = dp.group.generators().iter().map(|s| conj(&dp.left(s))).collect();
        let h = dp.group.generators().iter().map(|s| conj(&dp.right(s))).collect();
        let cl = realize_centerless(&hol, &dp.group, f, h).unwrap();
        assert_eq!(delta_set(&exact), delta_set(&cl));
    }

    #[test]
    fn equal_pair_is_not_fpf() {
        let (hol, _, _) = s3_setup();
        let n = hol.aut().n_group().clone();
        let imgs: Vec<Perm> = n.generators().to_vec();
        assert!(matches!(
            realize_centerless(&hol, &n, imgs.clone(), imgs),
            Err(Error::NotFpf(_))
        ));
    }

    #[test]
    fn prop27_with_inn_recovers_direct_product() {
        let (hol, a, b) = s3_setup();
        let inn = hol.aut().inn().clone();
        let c27 = realize_prop27(&hol, &inn, &a, &b).unwrap();
        let exact = realize_exact_factorization(&hol, &a, &b).unwrap();
        assert_eq!(c27.prop27.as_ref().unwrap().c.order(), 1);
        assert_eq!(delta_set(&c27), delta_set(&exact));
        assert!(is_isomorphic(c27.g(), exact.g()).unwrap().is_some());
        c27.check().unwrap();
    }

    #[test]
    fn congruence_failure_is_reported() {
        // Aut(A4) = S4 has outer automorphisms
        let a4 = FinGroup::alternating(4);
        let hol = HolGroup::new(AutGroup::brute_force(&a4).unwrap()).unwrap();
        let aut = hol.aut();
        let outer = aut
            .group()
            .generators()
            .iter()
            .find(|m| !aut.inn().contains(m))
            .unwrap()
            .clone();
        let c2 = FinGroup::cyclic(2);
        let id = aut.identity();
        let r = realize_centerless(&hol, &c2, vec![outer], vec![id]);
        assert!(matches!(r, Err(Error::CongruenceFails { generator: 0 })));
    }
}
