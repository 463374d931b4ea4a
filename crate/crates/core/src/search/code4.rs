use serde::{Deserialize, Serialize};

use super::factor::SearchConfig;
use super::subgroups::OrderFilter;
use crate::error::{Error, Result};
use crate::holomorph::{AutGroup, HolGroup};
use crate::perm_core::{
    conjugation_action_hom, is_isomorphic, normal_subgroups_of_order, quotient, semidirect_product, FinGroup,
    GroupHom, Perm,
};
use crate::realize::{realize_centerless, Construction, KernelData, RealizationCert};

/// Which automorphisms of `A` and `B` the final scan tries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AutScan {
    /// identity plus a generating set of each automorphism group
    #[default]
    Generators,
    /// every element
    Full,
}

/// Kernels `K_f, K_h ⊴ G` with `G/K_f ≅ A`, `G/K_h ≅ B`.
#[derive(Clone, Debug)]
pub struct KernelPair {
    pub kf: FinGroup,
    pub kh: FinGroup,
    /// `G → A`, the composite `φ_f ∘ q_f`
    pub to_a: (GroupHom, GroupHom),
    /// `G → B`, the composite `φ_h ∘ q_h`
    pub to_b: (GroupHom, GroupHom),
}

impl KernelPair {
    fn map_a(&self, s: &Perm) -> Perm {
        self.to_a.1.eval(&self.to_a.0.eval(s))
    }

    fn map_b(&self, s: &Perm) -> Perm {
        self.to_b.1.eval(&self.to_b.0.eval(s))
    }
}

/// The homomorphisms `f = π_A ∘ φ_f ∘ q_f`, `h = π_B ∘ φ_h ∘ q_h` on the
/// generators of `G`.
#[derive(Clone, Debug)]
pub struct Code4Pair {
    pub pi_a: Perm,
    pub pi_b: Perm,
    pub f: Vec<Perm>,
    pub h: Vec<Perm>,
}

/// Part I: solvable subgroups of order `|N|` in `Inn(N) ⋊ A`, up to
/// conjugacy.
pub fn code4_part1(aut: &AutGroup, a: &FinGroup, config: &SearchConfig) -> Result<Vec<FinGroup>> {
    let inn = aut.inn();
    if !a.is_subgroup_of(aut.group()) {
        return Err(Error::Precondition("A is not contained in Aut(N)".into()));
    }
    let action = conjugation_action_hom(&inn.element_table(), a)?;
    let sd = semidirect_product(inn, a, &action)?;
    let list = config.subgroups(&sd.group, OrderFilter::Equal(inn.order()))?;
    Ok(list.reps())
}

/// Part II: normal `K_f, K_h ⊴ G` of orders `|G|/|A|`, `|G|/|B|` with
/// `K_f ∩ K_h = 1` and quotients isomorphic to `A`, `B`.
pub fn code4_part2(g: &FinGroup, a: &FinGroup, b: &FinGroup) -> Result<Vec<KernelPair>> {
    let n = g.order();
    if !n.is_multiple_of(a.order()) || !n.is_multiple_of(b.order()) {
        return Ok(Vec::new());
    }
    let to = |k: &FinGroup, target: &FinGroup| -> Result<Option<(GroupHom, GroupHom)>> {
        let (q, qk) = quotient(g, k)?;
        Ok(is_isomorphic(&q, target)?.map(|phi| (qk, phi)))
    };
    let kfs = normal_subgroups_of_order(g, n / a.order())?;
    let khs = normal_subgroups_of_order(g, n / b.order())?;
    let mut out = Vec::new();
    for kf in &kfs {
        let Some(to_a) = to(kf, a)? else { continue };
        for kh in &khs {
            if !kf.intersection(kh).is_trivial() {
                continue;
            }
            if let Some(to_b) = to(kh, b)? {
                out.push(KernelPair {
                    kf: kf.clone(),
                    kh: kh.clone(),
                    to_a: to_a.clone(),
                    to_b,
                });
            }
        }
    }
    Ok(out)
}

fn scan_list(x: &FinGroup, scan: AutScan) -> Result<(AutGroup, Vec<Perm>)> {
    let aut = AutGroup::brute_force(x)?;
    let list = match scan {
        AutScan::Generators => {
            let mut l = vec![aut.identity()];
            l.extend(aut.group().generators().iter().cloned());
            l
        }
        AutScan::Full => aut.group().elements(),
    };
    Ok((aut, list))
}

fn apply_aut(aut: &AutGroup, pi: &Perm, x: &Perm) -> Perm {
    let t = aut.n_table();
    t.element(aut.apply(pi, t.index_of(x).expect("element of the source"))).clone()
}

/// Part III: `π_A ∈ Aut(A)`, `π_B ∈ Aut(B)` with `f(σ) ≡ h(σ) mod Inn(N)` on
/// the generators of `G`.
pub fn code4_generator_scan(
    aut: &AutGroup,
    g: &FinGroup,
    kernels: &KernelPair,
    a: &FinGroup,
    b: &FinGroup,
    scan: AutScan,
) -> Result<Option<Code4Pair>> {
    let (aut_a, list_a) = scan_list(a, scan)?;
    let (aut_b, list_b) = scan_list(b, scan)?;
    let base_a: Vec<Perm> = g.generators().iter().map(|s| kernels.map_a(s)).collect();
    let base_b: Vec<Perm> = g.generators().iter().map(|s| kernels.map_b(s)).collect();
    for pi_a in &list_a {
        let f: Vec<Perm> = base_a.iter().map(|x| apply_aut(&aut_a, pi_a, x)).collect();
        for pi_b in &list_b {
            let h: Vec<Perm> = base_b.iter().map(|x| apply_aut(&aut_b, pi_b, x)).collect();
            let congruent = f
                .iter()
                .zip(&h)
                .all(|(fs, hs)| aut.conj_inv(&hs.compose(&fs.inverse())).is_some());
            if congruent {
                return Ok(Some(Code4Pair {
                    pi_a: pi_a.clone(),
                    pi_b: pi_b.clone(),
                    f,
                    h,
                }));
            }
        }
    }
    Ok(None)
}

/// Parts I to III for given `A, B ≤ Aut(N)`, feeding the first pair found
/// into the centerless construction.
pub fn code4_search(
    hol: &HolGroup,
    a: &FinGroup,
    b: &FinGroup,
    config: &SearchConfig,
    scan: AutScan,
) -> Result<RealizationCert> {
    let aut = hol.aut();
    let candidates = code4_part1(aut, a, config)?;
    if candidates.is_empty() {
        return Err(Error::Exhausted("Inn(N) ⋊ A has no solvable subgroup of order |N|".into()));
    }
    let mut kernels_seen = false;
    for g in &candidates {
        for kp in code4_part2(g, a, b)? {
            kernels_seen = true;
            if let Some(pair) = code4_generator_scan(aut, g, &kp, a, b, scan)? {
                let mut cert = realize_centerless(hol, g, pair.f, pair.h)?;
                cert.construction = Construction::Code4;
                cert.code4 = Some(KernelData {
                    a: a.clone(),
                    b: b.clone(),
                    kf: kp.kf.clone(),
                    kh: kp.kh.clone(),
                });
                return Ok(cert);
            }
        }
    }
    Err(Error::Exhausted(if kernels_seen {
        "no automorphism pair satisfies the congruence on generators".into()
    } else {
        "no kernels with G/K_f ≅ A, G/K_h ≅ B and K_f ∩ K_h = 1".into()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorph::validate_prop22;
    use crate::matgrp::{field, pgl2_exact_factorization};

    fn psl2_instance(q: u64) -> (HolGroup, FinGroup, FinGroup) {
        let f = field(q).unwrap();
        let fac = pgl2_exact_factorization(&f).unwrap();
        let hol = HolGroup::new(AutGroup::explicit_psl2(&f).unwrap()).unwrap();
        (hol, fac.a, fac.b)
    }

    #[test]
    fn psl2_5_pipeline() {
        let (hol, a, b) = psl2_instance(5);
        let config = SearchConfig::default();
        let gs = code4_part1(hol.aut(), &a, &config).unwrap();
        assert!(!gs.is_empty());
        assert!(gs.iter().all(|g| g.order() == 60 && g.is_solvable()));
        let cert = code4_search(&hol, &a, &b, &config, AutScan::Generators).unwrap();
        cert.check().unwrap();
        assert_eq!(cert.construction, Construction::Code4);
        assert!(validate_prop22(&cert.regular).passed());
        let m = hol.aut().group();
        assert_eq!(m.subgroup(cert.pair.first.clone()).unwrap().order(), 6);
        assert_eq!(m.subgroup(cert.pair.second.clone()).unwrap().order(), 20);
    }

    #[test]
    fn full_scan_agrees() {
        let (hol, a, b) = psl2_instance(5);
        let cert = code4_search(&hol, &a, &b, &SearchConfig::default(), AutScan::Full).unwrap();
        cert.check().unwrap();
    }

    #[test]
    fn mismatched_quotients_exhaust() {
        let (_, a, b) = psl2_instance(5);
        // C60 has no quotient isomorphic to the nonabelian A
        let g = FinGroup::cyclic(60);
        assert!(code4_part2(&g, &a, &b).unwrap().is_empty());
        let (hol, a, _) = psl2_instance(5);
        let err = code4_search(&hol, &a, &a, &SearchConfig::default(), AutScan::Generators).unwrap_err();
        assert!(matches!(err, Error::Exhausted(_)));
    }
}
