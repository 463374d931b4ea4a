use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::hol::{HolElem, HolGroup};
use crate::error::{Error, Result};
use crate::perm_core::{hom_from_images, ElementTable, FinGroup, GroupHom, HomVerify, Perm};

/// `|N|` up to which `f(G)h(G) = h(G)f(G)` is compared element by element.
pub const PRODUCT_SET_LIMIT: usize = 500;

/// A regular subgroup given by generators, with its elements indexed by
/// `ξ(δ) = δ(1)`.
#[derive(Clone, Debug)]
pub struct RegularSubgroup {
    pub generators: Vec<HolElem>,
    pub by_xi: Vec<HolElem>,
}

/// Closes `⟨gens⟩` while keeping `ξ` injective; fails as soon as two
/// distinct elements share a `ξ` value or the closure is too small.
pub fn is_regular(hol: &HolGroup, gens: &[HolElem]) -> Result<RegularSubgroup> {
    let n = hol.n();
    let mut by_xi: Vec<Option<HolElem>> = vec![None; n];
    by_xi[0] = Some(hol.identity());
    let mut queue = VecDeque::from([hol.identity()]);
    let mut count = 1;
    while let Some(d) = queue.pop_front() {
        for s in gens {
            let e = hol.mul(&d, s);
            let k = hol.xi(&e);
            match &by_xi[k] {
                None => {
                    by_xi[k] = Some(e.clone());
                    count += 1;
                    queue.push_back(e);
                }
                Some(prev) if *prev != e => {
                    return Err(Error::NotRegular(format!(
                        "two elements send the identity to element {k}: the subgroup is not free"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    if count < n {
        return Err(Error::NotRegular(format!(
            "subgroup of order {count} cannot be transitive on {n} points"
        )));
    }
    Ok(RegularSubgroup {
        generators: gens.to_vec(),
        by_xi: by_xi.into_iter().map(Option::unwrap).collect(),
    })
}

/// The map `σ ↦ δ_σ` from `G` to `Hol(N)` traced over the Cayley graph of
/// `G`, indexed by `G`'s element table.
#[derive(Clone, Debug)]
pub struct DeltaTrace {
    pub g_table: ElementTable,
    pub delta: Vec<HolElem>,
    /// `ξ(δ_σ)` for every `σ` in element-table order.
    pub xi: Vec<u32>,
    /// inverse of `xi`
    pub by_xi: Vec<u32>,
}

/// Extends `δ` from the generators of `g` along every Cayley edge. Success
/// proves that `σ ↦ δ_σ` is a homomorphism whose image is regular (`ξ`
/// bijective), hence an isomorphism onto a regular subgroup.
pub fn trace_delta(hol: &HolGroup, g: &FinGroup, delta_gens: &[HolElem]) -> Result<DeltaTrace> {
    let n = hol.n();
    if g.order() != n as u64 {
        return Err(Error::NotRegular(format!("|G| = {} but |N| = {n}", g.order())));
    }
    if delta_gens.len() != g.generators().len() {
        return Err(Error::Precondition(format!(
            "{} images for {} generators",
            delta_gens.len(),
            g.generators().len()
        )));
    }
    let table = g.element_table();
    let gens = table.generator_indices();
    let mut delta: Vec<Option<HolElem>> = vec![None; n];
    delta[0] = Some(hol.identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let dx = delta[x].clone().unwrap();
        for (&s, ds) in gens.iter().zip(delta_gens) {
            let y = table.mul(x, s);
            let dy = hol.mul(&dx, ds);
            match &delta[y] {
                None => {
                    delta[y] = Some(dy);
                    queue.push_back(y);
                }
                Some(prev) if *prev != dy => {
                    return Err(Error::NotAHomomorphism(format!(
                        "σ ↦ δ_σ is inconsistent at element {x} times generator {s}"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let delta: Vec<HolElem> = delta.into_iter().map(Option::unwrap).collect();
    let xi: Vec<u32> = delta.iter().map(|d| hol.xi(d) as u32).collect();
    let mut by_xi = vec![u32::MAX; n];
    for (i, &k) in xi.iter().enumerate() {
        if by_xi[k as usize] != u32::MAX {
            return Err(Error::NotRegular(format!(
                "ξ is not injective: two elements map to {k}"
            )));
        }
        by_xi[k as usize] = i as u32;
    }
    Ok(DeltaTrace {
        g_table: table,
        delta,
        xi,
        by_xi,
    })
}

/// A regular subgroup `Δ ≅ G` with the data `(f, g, h)`:
/// `δ_σ = ρ(g(σ))·f(σ)` and `h(σ) = conj(g(σ))·f(σ)`.
#[derive(Clone, Debug)]
pub struct RegularSubgroupCert {
    pub hol: HolGroup,
    pub g: FinGroup,
    pub delta_generators: Vec<HolElem>,
    pub trace: DeltaTrace,
    pub f: GroupHom,
    pub h: GroupHom,
    /// `h(σ)` in element-table order of `G`.
    pub h_values: Vec<Perm>,
}

impl RegularSubgroupCert {
    pub fn n(&self) -> usize {
        self.hol.n()
    }

    /// `g(σ)` as an element index of `N`.
    pub fn g_value(&self, sigma: usize) -> usize {
        self.trace.delta[sigma].shift
    }

    pub fn f_value(&self, sigma: usize) -> &Perm {
        &self.trace.delta[sigma].aut
    }

    /// The element of `Δ` with `ξ = x`.
    pub fn delta_at_xi(&self, x: usize) -> &HolElem {
        &self.trace.delta[self.trace.by_xi[x] as usize]
    }
}

/// Decomposes `Δ = ⟨delta_gens⟩`. When `g` is given its generators
/// correspond to `delta_gens`; otherwise `G` is `Δ` acting on `N`.
pub fn decompose(hol: &HolGroup, g: Option<&FinGroup>, delta_gens: &[HolElem]) -> Result<RegularSubgroupCert> {
    let (g, delta_gens) = match g {
        Some(g) => (g.clone(), delta_gens.to_vec()),
        None => {
            let gens: Vec<HolElem> = delta_gens
                .iter()
                .filter(|d| **d != hol.identity())
                .cloned()
                .collect();
            let perms = gens.iter().map(|d| hol.to_perm(d)).collect();
            (FinGroup::from_generators(perms, hol.n())?, gens)
        }
    };
    let trace = trace_delta(hol, &g, &delta_gens)?;
    let aut = hol.aut();
    let h_of = |d: &HolElem| aut.conj(d.shift).compose(&d.aut);
    let h_values: Vec<Perm> = trace.delta.iter().map(h_of).collect();
    // h is a homomorphism: check every Cayley edge
    let table = &trace.g_table;
    let gens = table.generator_indices();
    for x in 0..table.len() {
        for &s in &gens {
            let y = table.mul(x, s);
            if h_values[y] != h_values[x].compose(&h_values[s]) {
                return Err(Error::NotAHomomorphism(format!(
                    "h(σs) ≠ h(σ)h(s) at element {x}, generator {s}"
                )));
            }
        }
    }
    let f_imgs: Vec<Perm> = delta_gens.iter().map(|d| d.aut.clone()).collect();
    let h_imgs: Vec<Perm> = delta_gens.iter().map(h_of).collect();
    let f = hom_from_images(&g, aut.group(), f_imgs, HomVerify::Auto)?;
    let h = hom_from_images(&g, aut.group(), h_imgs, HomVerify::Auto)?;
    Ok(RegularSubgroupCert {
        hol: hol.clone(),
        g,
        delta_generators: delta_gens,
        trace,
        f,
        h,
        h_values,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductCheck {
    /// Both product sets were enumerated.
    Exhaustive,
    /// `|⟨F, H⟩|·|F ∩ H| = |F||H|`, which holds iff `FH = HF`.
    OrderArithmetic,
}

/// Conclusions about `f(G)` and `h(G)` for a regular subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop22Report {
    pub h_homomorphism: bool,
    pub f_inn_equals_h_inn: bool,
    pub fh_equals_hf: bool,
    pub product_check: ProductCheck,
    pub fh_contains_inn: bool,
    pub f_image_order: u64,
    pub h_image_order: u64,
    pub product_order: u64,
}

impl Prop22Report {
    pub fn passed(&self) -> bool {
        self.h_homomorphism && self.f_inn_equals_h_inn && self.fh_equals_hf && self.fh_contains_inn
    }
}

pub fn validate_prop22(cert: &RegularSubgroupCert) -> Prop22Report {
    let aut = cert.hol.aut();
    let m = aut.group();
    let inn = aut.inn();
    let fg = cert.f.image();
    let hg = cert.h.image();
    let f_inn = fg.join(inn.generators());
    let h_inn = hg.join(inn.generators());
    let joined = fg.join(hg.generators());
    let meet = fg.intersection(&hg);

    let (fh_equals_hf, product_check) = if cert.n() <= PRODUCT_SET_LIMIT {
        let fe = fg.elements();
        let he = hg.elements();
        let key = |p: &Perm| m.rank(p).expect("images lie in M");
        let fh: HashSet<u64> = fe
            .iter()
            .flat_map(|a| he.iter().map(move |b| a.compose(b)))
            .map(|p| key(&p))
            .collect();
        let hf: HashSet<u64> = he
            .iter()
            .flat_map(|b| fe.iter().map(move |a| b.compose(a)))
            .map(|p| key(&p))
            .collect();
        (fh == hf, ProductCheck::Exhaustive)
    } else {
        (
            joined.order() * meet.order() == fg.order() * hg.order(),
            ProductCheck::OrderArithmetic,
        )
    };
    Prop22Report {
        h_homomorphism: true,
        f_inn_equals_h_inn: f_inn == h_inn,
        fh_equals_hf,
        product_check,
        fh_contains_inn: inn.is_subgroup_of(&joined),
        f_image_order: fg.order(),
        h_image_order: hg.order(),
        product_order: fg.order() * hg.order() / meet.order(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorph::aut::AutGroup;

    fn hol_of(n: &FinGroup) -> HolGroup {
        HolGroup::new(AutGroup::brute_force(n).unwrap()).unwrap()
    }

    #[test]
    fn lambda_and_rho_are_regular() {
        let h = hol_of(&FinGroup::symmetric(3));
        assert!(is_regular(&h, &h.lambda_generators()).is_ok());
        assert!(is_regular(&h, &h.rho_generators()).is_ok());
        let auts: Vec<HolElem> = h.aut().group().generators().iter().map(|m| h.aut_elem(m)).collect();
        assert!(matches!(is_regular(&h, &auts), Err(Error::NotRegular(_))));
    }

    #[test]
    fn rho_decomposition_has_trivial_f() {
        let h = hol_of(&FinGroup::dihedral(4));
        let cert = decompose(&h, None, &h.rho_generators()).unwrap();
        assert!(cert.f.image().is_trivial());
        // g = ξ⁻¹ pointwise inverse: ξ(δ) = g⁻¹
        let t = h.aut().n_table();
        for s in 0..cert.n() {
            assert_eq!(cert.trace.xi[s] as usize, t.inv(cert.g_value(s)));
        }
        let report = validate_prop22(&cert);
        assert!(report.passed());
    }

    #[test]
    fn lambda_decomposition_has_trivial_h() {
        let h = hol_of(&FinGroup::alternating(4));
        let cert = decompose(&h, None, &h.lambda_generators()).unwrap();
        assert!(cert.h.image().is_trivial());
        assert!(validate_prop22(&cert).passed());
    }

    #[test]
    fn wrong_order_is_refused() {
        let h = hol_of(&FinGroup::cyclic(6));
        let t = h.aut().n_table();
        // ρ of an element of order 3 generates a non-transitive subgroup
        let x = (0..6).find(|&x| t.element(x).order() == 3).unwrap();
        assert!(matches!(is_regular(&h, &[h.rho(x)]), Err(Error::NotRegular(_))));
    }
}
