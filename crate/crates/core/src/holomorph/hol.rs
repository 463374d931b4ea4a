use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::aut::AutGroup;
use crate::error::{Error, Result};
use crate::perm_core::{FinGroup, Perm};

/// Largest `|N|` for which the holomorph is built.
pub const HOLOMORPH_LIMIT: u64 = 10_000;

/// Element `ρ(g)·f` of `Hol(N) = ρ(N) ⋊ M`, acting on `N` by
/// `x ↦ α_f(x)·g⁻¹`. `shift` is the element index of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HolElem {
    pub shift: usize,
    pub aut: Perm,
}

/// `Hol(N)` represented through `(N, M)`; its elements are never all
/// materialized.
#[derive(Clone, Debug)]
pub struct HolGroup {
    aut: Arc<AutGroup>,
}

impl HolGroup {
    pub fn new(aut: AutGroup) -> Result<Self> {
        if aut.n() as u64 > HOLOMORPH_LIMIT {
            return Err(Error::size_limit("holomorph", HOLOMORPH_LIMIT, aut.n() as u64));
        }
        let hol = HolGroup { aut: Arc::new(aut) };
        hol.check_invariants()?;
        Ok(hol)
    }

    pub fn aut(&self) -> &AutGroup {
        &self.aut
    }

    pub fn n(&self) -> usize {
        self.aut.n()
    }

    pub fn order(&self) -> u64 {
        self.n() as u64 * self.aut.group().order()
    }

    pub fn identity(&self) -> HolElem {
        HolElem {
            shift: 0,
            aut: self.aut.identity(),
        }
    }

    /// `(g₁, f₁)(g₂, f₂) = (g₁·α_{f₁}(g₂), f₁f₂)`
    pub fn mul(&self, a: &HolElem, b: &HolElem) -> HolElem {
        let t = self.aut.n_table();
        HolElem {
            shift: t.mul(a.shift, self.aut.apply(&a.aut, b.shift)),
            aut: a.aut.compose(&b.aut),
        }
    }

    pub fn inv(&self, a: &HolElem) -> HolElem {
        let t = self.aut.n_table();
        let finv = a.aut.inverse();
        HolElem {
            shift: self.aut.apply(&finv, t.inv(a.shift)),
            aut: finv,
        }
    }

    /// `δ(x) = α_f(x)·g⁻¹`
    pub fn apply(&self, a: &HolElem, x: usize) -> usize {
        let t = self.aut.n_table();
        t.mul(self.aut.apply(&a.aut, x), t.inv(a.shift))
    }

    /// `ξ(δ) = δ(1) = g⁻¹`
    pub fn xi(&self, a: &HolElem) -> usize {
        self.aut.n_table().inv(a.shift)
    }

    /// `δ` as a permutation of element indices.
    pub fn to_perm(&self, a: &HolElem) -> Perm {
        let images = (0..self.n()).map(|x| self.apply(a, x) as u32).collect();
        Perm::from_images(images).expect("holomorph elements are bijections")
    }

    /// `λ(x) = ρ(x⁻¹)·conj(x)`
    pub fn lambda(&self, x: usize) -> HolElem {
        HolElem {
            shift: self.aut.n_table().inv(x),
            aut: self.aut.conj(x),
        }
    }

    /// `ρ(x): y ↦ y x⁻¹`
    pub fn rho(&self, x: usize) -> HolElem {
        HolElem {
            shift: x,
            aut: self.aut.identity(),
        }
    }

    pub fn aut_elem(&self, m: &Perm) -> HolElem {
        HolElem {
            shift: 0,
            aut: m.clone(),
        }
    }

    pub fn lambda_generators(&self) -> Vec<HolElem> {
        self.aut
            .n_table()
            .generator_indices()
            .into_iter()
            .map(|x| self.lambda(x))
            .collect()
    }

    pub fn rho_generators(&self) -> Vec<HolElem> {
        self.aut
            .n_table()
            .generator_indices()
            .into_iter()
            .map(|x| self.rho(x))
            .collect()
    }

    /// `λ(N)`, `ρ(N)` and `M` generators.
    pub fn generators(&self) -> Vec<HolElem> {
        let mut gens = self.lambda_generators();
        gens.extend(self.rho_generators());
        gens.extend(self.aut.group().generators().iter().map(|m| self.aut_elem(m)));
        gens
    }

    /// `Hol(N)` as a permutation group on element indices.
    pub fn as_perm_group(&self) -> FinGroup {
        let gens = self.generators().iter().map(|g| self.to_perm(g)).collect();
        FinGroup::from_generators(gens, self.n()).expect("nonempty carrier")
    }

    /// Normalization of `λ(N)` and `ρ(N)` by the generators, and elementwise
    /// commutation of `λ(N)` with `ρ(N)`, on generators.
    pub fn check_invariants(&self) -> Result<()> {
        let t = self.aut.n_table();
        let lam = self.lambda_generators();
        let rho = self.rho_generators();
        for a in &lam {
            for b in &rho {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::verification("holomorph", "λ(N) and ρ(N) do not commute"));
                }
            }
        }
        for h in self.generators() {
            let hinv = self.inv(&h);
            for a in &lam {
                let c = self.mul(&self.mul(&h, a), &hinv);
                // λ(x) has shift x⁻¹ and aut conj(x)
                let x = t.inv(c.shift);
                if c != self.lambda(x) {
                    return Err(Error::verification("holomorph", "λ(N) is not normalized"));
                }
            }
            for b in &rho {
                let c = self.mul(&self.mul(&h, b), &hinv);
                if !c.aut.is_identity() {
                    return Err(Error::verification("holomorph", "ρ(N) is not normalized"));
                }
            }
        }
        Ok(())
    }
}
