use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holomorph::RegularSubgroupCert;
use crate::perm_core::{FinGroup, Perm};

/// Operation tables are materialized up to this carrier size.
pub const TABLE_LIMIT: usize = 2000;
/// Carrier size up to which [`BraceCheck::Auto`] checks every triple.
pub const BRACE_EXHAUSTIVE_LIMIT: usize = 512;
pub const BRACE_SEED: u64 = 0xCAFE01;
pub const BRACE_SAMPLE_TRIPLES: u64 = 1_000_000;
/// Random pairs on which `ξ(δδ') = ξ(δ)∘ξ(δ')` is re-checked after transport.
pub const SOUNDNESS_PAIRS: u64 = 10_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
enum Ops {
    Tables { add: Vec<u32>, neg: Vec<u32>, circ: Vec<u32> },
    /// `+` from `N`'s element table, `∘` through the regular subgroup
    Transport,
}

/// A skew brace `(B, +, ∘)` on `{0, …, n-1}` with shared identity `0`.
/// `+` is written multiplicatively in `N`, so it need not be commutative.
#[derive(Clone, Debug)]
pub struct SkewBrace {
    n: usize,
    ops: Ops,
    circ_inv: Vec<u32>,
    source: Option<Arc<RegularSubgroupCert>>,
    report: Option<BraceReport>,
}

impl SkewBrace {
    /// A brace from raw tables, row-major (`add[x*n + y] = x + y`). `+` must
    /// be a group with identity 0; `∘` is taken as given and only checked by
    /// [`verify_brace`].
    pub fn from_tables(add: Vec<u32>, circ: Vec<u32>) -> Result<Self> {
        let n = (add.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != add.len() || circ.len() != add.len() {
            return Err(Error::Precondition("tables must both be n×n with n ≥ 1".into()));
        }
        if add.iter().chain(&circ).any(|&v| v as usize >= n) {
            return Err(Error::Precondition("table entry out of range".into()));
        }
        for x in 0..n {
            if add[x] as usize != x || add[x * n] as usize != x {
                return Err(Error::Precondition("0 is not the additive identity".into()));
            }
        }
        let mut neg = vec![NONE; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| add[x * n + y] == 0)
                .ok_or_else(|| Error::Precondition(format!("{x} has no additive inverse")))?;
            neg[x] = y as u32;
        }
        let circ_inv = (0..n)
            .map(|x| (0..n).find(|&y| circ[x * n + y] == 0).map_or(NONE, |y| y as u32))
            .collect();
        Ok(SkewBrace {
            n,
            ops: Ops::Tables { add, neg, circ },
            circ_inv,
            source: None,
            report: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> Option<&RegularSubgroupCert> {
        self.source.as_deref()
    }

    /// Axiom check performed when the brace was built by transport.
    pub fn report(&self) -> Option<&BraceReport> {
        self.report.as_ref()
    }

    pub fn has_tables(&self) -> bool {
        matches!(self.ops, Ops::Tables { .. })
    }

    pub fn add_table(&self) -> Option<&[u32]> {
        match &self.ops {
            Ops::Tables { add, .. } => Some(add),
            Ops::Transport => None,
        }
    }

    pub fn circ_table(&self) -> Option<&[u32]> {
        match &self.ops {
            Ops::Tables { circ, .. } => Some(circ),
            Ops::Transport => None,
        }
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        match &self.ops {
            Ops::Tables { add, .. } => add[x * self.n + y] as usize,
            Ops::Transport => self.cert().hol.aut().n_table().mul(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        match &self.ops {
            Ops::Tables { neg, .. } => neg[x] as usize,
            Ops::Transport => self.cert().hol.aut().n_table().inv(x),
        }
    }

    /// `x∘y = ξ(δ_x δ_y) = α_{f_x}(y) + x` where `δ_x` is the element with
    /// `ξ(δ_x) = x`.
    #[inline]
    pub fn circ(&self, x: usize, y: usize) -> usize {
        match &self.ops {
            Ops::Tables { circ, .. } => circ[x * self.n + y] as usize,
            Ops::Transport => {
                let cert = self.cert();
                let aut = cert.hol.aut();
                let d = cert.delta_at_xi(x);
                aut.n_table().mul(aut.apply(&d.aut, y), x)
            }
        }
    }

    /// Inverse of `x` in `(B, ∘)`, if it exists.
    pub fn circ_inv(&self, x: usize) -> Option<usize> {
        match self.circ_inv[x] {
            NONE => None,
            v => Some(v as usize),
        }
    }

    fn cert(&self) -> &RegularSubgroupCert {
        self.source.as_deref().expect("transport braces keep their source")
    }

    /// `(B, +)` as the left regular representation on the carrier.
    pub fn additive_group(&self) -> Result<FinGroup> {
        self.regular_rep(|x, y| self.add(x, y), self.additive_generators())
    }

    /// `(B, ∘)` as the left regular representation on the carrier.
    pub fn multiplicative_group(&self) -> Result<FinGroup> {
        let gens = match &self.source {
            Some(cert) => cert
                .delta_generators
                .iter()
                .map(|d| cert.hol.xi(d))
                .collect(),
            None => (1..self.n).collect(),
        };
        self.regular_rep(|x, y| self.circ(x, y), gens)
    }

    fn additive_generators(&self) -> Vec<usize> {
        match &self.source {
            Some(cert) => cert.hol.aut().n_table().generator_indices(),
            None => (1..self.n).collect(),
        }
    }

    fn regular_rep(&self, op: impl Fn(usize, usize) -> usize, gens: Vec<usize>) -> Result<FinGroup> {
        let perms = gens
            .into_iter()
            .map(|x| Perm::from_usize(&(0..self.n).map(|y| op(x, y)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        FinGroup::from_generators(perms, self.n)
    }
}

/// The brace obtained from a regular subgroup by transport of structure
/// along `ξ`, checked with [`BraceCheck::Auto`].
pub fn transport_brace(cert: &RegularSubgroupCert) -> Result<SkewBrace> {
    transport_brace_with(cert, BraceCheck::Auto)
}

pub fn transport_brace_with(cert: &RegularSubgroupCert, check: BraceCheck) -> Result<SkewBrace> {
    let n = cert.n();
    let hol = &cert.hol;
    let circ_inv: Vec<u32> = (0..n)
        .into_par_iter()
        .map(|x| hol.xi(&hol.inv(cert.delta_at_xi(x))) as u32)
        .collect();
    let mut brace = SkewBrace {
        n,
        ops: Ops::Transport,
        circ_inv,
        source: Some(Arc::new(cert.clone())),
        report: None,
    };
    if n <= TABLE_LIMIT {
        let table = hol.aut().n_table();
        let add: Vec<u32> = table.multiplication_table();
        let neg = (0..n).map(|x| table.inv(x) as u32).collect();
        let mut circ = vec![0u32; n * n];
        circ.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
            let alpha = hol.aut().index_perm(&cert.delta_at_xi(x).aut);
            for (y, slot) in row.iter_mut().enumerate() {
                *slot = add[alpha[y] as usize * n + x];
            }
        });
        brace.ops = Ops::Tables { add, neg, circ };
    }
    check_transport(&brace, cert)?;
    let report = verify_brace(&brace, check);
    if !report.passed() {
        return Err(Error::BraceViolation(format!("{report:?}")));
    }
    brace.report = Some(report);
    Ok(brace)
}

/// `ξ(δ δ') = ξ(δ)∘ξ(δ')` on all generator pairs and on random pairs.
fn check_transport(brace: &SkewBrace, cert: &RegularSubgroupCert) -> Result<()> {
    let hol = &cert.hol;
    let n = cert.n();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let gens: Vec<usize> = cert.trace.g_table.generator_indices();
    for &a in &gens {
        for &b in &gens {
            pairs.push((a, b));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(BRACE_SEED);
    for _ in 0..SOUNDNESS_PAIRS {
        pairs.push((rng.random_range(0..n), rng.random_range(0..n)));
    }
    let bad = pairs.par_iter().find_any(|&&(a, b)| {
        let (da, db) = (&cert.trace.delta[a], &cert.trace.delta[b]);
        let lhs = hol.xi(&hol.mul(da, db));
        lhs != brace.circ(hol.xi(da), hol.xi(db))
    });
    match bad {
        Some(&(a, b)) => Err(Error::BraceViolation(format!(
            "ξ is not multiplicative on elements {a}, {b}"
        ))),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum BraceCheck {
    /// Exhaustive up to [`BRACE_EXHAUSTIVE_LIMIT`], [`BRACE_SAMPLE_TRIPLES`] seeded
    /// triples above.
    Auto,
    Exhaustive,
    Sampled { triples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceReport {
    pub n: usize,
    pub mode: CheckMode,
    pub seed: Option<u64>,
    pub triples_checked: u64,
    pub violations: u64,
    /// `(x, y, z)` with `x∘(y+z) ≠ x∘y − x + x∘z`
    pub first_counterexample: Option<[u32; 3]>,
    /// `0∘x = x∘0 = x` for every `x`
    pub identity_ok: bool,
}

impl BraceReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.identity_ok
    }
}

#[inline]
fn axiom_holds(b: &SkewBrace, x: usize, y: usize, z: usize) -> bool {
    let lhs = b.circ(x, b.add(y, z));
    let rhs = b.add(b.add(b.circ(x, y), b.neg(x)), b.circ(x, z));
    lhs == rhs
}

/// Checks `x∘(y+z) = x∘y − x + x∘z` and the shared identity.
pub fn verify_brace(brace: &SkewBrace, check: BraceCheck) -> BraceReport {
    let n = brace.n();
    let identity_ok = (0..n).all(|x| brace.circ(0, x) == x && brace.circ(x, 0) == x);
    let check = match check {
        BraceCheck::Auto if n <= BRACE_EXHAUSTIVE_LIMIT => BraceCheck::Exhaustive,
        BraceCheck::Auto => BraceCheck::Sampled {
            triples: BRACE_SAMPLE_TRIPLES,
            seed: BRACE_SEED,
        },
        c => c,
    };
    match check {
        BraceCheck::Exhaustive => {
            let (violations, first) = (0..n)
                .into_par_iter()
                .map(|x| {
                    let mut count = 0u64;
                    let mut first = None;
                    for y in 0..n {
                        for z in 0..n {
                            if !axiom_holds(brace, x, y, z) {
                                count += 1;
                                first.get_or_insert([x as u32, y as u32, z as u32]);
                            }
                        }
                    }
                    (count, first)
                })
                .reduce(|| (0, None), merge);
            BraceReport {
                n,
                mode: CheckMode::Exhaustive,
                seed: None,
                triples_checked: (n as u64).pow(3),
                violations,
                first_counterexample: first,
                identity_ok,
            }
        }
        BraceCheck::Sampled { triples, seed } => {
            let sample = sample_triples(n, triples, seed);
            let (violations, first) = sample
                .par_iter()
                .map(|t| {
                    let [x, y, z] = t.map(|v| v as usize);
                    if axiom_holds(brace, x, y, z) {
                        (0, None)
                    } else {
                        (1, Some(*t))
                    }
                })
                .reduce(|| (0, None), merge);
            BraceReport {
                n,
                mode: CheckMode::Sampled,
                seed: Some(seed),
                triples_checked: triples,
                violations,
                first_counterexample: first,
                identity_ok,
            }
        }
        BraceCheck::Auto => unreachable!(),
    }
}

pub(crate) fn sample_triples(n: usize, count: u64, seed: u64) -> Vec<[u32; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            [
                rng.random_range(0..n) as u32,
                rng.random_range(0..n) as u32,
                rng.random_range(0..n) as u32,
            ]
        })
        .collect()
}

/// Adds counts and keeps the lexicographically first counterexample.
pub(crate) fn merge(a: (u64, Option<[u32; 3]>), b: (u64, Option<[u32; 3]>)) -> (u64, Option<[u32; 3]>) {
    let first = match (a.1, b.1) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    (a.0 + b.0, first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorph::{decompose, AutGroup, HolGroup};
    use crate::perm_core::is_isomorphic;

    fn hol_of(n: &FinGroup) -> HolGroup {
        HolGroup::new(AutGroup::brute_force(n).unwrap()).unwrap()
    }

    fn cyclic_tables(n: usize, circ: impl Fn(usize, usize) -> usize) -> SkewBrace {
        let add = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let circ = (0..n * n).map(|i| circ(i / n, i % n) as u32).collect();
        SkewBrace::from_tables(add, circ).unwrap()
    }

    #[test]
    fn trivial_brace_passes() {
        let h = hol_of(&FinGroup::symmetric(3));
        let cert = decompose(&h, None, &h.lambda_generators()).unwrap();
        let b = transport_brace(&cert).unwrap();
        assert_eq!(b.add_table(), b.circ_table());
        assert!(b.report().unwrap().passed());
    }

    #[test]
    fn broken_brace_on_c4_fails() {
        // x∘y := x + y + x
        let b = cyclic_tables(4, |x, y| (2 * x + y) % 4);
        let r = verify_brace(&b, BraceCheck::Exhaustive);
        assert!(!r.passed());
        assert!(!r.identity_ok);
        // 1∘(0+0) = 2 but 1∘0 − 1 + 1∘0 = 2 − 1 + 2 = 3
        assert_eq!(r.first_counterexample, Some([1, 0, 0]));
    }

    #[test]
    fn lambda_and_rho_give_trivial_and_opposite() {
        for n in [FinGroup::cyclic(6), FinGroup::symmetric(3), FinGroup::dihedral(4), FinGroup::alternating(4)] {
            let h = hol_of(&n);
            let t = h.aut().n_table();
            let lam = transport_brace(&decompose(&h, None, &h.lambda_generators()).unwrap()).unwrap();
            let rho = transport_brace(&decompose(&h, None, &h.rho_generators()).unwrap()).unwrap();
            for x in 0..h.n() {
                for y in 0..h.n() {
                    assert_eq!(lam.circ(x, y), t.mul(x, y));
                    assert_eq!(rho.circ(x, y), t.mul(y, x));
                }
            }
        }
    }

    #[test]
    fn sampled_mode_is_reproducible() {
        let b = cyclic_tables(5, |x, y| (x + y) % 5);
        let check = BraceCheck::Sampled { triples: 1000, seed: 7 };
        let r1 = verify_brace(&b, check);
        assert_eq!(r1, verify_brace(&b, check));
        assert!(r1.passed());
        assert_eq!(r1.mode, CheckMode::Sampled);
    }

    #[test]
    fn groups_of_a_transported_brace() {
        // Klein four regular subgroup of Hol(C4): ⟨ρ(1)·(x ↦ -x), ρ(2)⟩
        let n = FinGroup::cyclic(4);
        let h = hol_of(&n);
        let t = h.aut().n_table();
        let gen = t.generator_indices()[0];
        let two = t.mul(gen, gen);
        let neg = h
            .aut()
            .group()
            .elements()
            .into_iter()
            .find(|m| !m.is_identity())
            .unwrap();
        let delta = crate::holomorph::HolElem { shift: gen, aut: neg };
        let cert = decompose(&h, None, &[delta, h.rho(two)]).unwrap();
        assert_eq!(cert.g.element_order_histogram().keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        let b = transport_brace(&cert).unwrap();
        let add = b.additive_group().unwrap();
        let mul = b.multiplicative_group().unwrap();
        assert!(is_isomorphic(&add, &n).unwrap().is_some());
        assert!(is_isomorphic(&mul, &cert.g).unwrap().is_some());
    }
}
