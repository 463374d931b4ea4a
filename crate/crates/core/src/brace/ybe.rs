use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::skew::{merge, sample_triples, CheckMode, SkewBrace, BRACE_SEED, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::perm_core::BitSet;

/// Carrier size up to which the braid relation is checked on all triples.
pub const YBE_EXHAUSTIVE_LIMIT: usize = 60;
pub const YBE_SAMPLE_TRIPLES: u64 = 100_000;
/// Rows and columns checked for bijectivity when `n` exceeds [`TABLE_LIMIT`].
pub const NONDEGENERACY_SAMPLE_ROWS: usize = 64;

/// `r(x, y) = (γ_x(y), γ⁻¹_{γ_x(y)}(−(x∘y) + x + (x∘y)))` with
/// `γ_x(y) = −x + x∘y`.
#[derive(Clone, Debug)]
pub struct YbMap<'a> {
    brace: &'a SkewBrace,
    gamma: Option<Vec<u32>>,
    report: YbReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbReport {
    pub n: usize,
    pub braid_mode: CheckMode,
    pub seed: Option<u64>,
    pub triples_checked: u64,
    pub violations: u64,
    pub first_counterexample: Option<[u32; 3]>,
    pub nondegeneracy_mode: CheckMode,
    /// every checked `σ_x` and `τ_y` is a permutation
    pub nondegenerate: bool,
    /// `r` is a bijection of `B × B` (checked with the exhaustive mode only)
    pub bijective: Option<bool>,
}

impl YbReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.nondegenerate && self.bijective != Some(false)
    }
}

/// `σ` and `τ` tables: `r(x, y) = (sigma[x*n + y], tau[x*n + y])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbTables {
    pub n: usize,
    pub sigma: Vec<u32>,
    pub tau: Vec<u32>,
}

impl<'a> YbMap<'a> {
    pub fn brace(&self) -> &SkewBrace {
        self.brace
    }

    pub fn report(&self) -> &YbReport {
        &self.report
    }

    /// `γ_x(y) = −x + x∘y`
    #[inline]
    pub fn gamma(&self, x: usize, y: usize) -> usize {
        match &self.gamma {
            Some(g) => g[x * self.brace.n() + y] as usize,
            None => self.brace.add(self.brace.neg(x), self.brace.circ(x, y)),
        }
    }

    /// `γ_u⁻¹ = γ_{ū}` where `ū` is the `∘`-inverse of `u`.
    #[inline]
    pub fn gamma_inv(&self, u: usize, w: usize) -> usize {
        self.gamma(self.brace.circ_inv(u).expect("valid brace"), w)
    }

    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        let b = self.brace;
        let u = self.gamma(x, y);
        let xy = b.circ(x, y);
        let w = b.add(b.add(b.neg(xy), x), xy);
        (u, self.gamma_inv(u, w))
    }

    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.gamma(x, y)
    }

    pub fn tau(&self, y: usize, x: usize) -> usize {
        self.r(x, y).1
    }

    fn braid_holds(&self, x: usize, y: usize, z: usize) -> bool {
        // left: (r×id)(id×r)(r×id)
        let (a, b) = self.r(x, y);
        let (b, c) = self.r(b, z);
        let (a, b) = self.r(a, b);
        let left = (a, b, c);
        // right: (id×r)(r×id)(id×r)
        let (b, c) = self.r(y, z);
        let (a, b) = self.r(x, b);
        let (b, c) = self.r(b, c);
        left == (a, b, c)
    }

    pub fn tables(&self) -> Option<YbTables> {
        let n = self.brace.n();
        if n > TABLE_LIMIT {
            return None;
        }
        let pairs: Vec<(usize, usize)> = (0..n * n).into_par_iter().map(|i| self.r(i / n, i % n)).collect();
        Some(YbTables {
            n,
            sigma: pairs.iter().map(|p| p.0 as u32).collect(),
            tau: pairs.iter().map(|p| p.1 as u32).collect(),
        })
    }
}

/// The Yang–Baxter solution of a brace, with its braid relation,
/// non-degeneracy and bijectivity verified.
pub fn yb_solution(brace: &SkewBrace) -> Result<YbMap<'_>> {
    let n = brace.n();
    if (0..n).any(|x| brace.circ_inv(x).is_none()) {
        return Err(Error::Precondition("(B, ∘) is not a group".into()));
    }
    let gamma = (n <= TABLE_LIMIT).then(|| {
        let mut g = vec![0u32; n * n];
        g.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
            let nx = brace.neg(x);
            for (y, slot) in row.iter_mut().enumerate() {
                *slot = brace.add(nx, brace.circ(x, y)) as u32;
            }
        });
        g
    });
    let mut map = YbMap {
        brace,
        gamma,
        report: YbReport {
            n,
            braid_mode: CheckMode::Exhaustive,
            seed: None,
            triples_checked: 0,
            violations: 0,
            first_counterexample: None,
            nondegeneracy_mode: CheckMode::Exhaustive,
            nondegenerate: false,
            bijective: None,
        },
    };
    map.report = check_solution(&map);
    if !map.report.passed() {
        return Err(Error::verification("yang-baxter", format!("{:?}", map.report)));
    }
    Ok(map)
}

/// Re-runs every check on an existing map.
pub fn check_solution(map: &YbMap<'_>) -> YbReport {
    let n = map.brace.n();
    let (braid_mode, seed, triples_checked, (violations, first)) = if n <= YBE_EXHAUSTIVE_LIMIT {
        let res = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut acc = (0u64, None);
                for y in 0..n {
                    for z in 0..n {
                        if !map.braid_holds(x, y, z) {
                            acc = merge(acc, (1, Some([x as u32, y as u32, z as u32])));
                        }
                    }
                }
                acc
            })
            .reduce(|| (0, None), merge);
        (CheckMode::Exhaustive, None, (n as u64).pow(3), res)
    } else {
        let sample = sample_triples(n, YBE_SAMPLE_TRIPLES, BRACE_SEED);
        let res = sample
            .par_iter()
            .map(|t| {
                if map.braid_holds(t[0] as usize, t[1] as usize, t[2] as usize) {
                    (0, None)
                } else {
                    (1, Some(*t))
                }
            })
            .reduce(|| (0, None), merge);
        (CheckMode::Sampled, Some(BRACE_SEED), YBE_SAMPLE_TRIPLES, res)
    };

    let (nondegeneracy_mode, rows): (CheckMode, Vec<usize>) = if n <= TABLE_LIMIT {
        (CheckMode::Exhaustive, (0..n).collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(BRACE_SEED);
        let rows = (0..NONDEGENERACY_SAMPLE_ROWS).map(|_| rng.random_range(0..n)).collect();
        (CheckMode::Sampled, rows)
    };
    let is_perm = |f: &dyn Fn(usize) -> usize| {
        let mut seen = BitSet::new(n);
        (0..n).all(|i| seen.insert(f(i)))
    };
    let nondegenerate = rows
        .par_iter()
        .all(|&x| is_perm(&|y| map.sigma(x, y)) && is_perm(&|z| map.tau(x, z)));
    let bijective = (n <= TABLE_LIMIT).then(|| {
        let mut seen = BitSet::new(n * n);
        (0..n * n).all(|i| {
            let (u, v) = map.r(i / n, i % n);
            seen.insert(u * n + v)
        })
    });
    YbReport {
        n,
        braid_mode,
        seed,
        triples_checked,
        violations,
        first_counterexample: first,
        nondegeneracy_mode,
        nondegenerate,
        bijective,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::transport_brace;
    use crate::holomorph::{decompose, AutGroup, HolGroup};
    use crate::perm_core::FinGroup;

    fn brace_from(n: &FinGroup, lambda: bool) -> SkewBrace {
        let h = HolGroup::new(AutGroup::brute_force(n).unwrap()).unwrap();
        let gens = if lambda { h.lambda_generators() } else { h.rho_generators() };
        transport_brace(&decompose(&h, None, &gens).unwrap()).unwrap()
    }

    #[test]
    fn trivial_abelian_brace_is_the_flip() {
        let b = brace_from(&FinGroup::cyclic(5), true);
        let r = yb_solution(&b).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(r.r(x, y), (y, x));
            }
        }
    }

    #[test]
    fn one_element_brace_is_identity() {
        let b = SkewBrace::from_tables(vec![0], vec![0]).unwrap();
        let r = yb_solution(&b).unwrap();
        assert_eq!(r.r(0, 0), (0, 0));
        assert!(r.report().passed());
    }

    #[test]
    fn r_factors_the_circle_product() {
        // σ_x(y)∘τ_y(x) = x∘y
        for lambda in [true, false] {
            let b = brace_from(&FinGroup::symmetric(3), lambda);
            let r = yb_solution(&b).unwrap();
            for x in 0..6 {
                for y in 0..6 {
                    let (u, v) = r.r(x, y);
                    assert_eq!(b.circ(u, v), b.circ(x, y));
                }
            }
            let t = r.tables().unwrap();
            assert_eq!(t.sigma.len(), 36);
        }
    }
}
