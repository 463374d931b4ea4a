use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holomorph::AutGroup;
use crate::perm_core::{ElementTable, FinGroup, Perm};

/// Largest `|G|` for which fixed-point-freeness is checked.
pub const FPF_LIMIT: u64 = 10_000;

/// Where the two homomorphisms of a pair land.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairTarget {
    /// `φ, ψ: G → N`
    N,
    /// `f, h: G → Aut(N)`
    Aut,
}

/// A pair of homomorphisms given by images of the generators of `G`.
#[derive(Clone, Debug)]
pub struct FpfPair {
    pub target: PairTarget,
    pub g: FinGroup,
    pub first: Vec<Perm>,
    pub second: Vec<Perm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpfReport {
    pub target: PairTarget,
    /// elements of `G` on which both maps were evaluated
    pub checked: u64,
    /// `σ ≠ 1` with equal images
    pub fixed_points: u64,
    /// `f(s) ≡ h(s) mod Inn(N)` on every generator (Aut-valued pairs)
    pub congruence: Option<bool>,
}

impl FpfReport {
    pub fn passed(&self) -> bool {
        self.fixed_points == 0 && self.congruence != Some(false)
    }
}

/// Values of a homomorphism on every element of `table`, extended from the
/// generator values along the Cayley graph. An inconsistency means the
/// images do not define a homomorphism.
pub fn trace_values<T: Clone + PartialEq>(
    table: &ElementTable,
    gen_values: &[T],
    identity: T,
    mul: impl Fn(&T, &T) -> T,
) -> Result<Vec<T>> {
    let gens = table.generator_indices();
    if gens.len() != gen_values.len() {
        return Err(Error::Precondition(format!(
            "{} images for {} generators",
            gen_values.len(),
            gens.len()
        )));
    }
    let mut values: Vec<Option<T>> = vec![None; table.len()];
    values[0] = Some(identity);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let vx = values[x].clone().unwrap();
        for (&s, vs) in gens.iter().zip(gen_values) {
            let y = table.mul(x, s);
            let vy = mul(&vx, vs);
            match &values[y] {
                None => {
                    values[y] = Some(vy);
                    queue.push_back(y);
                }
                Some(prev) if *prev != vy => {
                    return Err(Error::NotAHomomorphism(format!(
                        "inconsistent at element {x} times generator {s}"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    Ok(values.into_iter().map(Option::unwrap).collect())
}

impl FpfPair {
    /// Checks both maps are homomorphisms into `N` or `M`, that the pair is
    /// fixed point free, and for Aut-valued pairs the congruence modulo
    /// `Inn(N)` on generators.
    pub fn check(&self, aut: &AutGroup) -> Result<FpfReport> {
        if self.g.order() > FPF_LIMIT {
            return Err(Error::size_limit("fixed point free check", FPF_LIMIT, self.g.order()));
        }
        let table = self.g.element_table();
        let fixed_points = match self.target {
            PairTarget::N => {
                let nt = aut.n_table();
                let idx = |imgs: &[Perm]| -> Result<Vec<usize>> {
                    imgs.iter()
                        .enumerate()
                        .map(|(i, p)| nt.index_of(p).ok_or(Error::ImageNotInTarget { index: i }))
                        .collect()
                };
                let a = trace_values(&table, &idx(&self.first)?, 0, |x, y| nt.mul(*x, *y))?;
                let b = trace_values(&table, &idx(&self.second)?, 0, |x, y| nt.mul(*x, *y))?;
                (1..table.len()).filter(|&s| a[s] == b[s]).count()
            }
            PairTarget::Aut => {
                let m = aut.group();
                for (i, p) in self.first.iter().chain(&self.second).enumerate() {
                    if !m.contains(p) {
                        return Err(Error::ImageNotInTarget {
                            index: i % self.first.len().max(1),
                        });
                    }
                }
                let id = m.identity();
                let a = trace_values(&table, &self.first, id.clone(), |x, y| x.compose(y))?;
                let b = trace_values(&table, &self.second, id, |x, y| x.compose(y))?;
                (1..table.len()).filter(|&s| a[s] == b[s]).count()
            }
        };
        let congruence = match self.target {
            PairTarget::N => None,
            PairTarget::Aut => Some(self.congruence_failure(aut).is_none()),
        };
        Ok(FpfReport {
            target: self.target,
            checked: table.len() as u64,
            fixed_points: fixed_points as u64,
            congruence,
        })
    }

    /// First generator `s` with `h(s)f(s)⁻¹ ∉ Inn(N)`.
    pub fn congruence_failure(&self, aut: &AutGroup) -> Option<usize> {
        self.first
            .iter()
            .zip(&self.second)
            .position(|(f, h)| !aut.inn().contains(&h.compose(&f.inverse())))
    }
}
