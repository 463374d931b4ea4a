use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree - 1}` stored as its image array.
///
/// Products follow function composition: `(a * b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::InvalidPerm(format!("image {i} out of range for degree {n}")));
            }
            if seen[i] {
                return Err(Error::InvalidPerm(format!("image {i} repeated")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn from_usize(images: &[usize]) -> Result<Self> {
        Self::from_images(images.iter().map(|&i| i as u32).collect())
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(Error::InvalidPerm(format!("point out of range for degree {degree}")));
                }
                if touched[a] {
                    return Err(Error::InvalidPerm(format!("cycles are not disjoint at {a}")));
                }
                touched[a] = true;
                images[a] = b as u32;
            }
        }
        Ok(Perm { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `g * self * g^-1`
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut out = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Perm { images: out }
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i as u32 != j)
            .map(|(i, _)| i)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Copies `self` onto the block `[offset, offset + degree)` of a domain of
    /// size `total`, fixing every other point.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = (offset as u32) + j;
        }
        Perm { images }
    }

    /// Restriction to a block `[offset, offset + len)` that the permutation preserves.
    pub fn restrict(&self, offset: usize, len: usize) -> Perm {
        Perm {
            images: self.images[offset..offset + len]
                .iter()
                .map(|&j| j - offset as u32)
                .collect(),
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Perm::from_images(v)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Vec<u32> {
        p.images
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert!(Perm::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // (a*b)(1) = a(b(1)) = a(2) = 2
        assert_eq!((&a * &b).apply(1), 2);
        assert_eq!((&a * &b).apply(2), 0);
    }

    #[test]
    fn order_and_cycles() {
        let p = Perm::from_cycles(7, &[&[0, 1, 2], &[3, 4], &[5, 6]]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert_eq!(format!("{p}"), "(0 1 2)(3 4)(5 6)");
    }

    proptest! {
        #[test]
        fn group_axioms(a in perm_strategy(9), b in perm_strategy(9), c in perm_strategy(9)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a * &a.inverse()).is_identity());
            prop_assert_eq!(a.conjugate_by(&b), &(&b * &a) * &b.inverse());
        }
    }
}
