use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FIELD_LIMIT: u64 = 1 << 16;

/// Splits `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

/// Distinct prime divisors.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomials over `F_p` as coefficient vectors, constant term first.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let coef = r[r.len() - 1] * lead_inv % p;
            for (i, &mi) in m.iter().enumerate() {
                let slot = &mut r[shift + i];
                *slot = (*slot + p - coef * mi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        (1..p).find(|&x| a * x % p == 1).expect("nonzero residue")
    }

    /// Monic polynomial of degree `deg` with lower coefficients from the
    /// base-`p` digits of `code`.
    pub fn monic_from_code(code: u64, deg: usize, p: u32) -> Vec<u32> {
        let mut c = code;
        let mut out = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            out.push((c % p as u64) as u32);
            c /= p as u64;
        }
        out.push(1);
        out
    }

    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            for code in 0..(p as u64).pow(d as u32) {
                let g = monic_from_code(code, d, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// `F_q` with `q = p^e`. Elements are encoded as `Σ c_i p^i` where `c_i` are
/// the coefficients of the residue modulo the defining polynomial.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Serializable summary of a field, printed in certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u32,
    pub e: u32,
    /// Monic modulus, constant term first.
    pub modulus: Vec<u32>,
}

/// `F_q` with the least monic irreducible modulus, ordered by the integer
/// `Σ a_i p^i` of its lower coefficients.
pub fn field(q: u64) -> Result<FieldSpec> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > FIELD_LIMIT {
        return Err(Error::size_limit("field order", FIELD_LIMIT, q));
    }
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        (0..(p as u64).pow(e))
            .map(|code| poly::monic_from_code(code, e as usize, p))
            .find(|f| poly::is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    };
    FieldSpec::with_modulus(p, e, modulus)
}

impl FieldSpec {
    fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(e);
        let decode = |a: u32| -> Vec<u32> {
            let mut a = a;
            let mut out = Vec::with_capacity(e as usize);
            for _ in 0..e {
                out.push(a % p);
                a /= p;
            }
            poly::trim(out)
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let prod = poly::mul(&decode(a), &decode(b), p);
            encode(&poly::rem(&prod, &modulus, p))
        };
        let order_of = |g: u32| -> u32 {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = slow_mul(x, g);
                k += 1;
                if k > q {
                    return 0;
                }
            }
            k
        };
        let primitive = (1..q)
            .find(|&g| order_of(g) == q - 1)
            .ok_or_else(|| Error::Precondition("modulus is not irreducible".into()))?;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = slow_mul(x, primitive);
        }
        Ok(FieldSpec {
            p,
            e,
            q,
            modulus,
            primitive,
            exp,
            log,
        })
    }

    pub fn from_record(rec: &FieldRecord) -> Result<Self> {
        if rec.modulus.len() != rec.e as usize + 1 || rec.modulus.last() != Some(&1) {
            return Err(Error::Precondition("modulus must be monic of degree e".into()));
        }
        if prime_power(rec.p as u64) != Some((rec.p, 1)) {
            return Err(Error::NotPrimePower(rec.p as u64));
        }
        if rec.modulus.iter().any(|&c| c >= rec.p) || !poly::is_irreducible(&rec.modulus, rec.p) {
            return Err(Error::Precondition("modulus is not irreducible".into()));
        }
        Self::with_modulus(rec.p, rec.e, rec.modulus.clone())
    }

    pub fn record(&self) -> FieldRecord {
        FieldRecord {
            p: self.p,
            e: self.e,
            modulus: self.modulus.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The least generator of `F_q^×` by encoding.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            out += (a % self.p + b % self.p) % self.p * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            out += (self.p - a % self.p) % self.p * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u64 {
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        n / crate::perm_core::perm::gcd(n, l)
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize].is_multiple_of(2)
    }

    /// `ω^k` for the primitive element `ω`.
    pub fn omega_pow(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// An `F_p`-basis of `F_q`: `1, ω, …, ω^{e-1}`.
    pub fn additive_basis(&self) -> Vec<u32> {
        (0..self.e as u64).map(|k| self.omega_pow(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn prime_field_is_plain_modular() {
        let f = field(5).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f.mul(a, b), a * b % 5);
                assert_eq!(f.add(a, b), (a + b) % 5);
            }
        }
    }

    #[test]
    fn moduli_of_small_extensions() {
        // only irreducible quadratic over F_2
        assert_eq!(field(4).unwrap().modulus(), &[1, 1, 1]);
        // X^2 + 1 is the first irreducible quadratic over F_3
        assert_eq!(field(9).unwrap().modulus(), &[1, 0, 1]);
        // X^3 + X + 1
        assert_eq!(field(8).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [4u64, 7, 8, 9, 16, 25, 27] {
            let f = field(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, f.primitive()] {
                        // distributivity
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "q = {q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = field(27).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }

    #[test]
    fn not_a_prime_power() {
        assert!(matches!(field(12), Err(Error::NotPrimePower(12))));
    }

    #[test]
    fn record_roundtrip() {
        let f = field(9).unwrap();
        let g = FieldSpec::from_record(&f.record()).unwrap();
        assert_eq!(g.primitive(), f.primitive());
        let bad = FieldRecord {
            p: 3,
            e: 2,
            modulus: vec![2, 0, 1],
        };
        assert!(FieldSpec::from_record(&bad).is_err());
    }
}
