//! Exact scalar fields: the rationals and prime fields of odd characteristic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A field with exact equality.
pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Some square root, if `a` is a square.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_finite(&self) -> bool;
    /// Tag used in the text format: `Q` or `GF(p)`.
    fn name(&self) -> String;
    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;
    /// A random element; for `ℚ`, small fractions.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let (num, den) = (a.numer(), a.denom());
        let (rn, rd) = (num.sqrt(), den.sqrt());
        (&rn * &rn == *num && &rd * &rd == *den).then(|| BigRational::new(rn, rd))
    }
    fn is_finite(&self) -> bool {
        false
    }
    fn name(&self) -> String {
        "Q".into()
    }
    fn parse_elem(&self, text: &str) -> Result<BigRational> {
        let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        BigRational::new(
            BigInt::from(rng.gen_range(-4i64..=4)),
            BigInt::from(rng.gen_range(1i64..=3)),
        )
    }
}

/// `GF(p)` for an odd prime `p < 2^31`, elements stored as `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidInput(format!(
                "GF({p}) is not supported; need an odd prime below 2^31"
            )));
        }
        Ok(Self { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    /// Tonelli–Shanks.
    fn sqrt(&self, a: &u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(a, (p - 1) / 2) != 1 {
            return None;
        }
        let (mut q, mut s) = (p - 1, 0);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| self.pow(z, (p - 1) / 2) == p - 1)?;
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = t2 * t2 % p;
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        Some(r)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
    fn parse_elem(&self, text: &str) -> Result<u64> {
        let v: i64 = text
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("not an integer: {text:?}")))?;
        Ok(self.from_i64(v))
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        for p in [3, 5, 7, 11, 13, 17, 97, 7919] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p.min(200) {
                let sq = a * a % p;
                let r = f.sqrt(&sq).unwrap();
                assert_eq!(r * r % p, sq);
            }
            let squares: std::collections::HashSet<u64> = (0..p).map(|a| a * a % p).collect();
            for a in 0..p.min(200) {
                assert_eq!(f.sqrt(&a).is_some(), squares.contains(&a), "{a} mod {p}");
            }
        }
    }

    #[test]
    fn rational_sqrt_and_parse() {
        let q = Rationals;
        let x = q.parse_elem("9/4").unwrap();
        assert_eq!(q.sqrt(&x), Some(q.parse_elem("3/2").unwrap()));
        assert_eq!(q.sqrt(&q.from_i64(2)), None);
        assert_eq!(q.sqrt(&q.from_i64(-4)), None);
        assert_eq!(q.parse_elem("-6/4").unwrap().to_string(), "-3/2");
        assert!(q.parse_elem("1/0").is_err());
        assert!(q.parse_elem("x").is_err());
    }
}
