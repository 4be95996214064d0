//! Arithmetic in prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Deterministic primality test by trial division.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `[from, to]` in increasing order.
pub fn primes_between(from: u64, to: u64) -> impl Iterator<Item = u64> {
    (from..=to).filter(|&q| is_prime(q))
}

/// Residue modulo a prime `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    q: u64,
}

impl FieldElement {
    pub fn new(value: u64, q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(FieldElement { value: value % q, q })
    }

    /// Skips the primality check; `q` must be prime.
    pub(crate) fn new_unchecked(value: u64, q: u64) -> Self {
        FieldElement { value: value % q, q }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = FieldElement::new_unchecked(1, self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.q - 2))
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.q, rhs.q);
        FieldElement::new_unchecked(self.value + rhs.value, self.q)
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.q, rhs.q);
        FieldElement::new_unchecked(self.value + self.q - rhs.value, self.q)
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.q, rhs.q);
        FieldElement::new_unchecked(((self.value as u128 * rhs.value as u128) % self.q as u128) as u64, self.q)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement::new_unchecked(self.q - self.value, self.q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = primes_between(0, 30).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert_eq!(FieldElement::new(3, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn field_axioms_mod_seven() {
        let e = |v| FieldElement::new(v, 7).unwrap();
        for a in 0..7 {
            assert_eq!(e(a) + (-e(a)), e(0));
            if a != 0 {
                assert_eq!(e(a) * e(a).inv().unwrap(), e(1));
            }
            for b in 0..7 {
                assert_eq!(e(a) - e(b) + e(b), e(a));
            }
        }
        assert!(e(0).inv().is_none());
    }
}
