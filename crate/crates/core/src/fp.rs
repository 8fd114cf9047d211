//! Prime fields F_p and binomial coefficients mod p.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A prime number small enough that products of residues fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);

    pub fn new(value: u32) -> Result<Prime, Error> {
        if value < 2 || value > i32::MAX as u32 {
            return Err(Error::NotPrime(value));
        }
        let mut d = 2u64;
        let v = value as u64;
        while d * d <= v {
            if v.is_multiple_of(d) {
                return Err(Error::NotPrime(value));
            }
            d += 1;
        }
        Ok(Prime(value))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    /// Reduce an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, n: i64) -> u32 {
        n.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverse by Fermat; `a` must be nonzero mod p.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 as u64 - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^n` as a residue.
    #[inline]
    pub fn sign(self, n: i64) -> u32 {
        if n.rem_euclid(2) == 0 {
            1 % self.0
        } else {
            self.0 - 1
        }
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(value: u32) -> Result<Self, Self::Error> {
        Prime::new(value)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    residue: u32,
    prime: Prime,
}

impl FpScalar {
    pub fn new(n: i64, prime: Prime) -> FpScalar {
        FpScalar {
            residue: prime.reduce(n),
            prime,
        }
    }

    pub fn zero(prime: Prime) -> FpScalar {
        FpScalar { residue: 0, prime }
    }

    pub fn one(prime: Prime) -> FpScalar {
        FpScalar { residue: 1, prime }
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    /// `None` for zero.
    pub fn inverse(self) -> Option<FpScalar> {
        if self.is_zero() {
            None
        } else {
            Some(FpScalar {
                residue: self.prime.inv(self.residue),
                prime: self.prime,
            })
        }
    }

    /// The representative in `(-p/2, p/2]`, handy for reading off signs.
    pub fn symmetric(self) -> i64 {
        let p = self.prime.value() as i64;
        let r = self.residue as i64;
        if 2 * r > p {
            r - p
        } else {
            r
        }
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, rhs.prime);
        FpScalar {
            residue: self.prime.add(self.residue, rhs.residue),
            prime: self.prime,
        }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, rhs.prime);
        FpScalar {
            residue: self.prime.sub(self.residue, rhs.residue),
            prime: self.prime,
        }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, rhs.prime);
        FpScalar {
            residue: self.prime.mul(self.residue, rhs.residue),
            prime: self.prime,
        }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            residue: self.prime.neg(self.residue),
            prime: self.prime,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

/// Base-p digits of `n`, least significant first. Zero has no digits.
pub fn p_adic_digits(mut n: u64, p: Prime) -> Vec<u32> {
    let base = p.value() as u64;
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % base) as u32);
        n /= base;
    }
    digits
}

/// Binomial coefficient of two digits, `0 <= k, n < p`, reduced mod p.
fn small_binomial(n: u32, k: u32, p: Prime) -> u32 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u32;
    let mut den = 1u32;
    for j in 0..k {
        num = p.mul(num, n - j);
        den = p.mul(den, j + 1);
    }
    p.mul(num, p.inv(den))
}

/// `binom(n, k) mod p` by Lucas' theorem (product of digitwise binomials).
pub fn lucas_binomial(n: u64, k: u64, p: Prime) -> FpScalar {
    if k > n {
        return FpScalar::zero(p);
    }
    let base = p.value() as u64;
    let (mut n, mut k) = (n, k);
    let mut acc = 1u32;
    while k > 0 {
        let nd = (n % base) as u32;
        let kd = (k % base) as u32;
        if kd > nd {
            return FpScalar::zero(p);
        }
        acc = p.mul(acc, small_binomial(nd, kd, p));
        n /= base;
        k /= base;
    }
    FpScalar {
        residue: acc,
        prime: p,
    }
}

/// Signed-argument convenience used by the Adem formulas: zero whenever
/// `k < 0`, `n < 0`, or `k > n`.
pub(crate) fn binomial_mod(n: i64, k: i64, p: Prime) -> u32 {
    if k < 0 || n < 0 || k > n {
        0
    } else {
        lucas_binomial(n as u64, k as u64, p).residue()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn prime_construction() {
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(91).is_err());
        for q in [2, 3, 5, 7, 11, 13, 2_147_483_647] {
            assert!(Prime::new(q).is_ok(), "{q}");
        }
        assert!(Prime::new(2_147_483_648).is_err());
    }

    #[test]
    fn digits_examples() {
        assert_eq!(p_adic_digits(19, p(5)), vec![4, 3]);
        assert_eq!(p_adic_digits(0, p(7)), Vec::<u32>::new());
        assert_eq!(p_adic_digits(17, p(3)), vec![2, 2, 1]);
    }

    #[test]
    fn lucas_examples() {
        // 11628 = binom(19, 5) = 5 * 2325 + 3
        assert_eq!(lucas_binomial(19, 5, p(5)).residue(), 3);
        assert_eq!(lucas_binomial(5, 3, p(3)).residue(), 1);
        assert_eq!(lucas_binomial(3, 7, p(3)).residue(), 0);
        for q in [2, 3, 5, 7] {
            for n in 0..50 {
                assert_eq!(lucas_binomial(n, 0, p(q)).residue(), 1);
            }
        }
    }

    #[test]
    fn scalar_field_axioms() {
        let q = p(7);
        for a in 1..7 {
            let x = FpScalar::new(a, q);
            assert_eq!((x * x.inverse().unwrap()).residue(), 1);
            assert!((x + (-x)).is_zero());
        }
        assert!(FpScalar::zero(q).inverse().is_none());
        assert_eq!(FpScalar::new(-1, q).residue(), 6);
        assert_eq!(FpScalar::new(6, q).symmetric(), -1);
    }
}
