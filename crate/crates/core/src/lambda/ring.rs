use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::primes::{is_prime, prime_divisors};
use crate::error::{Error, Result};

/// The primes inverted in a localisation `Λ = ℤ[1/N]`. Sorted, deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct InvertedPrimeSet {
    primes: Vec<u64>,
}

impl InvertedPrimeSet {
    /// `ℤ` itself.
    pub fn integers() -> Self {
        Self::default()
    }

    pub fn from_primes(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Domain(format!("{bad} is not prime")));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(Self { primes })
    }

    /// `ℤ[1/n]` for a positive integer `n`.
    pub fn inverting(n: &BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::Domain("cannot invert zero".into()));
        }
        Ok(Self { primes: prime_divisors(n) })
    }

    pub fn inverting_u64(n: u64) -> Result<Self> {
        Self::inverting(&BigUint::from(n))
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Removes every inverted prime factor from `n`, keeping the sign.
    pub fn strip(&self, n: &BigInt) -> BigInt {
        let mut n = n.clone();
        if n.is_zero() {
            return n;
        }
        for &p in &self.primes {
            let bp = BigInt::from(p);
            loop {
                let (q, r) = n.div_rem(&bp);
                if !r.is_zero() {
                    break;
                }
                n = q;
            }
        }
        n
    }

    /// Whether `x` lies in `Λ`, i.e. its reduced denominator is supported on
    /// inverted primes.
    pub fn contains(&self, x: &BigRational) -> bool {
        self.strip(x.denom()).is_one()
    }

    pub fn is_unit(&self, x: &BigRational) -> bool {
        !x.is_zero() && self.contains(x) && self.strip(x.numer()).abs().is_one()
    }

    /// Euclidean norm on `Λ`: absolute value of the un-inverted part of the
    /// numerator. Zero for zero.
    pub fn norm(&self, x: &BigRational) -> BigInt {
        self.strip(x.numer()).abs()
    }

    pub fn check(&self, x: &BigRational) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInRing(format!("{x} ∉ {self}")))
        }
    }

    /// Union of two prime sets.
    pub fn join(&self, other: &Self) -> Self {
        let mut primes = self.primes.clone();
        primes.extend_from_slice(&other.primes);
        primes.sort_unstable();
        primes.dedup();
        Self { primes }
    }

    /// Product of the inverted primes (`1` for `ℤ`).
    pub fn radical(&self) -> BigInt {
        self.primes.iter().fold(BigInt::one(), |acc, &p| acc * p)
    }
}

impl fmt::Display for InvertedPrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primes.is_empty() {
            return write!(f, "ℤ");
        }
        let r = self.radical();
        write!(f, "ℤ[1/{r}]")
    }
}

impl TryFrom<Vec<u64>> for InvertedPrimeSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::from_primes(v)
    }
}

impl From<InvertedPrimeSet> for Vec<u64> {
    fn from(s: InvertedPrimeSet) -> Self {
        s.primes
    }
}
