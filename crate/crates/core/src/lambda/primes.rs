//! Small-prime utilities: deterministic sieving, trial-division primality,
//! p-adic valuations and factorials.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest `e` with `p^e | n`.
pub fn vp(n: &BigInt, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if n.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    Ok(vp_unchecked(n.magnitude(), p))
}

pub(crate) fn vp_unchecked(n: &BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Distinct prime divisors of `n` by trial division. Intended for the
/// factorial-sized moduli used throughout the crate.
pub fn prime_divisors(n: &BigUint) -> Vec<u64> {
    let mut n = n.clone();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while BigUint::from(d) * BigUint::from(d) <= n {
        let bd = BigUint::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        let rest: u64 = n
            .try_into()
            .expect("cofactor after trial division exceeds u64");
        out.push(rest);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp(&BigInt::from(12), 2).unwrap(), 2);
        assert_eq!(vp(&BigInt::from(720), 3).unwrap(), 2);
        assert_eq!(vp(&BigInt::from(1), 5).unwrap(), 0);
        assert_eq!(vp(&BigInt::from(-48), 2).unwrap(), 4);
    }

    #[test]
    fn valuation_errors() {
        assert_eq!(vp(&BigInt::zero(), 2), Err(Error::UndefinedValuation));
        assert!(matches!(vp(&BigInt::from(12), 4), Err(Error::Domain(_))));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = primes_up_to(500);
        let trial: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, trial);
    }

    #[test]
    fn divisors_of_factorials() {
        assert_eq!(prime_divisors(&factorial(7).magnitude().clone()), vec![2, 3, 5, 7]);
        assert_eq!(prime_divisors(&BigUint::from(360u32)), vec![2, 3, 5]);
        assert_eq!(prime_divisors(&BigUint::from(1u32)), Vec::<u64>::new());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
