//! The integers `T_m = ∏_p p^⌊m/(p−1)⌋` and the divisibility facts built on
//! them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::primes::{factorial, is_prime, primes_up_to};
use crate::error::{domain, invariant, Result};

/// `T_m`. Only primes `p <= m + 1` contribute.
pub fn big_t(m: u64) -> BigInt {
    primes_up_to(m + 1)
        .into_iter()
        .fold(BigInt::one(), |acc, p| acc * BigInt::from(p).pow((m / (p - 1)) as u32))
}

/// Quotient `T_m / ((m_1+1)!⋯(m_r+1)! · T_{n_1}⋯T_{n_s})`, checked to be an
/// integer.
pub fn divisibility_witness(ms: &[u64], ns: &[u64], m: u64) -> Result<BigInt> {
    let total: u64 = ms.iter().chain(ns).sum();
    if total > m {
        return Err(domain(format!(
            "sum of parts {total} exceeds m = {m}"
        )));
    }
    let divisor = ms
        .iter()
        .map(|&mi| factorial(mi + 1))
        .chain(ns.iter().map(|&ni| big_t(ni)))
        .fold(BigInt::one(), |acc, x| acc * x);
    let (q, r) = big_t(m).div_rem(&divisor);
    if !r.is_zero() {
        return Err(invariant(format!(
            "{divisor} does not divide T_{m} (ms = {ms:?}, ns = {ns:?})"
        )));
    }
    Ok(q)
}

/// The integer `N` with `T_h | N·h!²`.
pub fn lemma_n(h: u64) -> Result<u64> {
    if h == 0 {
        return Err(domain("h must be positive"));
    }
    let n = if h == 3 {
        2
    } else if is_prime(h + 1) {
        h + 1
    } else {
        1
    };
    let hf = factorial(h);
    let target = BigInt::from(n) * &hf * &hf;
    if !(target % big_t(h)).is_zero() {
        return Err(invariant(format!("T_{h} does not divide {n}·{h}!²")));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::primes::vp;

    #[test]
    fn todd_denominators() {
        let expected = [1u64, 2, 12, 24, 720, 1440, 60480];
        for (m, &t) in expected.iter().enumerate() {
            assert_eq!(big_t(m as u64), BigInt::from(t), "T_{m}");
        }
    }

    #[test]
    fn witness_examples() {
        assert_eq!(divisibility_witness(&[1], &[1], 3).unwrap(), BigInt::from(6));
        assert_eq!(divisibility_witness(&[], &[], 5).unwrap(), big_t(5));
        assert_eq!(divisibility_witness(&[2, 2], &[], 4).unwrap(), BigInt::from(20));
        assert!(matches!(
            divisibility_witness(&[2], &[2], 3),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_n(3).unwrap(), 2);
        assert_eq!(lemma_n(4).unwrap(), 5);
        assert_eq!(lemma_n(7).unwrap(), 1);
        let h7 = factorial(7);
        assert_eq!(&h7 * &h7 / big_t(7), BigInt::from(210));
        assert_eq!(BigInt::from(2880) / big_t(4), BigInt::from(4));
        assert!(lemma_n(0).is_err());
    }

    #[test]
    fn valuation_of_t_matches_definition() {
        for m in 0..40u64 {
            let t = big_t(m);
            let mut rest = t.clone();
            for p in primes_up_to(m + 1) {
                let e = vp(&t, p).unwrap();
                assert_eq!(e as u64, m / (p - 1));
                rest /= BigInt::from(p).pow(e);
            }
            assert!(rest.is_one(), "T_{m} has a stray factor");
        }
    }

    #[test]
    fn lemma_exhaustive() {
        for h in 1..=30 {
            lemma_n(h).unwrap();
        }
    }
}
