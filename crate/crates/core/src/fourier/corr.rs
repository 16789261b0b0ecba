//! Correspondences `Σ a_n Γ_[n]` in the truncated algebra
//! `Λ[t, t^{-1}]/((t−1)^N)`, with `Γ_[n] ↦ t^n`.
//!
//! Elements are stored in the basis `u^k = (t−1)^k`, `k < N`. The Pontryagin
//! product `⋆` is multiplication; composition `Γ_[m]∘Γ_[n] = Γ_[mn]` is
//! computed through moments `Σ_n a_n n^j`, which it multiplies pointwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::model::{mult_push, TautClass};
use crate::error::{invariant, Error, Result};
use crate::lambda::{binomial, factorial, InvertedPrimeSet, LambdaScalar};

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Stirling numbers of the second kind `S(j, k)`, `j, k < n`.
fn stirling2(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n]; n];
    if n > 0 {
        s[0][0] = BigInt::one();
    }
    for j in 1..n {
        for k in 1..=j {
            s[j][k] = &s[j - 1][k - 1] + BigInt::from(k) * &s[j - 1][k];
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceElement {
    nil_index: usize,
    ring: Arc<InvertedPrimeSet>,
    /// coefficients of `(t−1)^k`, `k < nil_index`
    u: Vec<BigRational>,
}

impl CorrespondenceElement {
    fn from_u(nil_index: usize, ring: &Arc<InvertedPrimeSet>, u: Vec<BigRational>) -> Result<Self> {
        for c in &u {
            ring.check(c)?;
        }
        Ok(Self { nil_index, ring: ring.clone(), u })
    }

    pub fn zero(nil_index: usize, ring: &Arc<InvertedPrimeSet>) -> Result<Self> {
        if nil_index == 0 {
            return Err(Error::Domain("nilpotency index must be positive".into()));
        }
        Ok(Self { nil_index, ring: ring.clone(), u: vec![BigRational::zero(); nil_index] })
    }

    /// `Γ_[n]` for any integer `n` (negative `n` uses `t^{-1} = Σ (−u)^k`).
    pub fn gamma(n: i64, nil_index: usize, ring: &Arc<InvertedPrimeSet>) -> Result<Self> {
        let mut x = Self::zero(nil_index, ring)?;
        for k in 0..nil_index {
            x.u[k] = if n >= 0 {
                int(binomial(n as u64, k as u64))
            } else {
                // (1+u)^{-m} = Σ_k (−1)^k C(m+k−1, k) u^k
                let m = (-n) as u64;
                let c = binomial(m + k as u64 - 1, k as u64);
                int(if k % 2 == 0 { c } else { -c })
            };
        }
        Ok(x)
    }

    /// `Σ a_n Γ_[n]` from a finite support map.
    pub fn from_support(
        support: &BTreeMap<i64, BigRational>,
        nil_index: usize,
        ring: &Arc<InvertedPrimeSet>,
    ) -> Result<Self> {
        let mut x = Self::zero(nil_index, ring)?;
        for (&n, a) in support {
            ring.check(a)?;
            x = x.add(&Self::gamma(n, nil_index, ring)?.scale(a))?;
        }
        Ok(x)
    }

    pub fn nil_index(&self) -> usize {
        self.nil_index
    }

    pub fn ring(&self) -> &Arc<InvertedPrimeSet> {
        &self.ring
    }

    pub fn u_coefficients(&self) -> &[BigRational] {
        &self.u
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().all(Zero::is_zero)
    }

    /// Canonical representative `Σ_{n=0}^{N−1} a_n Γ_[n]`, expanding
    /// `u^k = Σ_n C(k,n)(−1)^{k−n} t^n`.
    pub fn support(&self) -> BTreeMap<i64, LambdaScalar> {
        let mut a = vec![BigRational::zero(); self.nil_index];
        for (k, c) in self.u.iter().enumerate() {
            for (n, slot) in a.iter_mut().enumerate().take(k + 1) {
                let b = int(binomial(k as u64, n as u64));
                if (k - n) % 2 == 0 {
                    *slot += c * b;
                } else {
                    *slot -= c * b;
                }
            }
        }
        a.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| {
                (n as i64, LambdaScalar::from_rational(c, self.ring.clone()).expect("closed under Λ"))
            })
            .collect()
    }

    /// Moments `M_j = Σ_n a_n n^j` for `j < N`: `M = S·diag(k!)·u`.
    pub fn moments(&self) -> Vec<BigRational> {
        let s = stirling2(self.nil_index);
        (0..self.nil_index)
            .map(|j| {
                (0..=j).fold(BigRational::zero(), |acc, k| {
                    acc + &self.u[k] * int(&s[j][k] * factorial(k as u64))
                })
            })
            .collect()
    }

    /// Inverse of [`Self::moments`] (triangular solve).
    pub fn from_moments(m: &[BigRational], ring: &Arc<InvertedPrimeSet>) -> Result<Self> {
        let n = m.len();
        let s = stirling2(n);
        let mut u = vec![BigRational::zero(); n];
        for j in 0..n {
            let mut r = m[j].clone();
            for k in 0..j {
                r -= &u[k] * int(&s[j][k] * factorial(k as u64));
            }
            u[j] = r / int(factorial(j as u64));
        }
        Self::from_u(n, ring, u)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.nil_index != other.nil_index || self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let u = self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect();
        Ok(Self { u, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { u: self.u.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    /// Pontryagin product `⋆` (multiplication in `u`).
    pub fn star(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.nil_index;
        let mut u = vec![BigRational::zero(); n];
        for i in 0..n {
            if self.u[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                u[i + j] += &self.u[i] * &other.u[j];
            }
        }
        Ok(Self { u, ..self.clone() })
    }

    pub fn star_pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::gamma(0, self.nil_index, &self.ring)?;
        for _ in 0..k {
            acc = acc.star(self)?;
        }
        Ok(acc)
    }

    /// Composition of correspondences, `Γ_[m]∘Γ_[n] = Γ_[mn]`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let m: Vec<BigRational> =
            self.moments().iter().zip(other.moments()).map(|(a, b)| a * b).collect();
        Self::from_moments(&m, &self.ring)
    }

    /// Reduce into a coarser quotient `(t−1)^k`, `k ≤ N`.
    pub fn reduce(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.nil_index {
            return Err(Error::Domain(format!("cannot reduce index {} to {k}", self.nil_index)));
        }
        Self::from_u(k, &self.ring, self.u[..k].to_vec())
    }

    /// Action on the tautological model: `Σ a_n [n]_*`.
    pub fn act(&self, x: &TautClass) -> Result<TautClass> {
        let mut out = TautClass::zero(x.model());
        for (n, a) in self.support() {
            out = out.add(&mult_push(n, x).scale(a.value()))?;
        }
        Ok(out)
    }
}

/// `log Γ_[1] = Σ_{j=1}^{N−1} (−1)^{j−1} (Γ_[1]−Γ_[0])^{⋆j}/j`.
pub fn log_gamma1(nil_index: usize, ring: &Arc<InvertedPrimeSet>) -> Result<CorrespondenceElement> {
    let mut x = CorrespondenceElement::zero(nil_index, ring)?;
    for j in 1..nil_index {
        let c = BigRational::new(if j % 2 == 1 { 1 } else { -1 }.into(), j.into());
        x.u[j] = c;
    }
    ring.check(&x.u[nil_index - 1])?;
    Ok(x)
}

/// The closed form `c_n = Σ_{j=max(1,n)}^{N−1} (−1)^{n−1} C(j,n)/j` of the
/// coefficients of `log Γ_[1]` on `Γ_[n]`.
pub fn log_gamma1_coefficients(nil_index: usize) -> Vec<BigRational> {
    (0..nil_index)
        .map(|n| {
            (n.max(1)..nil_index).fold(BigRational::zero(), |acc, j| {
                let t = BigRational::new(binomial(j as u64, n as u64), BigInt::from(j));
                if n % 2 == 1 {
                    acc + t
                } else {
                    acc - t
                }
            })
        })
        .collect()
}

/// `π_i = (log Γ_[1])^{⋆(2g−i)}/(2g−i)!` for `i = 0..=2g`, with
/// `N = 2g + d + 1`. Each is checked against the moment conditions
/// `Σ_n a_{i,n} n^j = [j = 2g−i]`, `0 ≤ j ≤ 2g`.
pub fn beauville_projectors(
    g: u32,
    d: u32,
    nil_index: usize,
    ring: &Arc<InvertedPrimeSet>,
) -> Result<Vec<CorrespondenceElement>> {
    let top = 2 * g as usize;
    if nil_index != top + d as usize + 1 {
        return Err(Error::Precondition(format!(
            "nilIndex must be 2g+d+1 = {} (got {nil_index})",
            top + d as usize + 1
        )));
    }
    let log = log_gamma1(nil_index, ring)?;
    let mut out = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let k = top - i;
        let pi = log.star_pow(k)?.scale(&BigRational::new(1.into(), factorial(k as u64)));
        let m = pi.moments();
        for (j, mj) in m.iter().enumerate().take(top + 1) {
            let want = if j == k { BigRational::one() } else { BigRational::zero() };
            if *mj != want {
                return Err(invariant(format!("moment Σ a_{{{i},n}} n^{j} = {mj}, expected {want}")));
            }
        }
        out.push(pi);
    }
    Ok(out)
}

/// Ring `Λ_θ = ℤ[1/(ν·(2g+d+1)!)]` used for the projector algebra.
pub fn projector_ring(g: u32, d: u32, nu: u64) -> Result<Arc<InvertedPrimeSet>> {
    let n = factorial((2 * g + d + 1) as u64) * BigInt::from(nu);
    Ok(Arc::new(InvertedPrimeSet::inverting(&n.to_biguint().expect("positive"))?))
}

/// One row of a projector coefficient table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorEntry {
    pub i: usize,
    pub n: i64,
    pub a: String,
}

pub fn projector_table(projectors: &[CorrespondenceElement]) -> Vec<ProjectorEntry> {
    projectors
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.support()
                .into_iter()
                .map(move |(n, a)| ProjectorEntry { i, n, a: a.value().to_string() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::model::{build_model, TautClass};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn log_gamma_genus_one() {
        let ring = projector_ring(1, 0, 1).unwrap();
        let log = log_gamma1(3, &ring).unwrap();
        let s = log.support();
        assert_eq!(s[&0].value(), &q(-3, 2));
        assert_eq!(s[&1].value(), &q(2, 1));
        assert_eq!(s[&2].value(), &q(-1, 2));
        let closed = log_gamma1_coefficients(3);
        assert_eq!(closed, vec![q(-3, 2), q(2, 1), q(-1, 2)]);
    }

    #[test]
    fn closed_form_matches_series() {
        for n in 1..9 {
            let ring = projector_ring(4, 0, 1).unwrap();
            let s = log_gamma1(n, &ring).unwrap().support();
            let c = log_gamma1_coefficients(n);
            for (k, ck) in c.iter().enumerate() {
                let got = s.get(&(k as i64)).map(|x| x.value().clone()).unwrap_or_default();
                assert_eq!(&got, ck);
            }
        }
    }

    #[test]
    fn gamma_products() {
        let ring = projector_ring(2, 1, 1).unwrap();
        let n = 6;
        let g = |k| CorrespondenceElement::gamma(k, n, &ring).unwrap();
        assert_eq!(g(2).star(&g(3)).unwrap(), g(5));
        assert_eq!(g(-1).star(&g(1)).unwrap(), g(0));
        assert_eq!(g(2).compose(&g(3)).unwrap(), g(6));
        assert_eq!(g(-1).compose(&g(-2)).unwrap(), g(2));
    }

    #[test]
    fn projectors_genus_one() {
        let ring = projector_ring(1, 0, 1).unwrap();
        let p = beauville_projectors(1, 0, 3, &ring).unwrap();
        assert_eq!(p[2], CorrespondenceElement::gamma(0, 3, &ring).unwrap());
        let sum = p.iter().skip(1).try_fold(p[0].clone(), |a, b| a.add(b)).unwrap();
        assert_eq!(sum, CorrespondenceElement::gamma(1, 3, &ring).unwrap());
        assert!(beauville_projectors(1, 0, 4, &ring).is_err());
    }

    #[test]
    fn projector_action_grades_the_model() {
        for g in 1..=4u32 {
            let m = build_model(g, 1).unwrap();
            let ring = projector_ring(g, 0, 1).unwrap();
            let p = beauville_projectors(g, 0, 2 * g as usize + 1, &ring).unwrap();
            for (i, pi) in p.iter().enumerate() {
                for k in 0..=g as usize {
                    let x = TautClass::ell_power(&m, k).unwrap();
                    let y = pi.act(&x).unwrap();
                    if i == 2 * k {
                        assert_eq!(y, x);
                    } else {
                        assert!(y.is_zero());
                    }
                }
            }
        }
    }
}
