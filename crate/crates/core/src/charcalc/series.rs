//! Truncated power series: univariate coefficient vectors and multivariate
//! series in Chern roots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lambda::factorial;

fn q(n: i64, d: &BigInt) -> BigRational {
    BigRational::new(BigInt::from(n), d.clone())
}

/// Univariate truncated series `Σ a_k x^k`, `k ≤ cap`, as coefficient
/// vectors of length `cap + 1`.
pub mod univariate {
    use super::*;

    /// `(1 − e^{−x})/x = Σ (−1)^k x^k/(k+1)!`, i.e. `Q(x)^{-1}`.
    pub fn q_inverse(cap: u32) -> Vec<BigRational> {
        (0..=cap as u64)
            .map(|k| q(if k % 2 == 0 { 1 } else { -1 }, &factorial(k + 1)))
            .collect()
    }

    /// `Q(x) = x/(1 − e^{−x})`.
    pub fn q_series(cap: u32) -> Vec<BigRational> {
        reciprocal(&q_inverse(cap)).expect("constant term is 1")
    }

    pub fn exp(cap: u32) -> Vec<BigRational> {
        (0..=cap as u64).map(|k| q(1, &factorial(k))).collect()
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().min(b.len());
        (0..n)
            .map(|k| (0..=k).fold(BigRational::zero(), |acc, i| acc + &a[i] * &b[k - i]))
            .collect()
    }

    pub fn reciprocal(a: &[BigRational]) -> Result<Vec<BigRational>> {
        if a.is_empty() || a[0].is_zero() {
            return Err(Error::Domain("series with zero constant term is not invertible".into()));
        }
        let inv0 = a[0].recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(a.len());
        for k in 0..a.len() {
            let mut s = if k == 0 { BigRational::one() } else { BigRational::zero() };
            for i in 1..=k {
                s -= &a[i] * &out[k - i];
            }
            out.push(s * &inv0);
        }
        Ok(out)
    }

    /// `log a` for `a_0 = 1`, via `(log a)' = a'/a`.
    pub fn log(a: &[BigRational]) -> Result<Vec<BigRational>> {
        if a.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let inv = reciprocal(a)?;
        let deriv: Vec<BigRational> =
            (1..a.len()).map(|k| &a[k] * BigRational::from_integer(k.into())).collect();
        let quot = mul(&deriv, &inv);
        let mut out = vec![BigRational::zero()];
        out.extend(quot.into_iter().enumerate().map(|(k, c)| c / BigRational::from_integer((k + 1).into())));
        out.truncate(a.len());
        Ok(out)
    }
}

/// A formal Chern root: root `index` of the bundle whose Chern classes live
/// in variable family `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub slot: u8,
    pub index: u8,
}

/// Truncated power series in a fixed, ordered list of roots. Every stored
/// exponent vector has total degree `≤ cap`; products truncate eagerly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSeries {
    roots: Vec<Root>,
    coefficients: BTreeMap<Vec<u32>, BigRational>,
    cap: u32,
}

impl RootSeries {
    pub fn zero(roots: Vec<Root>, cap: u32) -> Self {
        Self { roots, coefficients: BTreeMap::new(), cap }
    }

    pub fn one(roots: Vec<Root>, cap: u32) -> Self {
        let mut s = Self::zero(roots, cap);
        s.coefficients.insert(vec![0; s.roots.len()], BigRational::one());
        s
    }

    /// Series from explicit terms; terms above the cap are an error.
    pub fn from_terms(
        roots: Vec<Root>,
        cap: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(roots, cap);
        for (e, c) in terms {
            if e.len() != s.roots.len() {
                return Err(Error::Dimension("exponent vector length".into()));
            }
            let deg: u32 = e.iter().sum();
            if deg > cap {
                return Err(Error::CapExceeded { requested: deg as usize, cap: cap as usize });
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// The single root `roots[i]` as a series.
    pub fn root(roots: Vec<Root>, cap: u32, i: usize) -> Self {
        let mut e = vec![0; roots.len()];
        e[i] = 1;
        let mut s = Self::zero(roots, cap);
        if cap >= 1 {
            s.add_term(e, BigRational::one());
        }
        s
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.coefficients.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coefficients.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.roots != other.roots {
            return Err(Error::Dimension("series over different root lists".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.cap = self.cap.min(other.cap);
        for (e, c) in &other.coefficients {
            out.add_term(e.clone(), c.clone());
        }
        out.coefficients.retain(|e, _| e.iter().sum::<u32>() <= out.cap);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.roots.clone(), self.cap);
        for (e, x) in &self.coefficients {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let cap = self.cap.min(other.cap);
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.coefficients {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.coefficients {
                if da + eb.iter().sum::<u32>() > cap {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Self { roots: self.roots.clone(), coefficients: acc, cap })
    }

    /// Multiply by `f(roots[i])` for a univariate series `f`.
    pub fn mul_univariate(&self, i: usize, f: &[BigRational]) -> Self {
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e, c) in &self.coefficients {
            let d: u32 = e.iter().sum();
            for (k, a) in f.iter().enumerate() {
                if d + k as u32 > self.cap {
                    break;
                }
                if a.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] += k as u32;
                *acc.entry(e2).or_insert_with(BigRational::zero) += c * a;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Self { roots: self.roots.clone(), coefficients: acc, cap: self.cap }
    }

    /// `∏_{i ∈ which} f(α_i)`.
    pub fn product_of(roots: Vec<Root>, cap: u32, which: &[usize], f: &[BigRational]) -> Self {
        which
            .iter()
            .fold(Self::one(roots, cap), |acc, &i| acc.mul_univariate(i, f))
    }

    /// Substitute `f(α) = Σ a_k α^k` in a univariate series, with
    /// `α = self` (no constant term).
    pub fn compose(&self, f: &[BigRational]) -> Result<Self> {
        if self.coefficients.keys().any(|e| e.iter().all(|&x| x == 0)) {
            return Err(Error::Domain("inner series must have no constant term".into()));
        }
        let mut out = Self::zero(self.roots.clone(), self.cap);
        let mut power = Self::one(self.roots.clone(), self.cap);
        for (k, a) in f.iter().enumerate() {
            if k as u32 > self.cap {
                break;
            }
            out = out.add(&power.scale(a))?;
            power = power.mul(self)?;
        }
        Ok(out)
    }

    /// Degree-`m` homogeneous part.
    pub fn component(&self, m: u32) -> Self {
        Self {
            roots: self.roots.clone(),
            coefficients: self
                .coefficients
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Replace every root of family `slot` by its negative: the series of
    /// the dual bundle.
    pub fn negate_family(&self, slot: u8) -> Self {
        let mask: Vec<bool> = self.roots.iter().map(|r| r.slot == slot).collect();
        let mut out = self.clone();
        for (e, c) in out.coefficients.iter_mut() {
            let d: u32 = e.iter().zip(&mask).filter(|(_, &m)| m).map(|(x, _)| x).sum();
            if d % 2 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Re-embed into a longer root list containing every current root.
    pub fn embed(&self, roots: &[Root]) -> Result<Self> {
        let pos: Vec<usize> = self
            .roots
            .iter()
            .map(|r| {
                roots
                    .iter()
                    .position(|s| s == r)
                    .ok_or_else(|| Error::Dimension("root missing from target list".into()))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(roots.to_vec(), self.cap);
        for (e, c) in &self.coefficients {
            let mut e2 = vec![0; roots.len()];
            for (k, &p) in pos.iter().enumerate() {
                e2[p] = e[k];
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::univariate::*;
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn todd_series_coefficients() {
        // x/(1 − e^{−x}) = 1 + x/2 + x²/12 − x⁴/720 + …
        let qs = q_series(5);
        assert_eq!(qs, vec![r(1, 1), r(1, 2), r(1, 12), r(0, 1), r(-1, 720), r(0, 1)]);
        let qi = q_inverse(2);
        assert_eq!(qi, vec![r(1, 1), r(-1, 2), r(1, 6)]);
    }

    #[test]
    fn log_exp_inverse() {
        let l = log(&exp(6)).unwrap();
        let mut x = vec![BigRational::zero(); 7];
        x[1] = BigRational::one();
        assert_eq!(l, x);
    }

    #[test]
    fn multivariate_products_truncate() {
        let roots = vec![Root { slot: 0, index: 1 }, Root { slot: 0, index: 2 }];
        let a = RootSeries::root(roots.clone(), 3, 0);
        let b = RootSeries::root(roots.clone(), 3, 1);
        let s = a.add(&b).unwrap();
        let cube = s.mul(&s).unwrap().mul(&s).unwrap();
        assert_eq!(cube.terms().count(), 4);
        assert!(cube.mul(&s).unwrap().is_zero());
        let neg = s.negate_family(0);
        assert_eq!(neg.add(&s).unwrap(), RootSeries::zero(roots, 3));
    }
}
