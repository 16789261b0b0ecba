//! The tautological model `Λ_θ[ℓ]/(ℓ^{g+1})` of the Chow ring of a
//! polarised abelian variety over a point.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{binomial, factorial, InvertedPrimeSet, LambdaScalar};

/// Largest `g` accepted by the model.
pub const MAX_G: u32 = 8;

#[derive(Debug, PartialEq, Eq)]
pub struct TautModel {
    g: u32,
    nu: u64,
    ring: Arc<InvertedPrimeSet>,
}

/// `Λ_θ = ℤ[1/(ν·(2g+1)!)]` with `d = 0`.
pub fn build_model(g: u32, nu: u64) -> Result<Arc<TautModel>> {
    if g == 0 || nu == 0 {
        return Err(Error::Domain("need g ≥ 1 and ν ≥ 1".into()));
    }
    if g > MAX_G {
        return Err(Error::TooLarge(format!("g = {g} exceeds {MAX_G}")));
    }
    let n = factorial(2 * g as u64 + 1) * BigInt::from(nu);
    let ring = InvertedPrimeSet::inverting(&n.to_biguint().unwrap_or_else(BigUint::one))?;
    Ok(Arc::new(TautModel { g, nu, ring: Arc::new(ring) }))
}

impl TautModel {
    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn ring(&self) -> &Arc<InvertedPrimeSet> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.g as usize + 1
    }

    fn require_principal(&self) -> Result<()> {
        if self.nu != 1 {
            return Err(Error::Unsupported(format!(
                "Fourier/Pontryagin structure needs a principal polarisation (ν = {})",
                self.nu
            )));
        }
        Ok(())
    }
}

/// Element `Σ a_i ℓ^i` of the model; coefficients lie in `Λ_θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautClass {
    model: Arc<TautModel>,
    coefficients: Vec<BigRational>,
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl TautClass {
    pub fn new(model: &Arc<TautModel>, coefficients: Vec<BigRational>) -> Result<Self> {
        if coefficients.len() != model.dim() {
            return Err(Error::Dimension(format!(
                "expected {} coefficients, got {}",
                model.dim(),
                coefficients.len()
            )));
        }
        for c in &coefficients {
            model.ring.check(c)?;
        }
        Ok(Self { model: model.clone(), coefficients })
    }

    fn unchecked(model: &Arc<TautModel>, coefficients: Vec<BigRational>) -> Self {
        Self { model: model.clone(), coefficients }
    }

    pub fn zero(model: &Arc<TautModel>) -> Self {
        Self::unchecked(model, vec![BigRational::zero(); model.dim()])
    }

    /// `c·ℓ^i`.
    pub fn monomial(model: &Arc<TautModel>, i: usize, c: BigRational) -> Result<Self> {
        let mut v = vec![BigRational::zero(); model.dim()];
        *v.get_mut(i).ok_or_else(|| Error::Dimension(format!("ℓ^{i} vanishes in the model")))? = c;
        Self::new(model, v)
    }

    pub fn ell_power(model: &Arc<TautModel>, i: usize) -> Result<Self> {
        Self::monomial(model, i, BigRational::one())
    }

    /// `ℓ^i / i!`.
    pub fn divided_power(model: &Arc<TautModel>, i: usize) -> Result<Self> {
        Self::monomial(model, i, rat(1, factorial(i as u64)))
    }

    /// `exp(c·ℓ)`, truncated by nilpotency.
    pub fn exp_ell(model: &Arc<TautModel>, c: i64) -> Self {
        let v = (0..model.dim())
            .map(|i| rat(BigInt::from(c).pow(i as u32), factorial(i as u64)))
            .collect();
        Self::unchecked(model, v)
    }

    pub fn model(&self) -> &Arc<TautModel> {
        &self.model
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> LambdaScalar {
        LambdaScalar::from_rational(self.coefficients[i].clone(), self.model.ring.clone())
            .expect("coefficients are validated on construction")
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    fn same_model(&self, other: &Self) -> Result<()> {
        if self.model != other.model {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        let v = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect();
        Ok(Self::unchecked(&self.model, v))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::unchecked(&self.model, self.coefficients.iter().map(|a| a * c).collect())
    }

    /// Intersection product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        let n = self.model.dim();
        let mut v = vec![BigRational::zero(); n];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate().take(n - i) {
                v[i + j] += a * b;
            }
        }
        Ok(Self::unchecked(&self.model, v))
    }

    /// Canonical JSON view: exact coefficients as `"p/q"` strings.
    pub fn to_json(&self) -> TautClassJson {
        TautClassJson {
            g: self.model.g,
            nu: self.model.nu,
            coefficients: self.coefficients.iter().map(ToString::to_string).collect(),
        }
    }
}

impl fmt::Display for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·ℓ")?,
                _ => write!(f, "{c}·ℓ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TautClassJson {
    pub g: u32,
    pub nu: u64,
    pub coefficients: Vec<String>,
}

/// `[e(S)] = ℓ^g/(ν·g!)`.
pub fn point_class(m: &Arc<TautModel>) -> TautClass {
    let g = m.g as usize;
    TautClass::monomial(m, g, rat(1, factorial(g as u64) * BigInt::from(m.nu))).expect("in Λ_θ")
}

/// `λ = ℓ^{g−1}/(ν·(g−1)!)`.
pub fn lambda_class(m: &Arc<TautModel>) -> TautClass {
    let k = m.g as usize - 1;
    TautClass::monomial(m, k, rat(1, factorial(k as u64) * BigInt::from(m.nu))).expect("in Λ_θ")
}

/// Fourier transform on the model, from
/// `F(ℓ^i/i!) = (−1)^{g−i}·ℓ^{g−i}/(g−i)!` (the oracle-derived formula).
pub fn fourier(x: &TautClass) -> Result<TautClass> {
    let m = &x.model;
    m.require_principal()?;
    let g = m.g as usize;
    let mut v = vec![BigRational::zero(); g + 1];
    for (i, a) in x.coefficients.iter().enumerate() {
        // a·ℓ^i = a·i!·(ℓ^i/i!)
        let sign = if (g - i).is_multiple_of(2) { 1 } else { -1 };
        v[g - i] = a * rat(factorial(i as u64) * sign, factorial((g - i) as u64));
    }
    Ok(TautClass::unchecked(m, v))
}

/// `F^{-1} = (−1)^g·[−1]^*∘F`, and `[−1]^*` is the identity on the model.
pub fn inverse_fourier(x: &TautClass) -> Result<TautClass> {
    let y = fourier(x)?;
    Ok(if x.model.g.is_multiple_of(2) { y } else { y.scale(&-BigRational::one()) })
}

/// Pontryagin product `x ⋆ y = F^{-1}(F(x)·F(y))`.
pub fn pontryagin(x: &TautClass, y: &TautClass) -> Result<TautClass> {
    x.same_model(y)?;
    inverse_fourier(&fourier(x)?.mul(&fourier(y)?)?)
}

/// Closed form `(ℓ^i/i!) ⋆ (ℓ^j/j!) = C(2g−i−j, g−i)·ℓ^{i+j−g}/(i+j−g)!`,
/// kept as an independent cross-check of [`pontryagin`].
pub fn pontryagin_closed_form(m: &Arc<TautModel>, i: usize, j: usize) -> TautClass {
    let g = m.g as usize;
    if i + j < g {
        return TautClass::zero(m);
    }
    let k = i + j - g;
    let c = binomial((2 * g - i - j) as u64, (g - i) as u64);
    TautClass::monomial(m, k, rat(c, factorial(k as u64))).expect("integral")
}

fn pow_signed(n: i64, e: u32) -> BigInt {
    BigInt::from(n).pow(e)
}

/// `[n]^*ℓ^i = n^{2i}·ℓ^i`.
pub fn mult_pull(n: i64, x: &TautClass) -> TautClass {
    let v = x
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, a)| a * BigRational::from_integer(pow_signed(n, 2 * i as u32)))
        .collect();
    TautClass::unchecked(&x.model, v)
}

/// `[n]_*ℓ^i = n^{2(g−i)}·ℓ^i`.
pub fn mult_push(n: i64, x: &TautClass) -> TautClass {
    let g = x.model.g as usize;
    let v = x
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, a)| a * BigRational::from_integer(pow_signed(n, 2 * (g - i) as u32)))
        .collect();
    TautClass::unchecked(&x.model, v)
}

/// `∫ x`: the coefficient of `[e(S)]`, i.e. `ν·g!·a_g`.
pub fn degree(x: &TautClass) -> BigRational {
    let g = x.model.g as usize;
    &x.coefficients[g] * BigRational::from_integer(factorial(g as u64) * BigInt::from(x.model.nu))
}

/// Matrix of a linear endomorphism in the basis `ℓ^0..ℓ^g` (column `i` is
/// the image of `ℓ^i`).
pub fn operator_matrix(
    m: &Arc<TautModel>,
    op: impl Fn(&TautClass) -> Result<TautClass>,
) -> Result<Vec<Vec<BigRational>>> {
    let cols: Vec<Vec<BigRational>> = (0..m.dim())
        .map(|i| Ok(op(&TautClass::ell_power(m, i)?)?.coefficients))
        .collect::<Result<_>>()?;
    Ok((0..m.dim()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_model(1, 1).unwrap().ring().primes(), &[2, 3]);
        assert_eq!(build_model(2, 1).unwrap().ring().primes(), &[2, 3, 5]);
        assert_eq!(build_model(2, 3).unwrap().ring().primes(), &[2, 3, 5]);
        assert_eq!(build_model(2, 7).unwrap().ring().primes(), &[2, 3, 5, 7]);
        assert!(build_model(9, 1).is_err());
    }

    #[test]
    fn point_and_lambda() {
        let m = build_model(2, 3).unwrap();
        assert_eq!(point_class(&m).coefficients()[2], q(1, 6));
        assert_eq!(degree(&point_class(&m)), q(1, 1));
        let m = build_model(1, 2).unwrap();
        assert_eq!(lambda_class(&m).coefficients(), &[q(1, 2), q(0, 1)]);
        let m = build_model(3, 1).unwrap();
        assert_eq!(lambda_class(&m).coefficients()[2], q(1, 2));
    }

    #[test]
    fn fourier_examples() {
        for g in 1..=5 {
            let m = build_model(g, 1).unwrap();
            let pt = point_class(&m);
            let one = TautClass::ell_power(&m, 0).unwrap();
            assert_eq!(fourier(&pt).unwrap(), one);
            let sign = if g % 2 == 0 { q(1, 1) } else { q(-1, 1) };
            assert_eq!(fourier(&one).unwrap(), pt.scale(&sign));
            let ell = TautClass::ell_power(&m, 1).unwrap();
            let ff = fourier(&fourier(&ell).unwrap()).unwrap();
            assert_eq!(ff, ell.scale(&sign));
        }
        assert!(matches!(fourier(&point_class(&build_model(2, 2).unwrap())), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pontryagin_examples() {
        let m = build_model(1, 1).unwrap();
        let ell = TautClass::ell_power(&m, 1).unwrap();
        assert_eq!(pontryagin(&ell, &ell).unwrap(), ell);
        for g in 1..=6 {
            let m = build_model(g, 1).unwrap();
            let pt = point_class(&m);
            for i in 0..=g as usize {
                for j in 0..=g as usize {
                    let a = TautClass::divided_power(&m, i).unwrap();
                    let b = TautClass::divided_power(&m, j).unwrap();
                    assert_eq!(pontryagin(&a, &b).unwrap(), pontryagin_closed_form(&m, i, j));
                }
                let x = TautClass::ell_power(&m, i).unwrap();
                assert_eq!(pontryagin(&pt, &x).unwrap(), x);
            }
        }
    }

    #[test]
    fn multiplication_maps() {
        let m = build_model(3, 1).unwrap();
        let ell = TautClass::ell_power(&m, 1).unwrap();
        assert_eq!(mult_pull(2, &ell), ell.scale(&q(4, 1)));
        let x = TautClass::new(&m, vec![q(1, 1), q(2, 1), q(-3, 1), q(1, 2)]).unwrap();
        assert_eq!(mult_pull(-1, &x), x);
        assert_eq!(mult_pull(0, &x).coefficients(), &[q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(mult_push(2, &ell).coefficients()[1], q(16, 1));
    }
}
