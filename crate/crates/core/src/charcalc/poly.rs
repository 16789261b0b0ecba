//! Weighted multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Conventional bundle slots for Chern variables.
pub const TANGENT: u8 = 0;
pub const COEFF: u8 = 1;

/// A polynomial variable. Chern classes carry their index as weight, the
/// rank symbol has weight zero and `δ` weight one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Rank,
    Chern { bundle: u8, index: u8 },
    Delta,
}

impl Var {
    pub fn c(index: u8) -> Self {
        Var::Chern { bundle: TANGENT, index }
    }

    /// `c′_index`, the Chern classes of the coefficient sheaf.
    pub fn cp(index: u8) -> Self {
        Var::Chern { bundle: COEFF, index }
    }

    pub fn chern(bundle: u8, index: u8) -> Self {
        Var::Chern { bundle, index }
    }

    pub fn weight(&self) -> u32 {
        match self {
            Var::Rank => 0,
            Var::Chern { index, .. } => *index as u32,
            Var::Delta => 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Var::Rank => "r".into(),
            Var::Delta => "delta".into(),
            Var::Chern { bundle: TANGENT, index } => format!("c{index}"),
            Var::Chern { bundle: COEFF, index } => format!("c'{index}"),
            Var::Chern { bundle, index } => format!("c{index}[E{}]", bundle - 1),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown variable {s:?}"));
        match s {
            "r" => return Ok(Var::Rank),
            "delta" => return Ok(Var::Delta),
            _ => {}
        }
        let rest = s.strip_prefix('c').ok_or_else(bad)?;
        if let Some(idx) = rest.strip_prefix('\'') {
            return Ok(Var::cp(idx.parse().map_err(|_| bad())?));
        }
        if let Some((idx, b)) = rest.split_once("[E") {
            let b: u8 = b.strip_suffix(']').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            return Ok(Var::chern(b + 1, idx.parse().map_err(|_| bad())?));
        }
        Ok(Var::c(rest.parse().map_err(|_| bad())?))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Sparse monomial: `(variable, exponent)` pairs sorted by variable, no zero
/// exponents. Ordered graded-lex by weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Self(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Self(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.weight() * e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Self(out)
    }

    pub fn without(&self, v: Var) -> Self {
        Self(self.0.iter().copied().filter(|(w, _)| *w != v).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in weighted Chern variables (and `r`, `δ`) over `ℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::from_terms([(Monomial::var(v), BigRational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    /// Product, dropping every monomial of weight above `cap`.
    pub fn mul_truncated(&self, other: &Self, cap: Option<u32>) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            let wa = ma.weight();
            if cap.is_some_and(|c| wa > c) {
                continue;
            }
            for (mb, cb) in &other.terms {
                if cap.is_some_and(|c| wa + mb.weight() > c) {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Weight-`w` homogeneous part.
    pub fn component(&self, w: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, cap: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn is_homogeneous(&self, w: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    /// Ring homomorphism sending each variable to `f(var)` (or itself when
    /// `f` returns `None`).
    pub fn substitute(&self, f: impl Fn(Var) -> Option<GradedPolynomial>) -> Self {
        let mut cache: BTreeMap<(Var, u32), GradedPolynomial> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for &(v, e) in m.pairs() {
                let pe = cache
                    .entry((v, e))
                    .or_insert_with(|| f(v).unwrap_or_else(|| Self::var(v)).pow(e))
                    .clone();
                term = &term * &pe;
            }
            out = &out + &term;
        }
        out
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.pairs().iter().map(|p| p.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(BigRational::is_integer)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn lcd(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn to_json(&self) -> PolynomialJson {
        let variables = self.variables();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                exponents: variables.iter().map(|&v| m.exponent(v)).collect(),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })
            .collect();
        PolynomialJson { variables: variables.iter().map(Var::name).collect(), terms }
    }

    pub fn from_json(j: &PolynomialJson) -> Result<Self> {
        let vars: Vec<Var> = j.variables.iter().map(|s| Var::parse(s)).collect::<Result<_>>()?;
        let mut p = Self::zero();
        for t in &j.terms {
            if t.exponents.len() != vars.len() {
                return Err(Error::Parse("exponent vector length".into()));
            }
            let num: BigInt = t.numerator.parse().map_err(|_| Error::Parse(t.numerator.clone()))?;
            let den: BigInt = t.denominator.parse().map_err(|_| Error::Parse(t.denominator.clone()))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            let m = Monomial::from_pairs(vars.iter().copied().zip(t.exponents.iter().copied()));
            p.add_term(m, BigRational::new(num, den));
        }
        Ok(p)
    }
}

/// Canonical serialisation: variables in canonical order, monomials in
/// graded-lex order, coefficients as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

impl Serialize for GradedPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        Self::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.mul_truncated(rhs, None)
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.pairs().is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: u8) -> GradedPolynomial {
        GradedPolynomial::var(Var::c(i))
    }

    #[test]
    fn arithmetic_and_components() {
        let p = &(&c(1) * &c(1)) + &c(2);
        assert!(p.is_homogeneous(2));
        let sq = &p * &p;
        assert_eq!(sq.max_weight(), Some(4));
        assert_eq!(sq.mul_truncated(&c(1), Some(4)), GradedPolynomial::zero());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn substitution() {
        // c1 -> -c1, c2 -> c2
        let p = &(&c(1) * &c(1)) + &c(1);
        let q = p.substitute(|v| (v == Var::c(1)).then(|| -&c(1)));
        assert_eq!(q, &(&c(1) * &c(1)) - &c(1));
    }

    #[test]
    fn json_round_trip() {
        let p = &c(1).scale(&BigRational::new(1.into(), 12.into())) + &GradedPolynomial::var(Var::cp(2));
        let s = serde_json::to_string(&p).unwrap();
        let back: GradedPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(s.contains("\"c'2\""));
    }

    #[test]
    fn variable_names_parse() {
        for v in [Var::Rank, Var::Delta, Var::c(3), Var::cp(2), Var::chern(3, 4)] {
            assert_eq!(Var::parse(&v.name()).unwrap(), v);
        }
        assert!(Var::parse("x1").is_err());
    }
}
