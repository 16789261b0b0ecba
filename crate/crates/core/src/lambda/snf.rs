//! Smith normal form over the principal ideal rings used in this crate:
//! localisations `ℤ[1/N]` and residue rings `ℤ/p^k`.
//!
//! Pivot rule: the nonzero entry of least Euclidean norm in the active
//! block, ties broken by row-major position. For `ℤ/p^k` the norm is
//! `p^{v_p}`, so this is the minimal-valuation pivot.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, Matrix, PrimePower, QMatrix, ZMatrix};
use super::ring::InvertedPrimeSet;
use crate::error::{Error, Result};

/// A commutative principal ideal ring with a Euclidean-style norm, enough
/// structure to run the Smith algorithm.
pub trait SnfRing {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Norm of a nonzero element; units have norm one.
    fn norm(&self, a: &Self::Elem) -> BigInt;
    /// `a = q·b + r` with `r = 0` or `norm(r) < norm(b)`; `b ≠ 0`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// A unit `u` such that `u·a` is the canonical associate of `a`.
    fn normalizer(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of `u·a`'s normaliser, i.e. `u^{-1}`.
    fn unit_inverse(&self, u: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        !self.is_zero(a) && self.norm(a).is_one()
    }
}

/// `Λ = ℤ[1/N]` with elements stored as rationals.
#[derive(Clone, Copy, Debug)]
pub struct Localized<'a>(pub &'a InvertedPrimeSet);

impl SnfRing for Localized<'_> {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn norm(&self, a: &BigRational) -> BigInt {
        self.0.norm(a)
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        // b = u·m with u a unit and m the un-inverted part; a/u = A/D with D a
        // unit integer. Divide A by m in ℤ, then rescale.
        let m = self.0.strip(b.numer()).abs();
        let u = b / BigRational::from_integer(m.clone());
        let au = a / &u;
        let big_a = au.numer();
        let d = au.denom();
        let q = BigRational::new(big_a.div_floor(&m), d.clone());
        let r = a - &q * b;
        debug_assert!(r.is_zero() || self.norm(&r) < m);
        (q, r)
    }
    fn normalizer(&self, a: &BigRational) -> BigRational {
        let m = self.0.strip(a.numer()).abs();
        BigRational::from_integer(m) / a
    }
    fn unit_inverse(&self, u: &BigRational) -> BigRational {
        u.recip()
    }
}

/// `ℤ/p^k` with canonical representatives in `[0, p^k)`.
#[derive(Clone, Debug)]
pub struct PrimePowerResidues {
    pp: PrimePower,
    modulus: BigInt,
}

impl PrimePowerResidues {
    pub fn new(pp: PrimePower) -> Self {
        Self { pp, modulus: pp.value() }
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }

    fn valuation(&self, a: &BigInt) -> u32 {
        let p = BigInt::from(self.pp.p);
        let mut a = a.clone();
        let mut v = 0;
        while v < self.pp.k && (&a % &p).is_zero() {
            a /= &p;
            v += 1;
        }
        v
    }

    fn inverse_unit(&self, u: &BigInt) -> BigInt {
        let e = u.extended_gcd(&self.modulus);
        debug_assert!(e.gcd.is_one());
        self.reduce(&e.x)
    }
}

impl SnfRing for PrimePowerResidues {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        self.reduce(a).is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&-a)
    }
    fn norm(&self, a: &BigInt) -> BigInt {
        BigInt::from(self.pp.p).pow(self.valuation(a))
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        if self.is_zero(a) {
            return (BigInt::zero(), BigInt::zero());
        }
        let va = self.valuation(a);
        let vb = self.valuation(b);
        if va < vb {
            return (BigInt::zero(), self.reduce(a));
        }
        let pv = BigInt::from(self.pp.p).pow(vb);
        let ub = b / &pv;
        let q = self.mul(&(a / &pv), &self.inverse_unit(&ub));
        (q, BigInt::zero())
    }
    fn normalizer(&self, a: &BigInt) -> BigInt {
        let pv = BigInt::from(self.pp.p).pow(self.valuation(a));
        self.inverse_unit(&(self.reduce(a) / pv))
    }
    fn unit_inverse(&self, u: &BigInt) -> BigInt {
        self.inverse_unit(u)
    }
}

/// `U·M·V = D` with `U`, `V` invertible and `D` diagonal with canonical,
/// divisibility-ordered entries. Inverses of `U` and `V` are kept as well.
#[derive(Clone, Debug, PartialEq)]
pub struct Smith<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: Clone + num_traits::Zero> Smith<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work<'r, R: SnfRing> {
    ring: &'r R,
    a: Vec<Vec<R::Elem>>,
    u: Vec<Vec<R::Elem>>,
    u_inv: Vec<Vec<R::Elem>>,
    v: Vec<Vec<R::Elem>>,
    v_inv: Vec<Vec<R::Elem>>,
}

impl<R: SnfRing> Work<'_, R> {
    fn rows(&self) -> usize {
        self.a.len()
    }
    fn cols(&self) -> usize {
        self.v.len()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += c·row_j
    fn add_row(&mut self, i: usize, j: usize, c: &R::Elem) {
        let r = self.ring;
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x = r.add(x, &r.mul(c, y));
            }
        }
        // U^{-1} changes by column_j -= c·column_i
        for row in &mut self.u_inv {
            let t = r.mul(c, &row[i]);
            row[j] = r.sub(&row[j], &t);
        }
    }

    /// col_i += c·col_j
    fn add_col(&mut self, i: usize, j: usize, c: &R::Elem) {
        let r = self.ring;
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = r.mul(c, &row[j]);
                row[i] = r.add(&row[i], &t);
            }
        }
        // V^{-1} changes by row_j -= c·row_i
        let src = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(&src) {
            *x = r.sub(x, &r.mul(c, y));
        }
    }

    fn scale_row(&mut self, i: usize, u: &R::Elem) {
        let r = self.ring;
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = r.mul(x, u);
        }
        let ui = r.unit_inverse(u);
        for row in &mut self.u_inv {
            row[i] = r.mul(&row[i], &ui);
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let r = self.ring;
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if r.is_zero(x) {
                    continue;
                }
                let n = r.norm(x);
                if best.as_ref().is_none_or(|(bn, _, _)| n < *bn) {
                    best = Some((n, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) -> usize {
        let r = self.ring;
        let n = self.rows().min(self.cols());
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t].clone();
                let mut dirty = false;
                for i in t + 1..self.rows() {
                    if r.is_zero(&self.a[i][t]) {
                        continue;
                    }
                    let (q, rem) = r.div_rem(&self.a[i][t], &p);
                    self.add_row(i, t, &r.neg(&q));
                    dirty |= !r.is_zero(&rem);
                }
                for j in t + 1..self.cols() {
                    if r.is_zero(&self.a[t][j]) {
                        continue;
                    }
                    let (q, rem) = r.div_rem(&self.a[t][j], &p);
                    self.add_col(j, t, &r.neg(&q));
                    dirty |= !r.is_zero(&rem);
                }
                if !dirty {
                    // pivot must divide the remaining block
                    let mut bad = None;
                    'scan: for i in t + 1..self.rows() {
                        for j in t + 1..self.cols() {
                            if !r.is_zero(&r.div_rem(&self.a[i][j], &p).1) {
                                bad = Some(i);
                                break 'scan;
                            }
                        }
                    }
                    match bad {
                        None => break,
                        Some(i) => self.add_row(t, i, &r.one()),
                    }
                }
                let Some((pi, pj)) = self.min_pivot_local(t) else { unreachable!() };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
            }
            let u = r.normalizer(&self.a[t][t]);
            self.scale_row(t, &u);
            t += 1;
        }
        t
    }

    /// Least-norm nonzero entry in row `t` or column `t` of the active block.
    fn min_pivot_local(&self, t: usize) -> Option<(usize, usize)> {
        let r = self.ring;
        let mut best: Option<(BigInt, usize, usize)> = None;
        let cands = (t..self.rows())
            .map(|i| (i, t))
            .chain((t + 1..self.cols()).map(|j| (t, j)));
        for (i, j) in cands {
            let x = &self.a[i][j];
            if r.is_zero(x) {
                continue;
            }
            let n = r.norm(x);
            if best.as_ref().is_none_or(|(bn, _, _)| n < *bn) {
                best = Some((n, i, j));
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

fn to_rows<T: Clone + num_traits::Zero>(m: &Matrix<T>) -> Vec<Vec<T>> {
    m.to_rows()
}

fn identity_rows<R: SnfRing>(ring: &R, n: usize) -> Vec<Vec<R::Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

/// Smith normal form over an arbitrary [`SnfRing`].
pub fn smith<R>(ring: &R, m: &Matrix<R::Elem>) -> Smith<R::Elem>
where
    R: SnfRing,
    R::Elem: num_traits::Zero,
{
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        ring,
        a: to_rows(m),
        u: identity_rows(ring, rows),
        u_inv: identity_rows(ring, rows),
        v: identity_rows(ring, cols),
        v_inv: identity_rows(ring, cols),
    };
    let rank = w.run();
    let build = |rows: Vec<Vec<R::Elem>>, r: usize, c: usize| {
        Matrix::from_vec(r, c, rows.into_iter().flatten().collect()).expect("shape")
    };
    Smith {
        d: build(w.a, rows, cols),
        u: build(w.u, rows, rows),
        u_inv: build(w.u_inv, rows, rows),
        v: build(w.v, cols, cols),
        v_inv: build(w.v_inv, cols, cols),
        rank,
    }
}

/// Smith form over `Λ`. Every entry of `m` must lie in `Λ`.
pub fn smith_over_lambda(m: &QMatrix, ring: &InvertedPrimeSet) -> Result<Smith<BigRational>> {
    for x in m.entries() {
        ring.check(x)?;
    }
    Ok(smith(&Localized(ring), m))
}

/// Smith form over `ℤ/p^k`.
pub fn smith_mod_prime_power(m: &ZMatrix, pp: PrimePower) -> Smith<BigInt> {
    let r = PrimePowerResidues::new(pp);
    smith(&r, &m.map(|x| r.reduce(x)))
}

/// Result of [`smith_normal_form`]: rational matrices for the `Λ` case,
/// residue matrices for the `ℤ/p^k` case.
#[derive(Clone, Debug, PartialEq)]
pub enum SmithForm {
    Lambda(Smith<BigRational>),
    PrimePower(Smith<BigInt>),
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        match self {
            SmithForm::Lambda(s) => s.rank,
            SmithForm::PrimePower(s) => s.rank,
        }
    }
}

/// Smith normal form of an integer matrix over `Λ`, or over `ℤ/p^k` when the
/// matrix carries a modulus. A modulus whose prime is inverted in `Λ` is
/// rejected (the residue ring would be zero).
pub fn smith_normal_form(m: &IntMatrix, ring: &InvertedPrimeSet) -> Result<SmithForm> {
    match m.modulus() {
        None => Ok(SmithForm::Lambda(smith_over_lambda(&m.matrix().to_rational(), ring)?)),
        Some(pp) if ring.contains_prime(pp.p) => Err(Error::Domain(format!(
            "modulus prime {} is inverted in {ring}",
            pp.p
        ))),
        Some(pp) => Ok(SmithForm::PrimePower(smith_mod_prime_power(m.matrix(), pp))),
    }
}

/// Determinant of a square rational matrix by fraction-free elimination.
pub fn determinant(m: &QMatrix) -> Result<BigRational> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension("determinant of non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn check_lambda(m: &QMatrix, ring: &InvertedPrimeSet) -> Smith<BigRational> {
        let s = smith_over_lambda(m, ring).unwrap();
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), QMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), QMatrix::identity(m.cols()));
        assert!(ring.is_unit(&determinant(&s.u).unwrap()));
        assert!(ring.is_unit(&determinant(&s.v).unwrap()));
        for x in s.u.entries().iter().chain(s.v.entries()) {
            assert!(ring.contains(x));
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!((w[1].numer() % w[0].numer()).is_zero(), "{diag:?} not divisibility-sorted");
        }
        s
    }

    #[test]
    fn units_become_identity() {
        let ring = InvertedPrimeSet::inverting_u64(6).unwrap();
        let s = check_lambda(&QMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]), &ring);
        assert_eq!(s.d, QMatrix::identity(2));
    }

    #[test]
    fn zero_matrix() {
        let s = check_lambda(&QMatrix::from_i64_rows(&[&[0]]), &InvertedPrimeSet::integers());
        assert_eq!(s.d, QMatrix::from_i64_rows(&[&[0]]));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn small_integer_example() {
        let s = check_lambda(
            &QMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]),
            &InvertedPrimeSet::integers(),
        );
        assert_eq!(s.diagonal(), vec![q(2), q(4)]);
    }

    #[test]
    fn strips_inverted_primes() {
        let ring = InvertedPrimeSet::from_primes([2]).unwrap();
        let s = check_lambda(&QMatrix::from_i64_rows(&[&[12, 0], &[0, 10]]), &ring);
        assert_eq!(s.diagonal(), vec![q(1), q(15)]);
    }

    #[test]
    fn rejects_entries_outside_ring() {
        let m = QMatrix::from_vec(1, 1, vec![BigRational::new(1.into(), 5.into())]).unwrap();
        assert!(smith_over_lambda(&m, &InvertedPrimeSet::integers()).is_err());
    }

    #[test]
    fn prime_power_residues() {
        let pp = PrimePower::new(5, 2).unwrap();
        let m = ZMatrix::from_i64_rows(&[&[10, 5], &[3, 25]]);
        let s = smith_mod_prime_power(&m, pp);
        let r = PrimePowerResidues::new(pp);
        let prod = s.u.mul(&m).unwrap().mul(&s.v).unwrap().map(|x| r.reduce(x));
        assert_eq!(prod, s.d);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(5)]);
    }

    #[test]
    fn modulus_dispatch() {
        let ring = InvertedPrimeSet::from_primes([2, 3]).unwrap();
        let m = IntMatrix::with_modulus(
            ZMatrix::from_i64_rows(&[&[7, 0], &[0, 49]]),
            PrimePower::new(7, 2).unwrap(),
        );
        let SmithForm::PrimePower(s) = smith_normal_form(&m, &ring).unwrap() else { panic!() };
        assert_eq!(s.rank, 1);
        assert_eq!(s.diagonal(), vec![BigInt::from(7)]);
        let bad = IntMatrix::with_modulus(ZMatrix::from_i64_rows(&[&[1]]), PrimePower::new(3, 1).unwrap());
        assert!(smith_normal_form(&bad, &ring).is_err());
    }

    proptest! {
        #[test]
        fn lambda_smith_invariants(
            entries in proptest::collection::vec(-40i64..40, 12),
            shape in 0usize..3,
        ) {
            let (r, c) = [(3, 4), (4, 3), (2, 6)][shape];
            let m = QMatrix::from_vec(r, c, entries.into_iter().map(q).collect()).unwrap();
            check_lambda(&m, &InvertedPrimeSet::integers());
            check_lambda(&m, &InvertedPrimeSet::from_primes([2, 3]).unwrap());
        }
    }
}
