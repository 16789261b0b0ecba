//! Brute-force cohomology of a complex torus: exterior algebras on
//! `x_i, y_i` with the Poincaré class, pullbacks along linear maps and
//! pushforwards defined by adjunction `∫ f_*a·b = ∫ a·f^*b`.
//!
//! Generator `2i` is `x_{i+1}`, `2i+1` is `y_{i+1}`; the orientation class
//! is `x_1 y_1 ⋯ x_g y_g`. On `X × X^t` the first `2g` generators come from
//! `X`, the next `2g` (written `x′, y′`) from `X^t`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::model::TautClass;
use crate::error::{Error, Result};
use crate::lambda::factorial;

/// Largest `g` the oracle accepts (the product space has `2^{4g}` basis
/// forms).
pub const ORACLE_MAX_G: u32 = 3;

/// Element of the exterior algebra on `n` generators, keyed by the bitmask
/// of the basis monomial written in increasing generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    n: u32,
    terms: BTreeMap<u32, BigRational>,
}

/// Sign of `e_a ∧ e_b` relative to `e_{a|b}` (zero if they overlap).
fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let k = rest.trailing_zeros();
        swaps += (a >> (k + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Form {
    pub fn zero(n: u32) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: u32) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: u32, mask: u32) -> Self {
        let mut f = Self::zero(n);
        f.terms.insert(mask, BigRational::one());
        f
    }

    pub fn generator(n: u32, k: u32) -> Self {
        Self::basis(n, 1 << k)
    }

    pub fn gens(&self) -> u32 {
        self.n
    }

    pub fn top(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mask: u32) -> BigRational {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n);
        for (&m, x) in &self.terms {
            out.add_term(m, x * c);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                match wedge_sign(a, b) {
                    0 => {}
                    1 => out.add_term(a | b, x * y),
                    _ => out.add_term(a | b, -(x * y)),
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.wedge(self))
    }

    /// `exp(ω)` for a form without degree-zero part (finite by nilpotency).
    pub fn exp(&self) -> Self {
        let mut total = Self::one(self.n);
        let mut power = Self::one(self.n);
        for k in 1..=self.n {
            power = power.wedge(self).scale(&BigRational::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            total = total.add(&power);
        }
        total
    }

    pub fn degree_part(&self, d: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (&m, c) in &self.terms {
            if m.count_ones() == d {
                out.add_term(m, c.clone());
            }
        }
        out
    }

    /// `∫`: coefficient of the orientation class.
    pub fn integrate(&self) -> BigRational {
        self.coefficient(self.top())
    }

    /// Embed along the inclusion of generators at `offset` into a space with
    /// `n` generators.
    pub fn shifted(&self, n: u32, offset: u32) -> Self {
        Self { n, terms: self.terms.iter().map(|(&m, c)| (m << offset, c.clone())).collect() }
    }
}

/// A map `f: Y → Z` of tori, given by `f^*` on the generators of `Z`.
#[derive(Clone, Debug)]
pub struct PullbackMap {
    source_gens: u32,
    images: Vec<Form>,
    /// `f^*` of every basis form of `Z`, for adjunction.
    basis_images: Vec<Form>,
}

impl PullbackMap {
    pub fn new(source_gens: u32, images: Vec<Form>) -> Self {
        let zn = images.len() as u32;
        let mut basis_images = Vec::with_capacity(1 << zn);
        for mask in 0u32..(1 << zn) {
            let mut f = Form::one(source_gens);
            for k in 0..zn {
                if mask & (1 << k) != 0 {
                    f = f.wedge(&images[k as usize]);
                }
            }
            basis_images.push(f);
        }
        Self { source_gens, images, basis_images }
    }

    pub fn target_gens(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn pull(&self, z: &Form) -> Form {
        let mut out = Form::zero(self.source_gens);
        for (&m, c) in z.terms() {
            out = out.add(&self.basis_images[m as usize].scale(c));
        }
        out
    }

    /// `f_*` by adjunction: the coefficient of `e_B` is
    /// `sign(B, B^c)·∫_Y a·f^*(e_{B^c})`.
    pub fn push(&self, a: &Form) -> Form {
        let zn = self.target_gens();
        let ztop = ((1u64 << zn) - 1) as u32;
        let ytop = ((1u64 << self.source_gens) - 1) as u32;
        let mut out = Form::zero(zn);
        for b in 0u32..=ztop {
            let comp = ztop & !b;
            let w = &self.basis_images[comp as usize];
            let mut integral = BigRational::zero();
            for (&ma, ca) in a.terms() {
                let need = ytop & !ma;
                if let Some(cw) = w.terms.get(&need) {
                    let s = wedge_sign(ma, need);
                    integral += BigRational::from_integer(s.into()) * ca * cw;
                }
            }
            if !integral.is_zero() {
                let s = wedge_sign(b, comp);
                out.add_term(b, BigRational::from_integer(s.into()) * integral);
            }
        }
        out
    }
}

/// Cohomology model of `X`, `X^t` and `X × X^t` for a polarisation of type
/// `(d_1, …, d_g)`.
#[derive(Debug)]
pub struct CohomologyOracle {
    g: u32,
    polarization: Vec<u64>,
    poincare: Form,
    exp_poincare: Form,
    pr1: PullbackMap,
    pr2: PullbackMap,
    theta: PullbackMap,
    sum: PullbackMap,
}

pub fn build_oracle(g: u32) -> Result<Arc<CohomologyOracle>> {
    build_oracle_with_type(&vec![1; g as usize])
}

/// Oracle for a polarisation of type `d` (`ν = ∏ d_i`).
pub fn build_oracle_with_type(d: &[u64]) -> Result<Arc<CohomologyOracle>> {
    let g = d.len() as u32;
    if g == 0 {
        return Err(Error::Domain("g must be positive".into()));
    }
    if g > ORACLE_MAX_G {
        return Err(Error::TooLarge(format!(
            "oracle refuses g = {g} (basis of size 2^{})",
            4 * g
        )));
    }
    if d.contains(&0) {
        return Err(Error::Domain("polarisation type entries must be positive".into()));
    }
    let n = 2 * g;
    let nn = 4 * g;
    let mut poincare = Form::zero(nn);
    for k in 0..n {
        poincare = poincare.add(&Form::generator(nn, k).wedge(&Form::generator(nn, n + k)));
    }
    let exp_poincare = poincare.exp();
    let pr1 = PullbackMap::new(nn, (0..n).map(|k| Form::generator(nn, k)).collect());
    let pr2 = PullbackMap::new(nn, (0..n).map(|k| Form::generator(nn, n + k)).collect());
    // θ^*x′_i = d_i y_i, θ^*y′_i = −d_i x_i
    let theta = PullbackMap::new(
        n,
        (0..n)
            .map(|k| {
                let i = (k / 2) as usize;
                let di = BigRational::from_integer(d[i].into());
                if k % 2 == 0 {
                    Form::generator(n, k + 1).scale(&di)
                } else {
                    Form::generator(n, k - 1).scale(&-di)
                }
            })
            .collect(),
    );
    let sum = PullbackMap::new(
        nn,
        (0..n).map(|k| Form::generator(nn, k).add(&Form::generator(nn, n + k))).collect(),
    );
    Ok(Arc::new(CohomologyOracle {
        g,
        polarization: d.to_vec(),
        poincare,
        exp_poincare,
        pr1,
        pr2,
        theta,
        sum,
    }))
}

impl CohomologyOracle {
    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn nu(&self) -> u64 {
        self.polarization.iter().product()
    }

    pub fn gens(&self) -> u32 {
        2 * self.g
    }

    pub fn poincare(&self) -> &Form {
        &self.poincare
    }

    /// All `2^{2g}` basis forms of `H^*(X)`.
    pub fn basis(&self) -> Vec<Form> {
        (0u32..(1 << self.gens())).map(|m| Form::basis(self.gens(), m)).collect()
    }

    /// `ℓ = ½·(id, θ)^*℘`.
    pub fn ell(&self) -> Form {
        let n = self.gens();
        let nn = 2 * n;
        let id_theta = PullbackMap::new(
            n,
            (0..nn)
                .map(|k| if k < n { Form::generator(n, k) } else { self.theta.images[(k - n) as usize].clone() })
                .collect(),
        );
        id_theta.pull(&self.poincare).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// `F(a) = pr_{2,*}(pr_1^*a · exp ℘)`: `H(X) → H(X^t)`.
    pub fn fourier(&self, a: &Form) -> Form {
        self.pr2.push(&self.pr1.pull(a).wedge(&self.exp_poincare))
    }

    /// `F^t(b) = pr_{1,*}(pr_2^*b · exp ℘)`: `H(X^t) → H(X)`.
    pub fn fourier_dual(&self, b: &Form) -> Form {
        self.pr1.push(&self.pr2.pull(b).wedge(&self.exp_poincare))
    }

    /// `θ^*`: `H(X^t) → H(X)`.
    pub fn theta_pull(&self, b: &Form) -> Form {
        self.theta.pull(b)
    }

    /// `[n]^*` (multiplies degree-`k` forms by `n^k`).
    pub fn mult_pull(&self, n: i64, a: &Form) -> Form {
        let m = self.mult_map(n);
        m.pull(a)
    }

    /// `[n]_*` by adjunction.
    pub fn mult_push(&self, n: i64, a: &Form) -> Form {
        self.mult_map(n).push(a)
    }

    fn mult_map(&self, n: i64) -> PullbackMap {
        let k = self.gens();
        let c = BigRational::from_integer(n.into());
        PullbackMap::new(k, (0..k).map(|i| Form::generator(k, i).scale(&c)).collect())
    }

    /// Pontryagin product `m_*(pr_1^*x · pr_2^*y)` (the projections of
    /// `X × X` have the same shape as those of `X × X^t`).
    pub fn pontryagin(&self, x: &Form, y: &Form) -> Form {
        self.sum.push(&self.pr1.pull(x).wedge(&self.pr2.pull(y)))
    }

    /// Model class `Σ a_i ℓ^i` as a form.
    pub fn from_model(&self, x: &TautClass) -> Form {
        let ell = self.ell();
        let mut out = Form::zero(self.gens());
        let mut p = Form::one(self.gens());
        for a in x.coefficients() {
            out = out.add(&p.scale(a));
            p = p.wedge(&ell);
        }
        out
    }

    /// `(ℓ^i/i!)` as a form.
    pub fn divided_ell(&self, i: u32) -> Form {
        self.ell().pow(i).scale(&BigRational::new(1.into(), factorial(i as u64)))
    }
}

/// Coefficient vector of `F_model(ℓ^i/i!) = θ^*F(ℓ^i/i!)` in the basis
/// `ℓ^j/j!`, read off from the oracle (`ν = 1`).
pub fn derived_fourier_row(o: &CohomologyOracle, i: u32) -> Result<Vec<BigRational>> {
    let img = o.theta_pull(&o.fourier(&o.divided_ell(i)));
    let g = o.g();
    let mut out = vec![BigRational::zero(); g as usize + 1];
    let mut rest = img;
    for j in (0..=g).rev() {
        let dj = o.divided_ell(j);
        let part = rest.degree_part(2 * j);
        if part.is_zero() {
            continue;
        }
        // part = c·(ℓ^j/j!); compare on the leading mask of dj
        let (&mask, lead) = dj.terms().next().expect("ℓ^j ≠ 0 for j ≤ g");
        let c = part.coefficient(mask) / lead;
        if part != dj.scale(&c) {
            return Err(Error::InvariantFailure(format!("θ^*F(ℓ^{i}/{i}!) leaves the tautological ring")));
        }
        out[j as usize] = c.clone();
        rest = rest.sub(&dj.scale(&c));
    }
    if !rest.is_zero() {
        return Err(Error::InvariantFailure("odd-degree residue".into()));
    }
    Ok(out)
}
