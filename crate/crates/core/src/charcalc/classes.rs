//! Todd classes, Chern characters and their integral normalisations,
//! computed directly in Chern variables.
//!
//! `Td = exp(Σ_k q_k p_k)` where `log Q(x) = Σ q_k x^k` and the power sums
//! `p_k` come from Newton's identities. A separate root-level path lives in
//! [`super::series`] / [`super::symmetric`] and is used to cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::{GradedPolynomial, Var, COEFF, TANGENT};
use super::series::{univariate, Root, RootSeries};
use crate::error::{invariant, Error, Result};
use crate::lambda::{big_t, divisibility_witness, factorial};

/// Largest degree the class constructors accept.
pub const MAX_DEGREE: u32 = 16;

/// Rank of a Chern-variable family. A fixed rank sets `c_j = 0` for
/// `j > rank`; the generic rank keeps every `c_j` (and `r` symbolic where a
/// rank appears as a coefficient).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank {
    Fixed(u32),
    Generic,
}

fn check_cap(m: u32) -> Result<()> {
    if m > MAX_DEGREE {
        return Err(Error::CapExceeded { requested: m as usize, cap: MAX_DEGREE as usize });
    }
    Ok(())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn chern(slot: u8, i: u32, rank: Rank) -> GradedPolynomial {
    match rank {
        Rank::Fixed(r) if i > r => GradedPolynomial::zero(),
        _ => GradedPolynomial::var(Var::chern(slot, i as u8)),
    }
}

/// Power sums `p_0..p_cap` of the roots of family `slot`; `p_0` is the rank
/// (the symbol `r` for generic rank).
pub fn power_sums(slot: u8, rank: Rank, cap: u32) -> Vec<GradedPolynomial> {
    let mut p = vec![match rank {
        Rank::Fixed(r) => GradedPolynomial::integer(r),
        Rank::Generic => GradedPolynomial::var(Var::Rank),
    }];
    for k in 1..=cap {
        let mut pk = chern(slot, k, rank).scale(&int(k));
        if k % 2 == 0 {
            pk = -&pk;
        }
        for i in 1..k {
            let t = &chern(slot, i, rank) * &p[(k - i) as usize];
            pk = if i % 2 == 1 { &pk + &t } else { &pk - &t };
        }
        p.push(pk);
    }
    p
}

/// `exp(P)` truncated at weight `cap`, for `P` without constant term.
fn exp_truncated(p: &GradedPolynomial, cap: u32) -> Vec<GradedPolynomial> {
    let mut total = GradedPolynomial::one();
    let mut power = GradedPolynomial::one();
    for n in 1..=cap {
        power = power.mul_truncated(p, Some(cap)).scale(&BigRational::new(1.into(), n.into()));
        if power.is_zero() {
            break;
        }
        total = &total + &power;
    }
    (0..=cap).map(|m| total.component(m)).collect()
}

/// Components `0..=cap` of `∏ f(α_i)` for a univariate `f` with `f(0) = 1`.
fn multiplicative_class(f: &[BigRational], slot: u8, rank: Rank, cap: u32) -> Result<Vec<GradedPolynomial>> {
    let logf = univariate::log(f)?;
    let p = power_sums(slot, rank, cap);
    let mut arg = GradedPolynomial::zero();
    for k in 1..=cap as usize {
        arg = &arg + &p[k].scale(&logf[k]);
    }
    Ok(exp_truncated(&arg, cap))
}

/// `Td_0..Td_cap` of family `slot`.
pub fn todd_components(slot: u8, rank: Rank, cap: u32) -> Result<Vec<GradedPolynomial>> {
    check_cap(cap)?;
    multiplicative_class(&univariate::q_series(cap), slot, rank, cap)
}

/// `{∏ Q(α_i)^{-1}}_0..cap`.
pub fn todd_inverse_components(slot: u8, rank: Rank, cap: u32) -> Result<Vec<GradedPolynomial>> {
    check_cap(cap)?;
    multiplicative_class(&univariate::q_inverse(cap), slot, rank, cap)
}

fn require_integral(p: &GradedPolynomial, what: impl FnOnce() -> String) -> Result<()> {
    if p.is_integral() {
        Ok(())
    } else {
        Err(invariant(format!("{} has non-integral coefficients: {p}", what())))
    }
}

/// `fTd_0..fTd_cap` with `fTd_m = T_m · Td_m`, each checked integral.
pub fn f_td_components(slot: u8, rank: Rank, cap: u32) -> Result<Vec<GradedPolynomial>> {
    todd_components(slot, rank, cap)?
        .into_iter()
        .enumerate()
        .map(|(m, td)| {
            let f = td.scale_int(&big_t(m as u64));
            require_integral(&f, || format!("fTd_{m}"))?;
            Ok(f)
        })
        .collect()
}

/// `fTd^inv_n = (n + r)! · {∏Q(α_i)^{-1}}_n` for `n = 0..=cap`.
pub fn f_td_inv_components(slot: u8, rank: u32, cap: u32) -> Result<Vec<GradedPolynomial>> {
    todd_inverse_components(slot, Rank::Fixed(rank), cap)?
        .into_iter()
        .enumerate()
        .map(|(n, t)| {
            let f = t.scale_int(&factorial(n as u64 + rank as u64));
            require_integral(&f, || format!("fTdInv_{n} (rank {rank})"))?;
            Ok(f)
        })
        .collect()
}

/// `fs_0..fs_cap` with `fs_m = m!·ch_m = p_m`; `fs_0` is the rank.
pub fn fs_components(slot: u8, rank: Rank, cap: u32) -> Result<Vec<GradedPolynomial>> {
    check_cap(cap)?;
    Ok(power_sums(slot, rank, cap))
}

/// Degree-`m` Todd polynomial in `c_1..c_m` of a bundle of the given rank.
pub fn todd_component(m: u32, rank: u32) -> Result<GradedPolynomial> {
    if rank == 0 {
        return Err(Error::Domain("rank must be positive".into()));
    }
    Ok(todd_components(TANGENT, Rank::Fixed(rank), m)?.swap_remove(m as usize))
}

/// `fTd_m = T_m · Td_m`.
pub fn f_td(m: u32, rank: u32) -> Result<GradedPolynomial> {
    if rank == 0 {
        return Err(Error::Domain("rank must be positive".into()));
    }
    Ok(f_td_components(TANGENT, Rank::Fixed(rank), m)?.swap_remove(m as usize))
}

/// `fs_m(r, c′_1, …, c′_m) = m!·ch_m`, rank-generic.
pub fn chern_char_component(m: u32) -> Result<GradedPolynomial> {
    Ok(fs_components(COEFF, Rank::Generic, m)?.swap_remove(m as usize))
}

/// `ch_m = fs_m / m!`.
pub fn ch_component(m: u32) -> Result<GradedPolynomial> {
    let fs = chern_char_component(m)?;
    Ok(fs.scale(&BigRational::new(1.into(), factorial(m as u64))))
}

pub fn f_td_inv(rank: u32, n: u32) -> Result<GradedPolynomial> {
    if rank == 0 {
        return Err(Error::Domain("rank must be positive".into()));
    }
    Ok(f_td_inv_components(TANGENT, rank, n)?.swap_remove(n as usize))
}

/// Structural coefficient `T_m / (j!·T_{m−j})` of `fCT_m`.
pub fn f_ct_coefficient(m: u32, j: u32) -> Result<BigInt> {
    let (m, j) = (m as u64, j as u64);
    if j == 0 {
        divisibility_witness(&[], &[m], m)
    } else {
        divisibility_witness(&[j - 1], &[m - j], m)
    }
}

/// `fCT_m = Σ_j T_m/(j!·T_{m−j}) · fs_j · fTd_{m−j}`, in `r, c′_j` and the
/// tangent classes `c_i`.
pub fn f_ct(m: u32) -> Result<GradedPolynomial> {
    let fs = fs_components(COEFF, Rank::Generic, m)?;
    let ftd = f_td_components(TANGENT, Rank::Generic, m)?;
    let mut out = GradedPolynomial::zero();
    for j in 0..=m {
        let coeff = f_ct_coefficient(m, j)?;
        out = &out + &(&fs[j as usize] * &ftd[(m - j) as usize]).scale_int(&coeff);
    }
    require_integral(&out, || format!("fCT_{m}"))?;
    Ok(out)
}

/// Substitution `c_i ↦ (−1)^i c_i` on family `slot`: classes of the dual.
pub fn dualize(p: &GradedPolynomial, slot: u8) -> GradedPolynomial {
    p.substitute(|v| match v {
        Var::Chern { bundle, index } if bundle == slot && index % 2 == 1 => {
            Some(-&GradedPolynomial::var(v))
        }
        _ => None,
    })
}

/// Whitney formula: rewrite the classes of family `sum` as
/// `c_k = Σ_{i+j=k} c_i(a)·c_j(b)` with the given ranks.
pub fn whitney(p: &GradedPolynomial, sum: u8, a: (u8, u32), b: (u8, u32)) -> GradedPolynomial {
    p.substitute(|v| match v {
        Var::Chern { bundle, index } if bundle == sum => {
            let k = index as u32;
            let mut s = GradedPolynomial::zero();
            for i in 0..=k {
                let ci = if i == 0 { GradedPolynomial::one() } else { chern(a.0, i, Rank::Fixed(a.1)) };
                let cj = if i == k { GradedPolynomial::one() } else { chern(b.0, k - i, Rank::Fixed(b.1)) };
                s = &s + &(&ci * &cj);
            }
            Some(s)
        }
        _ => None,
    })
}

/// Root-level Todd series `∏_{i ∈ which} Q(α_i)`.
pub fn todd_roots(roots: Vec<Root>, which: &[usize], cap: u32) -> RootSeries {
    RootSeries::product_of(roots, cap, which, &univariate::q_series(cap))
}

/// Root-level `∏_{i ∈ which} Q(α_i)^{-1}`.
pub fn todd_inverse_roots(roots: Vec<Root>, which: &[usize], cap: u32) -> RootSeries {
    RootSeries::product_of(roots, cap, which, &univariate::q_inverse(cap))
}

/// Whether every coefficient is an integer and, if so, the largest
/// absolute value (for reporting).
pub fn integrality_summary(p: &GradedPolynomial) -> (bool, BigInt) {
    let max = p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_else(BigInt::zero);
    (p.is_integral(), max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charcalc::poly::Monomial;
    use crate::charcalc::symmetric::{root_list, roots_to_chern, BundleSpec};

    fn c(i: u8) -> GradedPolynomial {
        GradedPolynomial::var(Var::c(i))
    }
    fn cp(i: u8) -> GradedPolynomial {
        GradedPolynomial::var(Var::cp(i))
    }
    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn low_degree_todd() {
        assert_eq!(todd_component(0, 3).unwrap(), GradedPolynomial::one());
        assert_eq!(todd_component(1, 3).unwrap(), c(1).scale(&r(1, 2)));
        assert_eq!(todd_component(2, 3).unwrap(), (&(&c(1) * &c(1)) + &c(2)).scale(&r(1, 12)));
        assert_eq!(todd_component(3, 3).unwrap(), (&c(1) * &c(2)).scale(&r(1, 24)));
        assert_eq!(f_td(1, 2).unwrap(), c(1));
        assert_eq!(f_td(2, 2).unwrap(), &(&c(1) * &c(1)) + &c(2));
        // −c1⁴ + 4c1²c2 + 3c2² + c1c3 − c4, over 720
        let td4 = todd_component(4, 4).unwrap();
        assert_eq!(td4.lcd(), BigInt::from(720));
        assert_eq!(td4.coefficient(&Monomial::from_pairs([(Var::c(2), 2)])), r(3, 720));
    }

    #[test]
    fn chern_character() {
        assert_eq!(chern_char_component(0).unwrap(), GradedPolynomial::var(Var::Rank));
        assert_eq!(chern_char_component(2).unwrap(), &(&cp(1) * &cp(1)) - &cp(2).scale(&r(2, 1)));
        for m in 1..8 {
            let line = fs_components(COEFF, Rank::Fixed(1), m).unwrap().swap_remove(m as usize);
            assert_eq!(line, cp(1).pow(m));
        }
    }

    #[test]
    fn todd_inverse_rank_one() {
        assert_eq!(f_td_inv(3, 0).unwrap(), GradedPolynomial::integer(6));
        assert_eq!(f_td_inv(1, 1).unwrap(), -&c(1));
        assert_eq!(f_td_inv(1, 2).unwrap(), &c(1) * &c(1));
    }

    #[test]
    fn fct_low_degree() {
        assert_eq!(f_ct(0).unwrap(), GradedPolynomial::var(Var::Rank));
        let expected = &cp(1).scale(&r(2, 1)) + &(&GradedPolynomial::var(Var::Rank) * &c(1));
        assert_eq!(f_ct(1).unwrap(), expected);
    }

    #[test]
    fn denominators_are_t_m() {
        let td = todd_components(TANGENT, Rank::Generic, 10).unwrap();
        for (m, p) in td.iter().enumerate() {
            assert_eq!(p.lcd(), big_t(m as u64), "Td_{m}");
        }
    }

    #[test]
    fn chern_path_matches_root_path() {
        for rank in 1..=3u8 {
            let b = vec![BundleSpec::new("E", rank, TANGENT).unwrap()];
            let roots = root_list(&b).unwrap();
            let which: Vec<usize> = (0..rank as usize).collect();
            let s = todd_roots(roots.clone(), &which, 6);
            let inv = todd_inverse_roots(roots, &which, 6);
            let td = todd_components(TANGENT, Rank::Fixed(rank as u32), 6).unwrap();
            let ti = todd_inverse_components(TANGENT, Rank::Fixed(rank as u32), 6).unwrap();
            for m in 0..=6 {
                assert_eq!(roots_to_chern(&s.component(m), &b).unwrap(), td[m as usize]);
                assert_eq!(roots_to_chern(&inv.component(m), &b).unwrap(), ti[m as usize]);
            }
        }
    }

    #[test]
    fn dual_and_whitney() {
        let p = &c(1) + &(&c(1) * &c(2));
        assert_eq!(dualize(&p, TANGENT), -&p);
        let w = whitney(&c(2), TANGENT, (2, 1), (3, 1));
        assert_eq!(w, &GradedPolynomial::var(Var::chern(2, 1)) * &GradedPolynomial::var(Var::chern(3, 1)));
    }
}
