//! Symbolic verification of the Todd / Chern-character identity ledger and
//! the combinatorial collapse behind the key formula.
//!
//! Every identity is evaluated twice: once in Chern variables (Newton
//! identities, Whitney substitution, `c_i ↦ (−1)^i c_i` for duals) and once
//! at root level (truncated products of `Q(α)` in explicit roots, reduced
//! back by symmetric elimination). A report passes only if both residuals
//! vanish.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::charcalc::{
    dualize, f_ct_coefficient, f_td_components, f_td_inv_components, root_list, roots_to_chern,
    todd_inverse_roots, todd_roots, whitney, BundleSpec, GradedPolynomial, Rank, RootSeries, Var,
    TANGENT,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lambda::{big_t, binomial, divisibility_witness, factorial};

const E1: u8 = 2;
const E2: u8 = 3;
const H: u8 = 4;
const DELTA: u8 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity check. `elapsed` is kept out of the JSON so that
/// identical inputs serialise to identical bytes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub parameters: BTreeMap<String, i64>,
    pub status: Status,
    pub residual: GradedPolynomial,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Build a report from labelled residuals: passes iff all vanish; the
    /// first nonzero one is kept and its label recorded.
    pub fn from_residuals(
        name: &str,
        parameters: &[(&str, i64)],
        residuals: Vec<(&str, GradedPolynomial)>,
        started: Instant,
    ) -> Self {
        let mut notes = BTreeMap::new();
        let mut residual = GradedPolynomial::zero();
        for (label, r) in residuals {
            if !r.is_zero() {
                notes.insert("failing_path".to_string(), label.to_string());
                residual = r;
                break;
            }
        }
        Self {
            name: name.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            status: if residual.is_zero() { Status::Pass } else { Status::Fail },
            residual,
            notes,
            elapsed: started.elapsed(),
        }
    }

    pub fn with_note(mut self, key: &str, value: impl ToString) -> Self {
        self.notes.insert(key.to_string(), value.to_string());
        self
    }
}

fn scaled(s: &RootSeries, m: u32, c: &BigInt) -> RootSeries {
    s.component(m).scale(&BigRational::from_integer(c.clone()))
}

fn witness(ms: &[u64], ns: &[u64], m: u64) -> Result<BigInt> {
    let ms: Vec<u64> = ms.iter().filter(|&&x| x > 0).map(|x| x - 1).collect();
    divisibility_witness(&ms, ns, m)
}

fn check_rank(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Domain("ranks must be positive".into()));
    }
    Ok(())
}

/// `fTd_i(H) = Σ_{j+k=i} T_i/(T_j·T_k)·fTd_j(E_1)·fTd_k(E_2)` for an
/// extension `0 → E_1 → H → E_2 → 0`, all `i ≤ max_deg`.
pub fn verify_exact_seq_identity(r1: u32, r2: u32, max_deg: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    check_rank(r1)?;
    check_rank(r2)?;
    let h = f_td_components(H, Rank::Fixed(r1 + r2), max_deg)?;
    let a = f_td_components(E1, Rank::Fixed(r1), max_deg)?;
    let b = f_td_components(E2, Rank::Fixed(r2), max_deg)?;

    let bundles = [BundleSpec::new("E1", r1 as u8, E1)?, BundleSpec::new("E2", r2 as u8, E2)?];
    let roots = root_list(&bundles)?;
    let n1 = r1 as usize;
    let all: Vec<usize> = (0..roots.len()).collect();
    let td_h = todd_roots(roots.clone(), &all, max_deg);
    let td_1 = todd_roots(roots.clone(), &all[..n1], max_deg);
    let td_2 = todd_roots(roots.clone(), &all[n1..], max_deg);

    let mut chern_res = GradedPolynomial::zero();
    let mut root_res = RootSeries::zero(roots, max_deg);
    for i in 0..=max_deg {
        let ti = big_t(i as u64);
        chern_res = &chern_res + &whitney(&h[i as usize], H, (E1, r1), (E2, r2));
        root_res = root_res.add(&scaled(&td_h, i, &ti))?;
        for j in 0..=i {
            let k = i - j;
            let coeff = divisibility_witness(&[], &[j as u64, k as u64], i as u64)?;
            let rhs = (&a[j as usize] * &b[k as usize]).scale_int(&coeff);
            chern_res = &chern_res - &rhs;
            let t = scaled(&td_1, j, &big_t(j as u64)).mul(&scaled(&td_2, k, &big_t(k as u64)))?;
            root_res = root_res.sub(&t.scale(&BigRational::from_integer(coeff)))?;
        }
    }
    let root_res = roots_to_chern(&root_res, &bundles)?;
    Ok(IdentityReport::from_residuals(
        "exact-sequence",
        &[("r1", r1 as i64), ("r2", r2 as i64), ("max_deg", max_deg as i64)],
        vec![("chern-variables", chern_res), ("chern-roots", root_res)],
        started,
    ))
}

/// `fTd_i(E) = Σ_{j+k=i} T_i/(T_j·k!)·fTd_j(E^∨)·fs_k(det E)`.
pub fn verify_dual_identity(r: u32, max_deg: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    check_rank(r)?;
    let ftd = f_td_components(TANGENT, Rank::Fixed(r), max_deg)?;
    let c1 = GradedPolynomial::var(Var::c(1));

    let bundles = [BundleSpec::new("E", r as u8, TANGENT)?];
    let roots = root_list(&bundles)?;
    let all: Vec<usize> = (0..roots.len()).collect();
    let td = todd_roots(roots.clone(), &all, max_deg);
    let td_dual = td.negate_family(TANGENT);
    let det = all
        .iter()
        .try_fold(RootSeries::zero(roots.clone(), max_deg), |acc, &i| {
            acc.add(&RootSeries::root(roots.clone(), max_deg, i))
        })?;

    let mut chern_res = GradedPolynomial::zero();
    let mut root_res = RootSeries::zero(roots.clone(), max_deg);
    let mut det_pow = vec![RootSeries::one(roots.clone(), max_deg)];
    for k in 1..=max_deg as usize {
        let next = det_pow[k - 1].mul(&det)?;
        det_pow.push(next);
    }
    for i in 0..=max_deg {
        let ti = big_t(i as u64);
        chern_res = &chern_res + &ftd[i as usize];
        root_res = root_res.add(&scaled(&td, i, &ti))?;
        for j in 0..=i {
            let k = i - j;
            let coeff = witness(&[k as u64], &[j as u64], i as u64)?;
            let rhs = (&dualize(&ftd[j as usize], TANGENT) * &c1.pow(k)).scale_int(&coeff);
            chern_res = &chern_res - &rhs;
            let t = scaled(&td_dual, j, &big_t(j as u64)).mul(&det_pow[k as usize])?;
            root_res = root_res.sub(&t.scale(&BigRational::from_integer(coeff)))?;
        }
    }
    let root_res = roots_to_chern(&root_res, &bundles)?;
    Ok(IdentityReport::from_residuals(
        "dual-bundle",
        &[("r", r as i64), ("max_deg", max_deg as i64)],
        vec![("chern-variables", chern_res), ("chern-roots", root_res)],
        started,
    ))
}

/// `Σ_i T_{r+m}/(T_i·(r+m−i)!)·fTd_i(E)·fTd^inv_{m−i}(E) = T_{r+m}·[m = 0]`
/// for all `m ≤ max_m`.
pub fn verify_td_inv_identity(r: u32, max_m: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    check_rank(r)?;
    let ftd = f_td_components(TANGENT, Rank::Fixed(r), max_m)?;
    let finv = f_td_inv_components(TANGENT, r, max_m)?;

    let bundles = [BundleSpec::new("E", r as u8, TANGENT)?];
    let roots = root_list(&bundles)?;
    let all: Vec<usize> = (0..roots.len()).collect();
    let td = todd_roots(roots.clone(), &all, max_m);
    let tdi = todd_inverse_roots(roots.clone(), &all, max_m);

    let mut chern_res = GradedPolynomial::zero();
    let mut root_res = RootSeries::zero(roots.clone(), max_m);
    for m in 0..=max_m {
        let total = (r + m) as u64;
        if m == 0 {
            let t = big_t(total);
            chern_res = &chern_res - &GradedPolynomial::integer(t.clone());
            root_res = root_res.sub(&RootSeries::one(roots.clone(), max_m).scale(&BigRational::from_integer(t)))?;
        }
        for i in 0..=m {
            let n = m - i;
            let coeff = witness(&[total - i as u64], &[i as u64], total)?;
            chern_res = &chern_res + &(&ftd[i as usize] * &finv[n as usize]).scale_int(&coeff);
            let t = scaled(&td, i, &big_t(i as u64))
                .mul(&scaled(&tdi, n, &factorial(n as u64 + r as u64)))?;
            root_res = root_res.add(&t.scale(&BigRational::from_integer(coeff)))?;
        }
    }
    let root_res = roots_to_chern(&root_res, &bundles)?;
    Ok(IdentityReport::from_residuals(
        "todd-inverse",
        &[("r", r as i64), ("max_m", max_m as i64)],
        vec![("chern-variables", chern_res), ("chern-roots", root_res)],
        started,
    ))
}

fn delta_bundle() -> BundleSpec {
    BundleSpec { name: "delta".into(), rank: 1, slot: DELTA }
}

fn rename_delta(p: &GradedPolynomial) -> GradedPolynomial {
    p.substitute(|v| (v == Var::chern(DELTA, 1)).then(|| GradedPolynomial::var(Var::Delta)))
}

/// `Σ_i C(m,i)·δ^i·(−δ)^{m−i} = [m = 0]` for all `m ≤ max_m`.
pub fn verify_binom_identity(max_m: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let d = GradedPolynomial::var(Var::Delta);
    let bundles = [delta_bundle()];
    let roots = root_list(&bundles)?;
    let dr = RootSeries::root(roots.clone(), max_m, 0);
    let mdr = dr.negate_family(DELTA);

    let mut chern_res = GradedPolynomial::zero();
    let mut root_res = RootSeries::zero(roots.clone(), max_m);
    for m in 0..=max_m {
        if m == 0 {
            chern_res = &chern_res - &GradedPolynomial::one();
            root_res = root_res.sub(&RootSeries::one(roots.clone(), max_m))?;
        }
        for i in 0..=m {
            let c = binomial(m as u64, i as u64);
            chern_res = &chern_res + &(&d.pow(i) * &(-&d).pow(m - i)).scale_int(&c);
            let mut t = RootSeries::one(roots.clone(), max_m);
            for _ in 0..i {
                t = t.mul(&dr)?;
            }
            for _ in 0..m - i {
                t = t.mul(&mdr)?;
            }
            root_res = root_res.add(&t.scale(&BigRational::from_integer(c)))?;
        }
    }
    let root_res = rename_delta(&roots_to_chern(&root_res, &bundles)?);
    Ok(IdentityReport::from_residuals(
        "binomial",
        &[("max_m", max_m as i64)],
        vec![("chern-variables", chern_res), ("chern-roots", root_res)],
        started,
    ))
}

/// The four ledger identities at a common rank and degree bound.
pub fn verify_identities(rank: u32, max_deg: u32, exec: Execution) -> Result<Vec<IdentityReport>> {
    let jobs: [u8; 4] = [0, 1, 2, 3];
    exec.map(&jobs, |&k| match k {
        0 => verify_exact_seq_identity(rank, rank, max_deg),
        1 => verify_dual_identity(rank, max_deg),
        2 => verify_td_inv_identity(rank, max_deg),
        _ => verify_binom_identity(max_deg),
    })
    .into_iter()
    .collect()
}

/// The collapse in the key-formula proof, with `E` of rank `g` and `δ` a
/// free degree-one variable:
///
/// (i) `Σ_{k+ℓ+a+c=μ} T_{2g+μ}/(T_k·ℓ!·a!·(g+c)!)·(−δ)^a·δ^ℓ·fTd^inv_c(E^∨)·fTd_k(E^∨)`
///     equals the double sum `D_μ = Σ_{k+c=μ} T_{2g+μ}/(T_k·(g+c)!)·fTd^inv_c(E^∨)·fTd_k(E^∨)`;
///
/// (ii) `D_μ = T_{2g}·[μ = 0]`.
pub fn verify_key_collapse(g: u32, mu_max: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    if g == 0 || g > 3 || mu_max > 3 {
        return Err(Error::TooLarge(format!("key collapse needs 1 ≤ g ≤ 3, μ ≤ 3 (got g={g}, μ={mu_max})")));
    }
    let ftd: Vec<GradedPolynomial> =
        f_td_components(TANGENT, Rank::Fixed(g), mu_max)?.iter().map(|p| dualize(p, TANGENT)).collect();
    let finv: Vec<GradedPolynomial> =
        f_td_inv_components(TANGENT, g, mu_max)?.iter().map(|p| dualize(p, TANGENT)).collect();
    let d = GradedPolynomial::var(Var::Delta);

    let bundles = [BundleSpec::new("E", g as u8, TANGENT)?, delta_bundle()];
    let roots = root_list(&bundles)?;
    let e_idx: Vec<usize> = (0..g as usize).collect();
    let td = todd_roots(roots.clone(), &e_idx, mu_max).negate_family(TANGENT);
    let tdi = todd_inverse_roots(roots.clone(), &e_idx, mu_max).negate_family(TANGENT);
    let dr = RootSeries::root(roots.clone(), mu_max, g as usize);
    let mdr = dr.negate_family(DELTA);
    let rpow = |s: &RootSeries, n: u32| -> Result<RootSeries> {
        (0..n).try_fold(RootSeries::one(roots.clone(), mu_max), |acc, _| acc.mul(s))
    };

    let mut collapse = (GradedPolynomial::zero(), RootSeries::zero(roots.clone(), mu_max));
    let mut value = (GradedPolynomial::zero(), RootSeries::zero(roots.clone(), mu_max));
    let mut mu0 = BigRational::zero();
    for mu in 0..=mu_max {
        let top = (2 * g + mu) as u64;
        // double sum
        let mut dbl = (GradedPolynomial::zero(), RootSeries::zero(roots.clone(), mu_max));
        for k in 0..=mu {
            let c = mu - k;
            let coeff = witness(&[(g + c) as u64], &[k as u64], top)?;
            dbl.0 = &dbl.0 + &(&finv[c as usize] * &ftd[k as usize]).scale_int(&coeff);
            let t = scaled(&tdi, c, &factorial((c + g) as u64)).mul(&scaled(&td, k, &big_t(k as u64)))?;
            dbl.1 = dbl.1.add(&t.scale(&BigRational::from_integer(coeff)))?;
        }
        // quadruple sum
        let mut quad = (GradedPolynomial::zero(), RootSeries::zero(roots.clone(), mu_max));
        for k in 0..=mu {
            for l in 0..=mu - k {
                for a in 0..=mu - k - l {
                    let c = mu - k - l - a;
                    let coeff = witness(&[l as u64, a as u64, (g + c) as u64], &[k as u64], top)?;
                    let p = &(&(-&d).pow(a) * &d.pow(l)) * &(&finv[c as usize] * &ftd[k as usize]);
                    quad.0 = &quad.0 + &p.scale_int(&coeff);
                    let t = rpow(&mdr, a)?
                        .mul(&rpow(&dr, l)?)?
                        .mul(&scaled(&tdi, c, &factorial((c + g) as u64)))?
                        .mul(&scaled(&td, k, &big_t(k as u64)))?;
                    quad.1 = quad.1.add(&t.scale(&BigRational::from_integer(coeff)))?;
                }
            }
        }
        collapse.0 = &collapse.0 + &(&quad.0 - &dbl.0);
        collapse.1 = collapse.1.add(&quad.1.sub(&dbl.1)?)?;
        if mu == 0 {
            mu0 = dbl.0.constant_term();
            let t = big_t(2 * g as u64);
            dbl.0 = &dbl.0 - &GradedPolynomial::integer(t.clone());
            dbl.1 = dbl.1.sub(&RootSeries::one(roots.clone(), mu_max).scale(&BigRational::from_integer(t)))?;
        }
        value.0 = &value.0 + &dbl.0;
        value.1 = value.1.add(&dbl.1)?;
    }
    let reduce = |s: &RootSeries| -> Result<GradedPolynomial> { Ok(rename_delta(&roots_to_chern(s, &bundles)?)) };
    let (cr, vr) = (reduce(&collapse.1)?, reduce(&value.1)?);
    Ok(IdentityReport::from_residuals(
        "key-collapse",
        &[("g", g as i64), ("mu_max", mu_max as i64)],
        vec![
            ("collapse/chern-variables", collapse.0),
            ("value/chern-variables", value.0),
            ("collapse/chern-roots", cr),
            ("value/chern-roots", vr),
        ],
        started,
    )
    .with_note("mu0_value", mu0))
}

/// Integrality of the structural constants attached to the Pappas-type
/// formulas in relative dimension `g` and degree `n`: `T_{g+n}/n!`, the
/// coefficients `T_{g+n}/(j!·T_{g+n−j})` of `fCT_{g+n}`, the quotients
/// `T_{g+n}/((g+i)!·T_j)` with `i + j = n`, and the binomials `C(g+n, a)`.
pub fn pappas_shape_check(g: u32, n: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    if g + n > 12 {
        return Err(Error::TooLarge(format!("g + n = {} exceeds 12", g + n)));
    }
    let m = (g + n) as u64;
    let t = big_t(m);
    let mut candidates: Vec<(String, BigRational)> =
        vec![(format!("T_{m}/{n}!"), BigRational::new(t.clone(), factorial(n as u64)))];
    for j in 0..=m {
        let q = BigRational::new(t.clone(), factorial(j) * big_t(m - j));
        candidates.push((format!("T_{m}/({j}!·T_{})", m - j), q));
    }
    for i in 0..=n as u64 {
        let j = n as u64 - i;
        let q = BigRational::new(t.clone(), factorial(g as u64 + i) * big_t(j));
        candidates.push((format!("T_{m}/({}!·T_{j})", g as u64 + i), q));
    }
    for a in 0..=n as u64 {
        candidates.push((format!("C({m},{a})"), BigRational::from_integer(binomial(m, a))));
    }
    // fCT's coefficients are also produced by the library routine
    for j in 0..=m {
        f_ct_coefficient(m as u32, j as u32)?;
    }
    let failing = candidates.iter().find(|(_, q)| !q.is_integer());
    let residual = failing
        .map(|(_, q)| GradedPolynomial::constant(q - BigRational::from_integer(q.to_integer())))
        .unwrap_or_default();
    let mut report = IdentityReport::from_residuals(
        "pappas-shape",
        &[("g", g as i64), ("n", n as i64)],
        vec![("structural-constants", residual)],
        started,
    )
    .with_note("T_g+n/n!", &candidates[0].1);
    if let Some((label, _)) = failing {
        report = report.with_note("non_integral", label);
    }
    Ok(report)
}

/// Exhaustive Pappas-shape sweep over `1 ≤ g`, `g + n ≤ bound`.
pub fn pappas_shape_sweep(bound: u32, exec: Execution) -> Result<Vec<IdentityReport>> {
    let pairs: Vec<(u32, u32)> = (1..=bound).flat_map(|g| (0..=bound - g).map(move |n| (g, n))).collect();
    exec.map(&pairs, |&(g, n)| pappas_shape_check(g, n)).into_iter().collect()
}

/// Collects failed sub-checks; the report's residual is their count.
pub(crate) struct Tally {
    failures: Vec<String>,
    checks: u64,
}

impl Tally {
    pub(crate) fn new() -> Self {
        Self { failures: Vec::new(), checks: 0 }
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub(crate) fn report(self, name: &str, params: &[(&str, i64)], started: Instant) -> IdentityReport {
        let residual = GradedPolynomial::integer(self.failures.len() as i64);
        let mut r = IdentityReport::from_residuals(name, params, vec![("checks", residual)], started)
            .with_note("sub_checks", self.checks);
        if let Some(f) = self.failures.first() {
            r = r.with_note("first_failure", f);
        }
        r
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_small_cases() {
        for rep in verify_identities(2, 4, Execution::Sequential).unwrap() {
            assert!(rep.passed(), "{} residual {}", rep.name, rep.residual);
        }
        assert!(verify_exact_seq_identity(1, 1, 1).unwrap().passed());
        assert!(verify_dual_identity(1, 1).unwrap().passed());
        assert!(verify_td_inv_identity(1, 1).unwrap().passed());
    }

    #[test]
    fn key_collapse_values() {
        let r = verify_key_collapse(1, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes["mu0_value"], "12");
        let r = verify_key_collapse(2, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes["mu0_value"], "720");
    }

    #[test]
    fn pappas_shape() {
        let r = pappas_shape_check(1, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes["T_g+n/n!"], "2");
        assert_eq!(pappas_shape_check(2, 3).unwrap().notes["T_g+n/n!"], "240");
        assert!(pappas_shape_check(12, 1).is_err());
    }

    #[test]
    fn failing_report_keeps_residual() {
        let r = IdentityReport::from_residuals(
            "x",
            &[],
            vec![("a", GradedPolynomial::zero()), ("b", GradedPolynomial::var(Var::Delta))],
            Instant::now(),
        );
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.notes["failing_path"], "b");
    }
}
