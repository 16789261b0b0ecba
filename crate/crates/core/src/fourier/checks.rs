//! Verification suites for the Fourier model, the projector algebra and
//! the cohomology oracle, reported as [`IdentityReport`]s.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::corr::{beauville_projectors, projector_ring, CorrespondenceElement};
use super::model::{
    build_model, fourier, lambda_class, mult_pull, mult_push, point_class, pontryagin,
    pontryagin_closed_form, TautClass,
};
use super::oracle::{build_oracle, build_oracle_with_type, derived_fourier_row, Form};
use crate::error::Result;
use crate::identities::{IdentityReport, Tally};
use crate::lambda::{binomial, factorial};

fn sign(g: u32) -> BigRational {
    if g.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Model-level Fourier relations for `ν = 1`: `F∘F = (−1)^g[−1]^*`,
/// `F(x⋆y) = F(x)F(y)`, `F(x·y) = (−1)^g F(x)⋆F(y)`, `[pt]` is the
/// `⋆`-unit, `⋆` is commutative, associative and matches its closed form,
/// `ℓ^g = ν·g!·[pt]`, and `λ` is the unique class of codimension `g−1`
/// with `F(ℓ) = (−1)^{g−1}λ`.
pub fn fourier_model_check(g: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let m = build_model(g, 1)?;
    let mut t = Tally::new();
    let basis: Vec<TautClass> =
        (0..=g as usize).map(|i| TautClass::ell_power(&m, i)).collect::<Result<_>>()?;
    let pt = point_class(&m);
    for (i, x) in basis.iter().enumerate() {
        let ff = fourier(&fourier(x)?)?;
        t.check(ff == mult_pull(-1, x).scale(&sign(g)), || format!("F∘F on ℓ^{i}"));
        t.check(pontryagin(&pt, x)? == *x, || format!("[pt]⋆ℓ^{i}"));
        for (j, y) in basis.iter().enumerate() {
            let xy = pontryagin(x, y)?;
            t.check(fourier(&xy)? == fourier(x)?.mul(&fourier(y)?)?, || format!("F(ℓ^{i}⋆ℓ^{j})"));
            t.check(xy == pontryagin(y, x)?, || format!("⋆ commutes on ℓ^{i}, ℓ^{j}"));
            let lhs = fourier(&x.mul(y)?)?;
            let rhs = pontryagin(&fourier(x)?, &fourier(y)?)?.scale(&sign(g));
            t.check(lhs == rhs, || format!("F(ℓ^{i}·ℓ^{j})"));
            let scale = BigRational::from_integer(factorial(i as u64) * factorial(j as u64));
            let closed = pontryagin_closed_form(&m, i, j).scale(&scale);
            t.check(xy == closed, || format!("closed form ℓ^{i}⋆ℓ^{j}"));
            for (k, z) in basis.iter().enumerate() {
                let a = pontryagin(&xy, z)?;
                let b = pontryagin(x, &pontryagin(y, z)?)?;
                t.check(a == b, || format!("⋆ associative on ℓ^{i}, ℓ^{j}, ℓ^{k}"));
            }
        }
    }
    let lg = TautClass::ell_power(&m, g as usize)?;
    let nu_g = BigRational::from_integer(factorial(g as u64));
    t.check(lg == pt.scale(&nu_g), || "ℓ^g = ν·g!·[pt]".into());
    let lam = lambda_class(&m);
    let ell = TautClass::ell_power(&m, 1)?;
    t.check(fourier(&ell)? == lam.scale(&sign(g - 1)), || "F(ℓ) = (−1)^{g−1}λ".into());
    // uniqueness: the codimension-(g−1) part is spanned by ℓ^{g−1}, on which
    // F is injective, so any λ′ with the same image equals λ.
    let probe = TautClass::ell_power(&m, g as usize - 1)?;
    t.check(!fourier(&probe)?.is_zero(), || "F injective on codimension g−1".into());
    Ok(t.report("fourier-model", &[("g", g as i64), ("nu", 1)], started))
}

/// `[n]_*`-eigenvalue grading: `Σ_n a_{i,n}[n]_*` fixes `ℓ^k` if `i = 2k`
/// and kills it otherwise.
pub fn eigen_grading_check(g: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let m = build_model(g, 1)?;
    let ring = projector_ring(g, 0, 1)?;
    let p = beauville_projectors(g, 0, 2 * g as usize + 1, &ring)?;
    let mut t = Tally::new();
    for (i, pi) in p.iter().enumerate() {
        for k in 0..=g as usize {
            let x = TautClass::ell_power(&m, k)?;
            let y = pi.act(&x)?;
            let want = if i == 2 * k { x } else { TautClass::zero(&m) };
            t.check(y == want, || format!("π_{i} on ℓ^{k}"));
        }
    }
    Ok(t.report("eigen-grading", &[("g", g as i64)], started))
}

/// Projector algebra at `N = 2g+d+1`: moment conditions for all
/// `0 ≤ i, j ≤ 2g`; `π_i∘π_j = [i=j]π_i`; `Σπ_i = Γ_[1]` modulo
/// `(Γ_[1]−Γ_[0])^{⋆(2g+1)}`.
pub fn projector_check(g: u32, d: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let n = (2 * g + d + 1) as usize;
    let ring = projector_ring(g, d, 1)?;
    let p = beauville_projectors(g, d, n, &ring)?;
    let top = 2 * g as usize;
    let mut t = Tally::new();
    for (i, pi) in p.iter().enumerate() {
        // moments straight from the Γ_[n] coefficients
        let support = pi.support();
        for j in 0..=top {
            let s = support.iter().fold(BigRational::zero(), |acc, (nn, a)| {
                acc + a.value() * BigRational::from_integer(BigInt::from(*nn).pow(j as u32))
            });
            let want = if j == top - i { BigRational::one() } else { BigRational::zero() };
            t.check(s == want, || format!("Σ_n a_{{{i},n}} n^{j}"));
        }
        for (j, pj) in p.iter().enumerate() {
            let c = pi.compose(pj)?;
            let want = if i == j { pi.clone() } else { CorrespondenceElement::zero(n, &ring)? };
            t.check(c == want, || format!("π_{i}∘π_{j}"));
        }
    }
    let sum = p.iter().skip(1).try_fold(p[0].clone(), |a, b| a.add(b))?;
    let gamma1 = CorrespondenceElement::gamma(1, n, &ring)?;
    t.check(sum.reduce(top + 1)? == gamma1.reduce(top + 1)?, || "Σπ_i = Γ_[1]".into());
    let exact = sum == gamma1;
    Ok(t
        .report("projectors", &[("g", g as i64), ("d", d as i64), ("nil_index", n as i64)], started)
        .with_note("sum_equals_gamma1_at_nil_index", exact))
}

/// Oracle checks (`g ≤ 3`): `θ^*F(ℓ^i/i!)` reproduces the model formula,
/// `F^t∘F = (−1)^g[−1]^*` on every basis form, `[n]^*ℓ^i = n^{2i}ℓ^i`, and
/// for non-principal types `θ^*F(exp ℓ) = ν·exp(−ℓ)`.
pub fn oracle_check(g: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let o = build_oracle(g)?;
    let m = build_model(g, 1)?;
    let mut t = Tally::new();
    for i in 0..=g {
        let row = derived_fourier_row(&o, i)?;
        let model = fourier(&TautClass::divided_power(&m, i as usize)?)?;
        // model image in the ℓ^j/j! basis
        let in_divided: Vec<BigRational> = model
            .coefficients()
            .iter()
            .enumerate()
            .map(|(j, c)| c * BigRational::from_integer(factorial(j as u64)))
            .collect();
        t.check(row == in_divided, || format!("oracle F(ℓ^{i}/{i}!)"));
        let li = o.ell().pow(i);
        for n in -2i64..=2 {
            let want = li.scale(&BigRational::from_integer(BigInt::from(n).pow(2 * i)));
            t.check(o.mult_pull(n, &li) == want, || format!("[{n}]^*ℓ^{i}"));
        }
    }
    for (k, x) in o.basis().iter().enumerate() {
        let ftf = o.fourier_dual(&o.fourier(x));
        t.check(ftf == o.mult_pull(-1, x).scale(&sign(g)), || format!("F^t∘F on basis form {k:#b}"));
    }
    for ty in non_principal_types(g) {
        let ot = build_oracle_with_type(&ty)?;
        let ell = ot.ell();
        let lhs = ot.theta_pull(&ot.fourier(&ell.exp()));
        let rhs = ell.scale(&-BigRational::one()).exp().scale(&BigRational::from_integer(ot.nu().into()));
        t.check(lhs == rhs, || format!("θ^*F(exp ℓ) = ν·exp(−ℓ) for type {ty:?}"));
    }
    Ok(t.report("oracle", &[("g", g as i64)], started))
}

fn non_principal_types(g: u32) -> Vec<Vec<u64>> {
    match g {
        1 => vec![vec![1], vec![2], vec![3]],
        2 => vec![vec![1, 1], vec![1, 2], vec![2, 6]],
        _ => vec![vec![1; g as usize], vec![1, 1, 2], vec![1, 2, 4]],
    }
}

/// Scaled relations in the oracle with `sF = (2g)!·F`:
/// `(2g)!·sF(x⋆y) = sF(x)·sF(y)` for all basis forms `x, y`, and
/// `F∘[n]_* = [n]^*∘F` for `n ∈ {−2, …, 2}`.
pub fn scaled_fourier_check(g: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let o = build_oracle(g)?;
    let f2g = BigRational::from_integer(factorial(2 * g as u64));
    let basis = o.basis();
    let sf: Vec<Form> = basis.iter().map(|x| o.fourier(x).scale(&f2g)).collect();
    let mut t = Tally::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let lhs = o.fourier(&o.pontryagin(x, y)).scale(&(&f2g * &f2g));
            t.check(lhs == sf[a].wedge(&sf[b]), || format!("sF(e_{a:#b} ⋆ e_{b:#b})"));
        }
        for n in -2i64..=2 {
            let lhs = o.fourier(&o.mult_push(n, x));
            let rhs = o.mult_pull(n, &o.fourier(x));
            t.check(lhs == rhs, || format!("F∘[{n}]_* on e_{a:#b}"));
        }
    }
    let pt = o.divided_ell(g);
    let spt = o.fourier(&pt).scale(&f2g);
    t.check(
        o.fourier(&o.pontryagin(&pt, &pt)).scale(&(&f2g * &f2g)) == spt.wedge(&spt)
            && spt.wedge(&spt) == Form::one(o.gens()).scale(&(&f2g * &f2g)),
        || "x = y = [pt]".into(),
    );
    Ok(t.report("scaled-fourier", &[("g", g as i64)], started))
}

/// Action of `(Γ_[1]−Γ_[0])^{⋆j} = Σ_n C(j,n)(−1)^{j−n}[n]_*` on `H^*(X)`
/// in the oracle, per degree.
pub fn augmentation_action(g: u32, j: u32) -> Result<Vec<Form>> {
    let o = build_oracle(g)?;
    let mut images = Vec::new();
    for x in o.basis() {
        let mut y = Form::zero(o.gens());
        for n in 0..=j {
            let c = BigRational::from_integer(binomial(j as u64, n as u64));
            let c = if (j - n).is_multiple_of(2) { c } else { -c };
            y = y.add(&o.mult_push(n as i64, &x).scale(&c));
        }
        images.push(y);
    }
    Ok(images)
}

/// Smallest `j` such that `(Γ_[1]−Γ_[0])^{⋆j}` acts as zero on `H^*(X)`;
/// passes iff that is exactly `2g + 1`, the index forced by `X × X` viewed
/// over `X` (base of dimension `g`).
pub fn nilpotency_check(g: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let mut t = Tally::new();
    let mut first = None;
    for j in 1..=2 * g + 1 {
        if augmentation_action(g, j)?.iter().all(Form::is_zero) {
            first = Some(j);
            break;
        }
    }
    t.check(first == Some(2 * g + 1), || format!("annihilating exponent {first:?}"));
    let literal = g + 1;
    let literal_kills = augmentation_action(g, literal)?.iter().all(Form::is_zero);
    Ok(t
        .report("augmentation-nilpotency", &[("g", g as i64)], started)
        .with_note("annihilating_exponent", first.map_or("none".to_string(), |j| j.to_string()))
        .with_note("exponent_min_g_2g_plus_1", literal)
        .with_note("exponent_min_g_2g_plus_1_annihilates", literal_kills))
}

/// Model multiplication maps against the oracle on `ℓ^i`.
pub fn mult_maps_agree(g: u32) -> Result<bool> {
    let o = build_oracle(g)?;
    let m = build_model(g, 1)?;
    for i in 0..=g as usize {
        let x = TautClass::ell_power(&m, i)?;
        for n in -2..=2 {
            if o.from_model(&mult_pull(n, &x)) != o.mult_pull(n, &o.from_model(&x)) {
                return Ok(false);
            }
            if o.from_model(&mult_push(n, &x)) != o.mult_push(n, &o.from_model(&x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Model Pontryagin product against the oracle's `m_*` on `ℓ^i ⋆ ℓ^j`.
pub fn pontryagin_agrees(g: u32) -> Result<bool> {
    let o = build_oracle(g)?;
    let m = build_model(g, 1)?;
    for i in 0..=g as usize {
        for j in 0..=g as usize {
            let x = TautClass::ell_power(&m, i)?;
            let y = TautClass::ell_power(&m, j)?;
            let model = o.from_model(&pontryagin(&x, &y)?);
            if model != o.pontryagin(&o.from_model(&x), &o.from_model(&y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_checks() {
        for g in 1..=4 {
            let r = fourier_model_check(g).unwrap();
            assert!(r.passed(), "{:?}", r.notes);
            assert!(eigen_grading_check(g).unwrap().passed());
        }
    }

    #[test]
    fn projectors_small() {
        for (g, d) in [(1, 0), (1, 2), (2, 1)] {
            let r = projector_check(g, d).unwrap();
            assert!(r.passed(), "{:?}", r.notes);
            assert_eq!(r.notes["sum_equals_gamma1_at_nil_index"], (d == 0).to_string());
        }
    }

    #[test]
    fn oracle_low_genus() {
        for g in 1..=2 {
            let r = oracle_check(g).unwrap();
            assert!(r.passed(), "{:?}", r.notes);
            let r = scaled_fourier_check(g).unwrap();
            assert!(r.passed(), "{:?}", r.notes);
            assert!(mult_maps_agree(g).unwrap());
            assert!(pontryagin_agrees(g).unwrap());
        }
    }

    #[test]
    fn nilpotency_genus_one() {
        let r = nilpotency_check(1).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes["annihilating_exponent"], "3");
        assert_eq!(r.notes["exponent_min_g_2g_plus_1_annihilates"], "false");
    }
}
