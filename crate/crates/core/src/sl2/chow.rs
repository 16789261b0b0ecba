//! The `sl₂`-action `e = ℓ·`, `f = λ⋆` on the tautological model, and the
//! torsion injectivity demo.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;

use super::decompose::{decompose, kernel_of, IsotypicDecomposition, Multiplicity};
use super::module::{sym_power, Piece, Sl2Module};
use crate::error::{invariant, Error, Result};
use crate::exec::Execution;
use crate::fourier::{build_model, lambda_class, pontryagin, TautClass};
use crate::identities::{IdentityReport, Tally};
use crate::lambda::{is_prime, QMatrix};

#[derive(Clone, Debug)]
pub struct ChowSl2 {
    pub module: Sl2Module,
    pub decomposition: IsotypicDecomposition,
}

/// `ℓ^i` in weight `2i − g`, `e(x) = ℓ·x`, `f(x) = λ⋆x`.
pub fn build_chow_sl2(g: u32, nu: u64) -> Result<ChowSl2> {
    let m = build_model(g, nu)?;
    let lam = lambda_class(&m);
    let gi = g as i32;
    let mut pieces = BTreeMap::new();
    let mut e = BTreeMap::new();
    let mut f = BTreeMap::new();
    for i in 0..=g as usize {
        let w = 2 * i as i32 - gi;
        pieces.insert(w, Piece::free(1));
        if i < g as usize {
            e.insert(w, QMatrix::from_rows(vec![vec![num_rational::BigRational::from_integer(1.into())]])?);
        }
        if i > 0 {
            let img = pontryagin(&lam, &TautClass::ell_power(&m, i)?)?;
            for (j, c) in img.coefficients().iter().enumerate() {
                if j != i - 1 && !c.is_zero() {
                    return Err(invariant(format!("λ⋆ℓ^{i} is not homogeneous")));
                }
            }
            f.insert(w, QMatrix::from_rows(vec![vec![img.coefficients()[i - 1].clone()]])?);
        }
    }
    let module = Sl2Module::new(g, m.ring().clone(), pieces, e, f).map_err(|err| match err {
        Error::NotARepresentation(s) => invariant(format!("[e,f] ≠ h on the model: {s}")),
        other => other,
    })?;
    let decomposition = decompose(&module, Execution::Sequential)?;
    Ok(ChowSl2 { module, decomposition })
}

/// `[e,f] = h` on the model, decomposition a single `Sym^g(St)` with
/// `M_g ≅ Λ`, and `M_j = 0` for `j ≢ g (mod 2)`.
pub fn chow_sl2_check(g: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let mut t = Tally::new();
    let c = build_chow_sl2(g, 1)?;
    t.check(c.module.satisfies_relations()?, || "[e,f] = h".into());
    t.check(c.decomposition.support() == vec![g], || format!("support {:?}", c.decomposition.support()));
    t.check(c.decomposition.components[g as usize].multiplicity == Multiplicity::normalized(1, &[]), || {
        "M_g free of rank 1".into()
    });
    t.check(
        c.decomposition.components.iter().all(|m| (m.n + g).is_multiple_of(2) || m.multiplicity.is_zero()),
        || "parity of the support".into(),
    );
    Ok(t.report("chow-sl2", &[("g", g as i64), ("nu", 1)], started))
}

/// `W = Sym^{g−1}(St) ⊗ (ℤ/p^k)^{2g}` over `ℤ[1/(2g+1)!]`; checks that
/// `e^{i−1}` is injective on the weight-`(1−g)` piece for `i = 1, …, g`.
pub fn torsion_injectivity_demo(g: u32, p: u64, k: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    if g == 0 || k == 0 {
        return Err(Error::Precondition("need g ≥ 1 and k ≥ 1".into()));
    }
    if !is_prime(p) || p <= 2 * g as u64 + 1 {
        return Err(Error::Precondition(format!("need a prime p > 2g+1 = {}, got {p}", 2 * g + 1)));
    }
    let ring = std::sync::Arc::new(
        crate::lambda::InvertedPrimeSet::from_primes(crate::lambda::primes_up_to(2 * g as u64 + 1))?,
    );
    if ring.contains_prime(p) {
        return Err(Error::Precondition(format!("{p} is inverted")));
    }
    let w = sym_power(g - 1, g, ring)?.tensor_cyclic(Some((p, k)), 2 * g as usize)?;
    let low = 1 - g as i32;
    let mut t = Tally::new();
    for i in 1..=g {
        let target = low + 2 * (i as i32 - 1);
        let (ker, _) = kernel_of(&w, &w.e_pow(low, i - 1)?, low, target)?;
        t.check(ker.cols() == 0, || format!("e^{} injective", i - 1));
    }
    Ok(t
        .report("torsion-injectivity", &[("g", g as i64), ("p", p as i64), ("k", k as i64)], started)
        .with_note("lowest_piece", format!("(Z/{p}^{k})^{}", 2 * g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_and_two() {
        let c = build_chow_sl2(1, 1).unwrap();
        assert_eq!(c.module.f(1), QMatrix::from_i64_rows(&[&[1]]));
        assert_eq!(c.decomposition.support(), vec![1]);
        assert!(chow_sl2_check(2).unwrap().passed());
    }

    #[test]
    fn torsion_demo() {
        assert!(torsion_injectivity_demo(1, 5, 1).unwrap().passed());
        assert!(torsion_injectivity_demo(2, 7, 2).unwrap().passed());
        assert!(matches!(torsion_injectivity_demo(2, 5, 1), Err(Error::Precondition(_))));
    }
}
