//! Formal bundles and the reduction of root-symmetric series to Chern
//! classes.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{GradedPolynomial, Monomial, Var};
use super::series::{Root, RootSeries};
use crate::error::{Error, Result};

/// A formal vector bundle given by its Chern roots. The roots of bundle
/// `slot` reduce to the Chern variables `Var::chern(slot, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSpec {
    pub name: String,
    pub rank: u8,
    pub slot: u8,
}

impl BundleSpec {
    pub fn new(name: impl Into<String>, rank: u8, slot: u8) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Domain("bundle rank must be positive".into()));
        }
        Ok(Self { name: name.into(), rank, slot })
    }

    pub fn roots(&self) -> Vec<Root> {
        (1..=self.rank).map(|index| Root { slot: self.slot, index }).collect()
    }

    pub fn root_names(&self) -> Vec<String> {
        (1..=self.rank).map(|i| format!("{}_a{i}", self.name)).collect()
    }

    pub fn chern(&self, i: u8) -> Var {
        Var::chern(self.slot, i)
    }
}

/// Root list of several bundles, in order. Slots must be distinct.
pub fn root_list(bundles: &[BundleSpec]) -> Result<Vec<Root>> {
    let mut slots: Vec<u8> = bundles.iter().map(|b| b.slot).collect();
    slots.sort();
    slots.dedup();
    if slots.len() != bundles.len() {
        return Err(Error::Domain("bundles share a Chern-variable slot".into()));
    }
    Ok(bundles.iter().flat_map(BundleSpec::roots).collect())
}

fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    if i == 0 {
        return vec![Vec::new()];
    }
    if i > n {
        return Vec::new();
    }
    let mut out = subsets(n - 1, i);
    for mut s in subsets(n - 1, i - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `e_i` of the roots at positions `pos` (within `roots`).
fn elementary(roots: &[Root], cap: u32, pos: &[usize], i: usize) -> RootSeries {
    let mut s = RootSeries::zero(roots.to_vec(), cap);
    if i as u32 > cap {
        return s;
    }
    for sub in subsets(pos.len(), i) {
        let mut e = vec![0u32; roots.len()];
        for k in sub {
            e[pos[k]] = 1;
        }
        s.add_term(e, BigRational::one());
    }
    s
}

/// Expand a polynomial in the bundles' Chern classes into their roots.
/// Variables outside the bundles' families are rejected.
pub fn chern_to_roots(p: &GradedPolynomial, bundles: &[BundleSpec], cap: u32) -> Result<RootSeries> {
    let roots = root_list(bundles)?;
    let mut cache: BTreeMap<Var, RootSeries> = BTreeMap::new();
    let mut out = RootSeries::zero(roots.clone(), cap);
    for (m, c) in p.terms() {
        if m.weight() > cap {
            continue;
        }
        let mut term = RootSeries::one(roots.clone(), cap).scale(c);
        for &(v, e) in m.pairs() {
            let Var::Chern { bundle, index } = v else {
                return Err(Error::Domain(format!("{v} is not a Chern class")));
            };
            let b = bundles
                .iter()
                .find(|b| b.slot == bundle)
                .ok_or_else(|| Error::Domain(format!("{v} belongs to no listed bundle")))?;
            cache.entry(v).or_insert_with(|| {
                let pos: Vec<usize> =
                    (0..roots.len()).filter(|&k| roots[k].slot == b.slot).collect();
                elementary(&roots, cap, &pos, index as usize)
            });
            for _ in 0..e {
                term = term.mul(&cache[&v])?;
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Rewrite a series that is symmetric in each bundle's roots separately as
/// a polynomial in the bundles' Chern classes, by repeated leading-term
/// elimination in lexicographic order.
pub fn roots_to_chern(s: &RootSeries, bundles: &[BundleSpec]) -> Result<GradedPolynomial> {
    let roots = root_list(bundles)?;
    if roots != s.roots() {
        return Err(Error::Dimension("series roots do not match the bundle list".into()));
    }
    let cap = s.cap();
    let blocks: Vec<(u8, Vec<usize>)> = bundles
        .iter()
        .map(|b| (b.slot, (0..roots.len()).filter(|&k| roots[k].slot == b.slot).collect()))
        .collect();
    let mut e_cache: BTreeMap<(u8, usize), RootSeries> = BTreeMap::new();
    let mut rest: BTreeMap<Vec<u32>, BigRational> =
        s.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    let mut out = GradedPolynomial::zero();

    while let Some((lead, c)) = rest.pop_last() {
        let mut pairs = Vec::new();
        let mut product = RootSeries::one(roots.clone(), cap);
        for (slot, pos) in &blocks {
            let ex: Vec<u32> = pos.iter().map(|&k| lead[k]).collect();
            if ex.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Domain(format!(
                    "series is not symmetric in the roots of slot {slot}"
                )));
            }
            for i in 1..=ex.len() {
                let next = ex.get(i).copied().unwrap_or(0);
                let k = ex[i - 1] - next;
                if k == 0 {
                    continue;
                }
                pairs.push((Var::chern(*slot, i as u8), k));
                let ei = e_cache
                    .entry((*slot, i))
                    .or_insert_with(|| elementary(&roots, cap, pos, i));
                for _ in 0..k {
                    product = product.mul(ei)?;
                }
            }
        }
        // product = lead + lex-smaller terms
        for (e, x) in product.terms() {
            if *e == lead {
                continue;
            }
            let v = rest.entry(e.clone()).or_insert_with(BigRational::zero);
            *v -= &c * x;
            if v.is_zero() {
                rest.remove(e);
            }
        }
        out.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank2() -> (Vec<BundleSpec>, Vec<Root>) {
        let b = vec![BundleSpec::new("E", 2, 0).unwrap()];
        let r = root_list(&b).unwrap();
        (b, r)
    }

    #[test]
    fn elementary_examples() {
        let (b, roots) = rank2();
        let a1 = RootSeries::root(roots.clone(), 4, 0);
        let a2 = RootSeries::root(roots.clone(), 4, 1);
        let c = |i| GradedPolynomial::var(Var::c(i));
        assert_eq!(roots_to_chern(&a1.add(&a2).unwrap(), &b).unwrap(), c(1));
        assert_eq!(roots_to_chern(&a1.mul(&a2).unwrap(), &b).unwrap(), c(2));
        let p2 = a1.mul(&a1).unwrap().add(&a2.mul(&a2).unwrap()).unwrap();
        let expected = &(&c(1) * &c(1)) - &c(2).scale(&BigRational::from_integer(2.into()));
        assert_eq!(roots_to_chern(&p2, &b).unwrap(), expected);
    }

    #[test]
    fn rejects_non_symmetric() {
        let (b, roots) = rank2();
        let a1 = RootSeries::root(roots, 4, 0);
        assert!(matches!(roots_to_chern(&a1, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn round_trip_two_bundles() {
        let b = vec![BundleSpec::new("E", 2, 2).unwrap(), BundleSpec::new("F", 3, 3).unwrap()];
        let v = |s, i| GradedPolynomial::var(Var::chern(s, i));
        let p = &(&(&v(2, 1) * &v(3, 2)) + &v(3, 3)) + &(&v(2, 2) * &v(2, 2));
        let s = chern_to_roots(&p, &b, 5).unwrap();
        assert_eq!(roots_to_chern(&s, &b).unwrap(), p);
    }
}
