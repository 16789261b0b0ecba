//! Isotypic decomposition `φ : ⊕_n Sym^n(St) ⊗ M_n ≅ V`, with `M_n` the
//! lowest-weight space `V_{−n}[f]`, certified on every weight.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::module::{matrix_to_json, MapJson, Sl2Module};
use super::quotient::{
    diagonalize_quotient, elementary_divisors, generates, is_zero_in, preimage_of_zero, reduce_column,
    same_submodule,
};
use crate::error::{invariant, Result};
use crate::exec::Execution;
use crate::identities::{IdentityReport, Tally};
use crate::lambda::{factorial, QMatrix};

/// A module `Λ^free_rank ⊕ ⊕ (ℤ/p^k)^count` up to isomorphism, in
/// canonical (sorted elementary divisor) form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Multiplicity {
    pub free_rank: usize,
    pub torsion: Vec<(u64, u32, usize)>,
}

impl Multiplicity {
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let (free_rank, tors) = elementary_divisors(orders);
        Self { free_rank, torsion: tors.into_iter().map(|((p, k), c)| (p, k, c)).collect() }
    }

    /// Canonical form of an arbitrary `(free, [(p, k, count)])` description.
    pub fn normalized(free_rank: usize, torsion: &[(u64, u32, usize)]) -> Self {
        let mut m: BTreeMap<(u64, u32), usize> = BTreeMap::new();
        for &(p, k, c) in torsion {
            if c > 0 {
                *m.entry((p, k)).or_default() += c;
            }
        }
        Self { free_rank, torsion: m.into_iter().map(|((p, k), c)| (p, k, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn merge(&self, other: &Self) -> Self {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().copied());
        Self::normalized(self.free_rank + other.free_rank, &t)
    }
}

/// `M_n ≅ V_{−n}[f]`: generators (columns in the coordinates of `V_{−n}`)
/// with their orders.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub n: u32,
    pub multiplicity: Multiplicity,
    pub generators: QMatrix,
    pub orders: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotypicDecomposition {
    pub g: u32,
    pub components: Vec<Component>,
    /// `φ_w`, columns ordered by `n` then by generator of `M_n`.
    pub phi: BTreeMap<i32, QMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentJson {
    pub n: u32,
    pub free_rank: usize,
    pub torsion: Vec<[u64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub g: u32,
    pub components: Vec<ComponentJson>,
    pub phi: Vec<MapJson>,
}

impl IsotypicDecomposition {
    pub fn multiplicities(&self) -> Vec<Multiplicity> {
        self.components.iter().map(|c| c.multiplicity.clone()).collect()
    }

    /// Indices `n` with `M_n ≠ 0`.
    pub fn support(&self) -> Vec<u32> {
        self.components.iter().filter(|c| !c.multiplicity.is_zero()).map(|c| c.n).collect()
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            g: self.g,
            components: self
                .components
                .iter()
                .filter(|c| !c.multiplicity.is_zero())
                .map(|c| ComponentJson {
                    n: c.n,
                    free_rank: c.multiplicity.free_rank,
                    torsion: c.multiplicity.torsion.iter().map(|&(p, k, n)| [p, k as u64, n as u64]).collect(),
                })
                .collect(),
            phi: self
                .phi
                .iter()
                .filter(|(_, m)| m.rows() > 0)
                .map(|(&w, m)| MapJson { from: w, matrix: matrix_to_json(m) })
                .collect(),
        }
    }
}

/// `ker(a : V_source → V_target)` as a diagonally presented module.
pub fn kernel_of(v: &Sl2Module, a: &QMatrix, source: i32, target: i32) -> Result<(QMatrix, Vec<BigInt>)> {
    let k = preimage_of_zero(a, &v.orders(target), v.ring())?;
    diagonalize_quotient(&k, &v.orders(source), v.ring())
}

/// `V_{−n}[f]`.
pub fn lowest_weight_space(v: &Sl2Module, n: u32) -> Result<(QMatrix, Vec<BigInt>)> {
    let w = -(n as i32);
    kernel_of(v, &v.f(w), w, w - 2)
}

/// `V_n[e]`.
pub fn highest_weight_space(v: &Sl2Module, n: u32) -> Result<(QMatrix, Vec<BigInt>)> {
    let w = n as i32;
    kernel_of(v, &v.e(w), w, w + 2)
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(factorial(a), factorial(b))
}

/// `φ(x_{−n+2i} ⊗ b) = ((n−i)!/n!)·e^i(b)`.
fn phi_columns(v: &Sl2Module, c: &Component, i: u32) -> Result<Vec<Vec<BigRational>>> {
    let w = -(c.n as i32);
    let ei = v.e_pow(w, i)?.mul(&c.generators)?;
    let s = ratio((c.n - i) as u64, c.n as u64);
    let target = v.orders(w + 2 * i as i32);
    Ok(ei
        .columns()
        .into_iter()
        .map(|col| {
            let mut col: Vec<BigRational> = col.iter().map(|x| x * &s).collect();
            reduce_column(&mut col, &target);
            col
        })
        .collect())
}

/// Computes every `M_n`, assembles `φ` and certifies it weight by weight:
/// `φ_w` is surjective and source and target have the same elementary
/// divisors, so `φ_w` is an isomorphism (a surjection between isomorphic
/// finitely generated modules is injective).
pub fn decompose(v: &Sl2Module, exec: Execution) -> Result<IsotypicDecomposition> {
    let g = v.g();
    let ns: Vec<u32> = (0..=g).collect();
    let components = exec
        .map(&ns, |&n| {
            let (generators, orders) = lowest_weight_space(v, n)?;
            Ok(Component { n, multiplicity: Multiplicity::from_orders(&orders), generators, orders })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<i32> = v.weights().collect();
    let phis = exec.map(&weights, |&w| -> Result<(i32, QMatrix)> {
        let mut cols = Vec::new();
        let mut source = Multiplicity::default();
        for c in &components {
            let n = c.n as i32;
            if n < w.abs() || (n - w) % 2 != 0 {
                continue;
            }
            cols.extend(phi_columns(v, c, ((w + n) / 2) as u32)?);
            source = source.merge(&c.multiplicity);
        }
        let phi = QMatrix::from_columns(v.dim(w), &cols)?;
        let orders = v.orders(w);
        if !generates(&phi, &orders, v.ring())? {
            return Err(invariant(format!("φ is not surjective onto V_{w}")));
        }
        if source != Multiplicity::from_orders(&orders) {
            return Err(invariant(format!("⊕ M_n and V_{w} have different invariant factors")));
        }
        Ok((w, phi))
    });
    let phi = phis.into_iter().collect::<Result<BTreeMap<_, _>>>()?;
    Ok(IsotypicDecomposition { g, components, phi })
}

/// Structural checks on a decomposition: `V_n[f] = 0` for `1 ≤ n ≤ g`;
/// `(n!)^{−2} f^n e^n = id` on `V_{−n}[f]` and `(n!)^{−2} e^n f^n = id` on
/// `V_n[e]`; `e^{n+1} = 0` on `V_{−n}[f]`; `e^i V_{−n}[f] = f^{n−i} V_n[e]`;
/// `φ` commutes with `e` and `f`.
pub fn verify_decomposition(v: &Sl2Module, dec: &IsotypicDecomposition) -> Result<IdentityReport> {
    let started = Instant::now();
    let mut t = Tally::new();
    let ring = v.ring();
    for c in &dec.components {
        let n = c.n;
        let ni = n as i32;
        let nf2 = BigRational::from_integer(factorial(n as u64).pow(2));
        if n >= 1 {
            let (gens, _) = kernel_of(v, &v.f(ni), ni, ni - 2)?;
            t.check(gens.cols() == 0, || format!("V_{n}[f] = 0"));
        }
        let (top, _) = highest_weight_space(v, n)?;
        let b = &c.generators;
        let round = v.f_pow(ni, n)?.mul(&v.e_pow(-ni, n)?)?.mul(b)?.scale(&nf2.recip()).sub(b)?;
        t.check(round.columns().iter().all(|x| is_zero_in(x, &v.orders(-ni))), || {
            format!("(n!)^-2 f^n e^n on V_-{n}[f]")
        });
        let round = v.e_pow(-ni, n)?.mul(&v.f_pow(ni, n)?)?.mul(&top)?.scale(&nf2.recip()).sub(&top)?;
        t.check(round.columns().iter().all(|x| is_zero_in(x, &v.orders(ni))), || {
            format!("(n!)^-2 e^n f^n on V_{n}[e]")
        });
        if ni + 2 <= v.g() as i32 {
            let e_top = v.e_pow(-ni, n + 1)?.mul(b)?;
            t.check(e_top.columns().iter().all(|x| is_zero_in(x, &v.orders(ni + 2))), || {
                format!("e^{} on V_-{n}[f]", n + 1)
            });
        }
        for i in 0..=n {
            let w = -ni + 2 * i as i32;
            let a = v.e_pow(-ni, i)?.mul(b)?;
            let bb = v.f_pow(ni, n - i)?.mul(&top)?;
            t.check(same_submodule(&a, &bb, &v.orders(w), ring)?, || {
                format!("e^{i} V_-{n}[f] = f^{} V_{n}[e]", n - i)
            });
            // equivariance of φ on x_{−n+2i} ⊗ b
            let here = phi_columns(v, c, i)?;
            let e_img = v.e(w).mul(&QMatrix::from_columns(v.dim(w), &here)?)?;
            let e_want = if i < n {
                QMatrix::from_columns(v.dim(w + 2), &phi_columns(v, c, i + 1)?)?.scale(&BigRational::from_integer((n - i).into()))
            } else {
                QMatrix::zeros(v.dim(w + 2), here.len())
            };
            t.check(
                e_img.sub(&e_want)?.columns().iter().all(|x| is_zero_in(x, &v.orders(w + 2))),
                || format!("φ∘e = e∘φ on x_{w} ⊗ M_{n}"),
            );
            let f_img = v.f(w).mul(&QMatrix::from_columns(v.dim(w), &here)?)?;
            let f_want = if i > 0 {
                QMatrix::from_columns(v.dim(w - 2), &phi_columns(v, c, i - 1)?)?.scale(&BigRational::from_integer(i.into()))
            } else {
                QMatrix::zeros(v.dim(w - 2), here.len())
            };
            t.check(
                f_img.sub(&f_want)?.columns().iter().all(|x| is_zero_in(x, &v.orders(w - 2))),
                || format!("φ∘f = f∘φ on x_{w} ⊗ M_{n}"),
            );
        }
    }
    Ok(t.report("sl2-decomposition", &[("g", v.g() as i64)], started))
}

#[cfg(test)]
mod tests {
    use super::super::module::{default_ring, sym_power};
    use super::*;

    #[test]
    fn sym_two_is_a_single_string() {
        let v = sym_power(2, 2, default_ring(2)).unwrap();
        let d = decompose(&v, Execution::Sequential).unwrap();
        assert_eq!(d.support(), vec![2]);
        assert_eq!(d.components[2].multiplicity, Multiplicity::normalized(1, &[]));
        assert!(verify_decomposition(&v, &d).unwrap().passed());
    }

    #[test]
    fn torsion_standard_representation() {
        let v = sym_power(1, 2, default_ring(2)).unwrap().tensor_cyclic(Some((5, 1)), 1).unwrap();
        let d = decompose(&v, Execution::Sequential).unwrap();
        assert_eq!(d.support(), vec![1]);
        assert_eq!(d.components[1].multiplicity, Multiplicity::normalized(0, &[(5, 1, 1)]));
        assert!(verify_decomposition(&v, &d).unwrap().passed());
    }
}
