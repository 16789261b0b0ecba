//! The `f^ℓ e^k` calculus on lowest-weight vectors and the homogeneous
//! splitting of submodules.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::decompose::{kernel_of, lowest_weight_space};
use super::module::Sl2Module;
use super::quotient::{in_submodule, is_zero_in, reduce_column};
use crate::error::{invariant, Error, Result};
use crate::identities::{IdentityReport, Tally};
use crate::lambda::{factorial, solve, QMatrix};

/// `f^ℓ e^k(v) = c·e^{k−ℓ}(v)` for `v ∈ V_{−n}[f]`: returns
/// `c = (n−k+ℓ)!·k! / ((n−k)!·(k−ℓ)!)` for `ℓ ≤ k`, else `0`. Always an
/// integer.
pub fn flek_coefficient(n: u32, k: u32, l: u32) -> Result<BigInt> {
    if k > n {
        return Err(Error::Precondition(format!("flek needs k ≤ n, got k={k}, n={n}")));
    }
    if l > k {
        return Ok(BigInt::zero());
    }
    let (n, k, l) = (n as u64, k as u64, l as u64);
    Ok(factorial(n - k + l) * factorial(k) / (factorial(n - k) * factorial(k - l)))
}

/// For every generator `v` of `V_{−n}[f]`, `n ≤ max_n`: the closed form for
/// `f^ℓ e^k(v)` (`k ≤ n`, `ℓ ≤ n+1`), `e^{n+1}(v) = 0` and
/// `f e^{n+1+j}(v) = −j(n+j+1)e^{n+j}(v)`; and `V_n[f] = 0` for `1 ≤ n ≤ g`.
pub fn verify_flek(v: &Sl2Module, max_n: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let mut t = Tally::new();
    let g = v.g();
    for n in 0..=max_n.min(g) {
        let ni = n as i32;
        let (b, _) = lowest_weight_space(v, n)?;
        if b.cols() == 0 {
            continue;
        }
        for k in 0..=n {
            let ek = v.e_pow(-ni, k)?.mul(&b)?;
            for l in 0..=n + 1 {
                let w = -ni + 2 * (k as i32 - l as i32);
                let lhs = v.f_pow(-ni + 2 * k as i32, l)?.mul(&ek)?;
                let rhs = if l <= k {
                    let c = BigRational::from_integer(flek_coefficient(n, k, l)?);
                    v.e_pow(-ni, k - l)?.mul(&b)?.scale(&c)
                } else {
                    QMatrix::zeros(v.dim(w), b.cols())
                };
                t.check(lhs.sub(&rhs)?.columns().iter().all(|x| is_zero_in(x, &v.orders(w))), || {
                    format!("f^{l} e^{k} on V_-{n}[f]")
                });
            }
        }
        for j in 0..=2u32 {
            let top = -ni + 2 * (n + 1 + j) as i32;
            let e_next = v.e_pow(-ni, n + 1 + j)?.mul(&b)?;
            t.check(e_next.columns().iter().all(|x| is_zero_in(x, &v.orders(top))), || {
                format!("e^{} on V_-{n}[f]", n + 1 + j)
            });
            let lhs = v.f(top).mul(&e_next)?;
            let c = -BigRational::from_integer(BigInt::from(j) * BigInt::from(n + j + 1));
            let rhs = v.e_pow(-ni, n + j)?.mul(&b)?.scale(&c);
            t.check(lhs.sub(&rhs)?.columns().iter().all(|x| is_zero_in(x, &v.orders(top - 2))), || {
                format!("f e^{} on V_-{n}[f]", n + 1 + j)
            });
        }
    }
    for n in 1..=g as i32 {
        let (gens, _) = kernel_of(v, &v.f(n), n, n - 2)?;
        t.check(gens.cols() == 0, || format!("V_{n}[f] = 0"));
    }
    Ok(t.report("flek", &[("g", g as i64), ("max_n", max_n as i64)], started))
}

/// An element of `V`, by weight.
pub type Element = BTreeMap<i32, Vec<BigRational>>;

fn flatten(v: &Sl2Module, x: &Element) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    for w in v.weights() {
        let d = v.dim(w);
        match x.get(&w) {
            Some(c) if c.len() == d => out.extend(c.iter().cloned()),
            Some(c) => {
                return Err(Error::Dimension(format!("weight {w}: expected {d} coordinates, got {}", c.len())))
            }
            None => out.extend(std::iter::repeat_n(BigRational::zero(), d)),
        }
    }
    Ok(out)
}

fn all_orders(v: &Sl2Module) -> Vec<BigInt> {
    v.weights().flat_map(|w| v.orders(w)).collect()
}

fn apply(v: &Sl2Module, x: &Element, op: char) -> Result<Element> {
    let mut out = Element::new();
    for (&w, c) in x {
        let (m, target) = match op {
            'e' => (v.e(w), w + 2),
            'f' => (v.f(w), w - 2),
            _ => (QMatrix::scalar(v.dim(w), BigRational::from_integer(w.into())), w),
        };
        if v.dim(target) == 0 {
            continue;
        }
        let y = m.mul_vec(c)?;
        let slot = out.entry(target).or_insert_with(|| vec![BigRational::zero(); v.dim(target)]);
        for (a, b) in slot.iter_mut().zip(y) {
            *a += b;
        }
    }
    for (w, c) in out.iter_mut() {
        reduce_column(c, &v.orders(*w));
    }
    Ok(out)
}

/// Generators of the `sl₂`-submodule spanned by `gens` (closure under `e`,
/// `f`, `h`; terminates since `V` is noetherian).
pub fn generated_submodule(v: &Sl2Module, gens: &[Element]) -> Result<Vec<Element>> {
    let orders = all_orders(v);
    let total = orders.len();
    let mut basis: Vec<Element> = Vec::new();
    let mut flat: Vec<Vec<BigRational>> = Vec::new();
    let mut queue: Vec<Element> = gens.to_vec();
    while let Some(x) = queue.pop() {
        let fx = flatten(v, &x)?;
        let span = QMatrix::from_columns(total, &flat)?;
        if in_submodule(&span, &orders, &fx, v.ring())? {
            continue;
        }
        for op in ['e', 'f', 'h'] {
            queue.push(apply(v, &x, op)?);
        }
        flat.push(fx);
        basis.push(x);
    }
    Ok(basis)
}

/// Weight components of each generator of the submodule `W = ⟨gens⟩`,
/// each certified to lie in `W`: `w_i = Σ_n c_{i,n} h^n(w)` with `c` the
/// inverse of the Vandermonde matrix `(i^n)`, a unit since `(2g)!` is.
pub fn homogeneous_split(v: &Sl2Module, gens: &[Element]) -> Result<Vec<Element>> {
    let g = v.g() as i32;
    let size = (2 * g + 1) as usize;
    let vand_rows: Vec<Vec<BigRational>> = (0..size)
        .map(|n| (-g..=g).map(|i| BigRational::from_integer(BigInt::from(i).pow(n as u32))).collect())
        .collect();
    // rows n, columns i: h^n(w) = Σ_i i^n w_i
    let vand = QMatrix::from_rows(vand_rows)?;
    let mut inv_cols = Vec::with_capacity(size);
    for k in 0..size {
        let mut e = vec![BigRational::zero(); size];
        e[k] = BigRational::one();
        inv_cols.push(solve(&vand, &e, v.ring())?.ok_or_else(|| invariant("Vandermonde matrix is not a unit"))?);
    }
    let inv = QMatrix::from_columns(size, &inv_cols)?;
    let closure = generated_submodule(v, gens)?;
    let orders = all_orders(v);
    let closure_flat = closure.iter().map(|x| flatten(v, x)).collect::<Result<Vec<_>>>()?;
    let span = QMatrix::from_columns(orders.len(), &closure_flat)?;
    let mut out = Vec::new();
    for w in gens {
        let mut powers = vec![w.clone()];
        for _ in 1..size {
            let next = apply(v, powers.last().expect("nonempty"), 'h')?;
            powers.push(next);
        }
        let mut parts = Element::new();
        for (col, i) in (-g..=g).enumerate() {
            if v.dim(i) == 0 {
                continue;
            }
            // w_i = Σ_n inv[col][n] · (h^n w)_i
            let mut c = vec![BigRational::zero(); v.dim(i)];
            for (n, p) in powers.iter().enumerate() {
                if let Some(x) = p.get(&i) {
                    let s = inv.get(col, n);
                    for (a, b) in c.iter_mut().zip(x) {
                        *a += s * b;
                    }
                }
            }
            reduce_column(&mut c, &v.orders(i));
            let mut projected = w.get(&i).cloned().unwrap_or_else(|| vec![BigRational::zero(); v.dim(i)]);
            reduce_column(&mut projected, &v.orders(i));
            if c != projected {
                return Err(invariant(format!("Vandermonde solve disagrees with the weight-{i} projection")));
            }
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            let part = Element::from([(i, c)]);
            if !in_submodule(&span, &orders, &flatten(v, &part)?, v.ring())? {
                return Err(invariant(format!("weight-{i} component escapes the submodule")));
            }
            parts.insert(i, part.into_values().next().expect("one entry"));
        }
        out.push(parts);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::module::{default_ring, sym_power};
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn coefficients() {
        for n in 0..=6 {
            assert_eq!(flek_coefficient(n, n, 1).unwrap(), BigInt::from(n));
            assert_eq!(flek_coefficient(n, n, n).unwrap(), factorial(n as u64).pow(2));
        }
        assert!(flek_coefficient(3, 1, 2).unwrap().is_zero());
        assert!(flek_coefficient(2, 3, 0).is_err());
    }

    #[test]
    fn sym_three() {
        let v = sym_power(3, 3, default_ring(3)).unwrap();
        assert!(verify_flek(&v, 3).unwrap().passed());
    }

    #[test]
    fn split_in_standard_representation() {
        let st = sym_power(1, 1, default_ring(1)).unwrap();
        let w = Element::from([(-1, vec![q(1)]), (1, vec![q(1)])]);
        let parts = homogeneous_split(&st, &[w]).unwrap();
        assert_eq!(parts[0], Element::from([(-1, vec![q(1)]), (1, vec![q(1)])]));
        assert!(homogeneous_split(&st, &[]).unwrap().is_empty());
    }
}
