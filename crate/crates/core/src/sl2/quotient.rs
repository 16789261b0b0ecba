//! Modules with diagonal presentations `Λ^m / (q_1, …, q_m)`, where
//! `q_j = 0` marks a free generator and `q_j = p^k` a cyclic torsion one.
//! Kernels, quotients and membership all reduce to Smith forms over `Λ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invariant, Result};
use crate::lambda::{image_basis, kernel, prime_divisors, smith_over_lambda, solve, InvertedPrimeSet, QMatrix};

/// `x mod q` for `x ∈ Λ` and `q` coprime to the inverted primes; `x`
/// itself when `q = 0`.
pub fn reduce_entry(x: &BigRational, q: &BigInt) -> BigRational {
    if q.is_zero() {
        return x.clone();
    }
    let inv = x.denom().extended_gcd(q);
    debug_assert!(inv.gcd.is_one(), "denominator not a unit mod {q}");
    BigRational::from_integer((x.numer() * inv.x).mod_floor(q))
}

pub fn reduce_column(v: &mut [BigRational], orders: &[BigInt]) {
    for (x, q) in v.iter_mut().zip(orders) {
        *x = reduce_entry(x, q);
    }
}

/// Reduces every row of `m` modulo the order of the matching generator.
pub fn reduce_rows(m: &QMatrix, orders: &[BigInt]) -> QMatrix {
    let mut out = m.clone();
    for (i, q) in orders.iter().enumerate() {
        for j in 0..m.cols() {
            out.set(i, j, reduce_entry(m.get(i, j), q));
        }
    }
    out
}

pub fn is_zero_in(v: &[BigRational], orders: &[BigInt]) -> bool {
    v.iter().zip(orders).all(|(x, q)| reduce_entry(x, q).is_zero())
}

pub fn is_zero_matrix_in(m: &QMatrix, orders: &[BigInt]) -> bool {
    m.columns().iter().all(|c| is_zero_in(c, orders))
}

/// Diagonal relation matrix with the nonzero orders as columns.
pub fn relations(orders: &[BigInt]) -> QMatrix {
    let cols: Vec<Vec<BigRational>> = orders
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(j, q)| {
            let mut c = vec![BigRational::zero(); orders.len()];
            c[j] = BigRational::from_integer(q.clone());
            c
        })
        .collect();
    QMatrix::from_columns(orders.len(), &cols).expect("shape")
}

/// Basis of `{x ∈ Λ^m : a·x ∈ im D_target}`, the preimage of zero under
/// the induced map `Λ^m → Λ^n / D_target`.
pub fn preimage_of_zero(a: &QMatrix, target: &[BigInt], ring: &InvertedPrimeSet) -> Result<QMatrix> {
    let m = a.cols();
    if m == 0 {
        return Ok(QMatrix::zeros(0, 0));
    }
    let full = a.hstack(&relations(target))?;
    let k = kernel(&full, ring)?;
    let top = k.submatrix(0, m, 0, k.cols());
    // the free part of the source always maps somewhere; an empty kernel
    // means the preimage is zero
    if top.cols() == 0 || top.is_zero() {
        return Ok(QMatrix::zeros(m, 0));
    }
    image_basis(&top, ring)
}

/// The quotient `span(basis) / D_source` of a submodule containing the
/// source relations, re-presented diagonally: new generators (columns in
/// source coordinates, unit-order generators dropped) and their orders.
pub fn diagonalize_quotient(
    basis: &QMatrix,
    source: &[BigInt],
    ring: &InvertedPrimeSet,
) -> Result<(QMatrix, Vec<BigInt>)> {
    let (m, r) = (basis.rows(), basis.cols());
    if r == 0 {
        return Ok((QMatrix::zeros(m, 0), Vec::new()));
    }
    let rel = relations(source);
    let mut coords = Vec::with_capacity(rel.cols());
    for c in rel.columns() {
        let x = solve(basis, &c, ring)?
            .ok_or_else(|| invariant("submodule does not contain the source relations"))?;
        coords.push(x);
    }
    let rel_coords = QMatrix::from_columns(r, &coords)?;
    let s = smith_over_lambda(&rel_coords, ring)?;
    // rel_coords = u_inv·d·v_inv, so in the basis `basis·u_inv` the
    // relations are the diagonal of d
    let new_basis = basis.mul(&s.u_inv)?;
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for j in 0..r {
        let q = if j < s.rank {
            let d = s.d.get(j, j);
            if ring.is_unit(d) {
                continue;
            }
            ring.norm(d)
        } else {
            BigInt::zero()
        };
        let mut col = new_basis.column(j);
        reduce_column(&mut col, source);
        gens.push(col);
        orders.push(q);
    }
    Ok((QMatrix::from_columns(m, &gens)?, orders))
}

/// Free rank and elementary divisors `(p, k) ↦ count` of `⊕ Λ/q_j`.
pub fn elementary_divisors(orders: &[BigInt]) -> (usize, BTreeMap<(u64, u32), usize>) {
    let mut free = 0;
    let mut tors = BTreeMap::new();
    for q in orders {
        if q.is_zero() {
            free += 1;
            continue;
        }
        let q = q.abs();
        let small: u64 = (&q).try_into().expect("torsion orders fit in u64");
        for p in prime_divisors(&small.into()) {
            let mut k = 0;
            let mut x = small;
            while x.is_multiple_of(p) {
                x /= p;
                k += 1;
            }
            *tors.entry((p, k)).or_insert(0) += 1;
        }
    }
    (free, tors)
}

/// Whether `v` lies in `span(gens) + im D` inside `Λ^m`.
pub fn in_submodule(gens: &QMatrix, orders: &[BigInt], v: &[BigRational], ring: &InvertedPrimeSet) -> Result<bool> {
    let full = gens.hstack(&relations(orders))?;
    if full.cols() == 0 {
        return Ok(v.iter().all(Zero::is_zero));
    }
    Ok(solve(&full, v, ring)?.is_some())
}

/// Whether `span(a) + D = span(b) + D` (double containment).
pub fn same_submodule(a: &QMatrix, b: &QMatrix, orders: &[BigInt], ring: &InvertedPrimeSet) -> Result<bool> {
    for c in a.columns() {
        if !in_submodule(b, orders, &c, ring)? {
            return Ok(false);
        }
    }
    for c in b.columns() {
        if !in_submodule(a, orders, &c, ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the columns of `gens` together with `D` generate all of `Λ^m`.
pub fn generates(gens: &QMatrix, orders: &[BigInt], ring: &InvertedPrimeSet) -> Result<bool> {
    let m = orders.len();
    if m == 0 {
        return Ok(true);
    }
    let full = gens.hstack(&relations(orders))?;
    if full.cols() < m {
        return Ok(false);
    }
    let s = smith_over_lambda(&full, ring)?;
    Ok(s.rank == m && s.diagonal().iter().all(|d| ring.is_unit(d)))
}
