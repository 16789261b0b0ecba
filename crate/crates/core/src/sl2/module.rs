//! Graded `sl₂`-modules `V = ⊕_{i=−g}^{g} V_i` over `Λ`, with finitely
//! generated pieces `Λ^a ⊕ ⊕ ℤ/p^k` and `e`, `f` given by matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::quotient::{is_zero_matrix_in, reduce_entry, reduce_rows};
use crate::error::{domain, Error, Result};
use crate::lambda::{factorial, is_prime, InvertedPrimeSet, QMatrix};

/// `Λ^free_rank ⊕ ⊕ (ℤ/p^k)^count`; generators are ordered free first,
/// then the torsion entries in the listed order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub free_rank: usize,
    pub torsion: Vec<(u64, u32, usize)>,
}

impl Piece {
    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.iter().map(|t| t.2).sum::<usize>()
    }

    /// Order of each generator, `0` for free ones.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.free_rank];
        for &(p, k, count) in &self.torsion {
            out.extend(std::iter::repeat_n(BigInt::from(p).pow(k), count));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Combined with `other` (generator order: self's then other's).
    fn concat(&self, other: &Piece) -> Piece {
        let mut out = self.clone();
        out.free_rank += other.free_rank;
        out.torsion.extend(other.torsion.iter().copied());
        out
    }
}

fn zero_map(rows: usize, cols: usize) -> QMatrix {
    QMatrix::zeros(rows, cols)
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Per-weight change of generators `(P_w, P_w^{-1})`.
pub type BasisChange = BTreeMap<i32, (QMatrix, QMatrix)>;

#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Module {
    g: u32,
    ring: Arc<InvertedPrimeSet>,
    pieces: BTreeMap<i32, Piece>,
    /// `e_i : V_i → V_{i+2}`, present for every weight (empty target above `g`).
    e: BTreeMap<i32, QMatrix>,
    f: BTreeMap<i32, QMatrix>,
}

/// Smallest ring allowed for weight bound `g`: `ℤ[1/(2g)!]`.
pub fn default_ring(g: u32) -> Arc<InvertedPrimeSet> {
    Arc::new(InvertedPrimeSet::inverting(&factorial(2 * g.max(1) as u64).magnitude().clone()).expect("nonzero"))
}

impl Sl2Module {
    /// Validates ring, torsion primes, shapes, well-definedness of the maps
    /// and the relation `(ef − fe)|_{V_i} = i` on every weight.
    pub fn new(
        g: u32,
        ring: Arc<InvertedPrimeSet>,
        pieces: BTreeMap<i32, Piece>,
        e: BTreeMap<i32, QMatrix>,
        f: BTreeMap<i32, QMatrix>,
    ) -> Result<Self> {
        let gi = g as i32;
        if g == 0 {
            return Err(domain("weight bound g must be positive"));
        }
        for p in crate::lambda::primes_up_to(2 * g as u64) {
            if !ring.contains_prime(p) {
                return Err(domain(format!("(2g)! = {}! is not invertible in {ring}", 2 * g)));
            }
        }
        for (&w, piece) in &pieces {
            if w.abs() > gi {
                return Err(domain(format!("weight {w} outside [−{g}, {g}]")));
            }
            for &(p, k, _) in &piece.torsion {
                if !is_prime(p) || k == 0 {
                    return Err(domain(format!("torsion ℤ/{p}^{k} is not a prime power")));
                }
                if ring.contains_prime(p) {
                    return Err(domain(format!("torsion prime {p} is inverted in {ring}")));
                }
            }
        }
        let mut v = Self { g, ring, pieces: BTreeMap::new(), e: BTreeMap::new(), f: BTreeMap::new() };
        for w in -gi..=gi {
            // empty torsion entries carry no generators; dropping them keeps equality structural
            let mut piece = pieces.get(&w).cloned().unwrap_or_default();
            piece.torsion.retain(|t| t.2 > 0);
            v.pieces.insert(w, piece);
        }
        for w in -gi..=gi {
            let (src, up, down) = (v.dim(w), v.dim(w + 2), v.dim(w - 2));
            let em = e.get(&w).cloned().unwrap_or_else(|| zero_map(up, src));
            let fm = f.get(&w).cloned().unwrap_or_else(|| zero_map(down, src));
            for (name, m, rows) in [("e", &em, up), ("f", &fm, down)] {
                if m.rows() != rows || m.cols() != src {
                    return Err(Error::Dimension(format!(
                        "{name} on weight {w}: expected {rows}×{src}, got {}×{}",
                        m.rows(),
                        m.cols()
                    )));
                }
                for x in m.entries() {
                    v.ring.check(x)?;
                }
            }
            let em = reduce_rows(&em, &v.orders(w + 2));
            let fm = reduce_rows(&fm, &v.orders(w - 2));
            v.check_well_defined(w, &em, w + 2)?;
            v.check_well_defined(w, &fm, w - 2)?;
            v.e.insert(w, em);
            v.f.insert(w, fm);
        }
        for w in -gi..=gi {
            let c = v.commutator(w)?;
            if !is_zero_matrix_in(&c.sub(&QMatrix::scalar(v.dim(w), q(w)))?, &v.orders(w)) {
                return Err(Error::NotARepresentation(format!("(ef − fe) ≠ {w} on V_{w}")));
            }
        }
        Ok(v)
    }

    /// A torsion generator of order `q` must map into elements killed by `q`.
    fn check_well_defined(&self, w: i32, m: &QMatrix, target: i32) -> Result<()> {
        let src = self.orders(w);
        let tgt = self.orders(target);
        for (j, qj) in src.iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            let col: Vec<BigRational> = m.column(j).iter().map(|x| x * q(qj.clone())).collect();
            if !super::quotient::is_zero_in(&col, &tgt) {
                return Err(domain(format!(
                    "map from weight {w} to {target} is not defined on the generator {j} of order {qj}"
                )));
            }
        }
        Ok(())
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn ring(&self) -> &Arc<InvertedPrimeSet> {
        &self.ring
    }

    pub fn weights(&self) -> impl Iterator<Item = i32> {
        -(self.g as i32)..=self.g as i32
    }

    pub fn piece(&self, w: i32) -> Piece {
        self.pieces.get(&w).cloned().unwrap_or_default()
    }

    pub fn pieces(&self) -> &BTreeMap<i32, Piece> {
        &self.pieces
    }

    pub fn dim(&self, w: i32) -> usize {
        self.pieces.get(&w).map_or(0, Piece::dim)
    }

    pub fn orders(&self, w: i32) -> Vec<BigInt> {
        self.pieces.get(&w).map_or_else(Vec::new, Piece::orders)
    }

    /// `e : V_w → V_{w+2}`.
    pub fn e(&self, w: i32) -> QMatrix {
        self.e.get(&w).cloned().unwrap_or_else(|| zero_map(self.dim(w + 2), self.dim(w)))
    }

    /// `f : V_w → V_{w−2}`.
    pub fn f(&self, w: i32) -> QMatrix {
        self.f.get(&w).cloned().unwrap_or_else(|| zero_map(self.dim(w - 2), self.dim(w)))
    }

    /// `e^k : V_w → V_{w+2k}`, reduced.
    pub fn e_pow(&self, w: i32, k: u32) -> Result<QMatrix> {
        let mut m = QMatrix::identity(self.dim(w));
        for s in 0..k as i32 {
            m = reduce_rows(&self.e(w + 2 * s).mul(&m)?, &self.orders(w + 2 * s + 2));
        }
        Ok(m)
    }

    /// `f^k : V_w → V_{w−2k}`, reduced.
    pub fn f_pow(&self, w: i32, k: u32) -> Result<QMatrix> {
        let mut m = QMatrix::identity(self.dim(w));
        for s in 0..k as i32 {
            m = reduce_rows(&self.f(w - 2 * s).mul(&m)?, &self.orders(w - 2 * s - 2));
        }
        Ok(m)
    }

    /// `(ef − fe)` restricted to `V_w`.
    pub fn commutator(&self, w: i32) -> Result<QMatrix> {
        let ef = self.e(w - 2).mul(&self.f(w))?;
        let fe = self.f(w + 2).mul(&self.e(w))?;
        Ok(reduce_rows(&ef.sub(&fe)?, &self.orders(w)))
    }

    /// Whether `(ef − fe)|_{V_w} = w·id` holds on every weight.
    pub fn satisfies_relations(&self) -> Result<bool> {
        for w in self.weights() {
            let c = self.commutator(w)?.sub(&QMatrix::scalar(self.dim(w), q(w)))?;
            if !is_zero_matrix_in(&c, &self.orders(w)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `V^*`: same module, weights negated, `e` and `f` exchanged.
    pub fn dual(&self) -> Self {
        let mut pieces = BTreeMap::new();
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        for w in self.weights() {
            pieces.insert(-w, self.piece(w));
            e.insert(-w, self.f(w));
            f.insert(-w, self.e(w));
        }
        Self { g: self.g, ring: self.ring.clone(), pieces, e, f }
    }

    /// `V ⊕ W`, with the weight bound of the larger summand.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let g = self.g.max(other.g);
        let gi = g as i32;
        let mut pieces = BTreeMap::new();
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        // block-diagonal order is (self, other); the merged piece lists both
        // free parts before both torsion parts
        let perm = |w: i32| -> QMatrix {
            let (a, b) = (self.piece(w), other.piece(w));
            let (af, at, bf) = (a.free_rank, a.dim() - a.free_rank, b.free_rank);
            let n = a.dim() + b.dim();
            let mut m = QMatrix::zeros(n, n);
            for j in 0..n {
                let i = if j < af {
                    j
                } else if j < af + at {
                    j + bf
                } else if j < af + at + bf {
                    j - at
                } else {
                    j
                };
                m.set(i, j, BigRational::one());
            }
            m
        };
        for w in -gi..=gi {
            pieces.insert(w, self.piece(w).concat(&other.piece(w)));
            let back = perm(w).transpose();
            e.insert(w, perm(w + 2).mul(&self.e(w).direct_sum(&other.e(w)))?.mul(&back)?);
            f.insert(w, perm(w - 2).mul(&self.f(w).direct_sum(&other.f(w)))?.mul(&back)?);
        }
        Self::new(g, self.ring.clone(), pieces, e, f)
    }

    /// `V ⊗ (ℤ/p^k)^count` for free `V`, or `V ⊗ Λ^count` when `p^k` is `None`.
    pub fn tensor_cyclic(&self, order: Option<(u64, u32)>, count: usize) -> Result<Self> {
        let mut pieces = BTreeMap::new();
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        for w in self.weights() {
            let piece = self.piece(w);
            if !piece.torsion.is_empty() {
                return Err(domain("tensor_cyclic needs a free module"));
            }
            let n = piece.free_rank * count;
            pieces.insert(
                w,
                match order {
                    None => Piece::free(n),
                    Some((p, k)) => Piece { free_rank: 0, torsion: vec![(p, k, n)] },
                },
            );
            e.insert(w, kron_identity(&self.e(w), count));
            f.insert(w, kron_identity(&self.f(w), count));
        }
        Self::new(self.g, self.ring.clone(), pieces, e, f)
    }

    /// Applies a change of generators `x ↦ P_w x` on every weight, where
    /// `(P_w, P_w^{-1})` are module automorphisms.
    pub fn transport(&self, basis: &BasisChange) -> Result<Self> {
        let id = |w: i32| (QMatrix::identity(self.dim(w)), QMatrix::identity(self.dim(w)));
        let get = |w: i32| basis.get(&w).cloned().unwrap_or_else(|| id(w));
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        for w in self.weights() {
            let (_, p_inv) = get(w);
            let (up, _) = get(w + 2);
            let (down, _) = get(w - 2);
            e.insert(w, up.mul(&self.e(w))?.mul(&p_inv)?);
            f.insert(w, down.mul(&self.f(w))?.mul(&p_inv)?);
        }
        Self::new(self.g, self.ring.clone(), self.pieces.clone(), e, f)
    }

    /// A random automorphism of each weight piece (elementary operations
    /// compatible with the orders plus unit rescalings), applied by
    /// [`Sl2Module::transport`]. Returns the scrambled module and the bases.
    pub fn scrambled<R: Rng>(&self, rng: &mut R) -> Result<(Self, BasisChange)> {
        let mut bases = BTreeMap::new();
        for w in self.weights() {
            bases.insert(w, random_automorphism(&self.orders(w), rng)?);
        }
        Ok((self.transport(&bases)?, bases))
    }

    pub fn to_json(&self) -> Sl2ModuleJson {
        let map_json = |maps: &dyn Fn(i32) -> QMatrix, shift: i32| {
            self.weights()
                .filter(|&w| self.dim(w) > 0 && self.dim(w + shift) > 0)
                .map(|w| MapJson { from: w, matrix: matrix_to_json(&maps(w)) })
                .collect()
        };
        Sl2ModuleJson {
            g: self.g,
            inverted_primes: self.ring.primes().to_vec(),
            pieces: self
                .weights()
                .filter(|&w| self.dim(w) > 0)
                .map(|w| {
                    let p = self.piece(w);
                    PieceJson {
                        weight: w,
                        free_rank: p.free_rank,
                        torsion: p.torsion.iter().map(|&(p, k, c)| [p, k as u64, c as u64]).collect(),
                    }
                })
                .collect(),
            e_maps: map_json(&|w| self.e(w), 2),
            f_maps: map_json(&|w| self.f(w), -2),
        }
    }

    pub fn from_json(j: &Sl2ModuleJson) -> Result<Self> {
        let ring = Arc::new(InvertedPrimeSet::from_primes(j.inverted_primes.iter().copied())?);
        let mut pieces = BTreeMap::new();
        for p in &j.pieces {
            let torsion = p
                .torsion
                .iter()
                .map(|t| Ok((t[0], u32::try_from(t[1]).map_err(|_| Error::Parse("exponent".into()))?, t[2] as usize)))
                .collect::<Result<Vec<_>>>()?;
            if pieces.insert(p.weight, Piece { free_rank: p.free_rank, torsion }).is_some() {
                return Err(Error::Parse(format!("weight {} listed twice", p.weight)));
            }
        }
        let parse_maps = |maps: &[MapJson]| -> Result<BTreeMap<i32, QMatrix>> {
            maps.iter().map(|m| Ok((m.from, matrix_from_json(&m.matrix)?))).collect()
        };
        Self::new(j.g, ring, pieces, parse_maps(&j.e_maps)?, parse_maps(&j.f_maps)?)
    }
}

/// `Sym^n(St)` over `ring` as a module with weight bound `g ≥ n`:
/// `e(x_{−n+2i}) = (n−i)·x_{−n+2i+2}`, `f(x_{−n+2i}) = i·x_{−n+2i−2}`.
pub fn sym_power(n: u32, g: u32, ring: Arc<InvertedPrimeSet>) -> Result<Sl2Module> {
    if n > g {
        return Err(domain(format!("Sym^{n} needs weight bound at least {n}, got {g}")));
    }
    let ni = n as i32;
    let mut pieces = BTreeMap::new();
    let mut e = BTreeMap::new();
    let mut f = BTreeMap::new();
    for i in 0..=ni {
        let w = -ni + 2 * i;
        pieces.insert(w, Piece::free(1));
        if i < ni {
            e.insert(w, QMatrix::from_i64_rows(&[&[(ni - i) as i64]]));
        }
        if i > 0 {
            f.insert(w, QMatrix::from_i64_rows(&[&[i as i64]]));
        }
    }
    Sl2Module::new(g, ring, pieces, e, f)
}

fn kron_identity(m: &QMatrix, count: usize) -> QMatrix {
    let mut out = QMatrix::zeros(m.rows() * count, m.cols() * count);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for c in 0..count {
                out.set(i * count + c, j * count + c, m.get(i, j).clone());
            }
        }
    }
    out
}

/// Random `(P, P^{-1})` preserving the diagonal presentation `orders`.
fn random_automorphism<R: Rng>(orders: &[BigInt], rng: &mut R) -> Result<(QMatrix, QMatrix)> {
    let m = orders.len();
    let mut p = QMatrix::identity(m);
    let mut p_inv = QMatrix::identity(m);
    if m == 0 {
        return Ok((p, p_inv));
    }
    for _ in 0..3 * m {
        let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
        if i == j {
            // unit rescaling of one generator
            let (u, u_inv) = if orders[i].is_zero() {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                (q(s), q(s))
            } else {
                random_unit_mod(&orders[i], rng)
            };
            let mut d = QMatrix::identity(m);
            let mut d_inv = QMatrix::identity(m);
            d.set(i, i, u);
            d_inv.set(i, i, u_inv);
            p = d.mul(&p)?;
            p_inv = p_inv.mul(&d_inv)?;
            continue;
        }
        // x_i += c·x_j is well defined iff q_i | q_j·c
        let (qi, qj) = (&orders[i], &orders[j]);
        let c: i64 = rng.gen_range(-3..=3);
        let c = if qi.is_zero() && !qj.is_zero() {
            continue;
        } else if !qi.is_zero() && !qj.is_zero() {
            BigInt::from(c) * (qi / qi.gcd(qj))
        } else {
            BigInt::from(c)
        };
        let mut t = QMatrix::identity(m);
        let mut t_inv = QMatrix::identity(m);
        t.set(i, j, q(c.clone()));
        t_inv.set(i, j, q(-c));
        p = t.mul(&p)?;
        p_inv = p_inv.mul(&t_inv)?;
    }
    Ok((reduce_rows(&p, orders), reduce_rows(&p_inv, orders)))
}

fn random_unit_mod<R: Rng>(order: &BigInt, rng: &mut R) -> (BigRational, BigRational) {
    let bound = order.to_u64().unwrap_or(u64::MAX);
    loop {
        let u = BigInt::from(rng.gen_range(1..bound.max(2)));
        let e = u.extended_gcd(order);
        if e.gcd.is_one() {
            return (q(u), reduce_entry(&q(e.x), order));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PieceJson {
    pub weight: i32,
    pub free_rank: usize,
    /// `[p, k, count]` triples.
    #[serde(default)]
    pub torsion: Vec<[u64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapJson {
    pub from: i32,
    pub matrix: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Sl2ModuleJson {
    pub g: u32,
    pub inverted_primes: Vec<u64>,
    pub pieces: Vec<PieceJson>,
    #[serde(default)]
    pub e_maps: Vec<MapJson>,
    #[serde(default)]
    pub f_maps: Vec<MapJson>,
}

/// Integers as JSON numbers when they fit in `i64`; anything else as a
/// `"a/b"` string.
pub fn matrix_to_json(m: &QMatrix) -> Vec<Vec<Value>> {
    m.to_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| match (x.is_integer(), x.numer().to_i64()) {
                    (true, Some(n)) => Value::from(n),
                    _ => Value::from(x.to_string()),
                })
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<Value>]) -> Result<QMatrix> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(entry_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Ok(QMatrix::zeros(0, 0));
    }
    QMatrix::from_rows(parsed)
}

fn entry_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n.as_i64().map(q).ok_or_else(|| Error::Parse(format!("non-integer entry {n}"))),
        Value::String(s) => {
            let (a, b) = s.split_once('/').unwrap_or((s, "1"));
            let a: BigInt = a.trim().parse().map_err(|_| Error::Parse(format!("bad entry {s:?}")))?;
            let b: BigInt = b.trim().parse().map_err(|_| Error::Parse(format!("bad entry {s:?}")))?;
            if b.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(a, b))
        }
        _ => Err(Error::Parse(format!("bad matrix entry {v}"))),
    }
}

impl fmt::Display for Sl2Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sl2-module g={} over {}", self.g, self.ring)?;
        for w in self.weights() {
            let p = self.piece(w);
            if p.is_zero() {
                continue;
            }
            write!(f, "  V_{w}: Λ^{}", p.free_rank)?;
            for (pr, k, c) in &p.torsion {
                write!(f, " ⊕ (ℤ/{pr}^{k})^{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_representation() {
        let st = sym_power(1, 1, default_ring(1)).unwrap();
        // in the basis (x_{−1}, x_1): e = [[0,0],[1,0]], f = [[0,1],[0,0]]
        assert_eq!(st.e(-1), QMatrix::from_i64_rows(&[&[1]]));
        assert_eq!(st.f(1), QMatrix::from_i64_rows(&[&[1]]));
        assert_eq!(st.dim(0), 0);
        let s2 = sym_power(2, 2, default_ring(2)).unwrap();
        assert_eq!(s2.e(-2), QMatrix::from_i64_rows(&[&[2]]));
        assert_eq!(s2.e(0), QMatrix::from_i64_rows(&[&[1]]));
        let s0 = sym_power(0, 1, default_ring(1)).unwrap();
        assert!(s0.e(0).is_zero() && s0.f(0).is_zero());
    }

    #[test]
    fn ring_must_invert_2g_factorial() {
        let ring = Arc::new(InvertedPrimeSet::from_primes([2]).unwrap());
        assert!(matches!(sym_power(1, 2, ring), Err(Error::Domain(_))));
    }

    #[test]
    fn dual_is_an_involution() {
        let v = sym_power(2, 3, default_ring(3)).unwrap().direct_sum(&sym_power(1, 3, default_ring(3)).unwrap()).unwrap();
        let d = v.dual();
        assert!(d.satisfies_relations().unwrap());
        assert_eq!(d.dual(), v);
    }

    #[test]
    fn broken_relation_is_rejected() {
        let ring = default_ring(1);
        let pieces = BTreeMap::from([(-1, Piece::free(1)), (1, Piece::free(1))]);
        let e = BTreeMap::from([(-1, QMatrix::from_i64_rows(&[&[2]]))]);
        let f = BTreeMap::from([(1, QMatrix::from_i64_rows(&[&[1]]))]);
        assert!(matches!(Sl2Module::new(1, ring, pieces, e, f), Err(Error::NotARepresentation(_))));
    }

    #[test]
    fn scramble_and_json_round_trip() {
        let ring = default_ring(2);
        let v = sym_power(1, 2, ring.clone()).unwrap().tensor_cyclic(Some((5, 2)), 2).unwrap();
        let w = v.direct_sum(&sym_power(2, 2, ring).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (s, _) = w.scrambled(&mut rng).unwrap();
        assert!(s.satisfies_relations().unwrap());
        let j = serde_json::to_string(&s.to_json()).unwrap();
        let back = Sl2Module::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
