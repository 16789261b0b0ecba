//! Kernels, images and linear systems over `Λ`, all via the Smith form.

use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::QMatrix;
use super::ring::InvertedPrimeSet;
use super::snf::smith_over_lambda;
use crate::error::Result;

/// Basis (as columns) of `{x ∈ Λ^cols : m·x = 0}`.
pub fn kernel(m: &QMatrix, ring: &InvertedPrimeSet) -> Result<QMatrix> {
    let s = smith_over_lambda(m, ring)?;
    Ok(s.v.submatrix(0, m.cols(), s.rank, m.cols()))
}

/// Basis (as columns) of the `Λ`-span of the columns of `m`.
pub fn image_basis(m: &QMatrix, ring: &InvertedPrimeSet) -> Result<QMatrix> {
    let s = smith_over_lambda(m, ring)?;
    let mut b = s.u_inv.submatrix(0, m.rows(), 0, s.rank);
    for j in 0..s.rank {
        let d = s.d.get(j, j).clone();
        for i in 0..m.rows() {
            let x = b.get(i, j) * &d;
            b.set(i, j, x);
        }
    }
    Ok(b)
}

/// Some `x ∈ Λ^cols` with `m·x = b`, if one exists.
pub fn solve(m: &QMatrix, b: &[BigRational], ring: &InvertedPrimeSet) -> Result<Option<Vec<BigRational>>> {
    let s = smith_over_lambda(m, ring)?;
    let ub = s.u.mul_vec(b)?;
    let mut y = vec![BigRational::zero(); m.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank {
            let yi = c / s.d.get(i, i);
            if !ring.contains(&yi) {
                return Ok(None);
            }
            y[i] = yi;
        } else if !c.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul_vec(&y)?))
}

pub fn in_span(m: &QMatrix, b: &[BigRational], ring: &InvertedPrimeSet) -> Result<bool> {
    Ok(solve(m, b, ring)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn kernel_and_image() {
        let z = InvertedPrimeSet::integers();
        let m = QMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&m, &z).unwrap();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        let im = image_basis(&m, &z).unwrap();
        assert_eq!(im.cols(), 1);
        assert!(in_span(&im, &[q(1), q(2)], &z).unwrap());
    }

    #[test]
    fn solvability_depends_on_ring() {
        let m = QMatrix::from_i64_rows(&[&[3]]);
        assert!(solve(&m, &[q(1)], &InvertedPrimeSet::integers()).unwrap().is_none());
        let r3 = InvertedPrimeSet::from_primes([3]).unwrap();
        let x = solve(&m, &[q(1)], &r3).unwrap().unwrap();
        assert_eq!(x, vec![BigRational::new(1.into(), 3.into())]);
    }

    #[test]
    fn inconsistent_system() {
        let m = QMatrix::from_i64_rows(&[&[1], &[1]]);
        assert!(solve(&m, &[q(1), q(2)], &InvertedPrimeSet::integers()).unwrap().is_none());
    }
}
