use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::InvertedPrimeSet;
use crate::error::{Error, Result};

/// An element of `Λ = ℤ[1/N]`, stored as a reduced fraction. Membership is
/// validated on construction.
///
/// Arithmetic operators panic if the operands live in different rings; use
/// [`LambdaScalar::checked_add`] and friends where that can happen.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaScalar {
    value: BigRational,
    ring: Arc<InvertedPrimeSet>,
}

impl LambdaScalar {
    pub fn new(numerator: BigInt, denominator: BigInt, ring: Arc<InvertedPrimeSet>) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Self::from_rational(BigRational::new(numerator, denominator), ring)
    }

    pub fn from_rational(value: BigRational, ring: Arc<InvertedPrimeSet>) -> Result<Self> {
        ring.check(&value)?;
        Ok(Self { value, ring })
    }

    pub fn from_integer(n: impl Into<BigInt>, ring: Arc<InvertedPrimeSet>) -> Self {
        Self { value: BigRational::from_integer(n.into()), ring }
    }

    pub fn zero(ring: Arc<InvertedPrimeSet>) -> Self {
        Self { value: BigRational::zero(), ring }
    }

    pub fn one(ring: Arc<InvertedPrimeSet>) -> Self {
        Self { value: BigRational::one(), ring }
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn numerator(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn ring(&self) -> &Arc<InvertedPrimeSet> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self { value: &self.value + &other.value, ring: self.ring.clone() })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self { value: &self.value * &other.value, ring: self.ring.clone() })
    }

    /// Division, defined only when the divisor is a unit of `Λ`.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if !other.is_unit() {
            return Err(Error::NotInRing(format!("1/{} ∉ {}", other.value, self.ring)));
        }
        Ok(Self { value: &self.value / &other.value, ring: self.ring.clone() })
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::one(self.ring.clone()).checked_div(self)
    }
}

impl fmt::Display for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LambdaScalar> for &LambdaScalar {
            type Output = LambdaScalar;
            fn $method(self, rhs: &LambdaScalar) -> LambdaScalar {
                self.$checked(rhs).expect("operands from different rings")
            }
        }
        impl $tr for LambdaScalar {
            type Output = LambdaScalar;
            fn $method(self, rhs: LambdaScalar) -> LambdaScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

impl LambdaScalar {
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &LambdaScalar {
    type Output = LambdaScalar;
    fn neg(self) -> LambdaScalar {
        LambdaScalar { value: -&self.value, ring: self.ring.clone() }
    }
}

impl Neg for LambdaScalar {
    type Output = LambdaScalar;
    fn neg(self) -> LambdaScalar {
        -&self
    }
}
