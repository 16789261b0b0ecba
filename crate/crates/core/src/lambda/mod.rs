//! Exact arithmetic over `ℤ`, `ℚ` and localisations `Λ = ℤ[1/N]`.

mod linalg;
mod matrix;
mod primes;
mod ring;
mod scalar;
mod snf;
mod tm;

pub use linalg::{image_basis, in_span, kernel, solve};
pub use matrix::{IntMatrix, Matrix, PrimePower, QMatrix, ZMatrix};
pub use primes::{binomial, factorial, is_prime, prime_divisors, primes_up_to, vp};
pub use ring::InvertedPrimeSet;
pub use scalar::LambdaScalar;
pub use snf::{
    determinant, smith, smith_mod_prime_power, smith_normal_form, smith_over_lambda, Localized,
    PrimePowerResidues, Smith, SmithForm, SnfRing,
};
pub use tm::{big_t, divisibility_witness, lemma_n};
