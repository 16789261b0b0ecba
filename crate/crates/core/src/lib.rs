pub mod charcalc;
pub mod error;
pub mod exec;
pub mod fourier;
pub mod identities;
pub mod lambda;
pub mod sl2;
pub mod suite;

pub use error::{Error, Result};
pub use exec::Execution;
