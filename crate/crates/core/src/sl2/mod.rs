//! Integral `sl₂`-modules over `Λ = ℤ[1/n]` with `(2g)! | n`: symmetric
//! powers, the `f^ℓ e^k` calculus, homogeneous splitting and the isotypic
//! decomposition, torsion included.

pub mod chow;
pub mod decompose;
pub mod flek;
pub mod module;
pub mod quotient;
pub mod random;

pub use decompose::{
    decompose, highest_weight_space, kernel_of, lowest_weight_space, verify_decomposition, Component,
    ComponentJson, DecompositionJson, IsotypicDecomposition, Multiplicity,
};
pub use module::{default_ring, sym_power, BasisChange, MapJson, Piece, PieceJson, Sl2Module, Sl2ModuleJson};
pub use chow::{build_chow_sl2, chow_sl2_check, torsion_injectivity_demo, ChowSl2};
pub use flek::{flek_coefficient, generated_submodule, homogeneous_split, verify_flek, Element};
pub use random::{assemble, random_instance, round_trip, torsion_primes, RandomInstance};
