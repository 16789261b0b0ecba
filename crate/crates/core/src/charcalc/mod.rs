//! Characteristic-class calculus: Todd classes, Chern characters and their
//! integral normalisations, in Chern variables and in Chern roots.

pub mod classes;
pub mod poly;
pub mod series;
pub mod symmetric;

pub use classes::{
    ch_component, chern_char_component, dualize, f_ct, f_ct_coefficient, f_td, f_td_components,
    f_td_inv, f_td_inv_components, fs_components, power_sums, todd_component, todd_components,
    todd_inverse_components, todd_inverse_roots, todd_roots, whitney, Rank, MAX_DEGREE,
};
pub use poly::{GradedPolynomial, Monomial, PolynomialJson, TermJson, Var, COEFF, TANGENT};
pub use series::{univariate, Root, RootSeries};
pub use symmetric::{chern_to_roots, root_list, roots_to_chern, BundleSpec};
