//! The tautological Chow model with its Fourier transform, Pontryagin
//! product and Beauville projectors, plus an exterior-algebra cohomology
//! oracle used to derive and cross-check the model's formulas.

pub mod checks;
pub mod corr;
pub mod model;
pub mod oracle;

pub use checks::*;
pub use corr::{
    beauville_projectors, log_gamma1, log_gamma1_coefficients, projector_ring, projector_table,
    CorrespondenceElement, ProjectorEntry,
};
pub use model::{
    build_model, degree, fourier, inverse_fourier, lambda_class, mult_pull, mult_push,
    operator_matrix, point_class, pontryagin, pontryagin_closed_form, TautClass, TautClassJson,
    TautModel, MAX_G,
};
pub use oracle::{
    build_oracle, build_oracle_with_type, derived_fourier_row, CohomologyOracle, Form, PullbackMap,
    ORACLE_MAX_G,
};
