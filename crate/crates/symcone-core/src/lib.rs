//! Invariant statistical geometry of the symmetric positive definite cone.
//!
//! The cone of SPD matrices, viewed as the family of zero-mean normal
//! distributions, carries the Fisher metric and a three-parameter family
//! of cubic tensors invariant under the congruence action of the general
//! linear group. This crate computes those objects in the vech chart,
//! verifies their invariance and parallelism numerically (closed forms
//! against finite differences, flows, transport, and Monte Carlo score
//! moments), and realizes the linear isomorphism between the tensor family
//! and symmetric cubic polynomials in the power-sum basis.
//!
//! Modules:
//! - [`sym`]: vech chart, symmetric matrices, SPD points, bases.
//! - [`group`]: congruence action, pushforwards, symmetric square roots.
//! - [`sample`]: seeded random matrices with reproducible streams.
//! - [`gaussian`]: Fisher metric, alpha tensors, score Monte Carlo.
//! - [`tensor`]: dense component arrays and the tensor-field interface.
//! - [`connection`]: Christoffel symbols, covariant and canonical
//!   derivatives, and the derivative-based checks.
//! - [`invariant`]: the (a, b, c) family, frozen identity components, and
//!   the rotation-invariance check.
//! - [`poly`]: cubic forms, polarization, diagonal restriction, power-sum
//!   coordinates, and the dimension count.

pub mod connection;
mod error;
pub mod gaussian;
pub mod group;
pub mod invariant;
mod linalg;
pub mod poly;
pub mod sample;
pub mod sym;
pub mod tensor;

pub use connection::{
    canonical_deriv, christoffel_closed, christoffel_closed_data, christoffel_fd,
    conjugate_symmetry_check, cov_deriv, field_scale, parallel_check, phi_eta_check,
    ChristoffelData, FdScheme, Verdict, FD_DEFAULT_STEP, FD_MAX_STEP, FD_MIN_STEP,
};
pub use error::{GeomError, Result};
pub use gaussian::{
    ac_alpha_at, directional_score, fisher_at, mc_moment, Alpha, McConfig, McEstimate,
};
pub use group::{sym_sqrt, GroupElement};
pub use invariant::{
    eval_via_transport, invariant_cubic_eval, invariant_cubic_eval_weighted, on_invariance_check,
    raw_components, raw_components_weighted, C2Weighting, InvariantCubic, InvariantCubicField,
    RawCubicTensor, ON_INVARIANCE_TOL,
};
pub use poly::{
    cubic_form, diag_restrict, dimension, homogeneity_defect, phi, phi_inverse, polarize,
    to_power_sums, MonomialCoeffs, SymCubicPoly,
};
pub use sym::{sym_basis, vech_index, vech_len, vech_pairs, SpdPoint, SymMat, VechBasis};
pub use sample::{
    sample_general_linear, sample_general_linear_bounded, sample_orthogonal, sample_spd,
    sample_spd_bounded, sample_sym, subseed,
};
pub use tensor::{gram_eigen_bounds, Components, FisherField, FnField, TensorField};
