//! Slice regular functions on the quaternionic unit ball and the function
//! spaces built on them: Bloch, little Bloch, bounded, weighted Bergman,
//! Besov and Dirichlet.
//!
//! Functions are truncated power series `Σ qⁿ aₙ` or evaluator-backed
//! [`SliceFunction`]s; integrals over slice disks use deterministic
//! Gauss × trapezoid rules and suprema use grid search with local refinement.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kernels;
pub mod quadrature;
pub mod quat;
pub mod random;
pub mod series;
pub mod slice;
pub mod spaces;
pub mod suites;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use quat::{decompose, orthogonal_unit, sphere_sample, Quaternion, SliceCoordinate, UnitImaginary};
pub use series::{merge, represent, split, HolomorphicPair, SlicePowerSeries};
pub use slice::{compose_i, slice_extension, MoebiusMap, SliceFunction, SliceRegular};
