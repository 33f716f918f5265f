//! Norms, seminorms, metrics and inequality checks for the Bloch, bounded,
//! weighted Bergman, Besov and Dirichlet spaces.
//!
//! Quantities defined as a supremum over all slices are estimated over
//! [`sphere_sample`](crate::quat::sphere_sample); the per-axis values are kept
//! in the [`NormReport`].

pub mod bergman;
pub mod besov;
pub mod bloch;
pub mod dirichlet;
mod report;

pub use bergman::*;
pub use besov::*;
pub use bloch::*;
pub use dirichlet::*;
pub use report::{AxisValue, CheckReport, CheckTracker, Config, NormReport};

use num_complex::Complex64;

/// Pseudo-hyperbolic distance `|z − w| / |1 − z̄w|` on a slice.
pub fn pseudo_hyperbolic(z: Complex64, w: Complex64) -> f64 {
    let den = (Complex64::new(1.0, 0.0) - z.conj() * w).norm();
    ((z - w).norm() / den).min(1.0)
}
