//! Seeded random families used by the check suites.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::quat::{Quaternion, UnitImaginary};
use crate::series::SlicePowerSeries;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Quaternion with independent standard normal components.
pub fn quaternion(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng))
}

/// Uniformly distributed axis on the sphere.
pub fn axis(rng: &mut impl Rng) -> UnitImaginary {
    loop {
        if let Some(i) = UnitImaginary::from_vector([normal(rng), normal(rng), normal(rng)]) {
            return i;
        }
    }
}

/// Polynomial of exactly the given degree with Gaussian coefficients.
pub fn series(rng: &mut impl Rng, degree: usize) -> SlicePowerSeries {
    SlicePowerSeries::new((0..=degree).map(|_| quaternion(rng)).collect())
}

/// Point of the disk `|z| ≤ r_max`, uniform in area.
pub fn disk_point(rng: &mut impl Rng, r_max: f64) -> Complex64 {
    let r = r_max * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
}

/// Point of the ball `|q| ≤ r_max`, uniform in volume.
pub fn ball_point(rng: &mut impl Rng, r_max: f64) -> Quaternion {
    let dir = loop {
        let q = quaternion(rng);
        if q.norm() > 0.0 {
            break q / q.norm();
        }
    };
    dir * (r_max * rng.random::<f64>().powf(0.25))
}
