//! Fixed inputs shared by the benchmarks.

use slicespace::random;
use slicespace::{SlicePowerSeries, UnitImaginary};

/// A reproducible random series of the given degree.
pub fn fixture_series(degree: usize) -> SlicePowerSeries {
    random::series(&mut random::rng(0x5eed + degree as u64), degree)
}

/// A generic axis, away from the coordinate axes.
pub fn fixture_axis() -> UnitImaginary {
    UnitImaginary::from_vector([0.3, -0.5, 0.8]).expect("nonzero")
}
