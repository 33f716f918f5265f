use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::quadrature::{DiskRule, SupGrid, DEFAULT_CLIP};
use crate::quat::{sphere_sample, UnitImaginary};

/// Discretization shared by every norm computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// Radial Gauss order of disk integrals.
    pub radial: usize,
    /// Angular trapezoid count of disk integrals.
    pub angular: usize,
    /// Clip radius for suprema and for non-integrable weights.
    pub clip: f64,
    pub sphere_samples: usize,
    pub sup_radial: usize,
    pub sup_angular: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            radial: 64,
            angular: 128,
            clip: DEFAULT_CLIP,
            sphere_samples: 64,
            sup_radial: 256,
            sup_angular: 256,
        }
    }
}

impl Config {
    /// Reduced discretization used by the randomized suites.
    pub fn suite() -> Self {
        Self { radial: 48, angular: 96, sphere_samples: 16, sup_radial: 64, sup_angular: 128, ..Self::default() }
    }

    pub fn rule(&self) -> DiskRule {
        DiskRule::new(self.radial, self.angular).with_clip(self.clip)
    }

    pub fn sup_grid(&self) -> SupGrid {
        SupGrid { radial: self.sup_radial, angular: self.sup_angular, clip: self.clip }
    }

    pub fn axes(&self) -> Vec<UnitImaginary> {
        sphere_sample(self.sphere_samples)
    }

    pub fn validate(&self) -> Result<()> {
        self.rule().validate()?;
        if self.sphere_samples == 0 || self.sup_radial == 0 || self.sup_angular == 0 {
            return Err(domain("sample counts must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisValue {
    pub axis: UnitImaginary,
    pub value: f64,
}

/// Result of a norm computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub space: String,
    pub value: f64,
    pub per_axis: Vec<AxisValue>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    pub config: Config,
}

impl NormReport {
    pub(crate) fn new(space: &str, value: f64, per_axis: Vec<(UnitImaginary, f64)>, config: &Config) -> Self {
        Self {
            space: space.to_owned(),
            value,
            per_axis: per_axis.into_iter().map(|(axis, value)| AxisValue { axis, value }).collect(),
            params: BTreeMap::new(),
            config: *config,
        }
    }

    pub(crate) fn with_param(mut self, name: &str, v: f64) -> Self {
        self.params.insert(name.to_owned(), v);
        self
    }
}

/// Outcome of one inequality or identity check.
///
/// `worst` is the largest observed value of the check's figure of merit
/// (a ratio or a deviation); the check passes when `worst <= limit`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub limit: f64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Accumulates observations into a [`CheckReport`].
#[derive(Clone, Debug)]
pub struct CheckTracker {
    name: String,
    limit: f64,
    worst: f64,
    samples: usize,
    witness: Option<String>,
}

impl CheckTracker {
    pub fn new(name: impl Into<String>, limit: f64) -> Self {
        Self { name: name.into(), limit, worst: f64::NEG_INFINITY, samples: 0, witness: None }
    }

    /// Records one value; NaN counts as a violation.
    pub fn observe(&mut self, value: f64, witness: impl FnOnce() -> String) {
        self.samples += 1;
        let value = if value.is_nan() { f64::INFINITY } else { value };
        if value > self.worst {
            self.worst = value;
            self.witness = Some(witness());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.samples += other.samples;
        if other.worst > self.worst {
            self.worst = other.worst;
            self.witness = other.witness;
        }
    }

    pub fn finish(self) -> CheckReport {
        let worst = if self.samples == 0 { 0.0 } else { self.worst };
        CheckReport {
            passed: worst <= self.limit,
            witness: self.witness,
            name: self.name,
            worst,
            limit: self.limit,
            samples: self.samples,
        }
    }
}

/// `a/b` treating `0/0` as `0`.
pub(crate) fn ratio(a: f64, b: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        0.0
    } else {
        a / b
    }
}
