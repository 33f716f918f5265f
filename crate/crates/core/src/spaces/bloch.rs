//! Bloch space, little Bloch space and bounded functions.

use std::f64::consts::{E, SQRT_2};

use num_complex::Complex64;

use super::report::ratio;
use super::{pseudo_hyperbolic, CheckReport, CheckTracker, Config, NormReport};
use crate::error::{Error, Result};
use crate::quadrature::{sup_disk_many, SupGrid};
use crate::quat::{decompose, Quaternion, UnitImaginary};
use crate::series::SlicePowerSeries;
use crate::slice::SliceRegular;

/// `sup_{z ∈ B_i} (1 − |z|²)ᵏ |∂ᵏf(z)|` for `k = 0..=order`.
pub fn weighted_derivative_sups<F: SliceRegular + ?Sized>(
    f: &F,
    i: UnitImaginary,
    order: usize,
    grid: &SupGrid,
) -> Vec<f64> {
    let g = f.restrict(i);
    sup_disk_many(
        |z, out| {
            let jet = g(z, order);
            let w = 1.0 - z.norm_sqr();
            let mut wk = 1.0;
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = wk * jet[k].norm();
                wk *= w;
            }
        },
        order + 1,
        grid,
    )
}

/// Per-axis weighted derivative suprema over the sampled sphere.
#[derive(Clone, Debug)]
pub struct BlochAnalysis {
    pub f0: f64,
    /// `(axis, [sup (1 − |z|²)ᵏ|∂ᵏf| for k = 0..=order])`.
    pub per_axis: Vec<(UnitImaginary, Vec<f64>)>,
    pub config: Config,
}

impl BlochAnalysis {
    pub fn new<F: SliceRegular + ?Sized>(f: &F, order: usize, config: &Config) -> Self {
        let grid = config.sup_grid();
        let per_axis = config
            .axes()
            .into_iter()
            .map(|i| (i, weighted_derivative_sups(f, i, order, &grid)))
            .collect();
        Self { f0: f.eval(Quaternion::ZERO).norm(), per_axis, config: *config }
    }

    fn max_over_axes(&self, k: usize) -> f64 {
        self.per_axis.iter().map(|(_, v)| v[k]).fold(0.0, f64::max)
    }

    /// `‖f‖_𝓑 = |f(0)| + sup (1 − |q|²)|∂f(q)|`.
    pub fn bloch_norm(&self) -> f64 {
        self.f0 + self.max_over_axes(1)
    }

    pub fn hinf_norm(&self) -> f64 {
        self.max_over_axes(0)
    }

    /// `sup (1 − |q|²)ⁿ |∂ⁿf(q)|`.
    pub fn growth(&self, n: usize) -> f64 {
        self.max_over_axes(n)
    }

    pub fn bloch_report(&self) -> NormReport {
        let per_axis = self.per_axis.iter().map(|(i, v)| (*i, self.f0 + v[1])).collect();
        NormReport::new("bloch", self.bloch_norm(), per_axis, &self.config)
    }

    pub fn hinf_report(&self) -> NormReport {
        let per_axis = self.per_axis.iter().map(|(i, v)| (*i, v[0])).collect();
        NormReport::new("hinf", self.hinf_norm(), per_axis, &self.config)
    }

    /// `‖f‖_{𝓑_i} ≤ ‖f‖_𝓑 ≤ 2‖f‖_{𝓑_i}` on every sampled axis.
    pub fn equivalence_check(&self, tol: f64) -> CheckReport {
        let norm = self.bloch_norm();
        let mut t = CheckTracker::new("bloch_norm_equivalence", 1.0 + tol);
        for (i, v) in &self.per_axis {
            let slice = self.f0 + v[1];
            t.observe(ratio(slice, norm).max(ratio(norm, 2.0 * slice)), || format!("axis {i}"));
        }
        t.finish()
    }

    /// `‖f‖_{∞,i} ≤ ‖f‖_∞ ≤ 2‖f‖_{∞,i}` on every sampled axis.
    pub fn hinf_sandwich_check(&self, tol: f64) -> CheckReport {
        let norm = self.hinf_norm();
        let mut t = CheckTracker::new("hinf_sandwich", 1.0 + tol);
        for (i, v) in &self.per_axis {
            t.observe(ratio(v[0], norm).max(ratio(norm, 2.0 * v[0])), || format!("axis {i}"));
        }
        t.finish()
    }

    /// `‖f‖_𝓑 ≤ 4‖f‖_∞`.
    pub fn bloch_hinf_check(&self, tol: f64) -> CheckReport {
        let mut t = CheckTracker::new("bloch_le_4_hinf", 1.0 + tol);
        t.observe(ratio(self.bloch_norm(), 4.0 * self.hinf_norm()), || "sphere".into());
        t.finish()
    }

    /// `sup (1 − |q|²)ⁿ|∂ⁿf| ≤ 2^{2n+2}(n − 1)! ‖f‖_𝓑`; needs `order ≥ n`.
    pub fn derivative_growth_check(&self, n: usize, tol: f64) -> CheckReport {
        assert!(n >= 2 && n < self.per_axis.first().map_or(0, |p| p.1.len()));
        let bound = growth_constant(n) * self.bloch_norm();
        let mut t = CheckTracker::new(format!("derivative_growth_n{n}"), 1.0 + tol);
        for (i, v) in &self.per_axis {
            t.observe(ratio(v[n], bound), || format!("axis {i}"));
        }
        t.finish()
    }
}

/// `2^{2n+2}(n − 1)!`.
pub fn growth_constant(n: usize) -> f64 {
    let fact: f64 = (1..n).map(|k| k as f64).product();
    2f64.powi(2 * n as i32 + 2) * fact
}

/// Constant of the coefficient bound `|aₙ| ≤ (e/√2)‖f‖_𝓑`.
pub const COEFF_CONSTANT: f64 = E / SQRT_2;

/// `sup_{z ∈ B_i} (1 − |z|²)|∂f(z)|`.
pub fn bloch_seminorm_slice<F: SliceRegular + ?Sized>(f: &F, i: UnitImaginary, config: &Config) -> f64 {
    weighted_derivative_sups(f, i, 1, &config.sup_grid())[1]
}

/// `‖f‖_{𝓑_i} = |f(0)| + sup_{z ∈ B_i}(1 − |z|²)|∂f(z)|`.
pub fn bloch_norm_slice<F: SliceRegular + ?Sized>(f: &F, i: UnitImaginary, config: &Config) -> f64 {
    f.eval(Quaternion::ZERO).norm() + bloch_seminorm_slice(f, i, config)
}

pub fn bloch_norm<F: SliceRegular + ?Sized>(f: &F, config: &Config) -> NormReport {
    BlochAnalysis::new(f, 1, config).bloch_report()
}

pub fn hinf_slice<F: SliceRegular + ?Sized>(f: &F, i: UnitImaginary, config: &Config) -> f64 {
    weighted_derivative_sups(f, i, 0, &config.sup_grid())[0]
}

pub fn hinf_norm<F: SliceRegular + ?Sized>(f: &F, config: &Config) -> NormReport {
    BlochAnalysis::new(f, 0, config).hinf_report()
}

pub fn bloch_equivalence_check<F: SliceRegular + ?Sized>(f: &F, config: &Config, tol: f64) -> CheckReport {
    BlochAnalysis::new(f, 1, config).equivalence_check(tol)
}

pub fn derivative_growth_check<F: SliceRegular + ?Sized>(
    f: &F,
    n: usize,
    config: &Config,
    tol: f64,
) -> CheckReport {
    BlochAnalysis::new(f, n, config).derivative_growth_check(n, tol)
}

/// `max |aₙ| ≤ (e/√2)‖f‖_𝓑`, given the Bloch norm.
pub fn coeff_bound_check_with(f: &SlicePowerSeries, bloch: f64, tol: f64) -> CheckReport {
    let mut t = CheckTracker::new("coefficient_bound", 1.0 + tol);
    for (n, a) in f.coeffs().iter().enumerate() {
        t.observe(ratio(a.norm(), COEFF_CONSTANT * bloch), || format!("n = {n}"));
    }
    t.finish()
}

pub fn coeff_bound_check(f: &SlicePowerSeries, config: &Config, tol: f64) -> CheckReport {
    coeff_bound_check_with(f, bloch_norm(f, config).value, tol)
}

/// Sufficient condition for membership in 𝓑: the nonzero coefficients beyond
/// the constant term sit at indices with `n_{k+1}/n_k ≥ ratio` and have
/// modulus at most `bound`.
pub fn lacunary_certificate(f: &SlicePowerSeries, ratio: f64, bound: f64) -> bool {
    if !(ratio > 1.0) {
        return false;
    }
    let support: Vec<usize> = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, a)| **a != Quaternion::ZERO)
        .map(|(n, _)| n)
        .collect();
    let gaps = support.windows(2).all(|w| w[1] as f64 >= ratio * w[0] as f64);
    gaps && support.iter().all(|&n| f.coeff(n).norm() <= bound)
}

/// Slice coordinates of two points lying on a common slice.
pub fn common_slice(q: Quaternion, u: Quaternion) -> Result<(UnitImaginary, Complex64, Complex64)> {
    let (cq, cu) = (decompose(q), decompose(u));
    let axis = if cq.is_real { cu.axis } else { cq.axis };
    if !axis.contains(q, 1e-12) || !axis.contains(u, 1e-12) {
        return Err(Error::NotOnSlice);
    }
    Ok((axis, axis.coordinate(q), axis.coordinate(u)))
}

/// `d(q, u) = ½ log((1 + ρ)/(1 − ρ))` for two points of a common slice.
pub fn slice_distance(q: Quaternion, u: Quaternion) -> Result<f64> {
    for p in [q, u] {
        if !(p.norm() < 1.0) {
            return Err(Error::OutsideBall(p));
        }
    }
    let (_, z, w) = common_slice(q, u)?;
    Ok(pseudo_hyperbolic(z, w).atanh())
}

/// `|f(q) − f(u)| ≤ √2 ‖f‖_𝓑 d(q, u)` for the given pairs on `C(i)`.
pub fn bloch_lipschitz_check<F: SliceRegular + ?Sized>(
    f: &F,
    i: UnitImaginary,
    pairs: &[(Complex64, Complex64)],
    bloch: f64,
    tol: f64,
) -> CheckReport {
    let mut t = CheckTracker::new("bloch_lipschitz", 1.0 + tol);
    for &(z, w) in pairs {
        let lhs = (f.slice_jet(z, i, 0)[0] - f.slice_jet(w, i, 0)[0]).norm();
        let d = pseudo_hyperbolic(z, w).atanh();
        t.observe(ratio(lhs, SQRT_2 * bloch * d), || format!("z = {z}, w = {w}"));
    }
    t.finish()
}

/// Outcome of [`little_bloch_test`].
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct LittleBloch {
    pub little: bool,
    /// `(r, (1 − r²) max |∂f| on |z| = r)` over the sampled axes.
    pub profile: Vec<(f64, f64)>,
    /// `(r, ‖f_r − f‖_𝓑)`.
    pub dilation: Vec<(f64, f64)>,
}

/// `(1 − r²) max_θ |∂f(r e^{iθ})|` on the given slice.
pub fn bloch_profile<F: SliceRegular + ?Sized>(f: &F, i: UnitImaginary, r: f64, angular: usize) -> f64 {
    let g = f.restrict(i);
    let dt = std::f64::consts::TAU / angular as f64;
    (0..angular)
        .map(|t| g(Complex64::from_polar(r, dt * t as f64), 1)[1].norm())
        .fold(0.0, f64::max)
        * (1.0 - r * r)
}

/// Numerical test for membership in the little Bloch space: the boundary
/// profile and the dilation distances must both fall below `tol · ‖f‖_𝓑`.
pub fn little_bloch_test(f: &SlicePowerSeries, config: &Config, tol: f64) -> LittleBloch {
    let scale = bloch_norm(f, config).value;
    let axes = config.axes();
    let mut radii: Vec<f64> = (1..=6).map(|k| 1.0 - 10f64.powi(-k)).filter(|&r| r < config.clip).collect();
    radii.push(config.clip);
    let profile: Vec<(f64, f64)> = radii
        .iter()
        .map(|&r| {
            let v = axes.iter().map(|&i| bloch_profile(f, i, r, config.sup_angular)).fold(0.0, f64::max);
            (r, v)
        })
        .collect();
    let dilation: Vec<(f64, f64)> = [0.9, 0.99, 0.999]
        .iter()
        .map(|&r| {
            let diff = f.dilate(r).add(&f.mul_right(Quaternion::real(-1.0)));
            (r, bloch_norm(&diff, config).value)
        })
        .collect();
    let threshold = tol * scale;
    let last_small = |v: &[(f64, f64)]| v.last().is_none_or(|p| p.1 <= threshold);
    let decreasing = |v: &[(f64, f64)]| v.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-9) + 1e-300);
    let little = last_small(&profile) && last_small(&dilation) && decreasing(&dilation);
    LittleBloch { little, profile, dilation }
}
