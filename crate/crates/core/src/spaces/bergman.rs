//! Weighted Bergman spaces `𝓐ᵖ_α` and the Bergman metric.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::ratio;
use super::{pseudo_hyperbolic, CheckReport, CheckTracker, Config, NormReport};
use crate::error::{domain, Result};
use crate::quadrature::{circle_mean, integrate_disk, DiskRule, Measure};
use crate::quat::{Quaternion, UnitImaginary};
use crate::series::SlicePowerSeries;
use crate::slice::SliceRegular;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BergmanParams {
    pub p: f64,
    pub alpha: f64,
}

impl BergmanParams {
    pub fn new(p: f64, alpha: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(domain("p must be positive"));
        }
        if !(alpha > -1.0 && alpha.is_finite()) {
            return Err(domain("alpha must exceed -1"));
        }
        Ok(Self { p, alpha })
    }

    /// Exponent `(2 + α)/p` of the point-evaluation bound.
    pub fn growth_exponent(&self) -> f64 {
        (2.0 + self.alpha) / self.p
    }

    /// `2^{max(p, 1)}`.
    pub fn slice_factor(&self) -> f64 {
        2f64.powf(self.p.max(1.0))
    }
}

/// `∫_{B_i} |f|ᵖ dA_{α,i}`.
pub fn bergman_integral<F: SliceRegular + ?Sized>(
    f: &F,
    params: BergmanParams,
    i: UnitImaginary,
    rule: &DiskRule,
) -> Result<f64> {
    let g = f.restrict(i);
    integrate_disk(|z| g(z, 0)[0].norm().powf(params.p), rule, Measure::Weighted(params.alpha))
}

/// `‖f‖_{p,α,i}`.
pub fn bergman_norm<F: SliceRegular + ?Sized>(
    f: &F,
    params: BergmanParams,
    i: UnitImaginary,
    config: &Config,
) -> Result<f64> {
    Ok(bergman_integral(f, params, i, &config.rule())?.powf(1.0 / params.p))
}

/// `‖f‖_{p,α} = sup_i ‖f‖_{p,α,i}` over the sampled axes.
pub fn bergman_norm_sup<F: SliceRegular + ?Sized>(
    f: &F,
    params: BergmanParams,
    config: &Config,
) -> Result<NormReport> {
    let per_axis = config
        .axes()
        .into_iter()
        .map(|i| Ok((i, bergman_norm(f, params, i, config)?)))
        .collect::<Result<Vec<_>>>()?;
    let value = per_axis.iter().map(|v| v.1).fold(0.0, f64::max);
    Ok(NormReport::new("bergman", value, per_axis, config)
        .with_param("p", params.p)
        .with_param("alpha", params.alpha))
}

/// `∫ |z|^{2n} dA_α = Π_{k=1}^n k/(k + α + 1)`.
pub fn bergman_moment(n: usize, alpha: f64) -> f64 {
    (1..=n).map(|k| k as f64 / (k as f64 + alpha + 1.0)).product()
}

/// Closed form of `‖f‖_{2,α,i}` for a series: `(Σ |aₙ|² c_{n,α})^{1/2}` on
/// every slice.
pub fn bergman_norm_p2_coeff(f: &SlicePowerSeries, alpha: f64) -> f64 {
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| a.norm_sqr() * bergman_moment(n, alpha))
        .sum::<f64>()
        .sqrt()
}

/// `∫_{B_j}|f|ᵖ dA_{α,j} ≤ 2^{max(p,1)} ∫_{B_i}|f|ᵖ dA_{α,i}` for each pair.
pub fn bergman_slice_sandwich_check<F: SliceRegular + ?Sized>(
    f: &F,
    params: BergmanParams,
    pairs: &[(UnitImaginary, UnitImaginary)],
    config: &Config,
    tol: f64,
) -> Result<CheckReport> {
    let rule = config.rule();
    let mut t = CheckTracker::new(format!("bergman_slice_sandwich_p{}", params.p), 1.0 + tol);
    for &(i, j) in pairs {
        let a = bergman_integral(f, params, i, &rule)?;
        let b = bergman_integral(f, params, j, &rule)?;
        t.observe(ratio(b, params.slice_factor() * a), || format!("i = {i}, j = {j}"));
    }
    Ok(t.finish())
}

/// Point evaluation: `|f(z)| ≤ 2‖f‖_{p,α,i}/(1 − |z|²)^{(2+α)/p}` at on-slice
/// points and `|f(q)| ≤ 4‖f‖_{p,α}/(1 − |q|²)^{(2+α)/p}` at arbitrary points.
#[allow(clippy::too_many_arguments)]
pub fn point_bound_check<F: SliceRegular + ?Sized>(
    f: &F,
    params: BergmanParams,
    i: UnitImaginary,
    slice_norm: f64,
    on_slice: &[Complex64],
    ball_norm: f64,
    off_slice: &[Quaternion],
    tol: f64,
) -> CheckReport {
    let mut t = CheckTracker::new(format!("bergman_point_bound_p{}_a{}", params.p, params.alpha), 1.0 + tol);
    let e = params.growth_exponent();
    for &z in on_slice {
        let lhs = f.slice_jet(z, i, 0)[0].norm();
        let rhs = 2.0 * slice_norm / (1.0 - z.norm_sqr()).powf(e);
        t.observe(ratio(lhs, rhs), || format!("z = {z} on axis {i}"));
    }
    for &q in off_slice {
        let lhs = f.eval(q).norm();
        let rhs = 4.0 * ball_norm / (1.0 - q.norm_sqr()).powf(e);
        t.observe(ratio(lhs, rhs), || format!("q = {q}"));
    }
    t.finish()
}

/// `|f(0)|ᵖ ≤ 2^{max(p,1)} (1/2π)∫|f(re^{iθ})|ᵖ dθ` for each radius.
pub fn mean_value_check<F: SliceRegular + ?Sized>(
    f: &F,
    p: f64,
    i: UnitImaginary,
    radii: &[f64],
    angular: usize,
    tol: f64,
) -> CheckReport {
    let g = f.restrict(i);
    let lhs = g(Complex64::new(0.0, 0.0), 0)[0].norm().powf(p);
    let factor = 2f64.powf(p.max(1.0));
    let mut t = CheckTracker::new(format!("circle_mean_bound_p{p}"), 1.0 + tol);
    for &r in radii {
        let mean = circle_mean(|z| g(z, 0)[0].norm().powf(p), r, angular);
        t.observe(ratio(lhs, factor * mean), || format!("r = {r} on axis {i}"));
    }
    t.finish()
}

/// `β_i(z, w) = ½ log((1 + ρ)/(1 − ρ))`.
pub fn bergman_metric(z: Complex64, w: Complex64) -> f64 {
    pseudo_hyperbolic(z, w).atanh()
}

/// Membership in `D_i(z, r) = {w : β_i(z, w) < r}`.
pub fn bergman_disk_indicator(z: Complex64, r: f64) -> impl Fn(Complex64) -> bool {
    move |w| bergman_metric(z, w) < r
}

/// `∫_{D_i(z,r)} |f|ᵖ dA_{α,i}` through `w = T_z(u)`, `|u| < tanh r`.
pub fn bergman_disk_integral<F: SliceRegular + ?Sized>(
    f: &F,
    params: BergmanParams,
    i: UnitImaginary,
    z: Complex64,
    r: f64,
    rule: &DiskRule,
) -> Result<f64> {
    let g = f.restrict(i);
    let one = Complex64::new(1.0, 0.0);
    let clipped = DiskRule { clip: r.tanh(), force_clip: true, ..*rule };
    integrate_disk(
        |u| {
            let den = one - z.conj() * u;
            let w = (z - u) / den;
            let jac = (1.0 - z.norm_sqr()).powi(2) / den.norm_sqr().powi(2);
            let weight = (params.alpha + 1.0) * (1.0 - w.norm_sqr()).powf(params.alpha);
            g(w, 0)[0].norm().powf(params.p) * weight * jac
        },
        &clipped,
        Measure::Area,
    )
}

/// Smallest `C` with `|f(z)|ᵖ ≤ 2^{max(p,1)} C (1 − |z|²)^{−2−α} ∫_{D_i(z,r)} |f|ᵖ dA_{α,i}`
/// over the given points. Reported, not asserted.
pub fn submean_probe<F: SliceRegular + ?Sized>(
    f: &F,
    params: BergmanParams,
    r: f64,
    i: UnitImaginary,
    points: &[Complex64],
    rule: &DiskRule,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for &z in points {
        let lhs = f.slice_jet(z, i, 0)[0].norm().powf(params.p);
        let integral = bergman_disk_integral(f, params, i, z, r, rule)?;
        let rhs = params.slice_factor() * (1.0 - z.norm_sqr()).powf(-2.0 - params.alpha) * integral;
        worst = worst.max(ratio(lhs, rhs));
    }
    Ok(worst)
}

/// `β_i` between two quaternions on a common slice.
pub fn bergman_metric_q(q: Quaternion, u: Quaternion) -> Result<f64> {
    let (_, z, w) = super::bloch::common_slice(q, u)?;
    Ok(bergman_metric(z, w))
}
