//! Integration over slice disks and supremum estimation.
//!
//! Every measure handled here has the form `c (1 − |z|²)^β dA` with `dA` the
//! normalized area. After `s = |z|²` the area element becomes `ds dθ / 2π`, so
//! the radial factor is a Jacobi weight `(1 − s)^κ` on `[0, 1]`. Integrable
//! weights (`κ > −1`) are absorbed exactly by Gauss–Jacobi nodes; the rest are
//! clipped at `|z| ≤ r_max` and integrated after `u = −ln(1 − s)`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quat::{sphere_sample, Quaternion, UnitImaginary};

/// Default clip radius for non-integrable weights and for suprema.
pub const DEFAULT_CLIP: f64 = 1.0 - 1e-6;

/// Measures on a slice disk `B_i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    /// Normalized area, total mass 1.
    Area,
    /// `(α + 1)(1 − |z|²)^α dA`, total mass 1.
    Weighted(f64),
    /// `dA/(1 − |z|²)²`, infinite mass.
    Invariant,
    /// Plain Lebesgue area, total mass π.
    Plain,
}

impl Measure {
    /// `(c, β)` with the measure equal to `c (1 − |z|²)^β dA`.
    fn density(self) -> (f64, f64) {
        match self {
            Measure::Area => (1.0, 0.0),
            Measure::Weighted(a) => (a + 1.0, a),
            Measure::Invariant => (1.0, -2.0),
            Measure::Plain => (PI, 0.0),
        }
    }
}

/// Tensor rule: `radial` Gauss nodes in `s = r²` times `angular` uniform nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskRule {
    pub radial: usize,
    pub angular: usize,
    /// Clip radius used when the radial weight is not integrable.
    pub clip: f64,
    /// Clip even integrable weights (for integrands supported inside `clip`).
    #[serde(default)]
    pub force_clip: bool,
}

impl Default for DiskRule {
    fn default() -> Self {
        Self::new(64, 128)
    }
}

impl DiskRule {
    pub const fn new(radial: usize, angular: usize) -> Self {
        Self { radial, angular, clip: DEFAULT_CLIP, force_clip: false }
    }

    pub fn with_clip(mut self, clip: f64) -> Self {
        self.clip = clip;
        self
    }

    pub fn clipped(mut self, clip: f64) -> Self {
        self.clip = clip;
        self.force_clip = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial == 0 || self.angular == 0 {
            return Err(domain("quadrature orders must be positive"));
        }
        if !(self.clip > 0.0 && self.clip <= 1.0) {
            return Err(domain("clip radius must lie in (0, 1]"));
        }
        Ok(())
    }

    /// Nodes `(z, weight)` for `∫ g (1 − |z|²)^γ dμ`; `gamma` is extra decay the
    /// caller wants absorbed into the weight.
    pub fn nodes(&self, measure: Measure, gamma: f64) -> Result<Arc<Vec<(Complex64, f64)>>> {
        self.validate()?;
        let (c, beta) = measure.density();
        if let Measure::Weighted(a) = measure {
            if !(a > -1.0) {
                return Err(domain("weight exponent must exceed -1"));
            }
        }
        let kappa = beta + gamma;
        let radial = radial_rule(self.radial, kappa, self.clip, self.force_clip)?;
        let mut out = Vec::with_capacity(radial.len() * self.angular);
        let dtheta = 2.0 * PI / self.angular as f64;
        let w_theta = 1.0 / self.angular as f64;
        for &(s, w) in radial.iter() {
            let r = s.sqrt();
            for t in 0..self.angular {
                let theta = dtheta * t as f64;
                out.push((Complex64::from_polar(r, theta), c * w * w_theta));
            }
        }
        Ok(Arc::new(out))
    }
}

/// Values that can be summed by the quadrature.
pub trait Accumulate: Copy + Send + Sync {
    fn zero() -> Self;
    fn add_scaled(self, v: Self, w: f64) -> Self;
    fn finite(&self) -> bool;
}

impl Accumulate for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add_scaled(self, v: Self, w: f64) -> Self {
        self + v * w
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
}

impl Accumulate for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_scaled(self, v: Self, w: f64) -> Self {
        self + v * w
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
}

impl Accumulate for Quaternion {
    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn add_scaled(self, v: Self, w: f64) -> Self {
        self + v * w
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
}

/// `∫_{B_i} g dμ` with `g` given in slice coordinates.
pub fn integrate_disk<T: Accumulate>(
    g: impl Fn(Complex64) -> T,
    rule: &DiskRule,
    measure: Measure,
) -> Result<T> {
    integrate_disk_weighted(g, rule, measure, 0.0)
}

/// `∫_{B_i} g(z) (1 − |z|²)^γ dμ(z)`, absorbing the extra factor into the rule.
pub fn integrate_disk_weighted<T: Accumulate>(
    g: impl Fn(Complex64) -> T,
    rule: &DiskRule,
    measure: Measure,
    gamma: f64,
) -> Result<T> {
    let nodes = rule.nodes(measure, gamma)?;
    let mut acc = T::zero();
    for &(z, w) in nodes.iter() {
        let v = g(z);
        if !v.finite() {
            return Err(Error::NonFinite { re: z.re, im: z.im });
        }
        acc = acc.add_scaled(v, w);
    }
    Ok(acc)
}

/// Trapezoid mean `(1/2π) ∫ g(r e^{iθ}) dθ`.
pub fn circle_mean(g: impl Fn(Complex64) -> f64, r: f64, angular: usize) -> f64 {
    let dtheta = 2.0 * PI / angular as f64;
    (0..angular)
        .map(|t| g(Complex64::from_polar(r, dtheta * t as f64)))
        .sum::<f64>()
        / angular as f64
}

type RadialRule = Arc<Vec<(f64, f64)>>;

/// `(order, κ bits, clip bits or 0, Jacobi rule)`.
type RuleKey = (usize, u64, u64, bool);

fn rule_cache() -> &'static Mutex<HashMap<RuleKey, RadialRule>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, RadialRule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Nodes and weights in `s ∈ [0, 1]` for `∫₀¹ h(s) (1 − s)^κ ds`.
fn radial_rule(n: usize, kappa: f64, clip: f64, force_clip: bool) -> Result<RadialRule> {
    let exact = kappa > -1.0 && !force_clip;
    let key = (n, kappa.to_bits(), if exact { 0 } else { clip.to_bits() }, exact);
    if let Some(r) = rule_cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let rule = if exact {
        let (x, w) = gauss_jacobi(n, kappa, 0.0);
        // map [−1, 1] → [0, 1]; weights renormalized to the mass 1/(κ + 1)
        let mass = 1.0 / (kappa + 1.0);
        x.iter().zip(&w).map(|(&x, &w)| ((1.0 + x) / 2.0, w * mass)).collect::<Vec<_>>()
    } else {
        if clip >= 1.0 {
            return Err(domain(format!(
                "weight (1-|z|^2)^{kappa} is not integrable; a clip radius below 1 is required"
            )));
        }
        let smax = clip * clip;
        let upper = -(1.0 - smax).ln();
        let (x, w) = gauss_jacobi(n, 0.0, 0.0);
        x.iter()
            .zip(&w)
            .map(|(&x, &w)| {
                let u = upper * (1.0 + x) / 2.0;
                // ds = e^{−u} du and (1 − s)^κ = e^{−κu}; w sums to 1 on [−1, 1]
                let s = -(-u).exp_m1();
                (s, w * upper * (-(kappa + 1.0) * u).exp())
            })
            .collect()
    };
    let rule = Arc::new(rule);
    rule_cache()
        .lock()
        .expect("rule cache poisoned")
        .insert(key, rule.clone());
    Ok(rule)
}

/// Gauss–Jacobi nodes on `[−1, 1]` for the weight `(1 − x)^a (1 + x)^b`,
/// with weights normalized to sum to one (Golub–Welsch).
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let kf = k as f64;
        let d = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        diag.push(d);
        if k + 1 < n {
            let m = kf + 1.0;
            let beta = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                let t = 2.0 * m + ab;
                4.0 * m * (m + a) * (m + b) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0))
            };
            off.push(beta.sqrt());
        }
    }
    let jac = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            diag[r]
        } else if r + 1 == c {
            off[r]
        } else if c + 1 == r {
            off[c]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    pairs.into_iter().map(|(x, w)| (x, w / total)).unzip()
}

/// Grid used by [`sup_disk`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupGrid {
    pub radial: usize,
    pub angular: usize,
    pub clip: f64,
}

impl Default for SupGrid {
    fn default() -> Self {
        Self { radial: 256, angular: 256, clip: DEFAULT_CLIP }
    }
}

impl SupGrid {
    pub fn new(radial: usize, angular: usize) -> Self {
        Self { radial, angular, ..Self::default() }
    }

    /// Radii: `0`, half the rest uniform up to `0.9`, half geometric toward `clip`.
    pub fn radii(&self) -> Vec<f64> {
        let n = self.radial.max(4);
        let uniform = n / 2;
        let geometric = n - uniform - 1;
        let mut r = Vec::with_capacity(n);
        r.push(0.0);
        let inner = 0.9f64.min(self.clip);
        for k in 1..=uniform {
            r.push(inner * k as f64 / uniform as f64);
        }
        if self.clip > inner {
            let (g0, g1) = (1.0 - inner, 1.0 - self.clip);
            for k in 1..=geometric {
                let t = k as f64 / geometric as f64;
                r.push(1.0 - g0 * (g1 / g0).powf(t));
            }
        }
        r
    }
}

/// Lower estimate of `sup_{|z| ≤ clip} g(z)`.
pub fn sup_disk(g: impl Fn(Complex64) -> f64, grid: &SupGrid) -> f64 {
    sup_disk_many(|z, out| out[0] = g(z), 1, grid)[0]
}

/// Simultaneous suprema of `k` quantities written by `g(z, out)`.
///
/// Each quantity gets its own local refinement around its best grid node.
pub fn sup_disk_many(g: impl Fn(Complex64, &mut [f64]), k: usize, grid: &SupGrid) -> Vec<f64> {
    let radii = grid.radii();
    let nt = grid.angular.max(1);
    let dtheta = 2.0 * PI / nt as f64;
    let mut best = vec![(f64::NEG_INFINITY, 0usize, 0usize); k];
    let mut buf = vec![0.0; k];
    for (ri, &r) in radii.iter().enumerate() {
        let count = if r == 0.0 { 1 } else { nt };
        for t in 0..count {
            g(Complex64::from_polar(r, dtheta * t as f64), &mut buf);
            for (slot, &v) in best.iter_mut().zip(&buf) {
                if v > slot.0 {
                    *slot = (v, ri, t);
                }
            }
        }
    }
    best.iter()
        .enumerate()
        .map(|(q, &(v, ri, t))| {
            if !v.is_finite() {
                return v;
            }
            let lo = radii[ri.saturating_sub(1)];
            let hi = radii[(ri + 1).min(radii.len() - 1)];
            let theta = dtheta * t as f64;
            let mut eval = |r: f64, th: f64| {
                g(Complex64::from_polar(r, th), &mut buf);
                buf[q]
            };
            v.max(refine(&mut eval, (lo, hi), theta, dtheta))
        })
        .collect()
}

/// Alternating golden-section searches in `r` and `θ`.
fn refine(eval: &mut impl FnMut(f64, f64) -> f64, r_range: (f64, f64), theta0: f64, dtheta: f64) -> f64 {
    let mut th = theta0;
    let mut best = f64::NEG_INFINITY;
    for _ in 0..3 {
        let (rv, r) = golden_max(|x| eval(x, th), r_range.0, r_range.1, 40);
        best = best.max(rv);
        let (tv, tb) = golden_max(|x| eval(r, x), th - dtheta, th + dtheta, 40);
        th = tb;
        best = best.max(tv);
    }
    best
}

fn golden_max(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (fc, c)
    } else {
        (fd, d)
    }
}

/// Maximum of `h` over `sphere_sample(m)`, with the per-axis values.
pub fn sup_sphere(h: impl Fn(UnitImaginary) -> f64, m: usize) -> (f64, Vec<(UnitImaginary, f64)>) {
    let values: Vec<_> = sphere_sample(m).into_iter().map(|i| (i, h(i))).collect();
    let sup = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    (sup, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn legendre_nodes() {
        let (x, w) = gauss_jacobi(3, 0.0, 0.0);
        let r = (0.6f64).sqrt();
        assert!((x[0] + r).abs() < 1e-14 && x[1].abs() < 1e-14 && (x[2] - r).abs() < 1e-14);
        assert!((w[0] - 5.0 / 18.0).abs() < 1e-14 && (w[1] - 8.0 / 18.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_moments() {
        // ∫₀¹ s^m (1 − s)^κ ds = B(m + 1, κ + 1)
        for kappa in [-0.5, 0.0, 1.0, 2.5] {
            let rule = radial_rule(12, kappa, DEFAULT_CLIP, false).unwrap();
            let mut beta = 1.0 / (kappa + 1.0);
            for m in 0..20 {
                let got: f64 = rule.iter().map(|(s, w)| w * s.powi(m)).sum();
                assert!(rel(got, beta) < 1e-13, "kappa {kappa} m {m}: {got} vs {beta}");
                beta *= (m as f64 + 1.0) / (m as f64 + kappa + 2.0);
            }
        }
    }

    #[test]
    fn measure_masses() {
        let rule = DiskRule::new(64, 128);
        for a in [-0.5, 0.0, 1.0, 2.5] {
            let m = integrate_disk(|_| 1.0, &rule, Measure::Weighted(a)).unwrap();
            assert!(rel(m, 1.0) < 1e-13);
            let raw = integrate_disk(|_| 1.0, &rule, Measure::Area)
                .and_then(|_| integrate_disk_weighted(|_| 1.0, &rule, Measure::Area, a))
                .unwrap();
            assert!(rel(raw, 1.0 / (a + 1.0)) < 1e-12);
        }
        let half = integrate_disk(|z| z.norm_sqr(), &rule, Measure::Area).unwrap();
        assert!(rel(half, 0.5) < 1e-13);
        let pi = integrate_disk(|_| 1.0, &rule, Measure::Plain).unwrap();
        assert!(rel(pi, PI) < 1e-13);
    }

    #[test]
    fn clipped_invariant_measure() {
        // ∫_{|z|<ρ} dλ = ρ²/(1 − ρ²)
        let rho: f64 = 0.9;
        let rule = DiskRule::new(48, 8).clipped(rho);
        let v = integrate_disk(|_| 1.0, &rule, Measure::Invariant).unwrap();
        assert!(rel(v, rho * rho / (1.0 - rho * rho)) < 1e-12);
        let err = DiskRule::new(8, 8).with_clip(1.0).nodes(Measure::Invariant, 0.0);
        assert!(err.is_err());
    }

    #[test]
    fn non_finite_reports_node() {
        let rule = DiskRule::new(4, 4);
        let err = integrate_disk(|z| if z.re > 0.5 { f64::NAN } else { 1.0 }, &rule, Measure::Area);
        assert!(matches!(err, Err(Error::NonFinite { re, .. }) if re > 0.5));
    }

    #[test]
    fn sup_examples() {
        let grid = SupGrid::default();
        assert!((sup_disk(|z| 1.0 - z.norm_sqr(), &grid) - 1.0).abs() < 1e-15);
        assert!(sup_disk(|z| z.norm(), &grid) >= 1.0 - 1e-6);
        let target = 4.0 * 3f64.sqrt() / 9.0;
        let v = sup_disk(|z| (1.0 - z.norm_sqr()) * 2.0 * z.norm(), &grid);
        assert!(v <= target + 1e-15 && target - v < 1e-12, "{v}");
        // an off-grid angular peak
        let v = sup_disk(|z| 1.0 - (z - Complex64::from_polar(0.5, 0.0123)).norm_sqr(), &grid);
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sup_sphere_examples() {
        assert_eq!(sup_sphere(|_| 2.5, 64).0, 2.5);
        let (v, per) = sup_sphere(|i| i.vector()[0], 1);
        assert_eq!((v, per.len()), (1.0, 1));
    }
}
