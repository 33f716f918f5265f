//! Besov spaces `𝓑_p` and the space `𝓑₁`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CheckReport, CheckTracker, Config, NormReport};
use crate::error::{domain, Result};
use crate::quadrature::{gauss_jacobi, integrate_disk_weighted, DiskRule, Measure};
use crate::quat::{Quaternion, UnitImaginary};
use crate::slice::{compose_i, MoebiusMap, SliceFunction, SliceRegular};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesovParams {
    pub p: f64,
    /// Derivative order; `n·p > 1`.
    pub n: usize,
}

impl BesovParams {
    pub fn new(p: f64, n: usize) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(domain("p must be positive"));
        }
        if !(n as f64 * p > 1.0) {
            return Err(domain(format!("need n*p > 1, got n = {n}, p = {p}")));
        }
        Ok(Self { p, n })
    }
}

/// `∫_{B_i} (1 − |z|²)^{np} |∂ⁿf|ᵖ dλ_i`.
pub fn besov_derivative_integral<F: SliceRegular + ?Sized>(
    f: &F,
    params: BesovParams,
    i: UnitImaginary,
    rule: &DiskRule,
) -> Result<f64> {
    let BesovParams { p, n } = BesovParams::new(params.p, params.n)?;
    let g = f.restrict(i);
    // dλ = dA/(1 − |z|²)², so the net weight (1 − |z|²)^{np − 2} is integrable
    integrate_disk_weighted(|z| g(z, n)[n].norm().powf(p), rule, Measure::Area, n as f64 * p - 2.0)
}

/// `ρ_{p,i}(f) = [∫(1 − |z|²)ᵖ|∂f|ᵖ dλ_i]^{1/p}` for `p > 1`.
pub fn besov_seminorm<F: SliceRegular + ?Sized>(f: &F, p: f64, i: UnitImaginary, config: &Config) -> Result<f64> {
    if !(p > 1.0) {
        return Err(domain("the first-derivative seminorm needs p > 1"));
    }
    Ok(besov_derivative_integral(f, BesovParams::new(p, 1)?, i, &config.rule())?.powf(1.0 / p))
}

/// `‖f‖_{𝓑_p} = |f(0)| + sup_i ρ_{p,i}(f)` over the sampled axes, `p > 1`.
pub fn besov_norm<F: SliceRegular + ?Sized>(f: &F, p: f64, config: &Config) -> Result<NormReport> {
    let f0 = f.eval(Quaternion::ZERO).norm();
    let per_axis = config
        .axes()
        .into_iter()
        .map(|i| Ok((i, f0 + besov_seminorm(f, p, i, config)?)))
        .collect::<Result<Vec<_>>>()?;
    let value = per_axis.iter().map(|v| v.1).fold(f0, f64::max);
    Ok(NormReport::new("besov", value, per_axis, config).with_param("p", p))
}

/// Deterministic points for the supremum over Möbius parameters: `0` followed
/// by a Vogel spiral filling `|a| ≤ radius`.
pub fn a_grid(count: usize, radius: f64) -> Vec<Complex64> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            if k == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let r = radius * (k as f64 / (count - 1).max(1) as f64).sqrt();
            Complex64::from_polar(r, golden * k as f64)
        })
        .collect()
}

/// `[∫(1 − |z|²)^{np}|∂ⁿ(f ∘_i T_a)|ᵖ dλ_i]^{1/p}` for one `a ∈ B_i`.
pub fn besov_moebius_term(
    f: Arc<dyn SliceRegular>,
    params: BesovParams,
    i: UnitImaginary,
    a: Complex64,
    rule: &DiskRule,
) -> Result<f64> {
    let t = MoebiusMap::on_slice_point(i, a)?;
    let g = compose_i(f, &t, i)?;
    Ok(besov_derivative_integral(&g, params, i, rule)?.powf(1.0 / params.p))
}

/// `ρ_{p,n,i}(f) = sup|f| + sup_a [∫(1 − |z|²)^{np}|∂ⁿ(f ∘_i T_a)|ᵖ dλ_i]^{1/p}`,
/// the second supremum taken over `grid`.
pub fn besov_seminorm_small_p(
    f: Arc<dyn SliceRegular>,
    params: BesovParams,
    i: UnitImaginary,
    grid: &[Complex64],
    config: &Config,
) -> Result<f64> {
    let params = BesovParams::new(params.p, params.n)?;
    let sup = super::hinf_slice(f.as_ref(), i, config);
    let rule = config.rule();
    let mut best = 0.0f64;
    for &a in grid {
        best = best.max(besov_moebius_term(f.clone(), params, i, a, &rule)?);
    }
    Ok(sup + best)
}

/// Both integrals `∫(1 − |z|²)ᵏ|∂ᵏf|ᵖ dλ_i`, `k ∈ {n, m}`, must be finite.
pub fn besov_n_independence_check<F: SliceRegular + ?Sized>(
    f: &F,
    p: f64,
    n: usize,
    m: usize,
    i: UnitImaginary,
    config: &Config,
) -> Result<(CheckReport, f64, f64)> {
    let rule = config.rule();
    let a = besov_derivative_integral(f, BesovParams::new(p, n)?, i, &rule)?;
    let b = besov_derivative_integral(f, BesovParams::new(p, m)?, i, &rule)?;
    let mut t = CheckTracker::new(format!("besov_n_independence_{n}_{m}"), 0.0);
    t.observe(if a.is_finite() && b.is_finite() { 0.0 } else { 1.0 }, || format!("I_{n} = {a}, I_{m} = {b}"));
    Ok((t.finish(), a, b))
}

/// `∫∫ |f(z) − f(w)|ᵖ / |1 − z w̄|^{2(2+α)} dA_{α,i}(z) dA_{α,i}(w)`.
pub fn besov_double_integral<F: SliceRegular + ?Sized>(
    f: &F,
    p: f64,
    alpha: f64,
    i: UnitImaginary,
    rule: &DiskRule,
) -> Result<f64> {
    if !(p > 1.0) || !(alpha > -1.0) {
        return Err(domain("the double integral needs p > 1 and alpha > -1"));
    }
    let g = f.restrict(i);
    let nodes = rule.nodes(Measure::Weighted(alpha), 0.0)?;
    let values: Vec<Quaternion> = nodes.iter().map(|&(z, _)| g(z, 0)[0]).collect();
    let e = 2.0 + alpha;
    let one = Complex64::new(1.0, 0.0);
    let mut total = 0.0;
    for (a, &(z, wz)) in nodes.iter().enumerate() {
        let mut row = 0.0;
        for (b, &(w, ww)) in nodes.iter().enumerate() {
            let d = (values[a] - values[b]).norm();
            if d == 0.0 {
                continue;
            }
            row += ww * d.powf(p) / (one - z * w.conj()).norm_sqr().powf(e);
        }
        total += wz * row;
    }
    Ok(total)
}

/// `∫₀¹∫₀^{2π} |∂²f(re^{iθ})| dθ dr` on `C(i)`, Gauss–Legendre in `r`.
pub fn second_derivative_polar_integral<F: SliceRegular + ?Sized>(
    f: &F,
    i: UnitImaginary,
    config: &Config,
) -> f64 {
    let g = f.restrict(i);
    let (x, w) = gauss_jacobi(config.radial, 0.0, 0.0);
    let dt = 2.0 * PI / config.angular as f64;
    x.iter()
        .zip(&w)
        .map(|(&x, &w)| {
            let r = (1.0 + x) / 2.0;
            let ring: f64 = (0..config.angular)
                .map(|t| g(Complex64::from_polar(r, dt * t as f64), 2)[2].norm())
                .sum();
            w * ring * dt
        })
        .sum()
}

/// Lower bound `(1/16π)∫∫|∂²f| dθ dr` for `‖f − f(0) − z∂f(0)‖_{𝓑_{1,i}}`.
pub fn b1_lower_bound<F: SliceRegular + ?Sized>(f: &F, i: UnitImaginary, config: &Config) -> f64 {
    second_derivative_polar_integral(f, i, config) / (16.0 * PI)
}

/// Upper bound `(1/π)∫∫|∂²f| dθ dr` for the same quantity.
pub fn b1_upper_bound<F: SliceRegular + ?Sized>(f: &F, i: UnitImaginary, config: &Config) -> f64 {
    second_derivative_polar_integral(f, i, config) / PI
}

/// Cost `Σ|γₖ|` of a decomposition `γ₀ + Σ T_{aₖ}γₖ`.
pub fn b1_decomposition_cost(gammas: &[Quaternion]) -> f64 {
    gammas.iter().map(|g| g.norm()).sum()
}

/// `γ₀ + Σ T_{aₖ}(q)γₖ` with `aₖ` coordinates in `C(i)`.
pub fn b1_synthesis(
    atoms: &[Complex64],
    gammas: &[Quaternion],
    gamma0: Quaternion,
    i: UnitImaginary,
) -> Result<SliceFunction> {
    if atoms.len() != gammas.len() {
        return Err(domain("one coefficient per atom is required"));
    }
    let maps = atoms
        .iter()
        .map(|&a| MoebiusMap::on_slice_point(i, a))
        .collect::<Result<Vec<_>>>()?;
    let gammas = gammas.to_vec();
    Ok(SliceFunction::new(i, move |z, order| {
        let mut out = vec![Quaternion::ZERO; order + 1];
        out[0] = gamma0;
        for (t, &g) in maps.iter().zip(&gammas) {
            for (slot, d) in out.iter_mut().zip(t.derivatives(z, order)) {
                *slot += i.embed(d) * g;
            }
        }
        out
    }))
}

/// Cost of the decomposition of `f − f(0) − q∂f(0)` obtained from a
/// synthesized `f = γ₀ + Σ T_{aₖ}γₖ`:
/// `|Σ aₖγₖ| + Σ|γₖ| + |Σ(|aₖ|² − 1)γₖ|`, the last term carried by `T₀(q) = −q`.
pub fn b1_recentered_cost(atoms: &[Complex64], gammas: &[Quaternion], i: UnitImaginary) -> f64 {
    let shift: Quaternion = atoms.iter().zip(gammas).map(|(&a, &g)| i.embed(a) * g).sum();
    let slope: Quaternion = atoms.iter().zip(gammas).map(|(&a, &g)| g * (a.norm_sqr() - 1.0)).sum();
    shift.norm() + b1_decomposition_cost(gammas) + slope.norm()
}

/// Axis comparison: `(1/π)L_j ≤ 32 · (1/16π)L_i` with `L` the polar integral
/// of `|∂²f|`, for each pair.
pub fn b1_axis_check<F: SliceRegular + ?Sized>(
    f: &F,
    pairs: &[(UnitImaginary, UnitImaginary)],
    config: &Config,
    tol: f64,
) -> CheckReport {
    let mut t = CheckTracker::new("b1_axis_factor_32", 1.0 + tol);
    for &(i, j) in pairs {
        let lower_i = b1_lower_bound(f, i, config);
        let upper_j = b1_upper_bound(f, j, config);
        t.observe(super::report::ratio(upper_j, 32.0 * lower_i), || format!("i = {i}, j = {j}"));
    }
    t.finish()
}
