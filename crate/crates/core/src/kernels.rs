//! Weighted Bergman kernel, the Bergman-type projection, Besov atomic
//! synthesis and the embedding operator into `Lᵖ(dλ_i)`.

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_disk_weighted, DiskRule, Measure};
use crate::quat::{decompose, Quaternion, UnitImaginary};
use crate::series::{represent_right, SlicePowerSeries};
use crate::slice::{inverse_power_jet, kernel_atom, SliceFunction, SliceRegular};
use crate::spaces::{CheckReport, CheckTracker};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(domain("alpha must exceed -1"))
    }
}

/// `K_α(·, w)` as a slice regular function: on `C(i)` it is
/// `(1 − z w̄)^{−(2+α)}` (principal branch), extended in `z`.
pub fn kernel_function(w: Complex64, alpha: f64, i: UnitImaginary) -> Result<SliceFunction> {
    check_alpha(alpha)?;
    if !(w.norm() < 1.0) {
        return Err(Error::OutsideBall(i.embed(w)));
    }
    let s = 2.0 + alpha;
    Ok(SliceFunction::from_holomorphic(i, move |z, order| inverse_power_jet(z, w.conj(), s, order)))
}

/// `K_α(q, w)` for `q` anywhere in the ball and `w ∈ B_i`.
pub fn bergman_kernel(q: Quaternion, w: Complex64, alpha: f64, i: UnitImaginary) -> Result<Quaternion> {
    kernel_function(w, alpha, i)?.try_eval(q)
}

/// The same kernel value computed as the right slice regular extension in
/// the variable `w̄`, starting from the slice of `q`. Agreement with
/// [`bergman_kernel`] is probed, not assumed.
pub fn bergman_kernel_wbar(q: Quaternion, w: Complex64, alpha: f64, i: UnitImaginary) -> Result<Quaternion> {
    check_alpha(alpha)?;
    if !(q.norm() < 1.0) {
        return Err(Error::OutsideBall(q));
    }
    let c = decompose(q);
    let (j, zq) = (c.axis, c.complex());
    let s = 2.0 + alpha;
    // v ↦ (1 − q v)^{−s} is a complex function on C(j) when q ∈ C(j)
    let g = |v: Complex64| j.embed(inverse_power_jet(zq, v, s, 0)[0]);
    let v = w.conj();
    Ok(represent_right(g(v.conj()), g(v), j, i))
}

/// `|K(q, w) − K_w̄(q, w)|` over the given pairs; zero up to rounding when the
/// two extension recipes agree.
pub fn wbar_consistency_probe(pairs: &[(Quaternion, Complex64)], alpha: f64, i: UnitImaginary) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(q, w) in pairs {
        let a = bergman_kernel(q, w, alpha, i)?;
        let b = bergman_kernel_wbar(q, w, alpha, i)?;
        worst = worst.max((a - b).norm());
    }
    Ok(worst)
}

/// `𝐊_{α,i}[h](q) = ∫_{B_i} K_α(q, w) h(w) dA_{α,i}(w)` realized on the nodes
/// of `rule`; `h` is sampled once.
pub fn bergman_project(
    h: impl Fn(Complex64) -> Quaternion,
    alpha: f64,
    i: UnitImaginary,
    rule: &DiskRule,
) -> Result<SliceFunction> {
    check_alpha(alpha)?;
    let nodes = rule.nodes(Measure::Weighted(alpha), 0.0)?;
    let samples: Vec<(Complex64, f64, Quaternion)> = nodes
        .iter()
        .map(|&(w, wt)| {
            let v = h(w);
            if v.is_finite() {
                Ok((w.conj(), wt, v))
            } else {
                Err(Error::NonFinite { re: w.re, im: w.im })
            }
        })
        .collect::<Result<_>>()?;
    let samples = Arc::new(samples);
    let s = 2.0 + alpha;
    Ok(SliceFunction::new(i, move |z, order| {
        let mut out = vec![Quaternion::ZERO; order + 1];
        for &(wb, wt, v) in samples.iter() {
            for (slot, k) in out.iter_mut().zip(inverse_power_jet(z, wb, s, order)) {
                *slot += i.embed(k * wt) * v;
            }
        }
        out
    }))
}

/// Compares `𝐊_{α,i}[f]` with `f` at on-slice points (coordinates on `C(i)`)
/// and at arbitrary points of the ball.
pub fn reproducing_check(
    f: &SlicePowerSeries,
    alpha: f64,
    i: UnitImaginary,
    on_slice: &[Complex64],
    off_slice: &[Quaternion],
    rule: &DiskRule,
    tol: f64,
) -> Result<CheckReport> {
    let g = f.restrict(i);
    let proj = bergman_project(|w| g(w, 0)[0], alpha, i, rule)?;
    let mut t = CheckTracker::new(format!("reproducing_alpha{alpha}"), tol);
    for &z in on_slice {
        let d = (proj.on_slice(z, 0)[0] - g(z, 0)[0]).norm();
        t.observe(d, || format!("z = {z} on axis {i}"));
    }
    for &q in off_slice {
        let d = (proj.eval(q) - f.eval(q)).norm();
        t.observe(d, || format!("q = {q}"));
    }
    Ok(t.finish())
}

/// `Σ P_i[((1 − |aₖ|²)/(1 − z āₖ))^b] dₖ`; the atoms must lie on `C(i)`.
pub fn atomic_synthesis(
    atoms: &[Quaternion],
    coefficients: &[Quaternion],
    b: f64,
    i: UnitImaginary,
) -> Result<SliceFunction> {
    if atoms.len() != coefficients.len() {
        return Err(domain("one coefficient per atom is required"));
    }
    let mut total = SliceFunction::zero(i);
    for (&a, &d) in atoms.iter().zip(coefficients) {
        if !(a.norm() < 1.0) {
            return Err(Error::OutsideBall(a));
        }
        if !i.contains(a, 1e-12) {
            return Err(Error::NotOnSlice);
        }
        total = total.sum(&kernel_atom(i, i.coordinate(a), b)?.mul_right(d));
    }
    Ok(total)
}

/// Smallest admissible atom exponent for target `p`: `b > max(0, (p − 1)/p)`.
pub fn atom_exponent_admissible(b: f64, p: f64) -> bool {
    b > 0f64.max((p - 1.0) / p)
}

/// `𝐓f(z) = (1 − |z|²)^t ∫ (1 − |w|²)^α (1 − z w̄)^{−(2+t+α)} f(w) dA_i(w)`.
#[derive(Clone)]
pub struct EmbeddingOperator {
    t: f64,
    s: f64,
    samples: Arc<Vec<(Complex64, f64, Quaternion)>>,
}

impl EmbeddingOperator {
    pub fn new<F: SliceRegular + ?Sized>(
        f: &F,
        alpha: f64,
        t: f64,
        i: UnitImaginary,
        rule: &DiskRule,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        let g = f.restrict(i);
        let nodes = rule.nodes(Measure::Area, alpha)?;
        let samples = nodes.iter().map(|&(w, wt)| (w.conj(), wt, g(w, 0)[0])).collect();
        Ok(Self { t, s: 2.0 + t + alpha, samples: Arc::new(samples) })
    }

    /// The integral without the `(1 − |z|²)^t` factor; takes values in the
    /// span of the sampled values with `C(i)` coefficients.
    pub fn inner(&self, z: Complex64, i: UnitImaginary) -> Quaternion {
        self.samples
            .iter()
            .map(|&(wb, wt, v)| i.embed(inverse_power_jet(z, wb, self.s, 0)[0] * wt) * v)
            .sum()
    }

    pub fn apply(&self, z: Complex64, i: UnitImaginary) -> Quaternion {
        self.inner(z, i) * (1.0 - z.norm_sqr()).powf(self.t)
    }
}

/// `‖𝐓f‖_{Lᵖ(dλ_i)}`; requires `p ≥ 1` and `p t > 1`.
#[allow(clippy::too_many_arguments)]
pub fn embedding_norm_probe<F: SliceRegular + ?Sized>(
    f: &F,
    alpha: f64,
    t: f64,
    p: f64,
    i: UnitImaginary,
    inner_rule: &DiskRule,
    outer_rule: &DiskRule,
) -> Result<f64> {
    if !(p >= 1.0) || !(p * t > 1.0) {
        return Err(domain("the embedding needs p >= 1 and p*t > 1"));
    }
    let op = EmbeddingOperator::new(f, alpha, t, i, inner_rule)?;
    // |𝐓f|ᵖ dλ = |inner|ᵖ (1 − |z|²)^{pt − 2} dA
    let v = integrate_disk_weighted(|z| op.inner(z, i).norm().powf(p), outer_rule, Measure::Area, p * t - 2.0)?;
    Ok(v.powf(1.0 / p))
}

/// Closed form of `𝐓(qⁿ)(z)`: `(1 − |z|²)^t zⁿ (2+t+α)ₙ/n! · B(n + 1, α + 1)`.
pub fn embedding_monomial(n: usize, alpha: f64, t: f64, z: Complex64) -> Complex64 {
    let s = 2.0 + t + alpha;
    let mut coef = 1.0;
    let mut beta = 1.0 / (alpha + 1.0);
    for k in 0..n {
        coef *= (s + k as f64) / (k as f64 + 1.0);
        beta *= (k as f64 + 1.0) / (k as f64 + alpha + 2.0);
    }
    z.powu(n as u32) * (coef * beta * (1.0 - z.norm_sqr()).powf(t))
}

/// Smallest eigenvalue of the Gram matrix of `{𝐓(qⁿ) : n < count}` sampled on
/// `grid`; positive means the family stays linearly independent after `𝐓`.
pub fn embedding_gram_min_eigenvalue(
    count: usize,
    alpha: f64,
    t: f64,
    i: UnitImaginary,
    grid: &[Complex64],
    rule: &DiskRule,
) -> Result<f64> {
    let columns = (0..count)
        .map(|n| {
            let op = EmbeddingOperator::new(&SlicePowerSeries::monomial(n, Quaternion::ONE), alpha, t, i, rule)?;
            Ok(grid.iter().flat_map(|&z| op.apply(z, i).to_array()).collect::<Vec<f64>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let gram = DMatrix::from_fn(count, count, |a, b| {
        columns[a].iter().zip(&columns[b]).map(|(x, y)| x * y).sum::<f64>()
    });
    let eig = SymmetricEigen::new(gram);
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}
