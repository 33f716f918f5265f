//! Evaluator-backed slice regular functions.
//!
//! A [`SliceFunction`] is known through the values and derivatives of its
//! restriction to one slice `C(I)`; values elsewhere in the ball are produced
//! by the representation formula. Möbius maps, compositions and kernel atoms
//! are built this way instead of being re-expanded into truncated series.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quat::{decompose, Quaternion, UnitImaginary};
use crate::series::{represent, split, SlicePowerSeries};

/// On-slice evaluator of a function together with its derivatives.
pub type SliceJet<'a> = Box<dyn Fn(Complex64, usize) -> Vec<Quaternion> + Send + Sync + 'a>;

type JetFn = dyn Fn(Complex64, usize) -> Vec<Quaternion> + Send + Sync;

/// A left slice regular function on the unit ball.
pub trait SliceRegular: Send + Sync {
    /// `∂ᵏ_{x₀} f` at `axis.embed(z)` for `k = 0..=order`.
    ///
    /// Points outside the ball yield NaN components.
    fn slice_jet(&self, z: Complex64, axis: UnitImaginary, order: usize) -> Vec<Quaternion>;

    /// The restriction to `C(axis)` as a reusable evaluator. Implementors may
    /// precompute per-slice data here.
    fn restrict(&self, axis: UnitImaginary) -> SliceJet<'_> {
        Box::new(move |z, order| self.slice_jet(z, axis, order))
    }

    fn eval(&self, q: Quaternion) -> Quaternion {
        self.jet(q, 0)[0]
    }

    /// `∂ᵏ_{x₀} f(q)` for `k = 0..=order` at an arbitrary point of the ball.
    fn jet(&self, q: Quaternion, order: usize) -> Vec<Quaternion> {
        let c = decompose(q);
        self.slice_jet(c.complex(), c.axis, order)
    }

    fn try_eval(&self, q: Quaternion) -> Result<Quaternion> {
        if !(q.norm() < 1.0) {
            return Err(Error::OutsideBall(q));
        }
        Ok(self.eval(q))
    }
}

fn nan_jet(order: usize) -> Vec<Quaternion> {
    vec![Quaternion::new(f64::NAN, f64::NAN, f64::NAN, f64::NAN); order + 1]
}

impl SliceRegular for SlicePowerSeries {
    fn slice_jet(&self, z: Complex64, axis: UnitImaginary, order: usize) -> Vec<Quaternion> {
        self.restrict(axis)(z, order)
    }

    fn restrict(&self, axis: UnitImaginary) -> SliceJet<'_> {
        let pair = split(self, axis);
        Box::new(move |z, order| {
            if !(z.norm_sqr() < 1.0) {
                return nan_jet(order);
            }
            pair.jet(z, order)
                .into_iter()
                .map(|(a, b)| pair.combine(a, b))
                .collect()
        })
    }
}

/// A slice regular function defined by its restriction to `C(axis)`.
#[derive(Clone)]
pub struct SliceFunction {
    axis: UnitImaginary,
    jet: Arc<JetFn>,
}

impl fmt::Debug for SliceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SliceFunction").field("axis", &self.axis).finish_non_exhaustive()
    }
}

impl SliceFunction {
    /// `jet(z, order)` must return `g⁽ᵏ⁾(z)`, `k = 0..=order`, for `z` in the
    /// unit disk of `C(axis)` (as a coordinate relative to `axis`).
    pub fn new(
        axis: UnitImaginary,
        jet: impl Fn(Complex64, usize) -> Vec<Quaternion> + Send + Sync + 'static,
    ) -> Self {
        Self { axis, jet: Arc::new(jet) }
    }

    /// A function whose restriction to `C(axis)` takes values in `C(axis)`.
    pub fn from_holomorphic(
        axis: UnitImaginary,
        g: impl Fn(Complex64, usize) -> Vec<Complex64> + Send + Sync + 'static,
    ) -> Self {
        Self::new(axis, move |z, order| g(z, order).into_iter().map(|c| axis.embed(c)).collect())
    }

    pub fn constant(axis: UnitImaginary, c: Quaternion) -> Self {
        Self::new(axis, move |_, order| {
            let mut v = vec![Quaternion::ZERO; order + 1];
            v[0] = c;
            v
        })
    }

    pub fn zero(axis: UnitImaginary) -> Self {
        Self::constant(axis, Quaternion::ZERO)
    }

    pub fn axis(&self) -> UnitImaginary {
        self.axis
    }

    /// The defining on-slice jet.
    pub fn on_slice(&self, z: Complex64, order: usize) -> Vec<Quaternion> {
        if !(z.norm_sqr() < 1.0) {
            return nan_jet(order);
        }
        (self.jet)(z, order)
    }

    /// Pointwise sum.
    pub fn sum(&self, other: &SliceFunction) -> SliceFunction {
        let (a, b) = (self.clone(), other.clone());
        let axis = self.axis;
        SliceFunction::new(axis, move |z, order| {
            let u = a.slice_jet(z, axis, order);
            let v = b.slice_jet(z, axis, order);
            u.into_iter().zip(v).map(|(x, y)| x + y).collect()
        })
    }

    /// `f·λ`.
    pub fn mul_right(&self, lambda: Quaternion) -> SliceFunction {
        let a = self.clone();
        SliceFunction::new(self.axis, move |z, order| {
            a.on_slice(z, order).into_iter().map(|v| v * lambda).collect()
        })
    }
}

impl SliceRegular for SliceFunction {
    fn slice_jet(&self, z: Complex64, axis: UnitImaginary, order: usize) -> Vec<Quaternion> {
        if !(z.norm_sqr() < 1.0) {
            return nan_jet(order);
        }
        let d = axis.dot(self.axis);
        if axis == self.axis {
            return self.on_slice(z, order);
        }
        if z.im == 0.0 {
            return self.on_slice(Complex64::new(z.re, 0.0), order);
        }
        if (d.abs() - 1.0).abs() < 1e-15 {
            let w = if d > 0.0 { z } else { z.conj() };
            return self.on_slice(w, order);
        }
        // ∂ₓ₀ commutes with the representation formula: apply it per order.
        let minus = self.on_slice(z.conj(), order);
        let plus = self.on_slice(z, order);
        minus
            .into_iter()
            .zip(plus)
            .map(|(m, p)| represent(m, p, self.axis, axis))
            .collect()
    }
}

/// Builds the slice regular extension of an on-slice evaluator.
pub fn slice_extension(
    axis: UnitImaginary,
    g: impl Fn(Complex64, usize) -> Vec<Quaternion> + Send + Sync + 'static,
) -> SliceFunction {
    SliceFunction::new(axis, g)
}

/// Rising factorial `(b)ₖ`.
pub fn pochhammer(b: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, m| acc * (b + m as f64))
}

/// `z ↦ (1 − z c)^{-s}` and its first `order` derivatives, principal branch.
///
/// Valid whenever `Re(1 − z c) > 0`, which holds for `|z|, |c| < 1`.
pub fn inverse_power_jet(z: Complex64, c: Complex64, s: f64, order: usize) -> Vec<Complex64> {
    let base = Complex64::new(1.0, 0.0) - z * c;
    let inv = base.inv();
    let lead = if s.fract() == 0.0 && s.abs() < 64.0 {
        inv.powi(s as i32)
    } else {
        base.powf(-s)
    };
    let mut out = Vec::with_capacity(order + 1);
    let mut term = lead;
    for k in 0..=order {
        out.push(term);
        // next: multiply by (s + k) c / (1 − z c)
        term = term * c * inv * (s + k as f64);
    }
    out
}

/// The atom `z ↦ ((1 − |a|²)/(1 − z ā))^b` on `C(axis)`, with `a` given as a
/// coordinate in that slice.
pub fn kernel_atom(axis: UnitImaginary, a: Complex64, b: f64) -> Result<SliceFunction> {
    if !(a.norm() < 1.0) {
        return Err(Error::OutsideBall(axis.embed(a)));
    }
    if !(b > 0.0) {
        return Err(crate::error::domain("atom exponent must be positive"));
    }
    let scale = (1.0 - a.norm_sqr()).powf(b);
    Ok(SliceFunction::from_holomorphic(axis, move |z, order| {
        inverse_power_jet(z, a.conj(), b, order).into_iter().map(|v| v * scale).collect()
    }))
}

/// The slice regular Möbius map `T_a(q) = (1 − qā)^{-*} * (a − q)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    a: Quaternion,
    axis: UnitImaginary,
    coord: Complex64,
}

impl MoebiusMap {
    /// `axis` is required when `a` is real and must span the slice of `a` otherwise.
    pub fn new(a: Quaternion, axis: Option<UnitImaginary>) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::OutsideBall(a));
        }
        let c = decompose(a);
        let axis = match (c.is_real, axis) {
            (true, None) => return Err(Error::MissingAxis),
            (true, Some(i)) => i,
            (false, None) => c.axis,
            (false, Some(i)) => {
                if !i.same_slice(c.axis, 1e-12) {
                    return Err(Error::AxisMismatch);
                }
                i
            }
        };
        Ok(Self { a, axis, coord: axis.coordinate(a) })
    }

    /// The map `T_a` for `a = axis.embed(a)`.
    pub fn on_slice_point(axis: UnitImaginary, a: Complex64) -> Result<Self> {
        Self::new(axis.embed(a), Some(axis))
    }

    pub fn parameter(&self) -> Quaternion {
        self.a
    }

    pub fn axis(&self) -> UnitImaginary {
        self.axis
    }

    /// `a` as a complex coordinate relative to `axis`.
    pub fn coordinate(&self) -> Complex64 {
        self.coord
    }

    /// The coordinate of `a` relative to `i`, which must be `±axis`.
    pub fn coordinate_on(&self, i: UnitImaginary) -> Result<Complex64> {
        if self.a.vector_norm() == 0.0 {
            return Ok(Complex64::new(self.a.w, 0.0));
        }
        if !i.same_slice(self.axis, 1e-12) {
            return Err(Error::AxisMismatch);
        }
        Ok(i.coordinate(self.a))
    }

    /// `T_a(z) = (a − z)/(1 − āz)` on `C(axis)`.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        moebius(self.coord, z)
    }

    /// `T_a⁽ᵏ⁾(z)` for `k = 0..=order`.
    pub fn derivatives(&self, z: Complex64, order: usize) -> Vec<Complex64> {
        moebius_jet(self.coord, z, order)
    }
}

fn moebius(a: Complex64, z: Complex64) -> Complex64 {
    (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// Values of `T_a` and its derivatives; `T⁽ᵏ⁾ = −(1−|a|²) k! āᵏ⁻¹ (1−āz)^{−(k+1)}`.
fn moebius_jet(a: Complex64, z: Complex64, order: usize) -> Vec<Complex64> {
    let ab = a.conj();
    let inv = (Complex64::new(1.0, 0.0) - ab * z).inv();
    let mut out = Vec::with_capacity(order + 1);
    out.push(moebius(a, z));
    // k = 1 term, then multiply by k ā /(1 − āz) for the next one
    let mut term = -(1.0 - a.norm_sqr()) * inv * inv;
    for k in 1..=order {
        out.push(term);
        term = term * ab * inv * (k as f64 + 1.0);
    }
    out
}

impl SliceRegular for MoebiusMap {
    fn slice_jet(&self, z: Complex64, axis: UnitImaginary, order: usize) -> Vec<Quaternion> {
        self.as_slice_function().slice_jet(z, axis, order)
    }
}

impl MoebiusMap {
    pub fn as_slice_function(&self) -> SliceFunction {
        let a = self.coord;
        SliceFunction::from_holomorphic(self.axis, move |z, order| moebius_jet(a, z, order))
    }
}

/// `f ∘_i T_a`: on `C(i)`, `f₁(T_a(z)) + f₂(T_a(z)) j`, extended off the slice.
///
/// Higher derivatives follow from composing the Taylor expansions of `T_a`
/// and of the split components of `f` at `T_a(z)`.
pub fn compose_i(
    f: Arc<dyn SliceRegular>,
    t: &MoebiusMap,
    i: UnitImaginary,
) -> Result<SliceFunction> {
    let a = t.coordinate_on(i)?;
    Ok(SliceFunction::new(i, move |z, order| {
        let inner = moebius_jet(a, z, order);
        let outer = f.slice_jet(inner[0], i, order);
        faa_di_bruno(i, &inner, &outer)
    }))
}

/// Derivatives of `g(z) = F(T(z))` from `T⁽ᵏ⁾(z)` and `F⁽ᵐ⁾(T(z))`.
///
/// The derivatives of `T` live in `C(i)` and act on the left, matching the
/// split `F = F₁ + F₂ j`.
fn faa_di_bruno(i: UnitImaginary, inner: &[Complex64], outer: &[Quaternion]) -> Vec<Quaternion> {
    let order = outer.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    // Taylor coefficients cₖ = T⁽ᵏ⁾/k! of T(z + h) − T(z)
    let mut c = vec![zero; order + 1];
    let mut fact = 1.0;
    for k in 1..=order {
        fact *= k as f64;
        c[k] = inner[k] / fact;
    }
    let mut out = vec![Quaternion::ZERO; order + 1];
    // power[n] = [hⁿ](Σ cₖ hᵏ)^m, updated in place for increasing m
    let mut power = vec![zero; order + 1];
    power[0] = Complex64::new(1.0, 0.0);
    let mut m_fact = 1.0;
    for (m, &fm) in outer.iter().enumerate() {
        if m > 0 {
            m_fact *= m as f64;
            let mut next = vec![zero; order + 1];
            for p in 0..order {
                for k in 1..=order - p {
                    next[p + k] += power[p] * c[k];
                }
            }
            power = next;
        }
        let mut n_fact = 1.0;
        for (n, slot) in out.iter_mut().enumerate() {
            if n > 0 {
                n_fact *= n as f64;
            }
            if power[n] != zero {
                *slot += i.embed(power[n] * (n_fact / m_fact)) * fm;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn moebius_fixed_values() {
        let a = Quaternion::new(0.2, 0.1, -0.3, 0.25);
        let t = MoebiusMap::new(a, None).unwrap();
        assert!(t.eval(Quaternion::ZERO).max_abs_diff(a) < 1e-15);
        assert!(t.eval(a).norm() < 1e-15);
        let i = t.axis();
        for z in [c(0.3, -0.2), c(-0.5, 0.6), c(0.0, 0.9)] {
            let back = t.apply(t.apply(z));
            assert!((back - z).norm() < 1e-14);
        }
        // off-slice values come from the representation formula; check T_a∘T_a = id there too
        let q = Quaternion::new(0.1, 0.5, 0.2, -0.1);
        let tq = t.eval(q);
        assert!(tq.norm() < 1.0);
        assert!(i.contains(t.eval(i.embed(c(0.1, 0.2))), 1e-14));
    }

    #[test]
    fn moebius_rejections() {
        assert_eq!(MoebiusMap::new(Quaternion::real(0.3), None), Err(Error::MissingAxis));
        assert!(matches!(MoebiusMap::new(Quaternion::real(1.0), Some(UnitImaginary::E1)), Err(Error::OutsideBall(_))));
        let a = Quaternion::new(0.1, 0.2, 0.0, 0.0);
        assert_eq!(MoebiusMap::new(a, Some(UnitImaginary::E2)), Err(Error::AxisMismatch));
        let neg = UnitImaginary::from_vector([-1.0, 0.0, 0.0]).unwrap();
        let t = MoebiusMap::new(a, Some(neg)).unwrap();
        assert_eq!(t.coordinate(), c(0.1, -0.2));
        assert_eq!(t.coordinate_on(UnitImaginary::E1).unwrap(), c(0.1, 0.2));
    }

    #[test]
    fn moebius_derivatives_match_finite_differences() {
        let t = MoebiusMap::on_slice_point(UnitImaginary::E3, c(0.3, -0.4)).unwrap();
        let z = c(0.2, 0.1);
        let d = t.derivatives(z, 3);
        let h = 1e-5;
        for k in 0..3 {
            let fd = (t.derivatives(z + h, k)[k] - t.derivatives(z - h, k)[k]) / (2.0 * h);
            assert!((fd - d[k + 1]).norm() < 1e-6 * (1.0 + d[k + 1].norm()), "order {k}");
        }
        // closed form of the first derivative
        let a = t.coordinate();
        let expect = (a.norm_sqr() - 1.0) / ((1.0 - a.conj() * z) * (1.0 - a.conj() * z));
        assert!((d[1] - expect).norm() < 1e-15);
    }

    #[test]
    fn composition_examples() {
        let sq: Arc<dyn SliceRegular> = Arc::new(SlicePowerSeries::monomial(2, Quaternion::ONE));
        let t0 = MoebiusMap::new(Quaternion::ZERO, Some(UnitImaginary::E1)).unwrap();
        let g = compose_i(sq.clone(), &t0, UnitImaginary::E1).unwrap();
        for q in [Quaternion::new(0.1, 0.2, 0.3, -0.4), Quaternion::new(-0.5, 0.0, 0.1, 0.0)] {
            assert!(g.eval(q).max_abs_diff(sq.eval(q)) < 1e-15);
        }

        let k = Quaternion::new(0.3, -1.0, 2.0, 0.5);
        let constant: Arc<dyn SliceRegular> = Arc::new(SlicePowerSeries::constant(k));
        let ta = MoebiusMap::on_slice_point(UnitImaginary::E2, c(0.4, 0.3)).unwrap();
        let g = compose_i(constant, &ta, UnitImaginary::E2).unwrap();
        assert!(g.eval(Quaternion::new(0.1, 0.1, 0.1, 0.1)).max_abs_diff(k) < 1e-15);

        let f = SlicePowerSeries::new(vec![
            Quaternion::new(0.5, 0.0, 1.0, 0.0),
            Quaternion::new(0.0, 1.0, -1.0, 0.5),
            Quaternion::new(0.25, 0.0, 0.0, 2.0),
        ]);
        let fa: Arc<dyn SliceRegular> = Arc::new(f.clone());
        let g = compose_i(fa, &ta, UnitImaginary::E2).unwrap();
        let a = ta.parameter();
        assert!(g.eval(a).max_abs_diff(f.eval(Quaternion::ZERO)) < 1e-14);
        assert!(g.eval(Quaternion::ZERO).max_abs_diff(f.eval(a)) < 1e-14);
    }

    #[test]
    fn composition_derivatives_match_finite_differences() {
        let f = SlicePowerSeries::new(vec![
            Quaternion::new(0.5, 0.0, 1.0, 0.0),
            Quaternion::new(0.0, 1.0, -1.0, 0.5),
            Quaternion::new(0.25, 0.0, 0.0, 2.0),
            Quaternion::new(-1.0, 0.3, 0.0, 0.1),
        ]);
        let i = UnitImaginary::from_vector([0.2, 0.5, -0.7]).unwrap();
        let t = MoebiusMap::on_slice_point(i, c(-0.3, 0.35)).unwrap();
        let g = compose_i(Arc::new(f), &t, i).unwrap();
        let z = c(0.15, -0.25);
        let jet = g.on_slice(z, 4);
        let h = 1e-4;
        for k in 0..4 {
            let fd = (g.on_slice(z + h, k)[k] - g.on_slice(z - h, k)[k]) * (0.5 / h);
            assert!(fd.max_abs_diff(jet[k + 1]) < 1e-6 * (1.0 + jet[k + 1].norm()), "order {k}");
        }
    }

    #[test]
    fn extension_examples() {
        let one = slice_extension(UnitImaginary::E1, |_, order| {
            let mut v = vec![Quaternion::ZERO; order + 1];
            v[0] = Quaternion::ONE;
            v
        });
        assert_eq!(one.eval(Quaternion::new(0.1, 0.2, 0.3, 0.4)), Quaternion::ONE);

        let id = SliceFunction::from_holomorphic(UnitImaginary::E1, |z, order| {
            let mut v = vec![c(0.0, 0.0); order + 1];
            v[0] = z;
            if order > 0 {
                v[1] = c(1.0, 0.0);
            }
            v
        });
        let q = Quaternion::new(0.1, -0.2, 0.3, 0.4);
        assert!(id.eval(q).max_abs_diff(q) < 1e-15);

        let sq = SliceFunction::from_holomorphic(UnitImaginary::E1, |z, order| {
            [z * z, z * 2.0, c(2.0, 0.0)].into_iter().chain(std::iter::repeat(c(0.0, 0.0))).take(order + 1).collect()
        });
        let v = sq.eval(Quaternion::E2 * 0.5);
        assert!(v.max_abs_diff(Quaternion::real(-0.25)) < 1e-15);
        assert!(sq.try_eval(Quaternion::E2 * 1.5).is_err());
        assert!(sq.eval(Quaternion::E2 * 1.5).w.is_nan());
    }

    #[test]
    fn atoms() {
        let unit = kernel_atom(UnitImaginary::E1, c(0.0, 0.0), 1.0).unwrap();
        assert_eq!(unit.eval(Quaternion::new(0.3, 0.1, 0.2, 0.0)), Quaternion::ONE);
        assert!(kernel_atom(UnitImaginary::E1, c(1.0, 0.0), 1.0).is_err());
        let a = c(0.3, 0.4);
        let atom = kernel_atom(UnitImaginary::E2, a, 1.7).unwrap();
        let z = c(-0.2, 0.5);
        let jet = atom.on_slice(z, 2);
        let direct = ((1.0 - a.norm_sqr()) / (1.0 - z * a.conj())).powf(1.7);
        assert!(jet[0].max_abs_diff(UnitImaginary::E2.embed(direct)) < 1e-14);
        let h = 1e-5;
        let fd = (atom.on_slice(z + h, 0)[0] - atom.on_slice(z - h, 0)[0]) * (0.5 / h);
        assert!(fd.max_abs_diff(jet[1]) < 1e-8);
    }
}
