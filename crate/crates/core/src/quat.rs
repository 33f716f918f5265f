//! Quaternion arithmetic, the sphere of imaginary units and slice coordinates.
//!
//! Every nonreal quaternion lies on exactly one complex slice `C(I) = span{1, I}`
//! with `I` a purely imaginary unit. Most of the crate works on a fixed slice and
//! represents its points as [`Complex64`] relative to the slice axis.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element `w + x e1 + y e2 + z e3` of the real quaternion algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Real part.
    pub const fn re(self) -> f64 {
        self.w
    }

    /// Vector (imaginary) part as a 3-vector.
    pub const fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub const fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        // hypot-style scaling is unnecessary for the magnitudes handled here
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product on R^4.
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            None
        } else {
            Some(self.conj() / n2)
        }
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Norm of the vector part.
    pub fn vector_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    // Hamilton product with e1 e2 = e3, e2 e3 = e1, e3 e1 = e2.
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}e1 + {}e2 + {}e3", self.w, self.x, self.y, self.z)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let a = <[f64; 4]>::deserialize(d)?;
        if a.iter().any(|c| !c.is_finite()) {
            return Err(D::Error::custom("quaternion components must be finite"));
        }
        Ok(Self::from_array(a))
    }
}

/// A purely imaginary unit quaternion, i.e. a point of the sphere `S^2`.
///
/// Squares to `-1`; the slice `C(I)` it spans is a copy of the complex field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitImaginary(Quaternion);

impl UnitImaginary {
    pub const E1: Self = Self(Quaternion::E1);
    pub const E2: Self = Self(Quaternion::E2);
    pub const E3: Self = Self(Quaternion::E3);

    /// Normalizes a nonzero 3-vector onto the sphere.
    pub fn from_vector(v: [f64; 3]) -> Option<Self> {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return None;
        }
        Some(Self(Quaternion::new(0.0, v[0] / n, v[1] / n, v[2] / n)))
    }

    /// Accepts `q` only if it already is a unit imaginary (to 1e-12).
    pub fn new(q: Quaternion) -> Option<Self> {
        if q.w.abs() > 1e-12 || (q.norm() - 1.0).abs() > 1e-12 {
            return None;
        }
        Self::from_vector(q.vector())
    }

    pub const fn quaternion(self) -> Quaternion {
        self.0
    }

    pub const fn vector(self) -> [f64; 3] {
        self.0.vector()
    }

    /// Euclidean inner product of the two directions.
    pub fn dot(self, other: Self) -> f64 {
        self.0.dot(other.0)
    }

    /// The map `C -> C(I)`, `a + bi -> a + bI`.
    pub fn embed(self, z: Complex64) -> Quaternion {
        Quaternion::new(z.re, z.im * self.0.x, z.im * self.0.y, z.im * self.0.z)
    }

    /// Coordinate of `q` relative to this axis: `(Re q, <vec q, I>)`.
    ///
    /// Exact inverse of [`embed`](Self::embed) on the slice; off the slice it is
    /// the orthogonal projection onto `C(I)`.
    pub fn coordinate(self, q: Quaternion) -> Complex64 {
        Complex64::new(q.w, q.x * self.0.x + q.y * self.0.y + q.z * self.0.z)
    }

    /// Whether `q` lies on `C(I)` up to `tol` relative to `|q|`.
    pub fn contains(self, q: Quaternion, tol: f64) -> bool {
        let v = q.vector();
        let t = q.x * self.0.x + q.y * self.0.y + q.z * self.0.z;
        let perp = [v[0] - t * self.0.x, v[1] - t * self.0.y, v[2] - t * self.0.z];
        let pn = (perp[0] * perp[0] + perp[1] * perp[1] + perp[2] * perp[2]).sqrt();
        pn <= tol * q.norm().max(f64::MIN_POSITIVE)
    }

    /// Whether the two axes span the same slice (`J = ±I`).
    pub fn same_slice(self, other: Self, tol: f64) -> bool {
        (self.dot(other).abs() - 1.0).abs() <= tol
    }
}

impl fmt::Display for UnitImaginary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.vector();
        write!(f, "{x}e1 + {y}e2 + {z}e3")
    }
}

impl Serialize for UnitImaginary {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitImaginary {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let q = Quaternion::deserialize(d)?;
        Self::new(q).ok_or_else(|| D::Error::custom("axis must be a unit imaginary quaternion"))
    }
}

/// `q = x0 + axis * y` with `y >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceCoordinate {
    pub x0: f64,
    pub y: f64,
    pub axis: UnitImaginary,
    /// Set when `vec(q) = 0`; the axis is then the default `e1` and carries no information.
    pub is_real: bool,
}

impl SliceCoordinate {
    pub fn reconstruct(&self) -> Quaternion {
        Quaternion::real(self.x0) + self.axis.quaternion() * self.y
    }

    /// The point as a complex number on its own slice.
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.x0, self.y)
    }
}

/// Writes `q = x + I_q y` with `I_q = vec(q)/|vec(q)|`.
pub fn decompose(q: Quaternion) -> SliceCoordinate {
    let y = q.vector_norm();
    if y == 0.0 {
        return SliceCoordinate {
            x0: q.w,
            y: 0.0,
            axis: UnitImaginary::E1,
            is_real: true,
        };
    }
    let axis = UnitImaginary(Quaternion::new(0.0, q.x / y, q.y / y, q.z / y));
    SliceCoordinate {
        x0: q.w,
        y,
        axis,
        is_real: false,
    }
}

/// A unit imaginary orthogonal to `i`: `e2` projected off `i`, or `e3` when
/// that projection is shorter than `1e-8`.
pub fn orthogonal_unit(i: UnitImaginary) -> UnitImaginary {
    let project = |e: [f64; 3]| {
        let [a, b, c] = i.vector();
        let t = e[0] * a + e[1] * b + e[2] * c;
        [e[0] - t * a, e[1] - t * b, e[2] - t * c]
    };
    let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let e = if norm(project([0.0, 1.0, 0.0])) >= 1e-8 { [0.0, 1.0, 0.0] } else { [0.0, 0.0, 1.0] };
    // a second projection removes the cancellation error of the first when
    // e is nearly parallel to i
    let v = project(project(e));
    let n = norm(v);
    UnitImaginary(Quaternion::new(0.0, v[0] / n, v[1] / n, v[2] / n))
}

/// Deterministic quasi-uniform sample of `S^2` (Fibonacci lattice).
///
/// The lattice runs from `e1` (always the first point) to `-e1`.
pub fn sphere_sample(m: usize) -> Vec<UnitImaginary> {
    assert!(m >= 1, "sphere sample needs at least one point");
    if m == 1 {
        return vec![UnitImaginary::E1];
    }
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|k| {
            if k == 0 {
                return UnitImaginary::E1;
            }
            let h = 1.0 - 2.0 * k as f64 / (m - 1) as f64;
            let rho = (1.0 - h * h).max(0.0).sqrt();
            let phi = golden_angle * k as f64;
            UnitImaginary::from_vector([h, rho * phi.cos(), rho * phi.sin()])
                .expect("lattice points are unit vectors")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn multiplication_table() {
        let (e1, e2, e3) = (Quaternion::E1, Quaternion::E2, Quaternion::E3);
        assert_eq!(e1 * e2, e3);
        assert_eq!(e2 * e3, e1);
        assert_eq!(e3 * e1, e2);
        assert_eq!(e2 * e1, -e3);
        assert_eq!(e1 * e1, -Quaternion::ONE);
    }

    #[test]
    fn inverse_and_conjugate() {
        let q = Quaternion::new(0.3, -1.2, 2.0, 0.7);
        assert!(close(q * q.inverse().unwrap(), Quaternion::ONE, 1e-15));
        assert!(Quaternion::ZERO.inverse().is_none());
        let one_plus = Quaternion::ONE + Quaternion::E1;
        let one_minus = Quaternion::ONE - Quaternion::E1;
        assert_eq!(one_plus * one_minus, Quaternion::real(2.0));
        let p = Quaternion::new(1.0, 2.0, -0.5, 0.25);
        assert!(close((p * q).conj(), q.conj() * p.conj(), 1e-15));
        assert!(close(q.conj() * q, Quaternion::real(q.norm_sqr()), 1e-14));
    }

    #[test]
    fn decompose_examples() {
        let c = decompose(Quaternion::new(1.0, 2.0, 0.0, 0.0));
        assert_eq!((c.x0, c.y, c.axis, c.is_real), (1.0, 2.0, UnitImaginary::E1, false));

        let c = decompose(Quaternion::real(5.0));
        assert_eq!((c.x0, c.y, c.axis, c.is_real), (5.0, 0.0, UnitImaginary::E1, true));

        let c = decompose(Quaternion::E2 + Quaternion::E3);
        let s = 0.5f64.sqrt();
        assert!((c.y - 2f64.sqrt()).abs() < 1e-15);
        assert!(close(c.axis.quaternion(), Quaternion::new(0.0, 0.0, s, s), 1e-15));
        assert!(close(c.reconstruct(), Quaternion::E2 + Quaternion::E3, 1e-15));
    }

    #[test]
    fn orthogonal_unit_rule() {
        assert_eq!(orthogonal_unit(UnitImaginary::E1), UnitImaginary::E2);
        assert_eq!(orthogonal_unit(UnitImaginary::E2), UnitImaginary::E3);
        let i = UnitImaginary::from_vector([1.0, 1.0, 0.0]).unwrap();
        let j = orthogonal_unit(i);
        let s = 0.5f64.sqrt();
        assert!(close(j.quaternion(), Quaternion::new(0.0, -s, s, 0.0), 1e-15));
    }

    #[test]
    fn sphere_sample_properties() {
        assert_eq!(sphere_sample(1), vec![UnitImaginary::E1]);
        let pts = sphere_sample(64);
        assert_eq!(pts[0], UnitImaginary::E1);
        for u in &pts {
            let q = u.quaternion();
            assert_eq!(q.w, 0.0);
            assert!((q.norm() - 1.0).abs() < 1e-15);
        }
        // nearest-neighbour spacing, computed pairwise
        let worst = pts
            .iter()
            .enumerate()
            .map(|(a, u)| {
                pts.iter()
                    .enumerate()
                    .filter(|(b, _)| *b != a)
                    .map(|(_, v)| u.dot(*v).clamp(-1.0, 1.0).acos())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        assert!(worst.to_degrees() < 35.0, "spacing {}", worst.to_degrees());
        assert_eq!(sphere_sample(64), pts);
    }

    #[test]
    fn embed_and_coordinate_roundtrip() {
        let i = UnitImaginary::from_vector([0.2, -0.4, 0.9]).unwrap();
        let z = Complex64::new(0.3, -0.45);
        let q = i.embed(z);
        let back = i.coordinate(q);
        assert!((back - z).norm() < 1e-15);
        assert!(i.contains(q, 1e-14));
        assert!(!i.contains(Quaternion::E1 + Quaternion::E2, 1e-6));
        // the slice is a field: embedding is multiplicative
        let w = Complex64::new(-0.7, 0.1);
        assert!(close(i.embed(z) * i.embed(w), i.embed(z * w), 1e-15));
    }

    #[test]
    fn json_shape() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1.0,2.0,3.0,4.0]");
        let back: Quaternion = serde_json::from_str("[1,2,3,4]").unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Quaternion>("[1,2,3]").is_err());
    }
}
