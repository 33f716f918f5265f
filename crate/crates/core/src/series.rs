//! Truncated power series `f(q) = Σ qⁿ aₙ` with quaternionic right coefficients,
//! the splitting into two holomorphic components on a slice, and the
//! representation formula that reconstructs values across slices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quat::{orthogonal_unit, Quaternion, UnitImaginary};

/// A slice regular polynomial; trailing zero coefficients are always trimmed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawSeries")]
pub struct SlicePowerSeries {
    coeffs: Vec<Quaternion>,
}

#[derive(Deserialize)]
struct RawSeries {
    coeffs: Vec<Quaternion>,
}

impl From<RawSeries> for SlicePowerSeries {
    fn from(raw: RawSeries) -> Self {
        Self::new(raw.coeffs)
    }
}

impl SlicePowerSeries {
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.last() == Some(&Quaternion::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Quaternion) -> Self {
        Self::new(vec![c])
    }

    /// `qⁿ a`.
    pub fn monomial(n: usize, a: Quaternion) -> Self {
        let mut coeffs = vec![Quaternion::ZERO; n + 1];
        coeffs[n] = a;
        Self::new(coeffs)
    }

    /// The identity function `q`.
    pub fn identity() -> Self {
        Self::monomial(1, Quaternion::ONE)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Quaternion {
        self.coeffs.get(n).copied().unwrap_or(Quaternion::ZERO)
    }

    /// Degree of the polynomial; the zero series has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Horner evaluation; the accumulator is multiplied by `q` on the left.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &a| q * acc + a)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &a)| a * n as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// `∂ᵏf(q)` for `k = 0..=order`.
    pub fn jet(&self, q: Quaternion, order: usize) -> Vec<Quaternion> {
        let mut out = Vec::with_capacity(order + 1);
        let mut d = self.clone();
        for _ in 0..=order {
            out.push(d.eval(q));
            d = d.derivative();
        }
        out
    }

    /// Slice regular product: `cₙ = Σ aₖ bₙ₋ₖ`.
    pub fn star_product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Quaternion::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            for (m, &b) in other.coeffs.iter().enumerate() {
                c[k + m] += a * b;
            }
        }
        Self::new(c)
    }

    /// `f + g`.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// `f·λ`, i.e. every coefficient multiplied by `λ` on the right.
    pub fn mul_right(&self, lambda: Quaternion) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * lambda).collect())
    }

    /// The dilation `f_r(q) = f(rq)`, exact as `rⁿaₙ`.
    pub fn dilate(&self, r: f64) -> Self {
        let mut scale = 1.0;
        Self::new(
            self.coeffs
                .iter()
                .map(|&a| {
                    let c = a * scale;
                    scale *= r;
                    c
                })
                .collect(),
        )
    }
}

/// `f = f₁ + f₂ j` on the slice `C(i)`, with `j = orthogonal_unit(i)`.
///
/// The complex coefficients are coordinates in `C(i)`; `aₙ = αₙ + βₙ j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HolomorphicPair {
    pub axis: UnitImaginary,
    pub orth: UnitImaginary,
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
}

impl HolomorphicPair {
    /// `(f₁⁽ᵏ⁾(z), f₂⁽ᵏ⁾(z))` for `k = 0..=order`.
    pub fn jet(&self, z: Complex64, order: usize) -> Vec<(Complex64, Complex64)> {
        let mut out = vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); order + 1];
        complex_jet(&self.alpha, z, &mut out, |o, v| o.0 = v);
        complex_jet(&self.beta, z, &mut out, |o, v| o.1 = v);
        out
    }

    /// Reassembles `f₁(z) + f₂(z) j`-type values into a quaternion.
    pub fn combine(&self, f1: Complex64, f2: Complex64) -> Quaternion {
        let i = self.axis.quaternion();
        let j = self.orth.quaternion();
        let k = i * j;
        Quaternion::real(f1.re) + i * f1.im + j * f2.re + k * f2.im
    }
}

/// Derivatives of a complex polynomial by repeated synthetic division:
/// the remainders are `p⁽ᵏ⁾(z)/k!`.
fn complex_jet<T>(
    coeffs: &[Complex64],
    z: Complex64,
    out: &mut [T],
    mut set: impl FnMut(&mut T, Complex64),
) {
    let mut work: Vec<Complex64> = coeffs.to_vec();
    let mut factorial = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            factorial *= k as f64;
        }
        if work.is_empty() {
            set(slot, Complex64::new(0.0, 0.0));
            continue;
        }
        // divide by (x - z): quotient overwrites work[1..], remainder is the value
        let n = work.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for m in (0..n).rev() {
            acc = acc * z + work[m];
            work[m] = acc;
        }
        let rem = work.remove(0);
        set(slot, rem * factorial);
    }
}

/// Splits `f` on the slice `C(i)`.
pub fn split(f: &SlicePowerSeries, i: UnitImaginary) -> HolomorphicPair {
    let j = orthogonal_unit(i);
    let (iq, jq) = (i.quaternion(), j.quaternion());
    let kq = iq * jq;
    let (alpha, beta) = f
        .coeffs()
        .iter()
        .map(|&a| {
            (
                Complex64::new(a.w, a.dot(iq)),
                Complex64::new(a.dot(jq), a.dot(kq)),
            )
        })
        .unzip();
    HolomorphicPair {
        axis: i,
        orth: j,
        alpha,
        beta,
    }
}

/// Inverse of [`split`].
pub fn merge(pair: &HolomorphicPair) -> SlicePowerSeries {
    let n = pair.alpha.len().max(pair.beta.len());
    let zero = Complex64::new(0.0, 0.0);
    SlicePowerSeries::new(
        (0..n)
            .map(|k| {
                let a = pair.alpha.get(k).copied().unwrap_or(zero);
                let b = pair.beta.get(k).copied().unwrap_or(zero);
                pair.combine(a, b)
            })
            .collect(),
    )
}

/// Representation formula for left slice regular functions.
///
/// Given `f(x − yJ)` and `f(x + yJ)` on the source slice `C(J)`, returns
/// `f(x + yI) = ½(1 + IJ) f(x − yJ) + ½(1 − IJ) f(x + yJ)`.
pub fn represent(
    f_minus: Quaternion,
    f_plus: Quaternion,
    source: UnitImaginary,
    target: UnitImaginary,
) -> Quaternion {
    if source == target {
        return f_plus;
    }
    let ij = target.quaternion() * source.quaternion();
    ((Quaternion::ONE + ij) * f_minus + (Quaternion::ONE - ij) * f_plus) * 0.5
}

/// Right-handed counterpart of [`represent`] for right slice regular functions:
/// `g(x + yI) = ½ g(x − yJ)(1 + JI) + ½ g(x + yJ)(1 − JI)`.
pub fn represent_right(
    g_minus: Quaternion,
    g_plus: Quaternion,
    source: UnitImaginary,
    target: UnitImaginary,
) -> Quaternion {
    if source == target {
        return g_plus;
    }
    let ji = source.quaternion() * target.quaternion();
    (g_minus * (Quaternion::ONE + ji) + g_plus * (Quaternion::ONE - ji)) * 0.5
}
