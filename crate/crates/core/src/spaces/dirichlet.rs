//! The Dirichlet space: `∫|∂f|² dΩ_i = π Σ n|aₙ|²` on every slice.

use std::f64::consts::PI;

use super::{Config, NormReport};
use crate::error::Result;
use crate::quadrature::{integrate_disk, Measure};
use crate::quat::{Quaternion, UnitImaginary};
use crate::series::SlicePowerSeries;
use crate::slice::SliceRegular;

/// `Σ_{n≥1} n|aₙ|²`.
pub fn dirichlet_coeff(f: &SlicePowerSeries) -> f64 {
    f.coeffs().iter().enumerate().map(|(n, a)| n as f64 * a.norm_sqr()).sum()
}

/// `(1/π)∫_{B_i} |∂f|² dΩ_i`.
pub fn dirichlet_integral<F: SliceRegular + ?Sized>(f: &F, i: UnitImaginary, config: &Config) -> Result<f64> {
    let g = f.restrict(i);
    Ok(integrate_disk(|z| g(z, 1)[1].norm_sqr(), &config.rule(), Measure::Plain)? / PI)
}

/// `‖f‖_𝓓 = (|f(0)|² + sup_i ∫|∂f|² dΩ_i)^{1/2}`.
pub fn dirichlet_norm<F: SliceRegular + ?Sized>(f: &F, config: &Config) -> Result<NormReport> {
    let f0 = f.eval(Quaternion::ZERO).norm_sqr();
    let per_axis = config
        .axes()
        .into_iter()
        .map(|i| Ok((i, (f0 + PI * dirichlet_integral(f, i, config)?).sqrt())))
        .collect::<Result<Vec<_>>>()?;
    let value = per_axis.iter().map(|v| v.1).fold(f0.sqrt(), f64::max);
    Ok(NormReport::new("dirichlet", value, per_axis, config))
}

/// `⟨f, g⟩_𝓓 = conj(f(0)) g(0) + ∫_{B_i} conj(∂f) ∂g dΩ_i`.
///
/// The integral does not depend on the slice.
pub fn dirichlet_inner<F, G>(f: &F, g: &G, i: UnitImaginary, config: &Config) -> Result<Quaternion>
where
    F: SliceRegular + ?Sized,
    G: SliceRegular + ?Sized,
{
    let (fr, gr) = (f.restrict(i), g.restrict(i));
    let integral = integrate_disk(|z| fr(z, 1)[1].conj() * gr(z, 1)[1], &config.rule(), Measure::Plain)?;
    Ok(f.eval(Quaternion::ZERO).conj() * g.eval(Quaternion::ZERO) + integral)
}

/// Closed form `conj(a₀)b₀ + π Σ n conj(aₙ) bₙ`.
pub fn dirichlet_inner_coeff(f: &SlicePowerSeries, g: &SlicePowerSeries) -> Quaternion {
    let n = f.coeffs().len().min(g.coeffs().len());
    let mut acc = f.coeff(0).conj() * g.coeff(0);
    for k in 1..n {
        acc += f.coeff(k).conj() * g.coeff(k) * (PI * k as f64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> SlicePowerSeries {
        SlicePowerSeries::new(vec![Quaternion::ZERO, Quaternion::ONE, Quaternion::E2])
    }

    #[test]
    fn coefficient_sum() {
        assert_eq!(dirichlet_coeff(&example()), 3.0);
    }

    #[test]
    fn integral_matches_coefficients() {
        let cfg = Config::default();
        for i in [UnitImaginary::E1, UnitImaginary::E2, UnitImaginary::from_vector([1.0, -2.0, 0.5]).unwrap()] {
            let v = dirichlet_integral(&example(), i, &cfg).unwrap();
            assert!((v - 3.0).abs() < 1e-12, "{v}");
        }
        let n = dirichlet_norm(&example(), &Config { sphere_samples: 8, ..cfg }).unwrap();
        assert!((n.value - (3.0 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn inner_product_induces_norm() {
        let cfg = Config::default();
        let f = SlicePowerSeries::new(vec![Quaternion::new(1.0, 0.5, 0.0, 0.0), Quaternion::E3, Quaternion::new(0.2, 0.0, 1.0, 0.0)]);
        let ff = dirichlet_inner(&f, &f, UnitImaginary::E2, &cfg).unwrap();
        let norm = dirichlet_norm(&f, &Config { sphere_samples: 4, ..cfg }).unwrap().value;
        assert!((ff.w - norm * norm).abs() < 1e-12 && ff.vector_norm() < 1e-12);
        let g = example();
        let fg = dirichlet_inner(&f, &g, UnitImaginary::E1, &cfg).unwrap();
        assert!(fg.max_abs_diff(dirichlet_inner_coeff(&f, &g)) < 1e-12);
    }
}
