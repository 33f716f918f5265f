use std::sync::Arc;

use proptest::prelude::*;
use slicespace::kernels::bergman_kernel;
use slicespace::quadrature::{integrate_disk, DiskRule, Measure};
use slicespace::spaces::*;
use slicespace::*;

fn finite() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    (finite(), finite(), finite(), finite()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn axis() -> impl Strategy<Value = UnitImaginary> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter_map("nonzero vector", |(x, y, z)| UnitImaginary::from_vector([x, y, z]))
}

fn series(max_degree: usize) -> impl Strategy<Value = SlicePowerSeries> {
    prop::collection::vec(quaternion(), 1..=max_degree + 1).prop_map(SlicePowerSeries::new)
}

fn disk(r_max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r_max, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn ball(r_max: f64) -> impl Strategy<Value = Quaternion> {
    (axis(), disk(r_max)).prop_map(|(i, z)| i.embed(z))
}

/// Series whose coefficients all lie in `C(i)`.
fn slice_preserving(i: UnitImaginary, max_degree: usize) -> impl Strategy<Value = SlicePowerSeries> {
    prop::collection::vec(disk(3.0), 1..=max_degree + 1)
        .prop_map(move |c| SlicePowerSeries::new(c.into_iter().map(|z| i.embed(z)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn decompose_reconstruct_within_4_ulp(q in quaternion()) {
        let back = decompose(q).reconstruct();
        prop_assert!(back.max_abs_diff(q) <= 4.0 * f64::EPSILON * q.norm().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn norm_is_multiplicative(p in quaternion(), q in quaternion()) {
        let lhs = (p * q).norm();
        let rhs = p.norm() * q.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn hamilton_product_is_associative(a in quaternion(), b in quaternion(), c in quaternion()) {
        let scale = a.norm() * b.norm() * c.norm();
        prop_assert!(((a * b) * c).max_abs_diff(a * (b * c)) <= 1e-14 * scale.max(1.0));
    }

    #[test]
    fn orthogonal_unit_is_reproducible_and_orthonormal(i in axis()) {
        let j = orthogonal_unit(i);
        prop_assert_eq!(j.quaternion().to_array(), orthogonal_unit(i).quaternion().to_array());
        prop_assert!(i.dot(j).abs() <= 2.0 * f64::EPSILON);
        prop_assert!((j.quaternion().norm() - 1.0).abs() <= 2.0 * f64::EPSILON);
        prop_assert_eq!(j.quaternion().re(), 0.0);
    }

    #[test]
    fn merge_split_is_exact_on_coordinate_axes(f in series(16), k in 0usize..3) {
        let i = [UnitImaginary::E1, UnitImaginary::E2, UnitImaginary::E3][k];
        prop_assert_eq!(merge(&split(&f, i)), f);
    }

    #[test]
    fn merge_split_round_trip_on_any_axis(f in series(16), i in axis()) {
        let g = merge(&split(&f, i));
        for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
            prop_assert!(a.max_abs_diff(*b) <= 4.0 * f64::EPSILON * a.norm());
        }
    }

    #[test]
    fn representation_formula_matches_evaluation(f in series(16), q in ball(0.999), j in axis()) {
        let c = decompose(q);
        let v = represent(
            f.eval(j.embed(Complex64::new(c.x0, -c.y))),
            f.eval(j.embed(Complex64::new(c.x0, c.y))),
            j,
            c.axis,
        );
        let scale: f64 = f.coeffs().iter().map(|a| a.norm()).sum();
        prop_assert!((v - f.eval(q)).norm() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn splitting_modulus_identity(f in series(10), i in axis(), z in disk(0.99)) {
        let pair = split(&f, i);
        let (d1, d2) = pair.jet(z, 1)[1];
        let d = f.restrict(i)(z, 1)[1];
        let (lhs, rhs) = (d.norm_sqr(), d1.norm_sqr() + d2.norm_sqr());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn star_product_is_pointwise_for_slice_preserving_factors(
        (i, f, g) in axis().prop_flat_map(|i| (Just(i), slice_preserving(i, 6), slice_preserving(i, 6))),
        z in disk(0.99),
    ) {
        let q = i.embed(z);
        let lhs = f.star_product(&g).eval(q);
        let rhs = f.eval(q) * g.eval(q);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0) * 10.0);
    }

    #[test]
    fn composition_with_moebius_on_slice(f in series(8), i in axis(), a in disk(0.9), z in disk(0.95)) {
        let t = MoebiusMap::on_slice_point(i, a).unwrap();
        let g = compose_i(Arc::new(f.clone()), &t, i).unwrap();
        let expect = f.eval(i.embed(t.apply(z)));
        let scale: f64 = f.coeffs().iter().map(|c| c.norm()).sum();
        prop_assert!((g.on_slice(z, 0)[0] - expect).norm() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn moebius_preserves_pseudo_hyperbolic_distance(a in disk(0.95), z in disk(0.95), w in disk(0.95)) {
        let t = MoebiusMap::on_slice_point(UnitImaginary::E1, a).unwrap();
        let (d0, d1) = (bergman_metric(z, w), bergman_metric(t.apply(z), t.apply(w)));
        prop_assert!((d0 - d1).abs() <= 1e-10 * d0.max(1e-300));
    }

    #[test]
    fn kernel_is_hermitian_on_a_common_slice(i in axis(), z in disk(0.95), w in disk(0.95), alpha in -0.9..3.0f64) {
        let kzw = bergman_kernel(i.embed(z), w, alpha, i).unwrap();
        let kwz = bergman_kernel(i.embed(w), z, alpha, i).unwrap();
        prop_assert!((kzw - kwz.conj()).norm() <= 1e-12 * kzw.norm().max(1.0));
    }

    #[test]
    fn series_json_round_trip(f in series(8)) {
        let text = serde_json::to_string(&f).unwrap();
        let back: SlicePowerSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomials_are_orthogonal(n in 0u32..=10, m in 0u32..=10) {
        let rule = DiskRule::new(64, 128);
        let v = integrate_disk(|z| z.powu(n) * z.conj().powu(m), &rule, Measure::Area).unwrap();
        let expect = if n == m { 1.0 / (n as f64 + 1.0) } else { 0.0 };
        prop_assert!((v - expect).norm() <= 1e-12);
    }

    #[test]
    fn dirichlet_inner_product_axioms(f in series(6), g in series(6), h in series(6), lam in quaternion()) {
        let ip = dirichlet_inner_coeff;
        let fg = ip(&f, &g);
        let scale = (1.0 + fg.norm()) * (1.0 + lam.norm()) * (1.0 + ip(&f, &h).norm());
        prop_assert!((ip(&f, &g.mul_right(lam).add(&h)) - (fg * lam + ip(&f, &h))).norm() <= 1e-12 * scale);
        prop_assert!((ip(&g, &f) - fg.conj()).norm() <= 1e-12 * (1.0 + fg.norm()));
        let ff = ip(&f, &f);
        prop_assert!(ff.w >= 0.0 && ff.vector_norm() <= 1e-12 * ff.w.max(1.0));
        prop_assert_eq!(ff.w == 0.0, f.is_zero());
    }

    #[test]
    fn dirichlet_integral_is_slice_independent(f in series(8), i in axis()) {
        let config = Config { radial: 32, angular: 64, ..Config::default() };
        let v = dirichlet_integral(&f, i, &config).unwrap();
        let exact = dirichlet_coeff(&f);
        prop_assert!((v - exact).abs() <= 1e-10 * exact.max(1e-300));
    }

    #[test]
    fn bergman_p2_matches_coefficient_formula(f in series(6), i in axis(), alpha in -0.5..2.5f64) {
        let config = Config::default();
        let v = bergman_norm(&f, BergmanParams::new(2.0, alpha).unwrap(), i, &config).unwrap();
        let exact = bergman_norm_p2_coeff(&f, alpha);
        prop_assert!((v - exact).abs() <= 1e-10 * exact.max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bloch_constants_hold(f in series(6)) {
        let config = Config { sphere_samples: 6, sup_radial: 48, sup_angular: 96, ..Config::default() };
        let a = BlochAnalysis::new(&f, 2, &config);
        prop_assert!(a.equivalence_check(1e-4).passed);
        prop_assert!(a.hinf_sandwich_check(1e-4).passed);
        prop_assert!(a.bloch_hinf_check(1e-4).passed);
        prop_assert!(a.derivative_growth_check(2, 1e-4).passed);
        prop_assert!(coeff_bound_check_with(&f, a.bloch_norm(), 1e-4).passed);
    }

    #[test]
    fn besov_seminorm_is_moebius_invariant(f in series(4), i in axis(), a in disk(0.5), p in prop::sample::select(vec![1.5, 2.0, 3.0])) {
        let config = Config::default();
        let t = MoebiusMap::on_slice_point(i, a).unwrap();
        let g = compose_i(Arc::new(f.clone()), &t, i).unwrap();
        let (x, y) = (besov_seminorm(&f, p, i, &config).unwrap(), besov_seminorm(&g, p, i, &config).unwrap());
        prop_assert!((x - y).abs() <= 1e-6 * x.max(1e-300));
    }
}
