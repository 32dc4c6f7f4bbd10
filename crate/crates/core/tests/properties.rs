use proptest::prelude::*;

use stark_dispersion::interaction::{par_shape, par_shape_derivative, perp_shape, perp_shape_derivative};
use stark_dispersion::specfun::{aux_f, aux_f_prime, aux_g, aux_g_prime};
use stark_dispersion::{derived_constants, DispersionModel, FieldConfig, Geometry};

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn field() -> impl Strategy<Value = f64> {
    prop_oneof![(-1e7..1e7f64), log_uniform(1.0, 1e8)]
}

proptest! {
    #[test]
    fn bilinear_in_fields(r in log_uniform(1e-9, 1e-4), theta in 0.0..std::f64::consts::PI,
                          e in field(), ep in field(), a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let m = DispersionModel::default();
        let base = m.delta_e_general(r, theta, e, ep).unwrap();
        let scaled = m.delta_e_general(r, theta, a * e, b * ep).unwrap();
        prop_assert!((scaled - a * b * base).abs() <= 1e-12 * (a * b * base).abs() + f64::MIN_POSITIVE);
    }

    #[test]
    fn exchange_symmetric(r in log_uniform(1e-9, 1e-4), theta in 0.0..std::f64::consts::PI, e in field(), ep in field()) {
        let m = DispersionModel::default();
        let a = m.total_energy(Geometry::new(r, theta), FieldConfig::new(e, ep));
        let b = m.total_energy(Geometry::new(r, theta), FieldConfig::new(ep, e));
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.total, b.total),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn sign_law(x in log_uniform(1e-3, 1e3)) {
        prop_assert!(perp_shape(x) > 0.0);
        prop_assert!(par_shape(x) < 0.0);
    }

    #[test]
    fn antiparallel_fields_flip_sign(r in log_uniform(1e-9, 1e-4), theta in 0.0..std::f64::consts::PI, e in 1.0..1e7f64) {
        let m = DispersionModel::default();
        let p = m.delta_e_general(r, theta, e, e).unwrap();
        let n = m.delta_e_general(r, theta, e, -e).unwrap();
        prop_assert_eq!(p, -n);
    }

    #[test]
    fn state_norm_deviation_is_fourth_order(e in -1e8..1e8f64, ep in -1e8..1e8f64) {
        let d = derived_constants();
        let c = d.stark_ground_state(e, ep).unwrap();
        let g = d.gamma.abs() * e.abs().max(ep.abs());
        prop_assert!((c.norm_squared() - 1.0).abs() <= 140.0 * g.powi(4) + 1e-15);
    }

    #[test]
    fn aux_derivatives_match_differences(x in log_uniform(1e-3, 1e3)) {
        let h = 1e-5 * x;
        let df = (aux_f(x + h).unwrap() - aux_f(x - h).unwrap()) / (2.0 * h);
        let dg = (aux_g(x + h).unwrap() - aux_g(x - h).unwrap()) / (2.0 * h);
        prop_assert!(rel(df, aux_f_prime(x).unwrap()) < 1e-6);
        prop_assert!(rel(dg, aux_g_prime(x).unwrap()) < 1e-6);
    }

    #[test]
    fn shape_derivatives_match_differences(x in log_uniform(1e-2, 1e3)) {
        let h = 1e-5 * x;
        let dp = (perp_shape(x + h) - perp_shape(x - h)) / (2.0 * h);
        let da = (par_shape(x + h) - par_shape(x - h)) / (2.0 * h);
        prop_assert!(rel(dp, perp_shape_derivative(x)) < 1e-6);
        prop_assert!(rel(da, par_shape_derivative(x)) < 1e-6);
    }

    #[test]
    fn vdw_negative_and_total_is_sum(r in log_uniform(1e-9, 1e-3), theta in 0.0..std::f64::consts::PI, e in field()) {
        let m = DispersionModel::default();
        if let Ok(b) = m.total_energy(Geometry::new(r, theta), FieldConfig::equal(e)) {
            prop_assert!(b.vdw_component < 0.0);
            prop_assert_eq!(b.total, b.field_component + b.vdw_component);
        }
    }
}
