use fracwave::special::{gamma, mittag_leffler, ml, ml_series_oracle, MlParams};
use proptest::prelude::*;

proptest! {
    #[test]
    fn ml_at_zero_is_one(alpha in 1e-3f64..=2.0) {
        prop_assert_eq!(ml(alpha, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn order_one_is_exp(z in -30.0f64..=5.0) {
        let got = ml(1.0, z).unwrap();
        prop_assert!((got - z.exp()).abs() <= 1e-10 * z.exp(), "z = {}: {}", z, got);
    }

    #[test]
    fn order_two_is_cos(x in 0.0f64..=20.0) {
        let got = ml(2.0, -x * x).unwrap();
        prop_assert!((got - x.cos()).abs() <= 1e-10, "x = {}: {}", x, got);
    }

    #[test]
    fn gamma_recurrence(x in 0.1f64..=20.0) {
        let a = gamma(x + 1.0).unwrap();
        let b = x * gamma(x).unwrap();
        prop_assert!(((a - b) / b).abs() <= 1e-12, "x = {}", x);
    }

    #[test]
    fn agrees_with_series_oracle(
        alpha in 0.2f64..=2.0,
        beta in 0.5f64..=3.0,
        z in -1.0f64..=1.0,
    ) {
        // 400 terms of |z| ≤ 1 leave a tail far below 1e-13
        let params = MlParams::new(alpha, beta).unwrap();
        let report = mittag_leffler(params, z).unwrap();
        let oracle = ml_series_oracle(params, z, 400).unwrap();
        // the oracle rounds each of its terms once
        let oracle_rounding = 4.0 * f64::EPSILON * ml_series_oracle(params, z.abs(), 400).unwrap();
        prop_assert!(
            (report.value - oracle).abs() <= report.est_abs_error + oracle_rounding,
            "E_({},{})({}) = {} vs {}, est {:e}", alpha, beta, z, report.value, oracle, report.est_abs_error
        );
    }
}

#[test]
fn complete_monotonicity_on_negative_axis() {
    for i in 1..=20 {
        let alpha = i as f64 / 20.0;
        let mut prev = 1.0;
        for j in 1..=500 {
            let x = j as f64 * 0.1;
            let v = ml(alpha, -x).unwrap();
            assert!(v > 0.0, "E_{alpha}(-{x}) = {v}");
            assert!(v <= prev, "E_{alpha} increases at x = {x}: {prev} -> {v}");
            prev = v;
        }
    }
}

#[test]
fn contour_region_matches_oracle_at_moderate_arguments() {
    // series cancellation is still harmless at |z| = 8 for α = 1.8, so the
    // oracle gives an independent reference in the contour region
    let params = MlParams::single(1.8).unwrap();
    let oracle = ml_series_oracle(params, -8.0, 200).unwrap();
    let report = mittag_leffler(params, -8.0).unwrap();
    assert!(
        (report.value - oracle).abs() < 1e-11,
        "{} vs {oracle}",
        report.value
    );
}
