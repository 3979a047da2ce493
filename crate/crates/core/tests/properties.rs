//! Property-based invariants of the special functions, kernels and
//! fractional operators.

use std::f64::consts::PI;

use fracorder::fracops::{rl_plus, FracOrder, GridFunction};
use fracorder::kernels::{h_density, l_density};
use fracorder::specfun::{gamma, mittag_leffler, SeriesControl};
use proptest::prelude::*;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + 1e-300
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mittag_leffler_reduces_to_exp(z in -6.0f64..5.0) {
        let v = mittag_leffler(1.0, 1.0, z, &SeriesControl::default()).unwrap().value;
        // default control: absolute 1e-12 or relative 1e-10, whichever is looser
        prop_assert!((v - z.exp()).abs() <= 1e-12_f64.max(1e-10 * z.exp()), "{v} vs {}", z.exp());
    }

    #[test]
    fn mittag_leffler_never_returns_silently_wrong_values(z in -30.0f64..-6.0) {
        // deep on the negative axis the alternating series cancels; it
        // either meets its error estimate or reports non-convergence
        match mittag_leffler(1.0, 1.0, z, &SeriesControl::default()) {
            Ok(v) => prop_assert!((v.value - z.exp()).abs() <= v.error_estimate.max(1e-12)),
            Err(e) => prop_assert!(matches!(e, fracorder::Error::NonConvergence { .. }), "{e}"),
        }
    }

    #[test]
    fn mittag_leffler_is_completely_monotone_on_the_negative_axis(alpha in 0.1f64..0.95, x in 0.0f64..29.5) {
        // 0 < E_α(−x) ≤ 1 and decreasing
        let c = SeriesControl::default();
        let a = mittag_leffler(alpha, 1.0, -x, &c).unwrap().value;
        let b = mittag_leffler(alpha, 1.0, -x - 0.5, &c).unwrap().value;
        prop_assert!(a > 0.0 && a <= 1.0 && b < a, "{a} {b}");
    }

    #[test]
    fn gamma_reflection(x in 0.01f64..0.99) {
        prop_assert!(close(gamma(x) * gamma(1.0 - x), PI / (PI * x).sin(), 1e-13));
    }

    #[test]
    fn densities_are_nonnegative(nu in 0.05f64..0.95, x in 0.0f64..20.0, t in 0.05f64..10.0) {
        prop_assert!(l_density(nu, x, t).unwrap().value >= 0.0);
        prop_assert!(h_density(nu, x, t).unwrap().value >= 0.0);
    }

    #[test]
    fn l_is_self_similar(nu in 0.1f64..0.9, x in 0.01f64..5.0, t in 0.1f64..5.0) {
        // l_ν(x, t) = t^{−ν} l_ν(x t^{−ν}, 1)
        let s = t.powf(-nu);
        let a = l_density(nu, x, t).unwrap().value;
        let b = s * l_density(nu, x * s, 1.0).unwrap().value;
        prop_assert!(close(a, b, 1e-10), "{a} vs {b}");
    }

    #[test]
    fn h_is_self_similar(nu in 0.1f64..0.9, x in 0.05f64..5.0, t in 0.1f64..3.0) {
        // h_ν(x, t) = t^{−1/ν} h_ν(x t^{−1/ν}, 1)
        let s = t.powf(-1.0 / nu);
        let a = h_density(nu, x, t).unwrap().value;
        let b = s * h_density(nu, x * s, 1.0).unwrap().value;
        prop_assert!(close(a, b, 1e-10) || a.max(b) < 1e-280, "{a} vs {b}");
    }

    #[test]
    fn rl_derivative_is_linear(alpha in 0.1f64..0.9, c in -3.0f64..3.0) {
        let h = 1.0 / 64.0;
        let f = GridFunction::from_fn(h, 65, |t| t.sin()).unwrap();
        let g = GridFunction::from_fn(h, 65, |t| t * t).unwrap();
        let fg = GridFunction::from_fn(h, 65, |t| t.sin() + c * t * t).unwrap();
        let o = FracOrder::new(alpha).unwrap();
        let (df, dg, dfg) = (rl_plus(&f, o).unwrap(), rl_plus(&g, o).unwrap(), rl_plus(&fg, o).unwrap());
        for i in 0..65 {
            let lin = df.samples()[i] + c * dg.samples()[i];
            prop_assert!((dfg.samples()[i] - lin).abs() < 1e-12 * (1.0 + lin.abs()));
        }
    }
}
