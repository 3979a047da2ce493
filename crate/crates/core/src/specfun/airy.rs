//! Airy function `Ai`.

use std::f64::consts::PI;

use super::series::sum_series;
use super::{gamma, SeriesControl, SpecialValue};
use crate::error::{Error, Result};
use crate::quad::{self, QuadOptions};

/// `Ai(0) = 1/(3^{2/3} Γ(2/3))`.
pub(crate) fn ai0() -> f64 {
    1.0 / (3f64.powf(2.0 / 3.0) * gamma(2.0 / 3.0))
}

/// `−Ai'(0) = 1/(3^{1/3} Γ(1/3))`.
fn mai1() -> f64 {
    1.0 / (3f64.cbrt() * gamma(1.0 / 3.0))
}

/// `Ai(z)` for real `z`.
///
/// For `z ≤ 1` the Maclaurin series `Ai(0)·f(z) + Ai'(0)·g(z)` is summed
/// (this covers the oscillatory regime down to about z = −10). For `z > 1`
/// the two series cancel, and the value comes from
/// `Ai(z) = (e^{−ζ}/π) ∫_0^∞ e^{−√z u²} cos(u³/3) du`, `ζ = (2/3)z^{3/2}`.
pub fn airy_ai(z: f64) -> Result<SpecialValue> {
    if !z.is_finite() {
        return Err(Error::NonFinite("airy_ai"));
    }
    if z > 1.0 {
        return airy_ai_integral(z);
    }
    let ctl = SeriesControl {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_terms: 2000,
    };
    let z3 = z * z * z;
    let c1 = ai0();
    let c2 = mai1();
    // term_k = c1 z^{3k} Π(3j−2)/(3k)! − c2 z^{3k+1} Π(3j−1)/(3k+1)!
    let mut f = 1.0;
    let mut g = z;
    let v = sum_series(&ctl, "airy_ai", |k| {
        if k > 0 {
            let kf = k as f64;
            f *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
            g *= z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        }
        let t = c1 * f - c2 * g;
        let env = (c1 * f.abs() + c2 * g.abs()).ln();
        (t, env)
    })?;
    Ok(v)
}

fn airy_ai_integral(z: f64) -> Result<SpecialValue> {
    let s = z.sqrt();
    let zeta = 2.0 / 3.0 * z * s;
    let u_max = (40.0 / s).sqrt();
    let f = |u: f64| (-s * u * u).exp() * (u * u * u / 3.0).cos();
    let opts = QuadOptions {
        abs_tol: 1e-17,
        rel_tol: 1e-14,
        max_subdivisions: 400,
    };
    let n = 16;
    let breaks: Vec<f64> = (0..=n).map(|i| u_max * i as f64 / n as f64).collect();
    let r = quad::integrate_breaks(&f, &breaks, &opts)?;
    let scale = (-zeta).exp() / PI;
    Ok(SpecialValue {
        value: r.value * scale,
        error_estimate: (r.error + 4.0 * f64::EPSILON * r.value.abs()) * scale,
        terms_used: r.evaluations,
    })
}
