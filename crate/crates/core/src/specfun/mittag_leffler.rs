//! Two-parameter Mittag-Leffler function `E_{α,β}(z) = Σ z^k / Γ(αk+β)`.

use std::f64::consts::PI;

use super::series::{cancellation, sum_series};
use super::gamma::is_pole;
use super::{ln_gamma_signed, rgamma, rgamma_envelope_ln, SeriesControl, SpecialValue};
use crate::error::{invalid, Error, Result};
use crate::quad;

/// Largest |z| for which the direct series is trusted.
pub const ML_SERIES_CUTOFF: f64 = 30.0;

/// Largest acceptable cancellation factor of the series on the negative
/// axis before the integral representation takes over.
const ML_MAX_CANCELLATION: f64 = 4.0e3;

/// `E_{α,β}(z)` for `|z| ≤ 30`.
///
/// The value comes from the power series. On the negative axis with
/// `0 < α < 1` and `α ≤ β ≤ 1`, where the alternating series loses digits
/// to cancellation, it comes instead from the positive integral
///
/// `E_{α,β}(−x) = (1/(απ)) ∫_0^∞ r^{(1−β)/α} e^{−r^{1/α}}
///     [r sin(π(1−β)) + x sin(π(1−β+α))] / (r² + 2rx cos(πα) + x²) dr`.
///
/// Outside `|z| ≤ 30` the routine reports [`Error::NonConvergence`]; it
/// does not switch to asymptotic expansions.
pub fn mittag_leffler(alpha: f64, beta: f64, z: f64, ctl: &SeriesControl) -> Result<SpecialValue> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(invalid("mittag_leffler: alpha must be positive"));
    }
    if !beta.is_finite() || !z.is_finite() {
        return Err(Error::NonFinite("mittag_leffler"));
    }
    if z == 0.0 {
        return Ok(SpecialValue::exact(rgamma(beta)));
    }
    if z.abs() > ML_SERIES_CUTOFF {
        return Err(Error::NonConvergence {
            what: "mittag_leffler",
            terms: 0,
            estimate: f64::INFINITY,
        });
    }
    let integral_ok = z < 0.0 && alpha < 1.0 && beta >= alpha && beta <= 1.0;
    let series = ml_series(alpha, beta, z, ctl);
    if integral_ok && z <= -1.0 {
        match series {
            Ok(v) if v.value > 0.0 && cancellation(&v) <= ML_MAX_CANCELLATION => return Ok(v),
            _ => return ml_integral(alpha, beta, -z, ctl),
        }
    }
    series
}

fn ml_series(alpha: f64, beta: f64, z: f64, ctl: &SeriesControl) -> Result<SpecialValue> {
    let ln_abs_z = z.abs().ln();
    sum_series(ctl, "mittag_leffler", |k| {
        let arg = alpha * k as f64 + beta;
        let ln_zk = k as f64 * ln_abs_z;
        let env = ln_zk + rgamma_envelope_ln(arg);
        let t = if is_pole(arg) {
            0.0
        } else if ln_zk.abs() < 600.0 && arg.abs() < 160.0 {
            z.powi(k as i32) * rgamma(arg)
        } else {
            let (lg, sg) = ln_gamma_signed(arg);
            let sz = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            sz * sg * (ln_zk - lg).exp()
        };
        (t, env)
    })
}

fn ml_integral(alpha: f64, beta: f64, x: f64, ctl: &SeriesControl) -> Result<SpecialValue> {
    let p = (1.0 - beta) / alpha;
    let s1 = (PI * (1.0 - beta)).sin();
    let s2 = (PI * (1.0 - beta + alpha)).sin();
    let c = (PI * alpha).cos();
    let f = |r: f64| {
        if r == 0.0 {
            return if p == 0.0 { s2 / x } else { 0.0 };
        }
        r.powf(p) * (-r.powf(1.0 / alpha)).exp() * (r * s1 + x * s2) / (r * r + 2.0 * r * x * c + x * x)
    };
    let opts = quad::QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-13,
        max_subdivisions: 400,
    };
    let r = quad::half_line(&f, 1.0, &opts)?;
    let value = r.value / (alpha * PI);
    let error = (r.error / (alpha * PI)).max(4.0 * f64::EPSILON * value.abs());
    if error > ctl.target(value) {
        return Err(Error::Quadrature {
            what: "mittag_leffler",
            estimate: error,
        });
    }
    Ok(SpecialValue {
        value,
        error_estimate: error,
        terms_used: r.evaluations,
    })
}
