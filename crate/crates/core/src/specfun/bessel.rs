//! Modified Bessel functions `I_ν` (series) and `K_ν`.

use std::f64::consts::PI;

use super::series::{sum_series, PowerOverFactorial};
use super::{rgamma, rgamma_envelope_ln, sin_pi, SeriesControl, SpecialValue};
use crate::error::{invalid, Error, Result};
use crate::quad::{self, QuadOptions};

/// `I_ν(z) = Σ (z/2)^{2k+ν} / (k! Γ(k+ν+1))` for `z ≥ 0`.
pub fn bessel_i(nu: f64, z: f64, ctl: &SeriesControl) -> Result<SpecialValue> {
    if !(z >= 0.0) || !z.is_finite() || !nu.is_finite() {
        return Err(invalid("bessel_i: z must be finite and non-negative"));
    }
    if z == 0.0 {
        // (z/2)^ν → 1 for ν = 0, 0 for ν > 0; for ν < 0 the value is
        // infinite unless 1/Γ(ν+1) vanishes (negative integer order)
        return if nu == 0.0 {
            Ok(SpecialValue::exact(1.0))
        } else if nu > 0.0 || rgamma(nu + 1.0) == 0.0 {
            Ok(SpecialValue::exact(0.0))
        } else {
            Err(Error::Singular("bessel_i: negative order at z = 0".into()))
        };
    }
    let w = 0.25 * z * z;
    let lead = (0.5 * z).powf(nu);
    let ln_lead = nu * (0.5 * z).ln();
    let mut p = PowerOverFactorial::new(w);
    let v = sum_series(ctl, "bessel_i", |k| {
        if k > 0 {
            p.step();
        }
        let arg = k as f64 + nu + 1.0;
        (p.times_rgamma(arg) * lead, p.ln_abs() + rgamma_envelope_ln(arg) + ln_lead)
    })?;
    Ok(v)
}

/// Arguments above this use the integral representation of `K_ν`.
const K_SERIES_MAX_Z: f64 = 2.0;
/// Offset used to approach integer orders from both sides.
const INTEGER_ORDER_EPS: f64 = 1e-6;

/// `K_ν(z)` for `z > 0`.
///
/// For `z ≤ 2` and non-integer ν this is `(π/2)(I_{−ν} − I_ν)/sin(νπ)`;
/// integer orders average `K_{ν±10⁻⁶}`. For larger `z` the difference of
/// the two I-series cancels catastrophically, so the value comes from
/// `K_ν(z) = ∫_0^∞ e^{−z cosh u} cosh(νu) du`.
pub fn bessel_k(nu: f64, z: f64) -> Result<SpecialValue> {
    if !(z > 0.0) || !z.is_finite() || !nu.is_finite() {
        return Err(invalid("bessel_k: z must be finite and positive"));
    }
    let nu = nu.abs();
    if z > K_SERIES_MAX_Z {
        return bessel_k_integral(nu, z);
    }
    if nu == nu.round() {
        let a = bessel_k_series(nu - INTEGER_ORDER_EPS, z)?;
        let b = bessel_k_series(nu + INTEGER_ORDER_EPS, z)?;
        let value = 0.5 * (a.value + b.value);
        // the average is off by O(ε²·∂²K/∂ν²)
        let err = a.error_estimate.max(b.error_estimate) + 0.5 * (a.value - b.value).abs() * INTEGER_ORDER_EPS;
        return Ok(SpecialValue {
            value,
            error_estimate: err,
            terms_used: a.terms_used + b.terms_used,
        });
    }
    bessel_k_series(nu, z)
}

fn bessel_k_series(nu: f64, z: f64) -> Result<SpecialValue> {
    let ctl = SeriesControl {
        abs_tol: 1e-16,
        rel_tol: 1e-15,
        max_terms: 2000,
    };
    let im = bessel_i(-nu, z, &ctl)?;
    let ip = bessel_i(nu, z, &ctl)?;
    let s = sin_pi(nu);
    let f = 0.5 * PI / s;
    Ok(SpecialValue {
        value: f * (im.value - ip.value),
        error_estimate: f.abs() * (im.error_estimate + ip.error_estimate),
        terms_used: im.terms_used + ip.terms_used,
    })
}

fn bessel_k_integral(nu: f64, z: f64) -> Result<SpecialValue> {
    // e^{−z} ∫ e^{−z(cosh u − 1)} cosh(νu) du, truncated where the
    // integrand has fallen below e^{−40} of its peak
    let u_max = (1.0 + (40.0 + nu * 40.0) / z).acosh().max(1.0);
    let f = |u: f64| (-z * (u.cosh() - 1.0) + nu * u).exp() * 0.5 * (1.0 + (-2.0 * nu * u).exp());
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-14,
        max_subdivisions: 200,
    };
    let r = quad::integrate_breaks(&f, &[0.0, 0.25 * u_max, u_max], &opts)?;
    let scale = (-z).exp();
    Ok(SpecialValue {
        value: r.value * scale,
        error_estimate: r.error * scale + 4.0 * f64::EPSILON * r.value * scale,
        terms_used: r.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn i_elementary() {
        let c = SeriesControl::default();
        assert_eq!(bessel_i(0.0, 0.0, &c).unwrap().value, 1.0);
        assert_eq!(bessel_i(1.0, 0.0, &c).unwrap().value, 0.0);
        let v = bessel_i(0.5, 1.0, &c).unwrap().value;
        assert_relative_eq!(v, (2.0 / PI).sqrt() * 1f64.sinh(), max_relative = 1e-13);
        let v = bessel_i(-0.5, 3.0, &c).unwrap().value;
        assert_relative_eq!(v, (2.0 / (PI * 3.0)).sqrt() * 3f64.cosh(), max_relative = 1e-13);
    }

    #[test]
    fn k_half_integer_both_routes() {
        for &z in &[0.1, 1.0, 1.9, 2.1, 5.0, 30.0, 300.0] {
            let v = bessel_k(0.5, z).unwrap().value;
            let expect = (PI / (2.0 * z)).sqrt() * (-z).exp();
            assert_relative_eq!(v, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn k_integer_order_and_symmetry() {
        // K_0(1) and K_1(1) reference values
        assert_relative_eq!(bessel_k(0.0, 1.0).unwrap().value, 0.421_024_438_240_708_3, max_relative = 1e-9);
        assert_relative_eq!(bessel_k(1.0, 1.0).unwrap().value, 0.601_907_230_197_234_6, max_relative = 1e-9);
        assert_relative_eq!(bessel_k(1.0, 4.0).unwrap().value, 0.012_483_498_887_268_43, max_relative = 1e-12);
        let a = bessel_k(1.0 / 3.0, 1.5).unwrap().value;
        let b = bessel_k(-1.0 / 3.0, 1.5).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn k_continuous_across_route_switch() {
        let lo = bessel_k(1.0 / 3.0, 2.0).unwrap().value;
        let hi = bessel_k_integral(1.0 / 3.0, 2.0).unwrap().value;
        assert_relative_eq!(lo, hi, max_relative = 1e-12);
    }

    #[test]
    fn k_rejects_non_positive_argument() {
        assert!(bessel_k(0.5, 0.0).is_err());
        assert!(bessel_k(0.5, -1.0).is_err());
    }
}
