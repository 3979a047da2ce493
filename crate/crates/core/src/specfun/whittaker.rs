//! Confluent hypergeometric `U(a, b, z)` and Whittaker `𝒲_{κ,μ}(z)`.

use super::{rgamma, SpecialValue};
use crate::error::{invalid, Error, Result};
use crate::quad::{self, QuadOptions};

/// `U(a, b, z)` for `a ≥ 0`, `z > 0` from
/// `U = z^{−a}/Γ(a) ∫_0^∞ e^{−s} s^{a−1} (1 + s/z)^{b−a−1} ds`.
pub fn hyperu(a: f64, b: f64, z: f64) -> Result<SpecialValue> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(invalid("hyperu: z must be finite and positive"));
    }
    if a == 0.0 {
        return Ok(SpecialValue::exact(1.0));
    }
    if !(a > 0.0) {
        return Err(invalid("hyperu: the integral representation needs a > 0"));
    }
    let e = b - a - 1.0;
    let f = |s: f64| (-s + (a - 1.0) * s.ln() + e * (s / z).ln_1p()).exp();
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-13,
        max_subdivisions: 400,
    };
    let r = quad::half_line(&f, 1.0, &QuadOptions { abs_tol: 1e-300, ..opts })?;
    let scale = z.powf(-a) * rgamma(a);
    let value = r.value * scale;
    if !value.is_finite() {
        return Err(Error::NonFinite("hyperu"));
    }
    Ok(SpecialValue {
        value,
        error_estimate: (r.error * scale).abs() + 4.0 * f64::EPSILON * value.abs(),
        terms_used: r.evaluations,
    })
}

/// `e^{z/2}·𝒲_{κ,μ}(z) = z^{μ+1/2} U(1/2 − κ + μ, 2μ + 1, z)`, which
/// stays finite when the callers multiply by a growing exponential.
pub fn whittaker_w_scaled(kappa: f64, mu: f64, z: f64) -> Result<SpecialValue> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(invalid("whittaker_w: z must be finite and positive"));
    }
    let u = hyperu(0.5 - kappa + mu, 2.0 * mu + 1.0, z)?;
    Ok(u.scaled(z.powf(mu + 0.5)))
}

/// `𝒲_{κ,μ}(z) = z^{μ+1/2} e^{−z/2} U(1/2 − κ + μ, 2μ + 1, z)` for `z > 0`.
pub fn whittaker_w(kappa: f64, mu: f64, z: f64) -> Result<SpecialValue> {
    Ok(whittaker_w_scaled(kappa, mu, z)?.scaled((-0.5 * z).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn degenerate_u_is_one() {
        // 1/2 − κ + μ = 0
        let (kappa, mu, z) = (0.75, 0.25, 1.7);
        let w = whittaker_w(kappa, mu, z).unwrap().value;
        assert_relative_eq!(w, z.powf(mu + 0.5) * (-z / 2.0).exp(), max_relative = 1e-15);
    }

    #[test]
    fn u_reduces_to_power_when_b_equals_a_plus_one() {
        // U(a, a+1, z) = z^{−a}
        let v = hyperu(0.7, 1.7, 2.3).unwrap().value;
        assert_relative_eq!(v, 2.3f64.powf(-0.7), max_relative = 1e-12);
    }

    #[test]
    fn whittaker_minus_half_one_sixth_at_two() {
        // 𝒲_{−1/2,1/6}(2) from the U integral, cross-checked against an
        // independent value of U(7/6, 4/3, 2) (mpmath hyperu, 20 digits)
        let u = hyperu(7.0 / 6.0, 4.0 / 3.0, 2.0).unwrap().value;
        assert_relative_eq!(u, 0.324_875_213_809_750_44, max_relative = 1e-10);
        let w = whittaker_w(-0.5, 1.0 / 6.0, 2.0).unwrap().value;
        assert_relative_eq!(w, 2f64.powf(2.0 / 3.0) * (-1f64).exp() * u, max_relative = 1e-14);
    }
}
