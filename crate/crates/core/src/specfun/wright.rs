//! Wright function `W_{λ,μ}(z) = Σ z^k / (k! Γ(λk+μ))` and the
//! M-Wright function `M_ν(z) = W_{−ν,1−ν}(−z)`.

use std::f64::consts::PI;

use super::series::{cancellation, sum_series, PowerOverFactorial};
use super::{rgamma, rgamma_envelope_ln, SeriesControl, SpecialValue};
use crate::error::{invalid, Error, Result};
use crate::quad;

/// `W_{λ,μ}(z)` by direct summation (λ > −1).
pub fn wright(lambda: f64, mu: f64, z: f64, ctl: &SeriesControl) -> Result<SpecialValue> {
    if !(lambda > -1.0) || !lambda.is_finite() {
        return Err(invalid("wright: lambda must exceed -1"));
    }
    if !mu.is_finite() || !z.is_finite() {
        return Err(Error::NonFinite("wright"));
    }
    if z == 0.0 {
        return Ok(SpecialValue::exact(rgamma(mu)));
    }
    let mut p = PowerOverFactorial::new(z);
    sum_series(ctl, "wright", |k| {
        if k > 0 {
            p.step();
        }
        let arg = lambda * k as f64 + mu;
        (p.times_rgamma(arg), p.ln_abs() + rgamma_envelope_ln(arg))
    })
}

/// Largest acceptable cancellation factor `Σ|t_k|/|Σt_k|` for the
/// series route of [`m_wright`]; beyond it the integral route is used.
const M_WRIGHT_MAX_CANCELLATION: f64 = 4.0e3;

/// `M_ν(z) = W_{−ν,1−ν}(−z)` for `0 < ν < 1`, `z ≥ 0`.
///
/// Small arguments use the Wright series. Where the series would lose
/// more than about four digits to cancellation, the value comes from the
/// positive integral representation
///
/// `M_ν(z) = z^{ν/(1−ν)} / (π(1−ν)) ∫_0^π A(φ) e^{−z^{1/(1−ν)} A(φ)} dφ`,
/// `A(φ) = (sin νφ / sin φ)^{1/(1−ν)} · sin((1−ν)φ) / sin νφ`,
///
/// whose integrand is non-negative, so it keeps full relative accuracy
/// far into the tail.
pub fn m_wright(nu: f64, z: f64, ctl: &SeriesControl) -> Result<SpecialValue> {
    m_wright_routed(nu, z, ctl).map(|(v, _)| v)
}

/// [`m_wright`] together with a flag telling whether the integral
/// representation (rather than the series) produced the value.
pub(crate) fn m_wright_routed(nu: f64, z: f64, ctl: &SeriesControl) -> Result<(SpecialValue, bool)> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid("m_wright: nu must lie in (0,1)"));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(invalid("m_wright: z must be finite and non-negative"));
    }
    if z == 0.0 {
        return Ok((SpecialValue::exact(rgamma(1.0 - nu)), false));
    }
    if z < 1.0 {
        // Terms decay immediately; the series is always well conditioned.
        return wright(-nu, 1.0 - nu, -z, ctl).map(|v| (v, false));
    }
    match wright(-nu, 1.0 - nu, -z, ctl) {
        Ok(v) if v.value > 0.0 && cancellation(&v) <= M_WRIGHT_MAX_CANCELLATION => Ok((v, false)),
        _ => m_wright_integral(nu, z, ctl).map(|v| (v, true)),
    }
}

/// `ln M_ν(z)`, finite even where `M_ν(z)` underflows.
pub fn m_wright_ln(nu: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    let (v, _) = m_wright_routed(nu, z, ctl)?;
    if v.value > 1e-250 {
        return Ok(v.value.ln());
    }
    let (r, ln_pref) = m_wright_integral_parts(nu, z)?;
    Ok(r.value.ln() + ln_pref)
}

/// `A(φ)` of the integral representation; increasing on (0, π).
fn kanter_a(nu: f64, phi: f64) -> f64 {
    let q = 1.0 / (1.0 - nu);
    if phi == 0.0 {
        return (1.0 - nu) * nu.powf(nu * q);
    }
    let snp = (nu * phi).sin();
    (snp / phi.sin()).powf(q) * ((1.0 - nu) * phi).sin() / snp
}

fn m_wright_integral(nu: f64, z: f64, ctl: &SeriesControl) -> Result<SpecialValue> {
    let q = 1.0 / (1.0 - nu);
    let a0 = kanter_a(nu, 0.0);
    let ln_pref = nu * q * z.ln() - (PI * (1.0 - nu)).ln() - z.powf(q) * a0;
    if ln_pref < -745.0 {
        return Ok(SpecialValue::exact(0.0));
    }
    let (r, ln_pref) = m_wright_integral_parts(nu, z)?;
    let value = r.value * ln_pref.exp();
    let error = (r.error * ln_pref.exp()).max(4.0 * f64::EPSILON * value.abs());
    if error > ctl.target(value) && value.abs() > 1e-300 {
        return Err(Error::Quadrature {
            what: "m_wright",
            estimate: error,
        });
    }
    Ok(SpecialValue {
        value,
        error_estimate: error,
        terms_used: r.evaluations,
    })
}

/// The integral `∫ A e^{−Z(A−A(0))} dφ` and the log of its prefactor.
fn m_wright_integral_parts(nu: f64, z: f64) -> Result<(quad::QuadResult, f64)> {
    let q = 1.0 / (1.0 - nu);
    let big_z = z.powf(q);
    let a0 = kanter_a(nu, 0.0);
    let ln_pref = nu * q * z.ln() - (PI * (1.0 - nu)).ln() - big_z * a0;
    // The integrand A(φ)·exp(−Z(A(φ)−A(0))) is concentrated near φ = 0
    // when Z is large; split there so the adaptive rule sees the peak.
    let f = |phi: f64| {
        let a = kanter_a(nu, phi);
        if !a.is_finite() {
            return 0.0;
        }
        a * (-big_z * (a - a0)).exp()
    };
    let width = (1.0 / big_z.max(1.0)).sqrt().min(1.0);
    let mut breaks = vec![0.0];
    let mut b = width;
    while b < PI {
        breaks.push(b);
        b *= 4.0;
    }
    breaks.push(PI);
    // Z·(A(φ) − A(0)) carries an absolute rounding error of about ε·Z·A(0);
    // the relative tolerance cannot usefully go below that.
    let opts = quad::QuadOptions {
        abs_tol: 0.0,
        rel_tol: (1e-13f64).max(4.0 * f64::EPSILON * big_z * a0.abs()),
        max_subdivisions: 400,
    };
    let r = quad::integrate_breaks(&f, &breaks, &opts)?;
    Ok((r, ln_pref))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn reduces_to_exponential() {
        let v = wright(0.0, 1.0, 1.0, &ctl()).unwrap();
        assert_relative_eq!(v.value, 1f64.exp(), max_relative = 1e-14);
    }

    #[test]
    fn gaussian_case() {
        // W_{−1/2,1/2}(−z) = e^{−z²/4}/√π
        for &z in &[0.0, 0.3, 1.0, 2.5] {
            let v = wright(-0.5, 0.5, -z, &ctl()).unwrap();
            let expect = (-z * z / 4.0).exp() / PI.sqrt();
            assert_relative_eq!(v.value, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn at_zero_only_first_term() {
        let v = wright(0.7, 2.5, 0.0, &ctl()).unwrap();
        assert_relative_eq!(v.value, rgamma(2.5), max_relative = 1e-15);
        assert!(wright(-1.0, 1.0, 1.0, &ctl()).is_err());
    }

    #[test]
    fn m_wright_switches_route_without_a_seam() {
        for &nu in &[0.3, 0.5, 0.7] {
            for &z in &[1.0, 2.0, 4.0, 8.0] {
                let series = wright(-nu, 1.0 - nu, -z, &ctl());
                let integral = m_wright_integral(nu, z, &ctl()).unwrap();
                if let Ok(s) = series {
                    if cancellation(&s) < 1e3 {
                        assert_relative_eq!(s.value, integral.value, max_relative = 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn m_wright_log_below_underflow() {
        for &z in &[3.0, 40.0, 100.0] {
            let v = m_wright_ln(0.5, z, &ctl()).unwrap();
            assert_relative_eq!(v, -z * z / 4.0 - PI.sqrt().ln(), max_relative = 1e-12);
        }
    }

    #[test]
    fn m_wright_gaussian_deep_tail() {
        for &z in &[10.0, 20.0, 40.0] {
            let v = m_wright(0.5, z, &ctl()).unwrap();
            let expect = (-z * z / 4.0).exp() / PI.sqrt();
            assert_relative_eq!(v.value, expect, max_relative = 1e-11);
        }
    }
}
