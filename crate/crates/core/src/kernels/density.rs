//! Single-kernel densities.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{admissible_kappa, check_t, check_x_nonneg, unit_interval, KernelValue, Method};
use crate::error::{invalid, Error, Result};
use crate::fracops::phi_alpha;
use crate::quad::{osc_half_line, OscOptions};
use crate::specfun::{m_wright_routed, SeriesControl};

/// `l_ν(x, t) = t^{−ν} W_{−ν,1−ν}(−x t^{−ν})`, `x ≥ 0`, `t > 0`.
/// At `x = 0` this is `Φ_ν(t)`.
pub fn l_density(nu: f64, x: f64, t: f64) -> Result<KernelValue> {
    unit_interval("nu", nu)?;
    check_x_nonneg(x)?;
    check_t(t)?;
    if x == 0.0 {
        return Ok(KernelValue::new(phi_alpha(nu, t)?, Method::ClosedForm, 0.0));
    }
    let s = t.powf(-nu);
    let (m, integral) = m_wright_routed(nu, x * s, &SeriesControl::default())?;
    let method = if integral { Method::Quadrature } else { Method::Series };
    Ok(KernelValue::new(m.value * s, method, m.error_estimate * s))
}

/// `h_ν(x, t) = ν·(t/x)·l_ν(t, x)` for `x > 0`; exactly 0 at `x = 0`.
pub fn h_density(nu: f64, x: f64, t: f64) -> Result<KernelValue> {
    unit_interval("nu", nu)?;
    check_x_nonneg(x)?;
    check_t(t)?;
    if x == 0.0 {
        return Ok(KernelValue::new(0.0, Method::ClosedForm, 0.0));
    }
    let l = l_density(nu, t, x)?;
    let f = nu * t / x;
    Ok(KernelValue::new(l.value * f, l.method, l.error_estimate * f))
}

/// Characteristic exponent `|ξ|^ν exp(−iπν/2·sign ξ)` of the totally
/// skewed ν-stable law; its continuation `ξ → iλ` gives `λ^ν`.
pub fn levy_exponent(nu: f64, xi: f64) -> Result<Complex64> {
    unit_interval("nu", nu)?;
    if !xi.is_finite() {
        return Err(Error::NonFinite("levy_exponent"));
    }
    if xi == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let r = xi.abs().powf(nu);
    let phase = -0.5 * PI * nu * xi.signum();
    Ok(Complex64::from_polar(r, phase))
}

/// Lamperti density `f_ν(x) = x^{ν−1} sin(πν) / (π(1 + 2x^ν cos πν + x^{2ν}))`.
pub fn lamperti(nu: f64, x: f64) -> Result<KernelValue> {
    unit_interval("nu", nu)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid("lamperti: x must be positive"));
    }
    let xn = x.powf(nu);
    let v = x.powf(nu - 1.0) * (PI * nu).sin() / (PI * (1.0 + 2.0 * xn * (PI * nu).cos() + xn * xn));
    Ok(KernelValue::new(v, Method::ClosedForm, 4.0 * f64::EPSILON * v))
}

/// Density of `|S_α(t)|`, `S_α` symmetric α-stable with symbol `|ξ|^α`:
/// `(2/π) ∫_0^∞ cos(ξx) e^{−tξ^α} dξ`.
pub fn folded_stable(alpha: f64, x: f64, t: f64) -> Result<KernelValue> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(invalid("folded_stable: alpha must lie in (0,2]"));
    }
    check_x_nonneg(x)?;
    check_t(t)?;
    let opts = OscOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        ..OscOptions::default()
    };
    // scale ξ by t^{−1/α} so the amplitude is e^{−u^α}
    let s = t.powf(-1.0 / alpha);
    let xs = x * s;
    let v = osc_half_line(&|u: f64| (-u.powf(alpha), u * xs), &opts)?;
    let value = 2.0 / PI * v.re * s;
    Ok(KernelValue::new(value, Method::Quadrature, opts.abs_tol + opts.rel_tol * value.abs()))
}

/// Pseudo-process kernel `v_n(x, t) = (1/2π) ∫ e^{−iζx + κ(−iζ)^n t} dζ`.
///
/// Even `n` with the wrong κ makes the symbol grow and is rejected. The
/// two half-lines are integrated separately; an imaginary part above
/// `10⁻⁸·|value|` is reported as an error.
pub fn pseudo_kernel(n: u32, kappa: i32, x: f64, t: f64) -> Result<KernelValue> {
    if n < 2 {
        return Err(invalid("pseudo_kernel: n must be at least 2"));
    }
    if kappa != 1 && kappa != -1 {
        return Err(invalid("pseudo_kernel: kappa must be +1 or -1"));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("pseudo_kernel"));
    }
    check_t(t)?;
    if let Some(k) = admissible_kappa(n) {
        if k != kappa {
            return Err(Error::Divergent(format!(
                "pseudo_kernel: n = {n} with kappa = {kappa:+} has a growing symbol"
            )));
        }
    }
    // (−i)^n
    let rot = match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    // rescale ζ = u·t^{−1/n} so the symbol no longer depends on t
    let s = t.powf(-1.0 / n as f64);
    let xs = x * s;
    let c = rot * kappa as f64;
    let opts = OscOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        ..OscOptions::default()
    };
    let nn = n as i32;
    // ζ > 0: exponent c u^n − i u xs ; ζ < 0 (ζ = −u): c (−u)^n + i u xs
    let sign_neg = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let plus = osc_half_line(&|u: f64| {
        let un = u.powi(nn);
        (c.re * un, c.im * un - u * xs)
    }, &opts)?;
    let minus = osc_half_line(&|u: f64| {
        let un = sign_neg * u.powi(nn);
        (c.re * un, c.im * un + u * xs)
    }, &opts)?;
    let total = (plus + minus) * (s / (2.0 * PI));
    let tol = 1e-8 * total.re.abs().max(1e-12);
    if total.im.abs() > tol {
        return Err(Error::ComplexResidue {
            what: "pseudo_kernel",
            residue: total.im.abs(),
        });
    }
    Ok(KernelValue::new(total.re, Method::Quadrature, opts.abs_tol + opts.rel_tol * total.re.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::airy_ai;
    use approx::assert_relative_eq;

    fn gauss_l(x: f64, t: f64) -> f64 {
        (-x * x / (4.0 * t)).exp() / (PI * t).sqrt()
    }

    #[test]
    fn l_half_is_gaussian() {
        for &(x, t) in &[(0.0, 1.0), (0.5, 1.0), (3.0, 0.5), (10.0, 0.2), (1.0, 10.0)] {
            let v = l_density(0.5, x, t).unwrap().value;
            assert_relative_eq!(v, gauss_l(x, t), max_relative = 1e-10);
        }
    }

    #[test]
    fn h_half_is_levy() {
        // h_{1/2}(x,t) = t e^{−t²/(4x)} / (2√π x^{3/2})
        assert_relative_eq!(
            h_density(0.5, 1.0, 1.0).unwrap().value,
            (-0.25f64).exp() / (2.0 * PI.sqrt()),
            max_relative = 1e-12
        );
        for &(x, t) in &[(0.05f64, 1.0f64), (0.3, 2.0), (7.0, 0.4)] {
            let expect = t * (-t * t / (4.0 * x)).exp() / (2.0 * PI.sqrt() * x.powf(1.5));
            assert_relative_eq!(h_density(0.5, x, t).unwrap().value, expect, max_relative = 1e-10);
        }
        assert_eq!(h_density(0.5, 0.0, 1.0).unwrap().value, 0.0);
    }

    #[test]
    fn levy_exponent_properties() {
        assert_eq!(levy_exponent(0.3, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_relative_eq!(levy_exponent(0.5, 1.0).unwrap().norm(), 1.0, max_relative = 1e-15);
        // ψ(ξ) = (−iξ)^ν on the real line; at ξ = iλ this is λ^ν
        let xi = 2.7;
        let direct = Complex64::new(0.0, -xi).powf(0.5);
        let v = levy_exponent(0.5, xi).unwrap();
        assert_relative_eq!(v.re, direct.re, max_relative = 1e-14);
        assert_relative_eq!(v.im, direct.im, max_relative = 1e-14);
        let lam: f64 = 3.0;
        let cont = Complex64::new(0.0, -1.0) * Complex64::new(0.0, lam);
        assert_relative_eq!(cont.powf(0.5).re, lam.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn lamperti_half() {
        assert_relative_eq!(lamperti(0.5, 1.0).unwrap().value, 1.0 / (2.0 * PI), max_relative = 1e-15);
    }

    #[test]
    fn folded_stable_gauss_and_cauchy() {
        for &(x, t) in &[(0.0, 1.0), (0.7, 1.0), (2.0, 0.5)] {
            assert_relative_eq!(folded_stable(2.0, x, t).unwrap().value, gauss_l(x, t), max_relative = 1e-9);
            let c = 2.0 / PI * t / (t * t + x * x);
            assert_relative_eq!(folded_stable(1.0, x, t).unwrap().value, c, max_relative = 1e-9);
        }
    }

    #[test]
    fn pseudo_heat_and_airy() {
        let v = pseudo_kernel(2, 1, 0.8, 1.0).unwrap().value;
        assert_relative_eq!(v, (-0.16f64).exp() / (4.0 * PI).sqrt(), max_relative = 1e-9);
        for &(x, t) in &[(0.0f64, 1.0f64), (-2.0, 1.0), (1.5, 0.5), (3.0, 2.0)] {
            for &k in &[1, -1] {
                let c = (3.0 * t).cbrt();
                let expect = airy_ai(-(k as f64) * x / c).unwrap().value / c;
                let v = pseudo_kernel(3, k, x, t).unwrap().value;
                assert!((v - expect).abs() < 1e-8, "x={x} t={t} k={k}: {v} vs {expect}");
            }
        }
        assert!(matches!(pseudo_kernel(2, -1, 0.0, 1.0), Err(Error::Divergent(_))));
    }
}
