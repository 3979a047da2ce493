//! Gamma-function helpers with the reciprocal-gamma convention: `1/Γ(x)`
//! is exactly zero at the poles `x = 0, −1, −2, …`.

use std::f64::consts::PI;

/// Γ(x). Poles return `f64::INFINITY`.
pub fn gamma(x: f64) -> f64 {
    if is_pole(x) {
        return f64::INFINITY;
    }
    libm::tgamma(x)
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    let (lg, sign) = libm::lgamma_r(x);
    (lg, if sign < 0 { -1.0 } else { 1.0 })
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// 1/Γ(x), zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if is_pole(x) {
        return 0.0;
    }
    if x.abs() < 170.0 {
        return 1.0 / libm::tgamma(x);
    }
    if x > 0.0 {
        return (-ln_gamma(x)).exp();
    }
    // reflection: 1/Γ(x) = sin(πx) Γ(1−x) / π
    let s = sin_pi(x);
    let lg = ln_gamma(1.0 - x);
    s * (lg - PI.ln()).exp()
}

/// Upper bound on |1/Γ(x)| that is smooth across the poles:
/// `1/Γ(x)` for x > 0, `Γ(1−x)/π` otherwise.
pub(crate) fn rgamma_envelope_ln(x: f64) -> f64 {
    if x > 0.0 {
        -ln_gamma(x)
    } else {
        ln_gamma(1.0 - x) - PI.ln()
    }
}

pub(crate) fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}
