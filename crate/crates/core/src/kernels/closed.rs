//! Closed forms `u1`, `u2`, `u3` of the third-order compositions.
//!
//! * `u1(x,t) = (1/π)√(x/t)·K_{1/3}(2x^{3/2}/(3^{3/2}√t))`, which equals
//!   `l_{1/3}(x, t)` and solves `∂_t u + ∂³_x u = 0` on `x > 0`.
//! * `u2(x,t) = (√3/(2√π))·x^{−1}·e^{z/2}𝒲_{−1/2,1/6}(z)`,
//!   `z = 4x³/(27t²)`, which equals `∫ u1(x,s) h_{1/2}(s,t) ds`.
//! * `u3(x,t) = (2/(3^{3/2}π))·t/(x² + xt + t²)`, the simplified form of
//!   `(2/(3^{3/2}π))·t(x−t)/(x³−t³)`.

use std::f64::consts::PI;

use super::{check_t, KernelValue, Method};
use crate::error::{invalid, Result};
use crate::specfun::{bessel_k, whittaker_w_scaled};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    U1,
    U2,
    U3,
}

fn check_x_pos(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("x = {x} must be finite and positive")))
    }
}

/// Evaluates one of the closed forms for `x, t > 0`.
pub fn u_closed(which: ClosedForm, x: f64, t: f64) -> Result<KernelValue> {
    check_x_pos(x)?;
    check_t(t)?;
    match which {
        ClosedForm::U1 => {
            let arg = 2.0 / 3f64.powf(1.5) * x.powf(1.5) / t.sqrt();
            let k = bessel_k(1.0 / 3.0, arg)?;
            let f = (x / t).sqrt() / PI;
            Ok(KernelValue::new(k.value * f, Method::ClosedForm, k.error_estimate * f))
        }
        ClosedForm::U2 => {
            let z = 4.0 * x.powi(3) / (27.0 * t * t);
            let w = whittaker_w_scaled(-0.5, 1.0 / 6.0, z)?;
            let f = 3f64.sqrt() / (2.0 * PI.sqrt()) / x;
            Ok(KernelValue::new(w.value * f, Method::ClosedForm, w.error_estimate * f))
        }
        ClosedForm::U3 => {
            let v = 2.0 / (3f64.powf(1.5) * PI) * t / (x * x + x * t + t * t);
            Ok(KernelValue::new(v, Method::ClosedForm, 4.0 * f64::EPSILON * v))
        }
    }
}

/// `(1/4)√(3/(xπ))·exp(x³/(27t²))·𝒲_{−1/2,1/6}(2x³/(27t²))` — an
/// alternative expression for `u2` that does *not* agree with the
/// composition integral; kept for comparison.
pub fn u2_printed(x: f64, t: f64) -> Result<KernelValue> {
    check_x_pos(x)?;
    check_t(t)?;
    let z = 2.0 * x.powi(3) / (27.0 * t * t);
    // exp(x³/27t²) = e^{z/2}
    let w = whittaker_w_scaled(-0.5, 1.0 / 6.0, z)?;
    let f = 0.25 * (3.0 / (x * PI)).sqrt();
    Ok(KernelValue::new(w.value * f, Method::ClosedForm, w.error_estimate * f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{h_density, l_density};
    use crate::kernels::compose::log_substitution;
    use approx::assert_relative_eq;

    #[test]
    fn u3_value() {
        let v = u_closed(ClosedForm::U3, 1.0, 1.0).unwrap().value;
        assert_relative_eq!(v, 2.0 / (3f64.powf(2.5) * PI), max_relative = 1e-15);
        // 2/(3^{5/2}π) = 0.0408392; the commonly quoted 0.040841 is off in
        // the last digit
        assert!((v - 0.040841).abs() < 2.5e-6);
    }

    #[test]
    fn u1_is_l_one_third() {
        for &(x, t) in &[(0.2, 1.0), (1.0, 1.0), (2.5, 0.7), (4.0, 3.0)] {
            let a = u_closed(ClosedForm::U1, x, t).unwrap().value;
            let b = l_density(1.0 / 3.0, x, t).unwrap().value;
            assert_relative_eq!(a, b, max_relative = 1e-9);
        }
    }

    #[test]
    fn u2_matches_composition_and_printed_form_does_not() {
        let (x, t) = (1.0, 1.0);
        let comp = log_substitution(
            |s| Ok(u_closed(ClosedForm::U1, x, s)?.value * h_density(0.5, s, t)?.value),
            0.0,
            1e-11,
        )
        .unwrap()
        .0;
        let v = u_closed(ClosedForm::U2, x, t).unwrap().value;
        assert_relative_eq!(v, comp, max_relative = 1e-8);
        let p = u2_printed(x, t).unwrap().value;
        assert!((p / comp - 1.0).abs() > 0.1);
    }
}
