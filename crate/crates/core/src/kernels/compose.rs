//! Subordinated compositions `∫_0^∞ A(x, s) B(s, t) ds`.

use std::cell::RefCell;

use super::density::{h_density, l_density};
use super::{check_t, check_x_nonneg, unit_interval, KernelValue, Method};
use crate::error::{invalid, Error, Result};
use crate::quad::{integrate_breaks, QuadOptions};

/// `∫_0^∞ g(s) ds` with `s = e^y`. The y-range is found by stepping out
/// from `y0` in unit steps until the integrand has fallen below
/// `10⁻¹⁸` of its peak on both sides; the integrand must decay at least
/// exponentially in y at both ends.
pub(crate) fn log_substitution<G>(g: G, y0: f64, rel_tol: f64) -> Result<(f64, f64)>
where
    G: Fn(f64) -> Result<f64>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let f = |y: f64| -> f64 {
        let s = y.exp();
        match g(s) {
            Ok(v) => v * s,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let step = 1.0;
    let mut peak = f(y0).abs();
    let mut lo = y0;
    let mut hi = y0;
    let walk = |start: f64, dir: f64, peak: &mut f64| -> Result<f64> {
        let mut y = start;
        let mut prev = f64::INFINITY;
        for _ in 0..400 {
            y += dir * step;
            let v = f(y).abs();
            if let Some(e) = failure.borrow_mut().take() {
                return Err(e);
            }
            *peak = peak.max(v);
            if v <= 1e-18 * *peak && v <= prev {
                return Ok(y);
            }
            prev = v;
        }
        Err(Error::Quadrature {
            what: "composition range search",
            estimate: f64::NAN,
        })
    };
    hi = walk(hi, 1.0, &mut peak)?;
    lo = walk(lo, -1.0, &mut peak)?;
    let n = ((hi - lo) / step).round().max(1.0) as usize;
    let breaks: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let opts = QuadOptions {
        abs_tol: 1e-18 * peak,
        rel_tol,
        max_subdivisions: 2000,
    };
    let r = integrate_breaks(&f, &breaks, &opts)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok((r.value, r.error))
}

/// `∫_0^∞ g(s) ds` for a non-oscillatory integrand that decays at least
/// like a power of `s` at both ends, e.g. a product of two kernels
/// `A(x, s)·B(s, t)`. `s_center` should lie near the bulk of the
/// integrand; the range is located by walking outward in `ln s`.
pub fn subordinate<G>(g: G, s_center: f64, rel_tol: f64) -> Result<KernelValue>
where
    G: Fn(f64) -> Result<f64>,
{
    if !(s_center > 0.0) || !s_center.is_finite() {
        return Err(invalid("subordinate: s_center must be positive"));
    }
    if !(rel_tol > 0.0) {
        return Err(invalid("subordinate: rel_tol must be positive"));
    }
    let (v, e) = log_substitution(g, s_center.ln(), rel_tol)?;
    Ok(KernelValue::new(v, Method::Quadrature, e))
}

const COMPOSE_REL_TOL: f64 = 1e-11;

/// `𝔣_{ν1,ν2}(x, t) = ∫_0^∞ h_{ν2}(x, s) l_{ν1}(s, t) ds` for `x > 0`.
///
/// Near the origin `𝔣 ~ Φ_{ν1}(t)·x^{ν2−1}/Γ(ν2)`, which diverges, so
/// `x = 0` is rejected.
pub fn compose_density(nu1: f64, nu2: f64, x: f64, t: f64) -> Result<KernelValue> {
    unit_interval("nu1", nu1)?;
    unit_interval("nu2", nu2)?;
    check_x_nonneg(x)?;
    check_t(t)?;
    if x == 0.0 {
        return Err(Error::Singular(
            "compose_density diverges like x^(nu2-1) at x = 0".into(),
        ));
    }
    let y0 = 0.5 * (nu2 * x.ln() + nu1 * t.ln());
    let (v, e) = log_substitution(
        |s| Ok(h_density(nu2, x, s)?.value * l_density(nu1, s, t)?.value),
        y0,
        COMPOSE_REL_TOL,
    )?;
    Ok(KernelValue::new(v, Method::Quadrature, e))
}

/// `𝔲_{m,n}(x, t) = ∫_0^∞ l_{1/m}(x, s) h_{1/n}(s, t) ds`.
///
/// `n = 1` returns `l_{1/m}(x, t)` and `m = 1` returns `h_{1/n}(x, t)`
/// (the degenerate kernels are point masses).
pub fn u_mn(m: u32, n: u32, x: f64, t: f64) -> Result<KernelValue> {
    if m == 0 || n == 0 {
        return Err(invalid("u_mn: m and n must be positive"));
    }
    check_x_nonneg(x)?;
    check_t(t)?;
    match (m, n) {
        (1, 1) => Err(invalid("u_mn: m = n = 1 is a point mass")),
        (m, 1) => l_density(1.0 / m as f64, x, t),
        (1, n) => h_density(1.0 / n as f64, x, t),
        (m, n) => {
            let a = 1.0 / m as f64;
            let b = 1.0 / n as f64;
            let xs = if x > 0.0 { x.ln() / a } else { 0.0 };
            let y0 = 0.5 * (xs + t.ln() / b);
            let (v, e) = log_substitution(
                |s| Ok(l_density(a, x, s)?.value * h_density(b, s, t)?.value),
                y0,
                COMPOSE_REL_TOL,
            )?;
            Ok(KernelValue::new(v, Method::Quadrature, e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::lamperti;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn equal_orders_give_lamperti() {
        let (x, t) = (1.0, 2.0);
        let v = compose_density(0.5, 0.5, x, t).unwrap().value;
        assert_relative_eq!(v, lamperti(0.5, x / t).unwrap().value / t, max_relative = 1e-9);
        assert!(compose_density(0.5, 0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn u22_is_folded_cauchy() {
        assert_relative_eq!(u_mn(2, 2, 0.0, 1.0).unwrap().value, 2.0 / PI, max_relative = 1e-9);
        let (x, t) = (0.7, 1.3);
        assert_relative_eq!(
            u_mn(2, 2, x, t).unwrap().value,
            2.0 / PI * t / (t * t + x * x),
            max_relative = 1e-9
        );
    }

    #[test]
    fn degenerate_ends() {
        assert_eq!(u_mn(4, 1, 0.3, 1.0).unwrap().value, l_density(0.25, 0.3, 1.0).unwrap().value);
        assert_eq!(u_mn(1, 2, 0.3, 1.0).unwrap().value, h_density(0.5, 0.3, 1.0).unwrap().value);
    }
}
