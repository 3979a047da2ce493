//! Boundary values and boundary derivatives, obtained as limits by
//! polynomial (Neville) extrapolation over `z_j = z_0·2^{−j}`, `j = 0..4`.

use super::{fmt_num, BoundaryCheck, EquationId, EquationSpec};
use crate::error::Result;
use crate::fracops::phi_alpha;
use crate::kernels::{compose_density, h_density, l_density};
use crate::specfun::gamma;

/// Tolerance for the boundary values `l_ν(0⁺, t) = Φ_ν(t)`.
pub const BOUNDARY_VALUE_TOL: f64 = 1e-6;
/// Bound for `h_ν(0⁺, t) = 0`.
pub const VANISHING_TOL: f64 = 1e-8;

const LIMIT_POINTS: usize = 5;
const FIXED: [f64; 3] = [0.5, 1.0, 2.0];

/// Value at 0 of the interpolating polynomial through `(z_j, v_j)`, and
/// the change contributed by the last point (a size estimate of the
/// extrapolation error).
fn neville_at_zero(z: &[f64], v: &[f64]) -> (f64, f64) {
    let n = z.len();
    let mut p = v.to_vec();
    let mut prev_top = p[n - 1];
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (z[i + m] * p[i] - z[i] * p[i + 1]) / (z[i + m] - z[i]);
        }
        if m == n - 2 {
            prev_top = p[1];
        }
    }
    (p[0], (p[0] - prev_top).abs())
}

/// `d^k/dz^k f` at `z` by the central difference of step `s`.
fn central(f: &dyn Fn(f64) -> Result<f64>, k: usize, z: f64, s: f64) -> Result<f64> {
    let mut acc = 0.0;
    let mut c = 1.0;
    for i in 0..=k {
        let zi = z + (k as f64 / 2.0 - i as f64) * s;
        let sgn = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += sgn * c * f(zi)?;
        c = c * (k - i) as f64 / (i + 1) as f64;
    }
    Ok(acc / s.powi(k as i32))
}

/// `lim_{z→0⁺} (−1)^k f^{(k)}(z)` for an `f` analytic at 0.
fn right_limit(f: &dyn Fn(f64) -> Result<f64>, k: usize, z0: f64) -> Result<(f64, f64)> {
    let mut zs = Vec::with_capacity(LIMIT_POINTS);
    let mut vs = Vec::with_capacity(LIMIT_POINTS);
    let sgn = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    for j in 0..LIMIT_POINTS {
        let z = z0 / (1u32 << j) as f64;
        let s = z / (k + 1) as f64;
        zs.push(z);
        vs.push(sgn * central(f, k, z, s)?);
    }
    Ok(neville_at_zero(&zs, &vs))
}

fn check(name: String, deviation: f64, tolerance: f64) -> BoundaryCheck {
    BoundaryCheck {
        name,
        deviation: if deviation.is_nan() { f64::INFINITY } else { deviation },
        tolerance,
    }
}

/// `D^k_{0−,x} l_α(0⁺, t) = Φ_{α(k+1)}(t)`, `0 ≤ k < n`, for t ∈ {0.5, 1, 2}.
fn l_family(alpha: f64, n: usize, tol: f64) -> Result<Vec<BoundaryCheck>> {
    let mut out = Vec::new();
    for k in 0..n {
        let order = alpha * (k + 1) as f64;
        let mut dev = 0.0_f64;
        for &t in &FIXED {
            let f = |x: f64| Ok(l_density(alpha, x, t)?.value);
            let (v, spread) = right_limit(&f, k, 0.2 * t.powf(alpha))?;
            dev = dev.max((v - phi_alpha(order, t)?).abs() + spread);
        }
        let tk = if k == 0 { BOUNDARY_VALUE_TOL } else { tol };
        out.push(check(format!("D^{k}_(0-,x) l(0+,t) = Phi_{}(t)", fmt_num(order)), dev, tk));
    }
    Ok(out)
}

/// `D^k_{0−,t} h_α(x, 0⁺) = Φ_{αk+1}(x)`, `0 < k < n`, for x ∈ {0.5, 1, 2}.
fn h_family(alpha: f64, n: usize, tol: f64) -> Result<Vec<BoundaryCheck>> {
    let mut out = vec![h_vanishes(alpha)?];
    for k in 1..n {
        let order = alpha * k as f64 + 1.0;
        let mut dev = 0.0_f64;
        for &x in &FIXED {
            let f = |t: f64| Ok(h_density(alpha, x, t)?.value);
            let (v, spread) = right_limit(&f, k, 0.2 * x.powf(alpha))?;
            dev = dev.max((v - phi_alpha(order, x)?).abs() + spread);
        }
        out.push(check(format!("D^{k}_(0-,t) h(x,0+) = Phi_{}(x)", fmt_num(order)), dev, tol));
    }
    Ok(out)
}

/// `h_α(0⁺, t) = 0`: the value at `x = 10⁻⁶·t^{1/α}`.
fn h_vanishes(alpha: f64) -> Result<BoundaryCheck> {
    let mut dev = 0.0_f64;
    for &t in &FIXED {
        dev = dev.max(h_density(alpha, 1e-6 * t.powf(1.0 / alpha), t)?.value.abs());
    }
    Ok(check("h(0+,t) = 0".into(), dev, VANISHING_TOL))
}

/// `x^{1−ν2} Γ(ν2) 𝔣(x, t) → Φ_{ν1}(t)` as `x → 0⁺`; the correction is a
/// power series in `x^{ν2}`, so the extrapolation runs in that variable.
fn compose_asymptote(nu1: f64, nu2: f64, tol: f64) -> Result<BoundaryCheck> {
    let a = nu1 / nu2;
    let mut dev = 0.0_f64;
    for &t in &FIXED {
        let mut ws = Vec::new();
        let mut vs = Vec::new();
        for j in 0..LIMIT_POINTS {
            let x = 1e-3 * t.powf(a) / (1u32 << j) as f64;
            ws.push(x.powf(nu2));
            vs.push(compose_density(nu1, nu2, x, t)?.value * x.powf(1.0 - nu2) * gamma(nu2));
        }
        let (v, spread) = neville_at_zero(&ws, &vs);
        dev = dev.max((v - phi_alpha(nu1, t)?).abs() + spread);
    }
    Ok(check("x^(1-nu2) Gamma(nu2) f(0+,t) = Phi_nu1(t)".into(), dev, tol))
}

/// Boundary checks belonging to `eq`; an empty list for equations posed
/// on the whole line or without boundary data.
pub fn boundary_check(eq: &EquationSpec) -> Result<Vec<BoundaryCheck>> {
    eq.id.validate()?;
    let tol = eq.tolerance;
    match eq.id {
        EquationId::PdeH { nu } => Ok(vec![h_vanishes(nu)?]),
        EquationId::PdeL { nu } => l_family(nu, 1, tol),
        EquationId::PdeCompose { nu1, nu2 } => Ok(vec![compose_asymptote(nu1, nu2, tol)?]),
        EquationId::ThmL { nu, n } => l_family(nu / n as f64, n as usize, tol),
        EquationId::CoroL { n } => {
            let mut v = l_family(1.0 / n as f64, n as usize, tol)?;
            let exact = FIXED.iter().map(|&t| phi_alpha(1.0, t).map(f64::abs)).sum::<Result<f64>>()?;
            v.push(check("Phi_1(t) = 0 exactly".into(), exact, f64::MIN_POSITIVE));
            Ok(v)
        }
        EquationId::ThmH { nu, n } => h_family(nu / n as f64, n as usize, tol),
        EquationId::CoroH { n } => h_family(1.0 / n as f64, n as usize, tol),
        EquationId::PdePseudo { .. } | EquationId::PdeUmn { .. } => Ok(Vec::new()),
    }
}
