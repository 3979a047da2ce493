//! Independent numerical oracles: Laplace and double Laplace transforms by
//! quadrature, Bromwich inversion on a saddle-scaled Talbot contour (or a
//! vertical line), and Fourier inversion of oscillatory symbols.
//!
//! Nothing in this module calls [`crate::kernels`]; checks that compare a
//! kernel with one of these oracles are therefore genuine two-route
//! comparisons.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::quad::{self, gk21, osc_half_line, wynn_epsilon, OscOptions, QuadOptions};

/// Tolerances for the quadrature-based transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// First truncation point; the range is doubled from here until the
    /// last panel contributes less than `abs_tol`.
    pub tail_cutoff: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 500,
            tail_cutoff: 1.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(invalid("QuadratureSpec tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(invalid("QuadratureSpec.max_subdivisions must be at least 1"));
        }
        if !(self.tail_cutoff > 0.0) {
            return Err(invalid("QuadratureSpec.tail_cutoff must be positive"));
        }
        Ok(())
    }

    fn quad_options(&self) -> QuadOptions {
        QuadOptions {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourMethod {
    Talbot,
    BromwichLine,
}

/// Contour for Bromwich inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub method: ContourMethod,
    /// Starting node count; doubled until the result settles.
    pub node_count: usize,
    /// Abscissa of the vertical line (line method only).
    pub shift: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            method: ContourMethod::Talbot,
            node_count: 32,
            shift: 1.0,
        }
    }
}

impl ContourSpec {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 8 {
            return Err(invalid("ContourSpec.node_count must be at least 8"));
        }
        if self.method == ContourMethod::BromwichLine && !(self.shift > 0.0) {
            return Err(invalid("ContourSpec.shift must be positive for the line contour"));
        }
        Ok(())
    }
}

/// `∫_0^∞ e^{−λt} f(t) dt`. An integrable singularity at `t = 0` is fine.
pub fn laplace<F>(f: F, lambda: f64, q: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    q.validate()?;
    if !(lambda > 0.0) {
        return Err(invalid("laplace: lambda must be positive"));
    }
    let g = |t: f64| {
        let e = (-lambda * t).exp();
        if e == 0.0 {
            0.0
        } else {
            e * f(t)
        }
    };
    let scale = q.tail_cutoff.min(1.0 / lambda);
    Ok(quad::half_line(&g, scale, &q.quad_options())?.value)
}

/// `∫_0^∞ ∫_0^∞ e^{−λt − ξx} f(x, t) dx dt`, inner integral in x.
pub fn double_laplace<F>(f: F, xi: f64, lambda: f64, q: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    q.validate()?;
    if !(xi > 0.0 && lambda > 0.0) {
        return Err(invalid("double_laplace: xi and lambda must be positive"));
    }
    let inner_q = QuadratureSpec {
        abs_tol: 0.1 * q.abs_tol,
        rel_tol: 0.1 * q.rel_tol,
        ..*q
    };
    let failure = std::cell::RefCell::new(None);
    let outer = |t: f64| match laplace(|x| f(x, t), xi, &inner_q) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let r = laplace(outer, lambda, q);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    r
}

/// Minimizes `λx + Re ln F(λ)` over `λ > 0` (golden section in `ln λ`).
fn saddle<G>(ln_f: &G, x: f64) -> f64
where
    G: Fn(Complex64) -> Complex64,
{
    let phi = |u: f64| {
        let l = u.exp();
        let v = l * x + ln_f(Complex64::new(l, 0.0)).re;
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let center = (1.0 / x).ln();
    let (mut a, mut b) = (center - 20.0, center + 20.0);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (phi(c), phi(d));
    for _ in 0..120 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = phi(d);
        }
    }
    (0.5 * (a + b)).exp()
}

/// Bromwich inversion of `F` at `x > 0`, `F` given through its logarithm
/// `ln F(λ)` (any branch; only `e^{ln F}` matters).
///
/// Talbot: the contour `λ(θ) = pθ(cot θ + i)` is scaled by
/// `p = max(λ*, 1/x)` where `λ*` minimizes `λx + Re ln F(λ)` on the real
/// axis, and the integrand is normalized by `e^{−(λ*x + ln F(λ*))}`, which
/// keeps full relative accuracy for values far below 1. The node count is
/// doubled from `c.node_count` until successive results agree to 10⁻¹²;
/// both halves of the contour are summed and an imaginary part above
/// 10⁻⁸ of the result is an error.
pub fn bromwich_invert_log<G>(ln_f: G, x: f64, c: &ContourSpec) -> Result<f64>
where
    G: Fn(Complex64) -> Complex64,
{
    c.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid("bromwich_invert: x must be positive"));
    }
    match c.method {
        ContourMethod::Talbot => talbot(&ln_f, x, c.node_count),
        ContourMethod::BromwichLine => bromwich_line(&ln_f, x, c.shift),
    }
}

/// Bromwich inversion of `F` at `x > 0`; see [`bromwich_invert_log`].
pub fn bromwich_invert<F>(f: F, x: f64, c: &ContourSpec) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    bromwich_invert_log(|l| f(l).ln(), x, c)
}

/// Natural logarithm of the Bromwich inverse of `F` at `x > 0`, by the
/// Talbot contour of [`bromwich_invert_log`]. Unlike the linear-scale
/// result it stays meaningful for values below the smallest `f64`; the
/// inverse must be positive at `x`.
pub fn bromwich_invert_ln<G>(ln_f: G, x: f64, c: &ContourSpec) -> Result<f64>
where
    G: Fn(Complex64) -> Complex64,
{
    c.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid("bromwich_invert: x must be positive"));
    }
    let (m, shift) = talbot_scaled(&ln_f, x, c.node_count)?;
    if !(m > 0.0) {
        return Err(invalid("bromwich_invert_ln: the inverse is not positive at x"));
    }
    Ok(m.ln() + shift)
}

const TALBOT_MAX_NODES: usize = 1 << 14;

fn talbot<G>(ln_f: &G, x: f64, start: usize) -> Result<f64>
where
    G: Fn(Complex64) -> Complex64,
{
    let (m, shift) = talbot_scaled(ln_f, x, start)?;
    Ok(m * shift.exp())
}

/// Talbot sum as `(m, s)` with inverse `m·e^s`.
fn talbot_scaled<G>(ln_f: &G, x: f64, start: usize) -> Result<(f64, f64)>
where
    G: Fn(Complex64) -> Complex64,
{
    let ls = saddle(ln_f, x);
    let p = ls.max(1.0 / x);
    let shift = p * x + ln_f(Complex64::new(p, 0.0)).re;
    if !shift.is_finite() {
        return Err(Error::NonFinite("bromwich_invert"));
    }
    // contribution at θ ∈ (−π, π): e^{λx + ln F − shift}·λ'(θ)
    let term = |th: f64| -> Complex64 {
        if th == 0.0 {
            let v = (Complex64::new(p * x, 0.0) + ln_f(Complex64::new(p, 0.0)) - shift).exp();
            return v * Complex64::new(0.0, p);
        }
        let (s, co) = th.sin_cos();
        let cot = co / s;
        let lam = Complex64::new(p * th * cot, p * th);
        let dlam = Complex64::new(p * (cot - th / (s * s)), p);
        let e = lam * x + ln_f(lam) - shift;
        if e.re < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        let v = e.exp() * dlam;
        if v.re.is_finite() && v.im.is_finite() {
            v
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    let mut n = start;
    let mut prev: Option<f64> = None;
    let mut last = (f64::NAN, f64::NAN);
    while n <= TALBOT_MAX_NODES {
        let h = PI / n as f64;
        let mut upper = Complex64::new(0.0, 0.0);
        let mut lower = Complex64::new(0.0, 0.0);
        for k in 1..n {
            upper += term(k as f64 * h);
            lower += term(-(k as f64) * h);
        }
        // (1/2πi)·h·Σ over the full contour
        let total = (term(0.0) + upper + lower) * h / Complex64::new(0.0, 2.0 * PI);
        let (value, residue) = (total.re, total.im);
        last = (value, residue);
        if let Some(pv) = prev {
            if (value - pv).abs() <= 1e-12 * value.abs() || (value - pv).abs() < 1e-300 {
                if residue.abs() > 1e-8 * value.abs().max(1e-300) {
                    return Err(Error::ComplexResidue {
                        what: "bromwich_invert",
                        residue: residue.abs() * shift.exp(),
                    });
                }
                return Ok((value, shift));
            }
        }
        prev = Some(value);
        n *= 2;
    }
    Err(Error::Quadrature {
        what: "bromwich_invert (Talbot)",
        estimate: (last.0 - prev.unwrap_or(f64::NAN)).abs() * shift.exp(),
    })
}

fn bromwich_line<G>(ln_f: &G, x: f64, c: f64) -> Result<f64>
where
    G: Fn(Complex64) -> Complex64,
{
    // f(x) = (e^{cx}/π) ∫_0^∞ Re[e^{iyx} F(c+iy)] dy, summed over
    // half-periods of e^{iyx} and accelerated with Wynn's epsilon
    let g = |y: f64| {
        let v = (ln_f(Complex64::new(c, y)) + Complex64::new(0.0, y * x)).exp();
        v.re
    };
    let w = PI / x;
    let mut sum = 0.0;
    let mut seq = Vec::new();
    let mut last = f64::NAN;
    let mut stable = 0;
    for k in 0..4000 {
        let (v, _, _) = gk21(&g, k as f64 * w, (k + 1) as f64 * w);
        sum += v;
        seq.push(sum);
        if seq.len() >= 8 {
            let n = seq.len().min(40);
            let est = wynn_epsilon(&seq[seq.len() - n..]);
            if (est - last).abs() <= 1e-11 * est.abs().max(1e-300) {
                stable += 1;
                if stable >= 2 {
                    return Ok(est * (c * x).exp() / PI);
                }
            } else {
                stable = 0;
            }
            last = est;
        }
    }
    Err(Error::Quadrature {
        what: "bromwich_invert (line)",
        estimate: f64::NAN,
    })
}

/// `(1/2π) ∫_ℝ e^{−iζx} S(ζ) dζ` with the symbol given through its
/// logarithm `ψ = ln S` (so the phase is continuous). Each half-line is
/// integrated separately; an imaginary part above `10⁻⁸·|value|` is an
/// error.
pub fn fourier_inverse_osc<G>(log_symbol: G, x: f64, q: &QuadratureSpec) -> Result<f64>
where
    G: Fn(f64) -> Complex64,
{
    q.validate()?;
    if !x.is_finite() {
        return Err(Error::NonFinite("fourier_inverse_osc"));
    }
    let opts = OscOptions {
        abs_tol: q.abs_tol * 1e-2,
        rel_tol: q.rel_tol * 1e-2,
        ..OscOptions::default()
    };
    let plus = osc_half_line(
        &|z: f64| {
            let p = log_symbol(z);
            (p.re, p.im - z * x)
        },
        &opts,
    )?;
    let minus = osc_half_line(
        &|z: f64| {
            let p = log_symbol(-z);
            (p.re, p.im + z * x)
        },
        &opts,
    )?;
    let total = (plus + minus) / (2.0 * PI);
    if total.im.abs() > 1e-8 * total.re.abs() + q.abs_tol {
        return Err(Error::ComplexResidue {
            what: "fourier_inverse_osc",
            residue: total.im.abs(),
        });
    }
    Ok(total.re)
}
