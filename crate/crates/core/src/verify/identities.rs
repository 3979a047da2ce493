//! Pointwise identities: the subordinator/inverse-subordinator relation,
//! the self-similar solutions of the higher-order heat equations, the
//! Laplace-transform identities, and the normalizing constant of the
//! Bessel form of `h_{1/3}`.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::lines::{apply_on_line, AxisOp, LineResolution};
use super::residual::{assemble, pseudo_value, split_field, Field, Split};
use super::{failure_report, fmt_num, GridRect, ResidualReport};
use crate::error::{Error, Result};
use crate::fracops::phi_alpha;
use crate::kernels::{h_density, l_density};
use crate::specfun::{bessel_k, m_wright_ln, mittag_leffler, SeriesControl};
use crate::transforms::{
    bromwich_invert_ln, bromwich_invert_log, double_laplace, laplace, ContourSpec, QuadratureSpec,
};

/// A tensor lattice of `(x, t)` points.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
}

/// The 10×10 lattice of geometric cell midpoints `10^{−1+(2i+1)/10}` on
/// `(0.1, 10)²`; it contains the diagonal `x = t`.
pub fn lemma0_lattice() -> Lattice {
    let pts: Vec<f64> = (0..10).map(|i| 10f64.powf(-1.0 + (2 * i + 1) as f64 / 10.0)).collect();
    Lattice {
        xs: pts.clone(),
        ts: pts,
    }
}

/// `ln h_ν(x, t)` through the inverse density: `ln(ν t/x) + ln l_ν(t, x)`.
fn ln_h_via_l(nu: f64, x: f64, t: f64) -> Result<f64> {
    let ln_l = -nu * x.ln() + m_wright_ln(nu, t * x.powf(-nu), &SeriesControl::default())?;
    Ok((nu * t / x).ln() + ln_l)
}

/// Maximum over the lattice of `|ν(t/x) l_ν(t, x) − h_ν(x, t)| / h_ν(x, t)`
/// with `h_ν` from Bromwich inversion of `e^{−tλ^ν}`.
///
/// Both sides are compared in log scale, so lattice points where `h_ν`
/// is far below the smallest double still count.
pub fn lemma0_check(nu: f64, lattice: &Lattice, tolerance: f64) -> Result<ResidualReport> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(crate::error::invalid("lemma0_check: nu must lie in (0,1)"));
    }
    let c = ContourSpec::default();
    let mut max = 0.0_f64;
    let mut sq = 0.0;
    let mut count = 0usize;
    for &t in &lattice.ts {
        for &x in &lattice.xs {
            let oracle = bromwich_invert_ln(|l: Complex64| -t * l.powf(nu), x, &c)?;
            let series = ln_h_via_l(nu, x, t)?;
            let dev = (series - oracle).exp_m1().abs();
            max = max.max(dev);
            sq += dev * dev;
            count += 1;
        }
    }
    let rms = (sq / count.max(1) as f64).sqrt();
    Ok(ResidualReport::new(
        format!("LEMMA0({})", fmt_num(nu)),
        max,
        rms,
        Vec::new(),
        f64::INFINITY,
        tolerance,
    ))
}

/// Default tolerance of [`lemma0_check`]: 10⁻⁶ at ν = 1/2, else 10⁻⁵.
pub fn lemma0_tolerance(nu: f64) -> f64 {
    if nu == 0.5 {
        1e-6
    } else {
        1e-5
    }
}

/// Tolerance for the first-order relation of `v_n`.
pub const SELF_SIMILAR_ODE_TOL: f64 = 1e-6;

/// Checks on the self-similar kernel `v_n` of `∂_t v = κ ∂^n_x v`,
/// `n ∈ {2, 3}`, over `grid`:
///
/// * `[x/t]`: `(x/t)·v_n` solves the same equation;
/// * `[ode]`: `∂^{n−1}_x v_n + (κ/n)(x/t) v_n = 0`;
/// * `[(x/t)^2]`: `(x/t)²·v_n` solves the same equation (it does not:
///   the residual is `−2v_2/t²` for `n = 2`, and this report fails).
pub fn lemma1_check(n: u32, kappa: i32, grid: &GridRect, tolerance: f64) -> Result<Vec<ResidualReport>> {
    if !(n == 2 || n == 3) || !(kappa == 1 || kappa == -1) || (n == 2 && kappa != 1) {
        return Err(crate::error::invalid("lemma1_check: needs (n, kappa) in {(2,+1), (3,+1), (3,-1)}"));
    }
    let g1 = grid.refined(1);
    let label = format!("LEMMA1({n},{kappa:+})");
    let mut out = Vec::new();
    for m in [1, 2] {
        let s = Split {
            kernel: Box::new(move |x, t| Ok((x / t).powi(m) * pseudo_value(n, kappa, x, t)?)),
            t_op: AxisOp::Deriv(1),
            t_coef: 1.0,
            x_op: AxisOp::Deriv(n as usize),
            x_coef: -(kappa as f64),
        };
        let f0 = split_field(&s, grid, LineResolution::default())?;
        let f1 = split_field(&s, &g1, LineResolution::default())?;
        let tag = if m == 1 { "[x/t]" } else { "[(x/t)^2]" };
        out.push(assemble(format!("{label}{tag}"), &f0, &f1, Vec::new(), tolerance));
        if m == 1 {
            let o0 = ode_field(n, kappa, grid)?;
            let o1 = ode_field(n, kappa, &g1)?;
            out.push(assemble(format!("{label}[ode]"), &o0, &o1, Vec::new(), SELF_SIMILAR_ODE_TOL));
        }
    }
    Ok(out)
}

fn ode_field(n: u32, kappa: i32, g: &GridRect) -> Result<Field> {
    let res = LineResolution::default();
    let mut values = Vec::with_capacity(g.nx * g.nt);
    for t in g.ts() {
        let f = |x: f64| pseudo_value(n, kappa, x, t);
        let d = apply_on_line(&f, AxisOp::Deriv(n as usize - 1), g.x0, g.hx(), g.nx, res)?;
        for (x, dv) in g.xs().into_iter().zip(d) {
            values.push(dv + kappa as f64 / n as f64 * (x / t) * f(x)?);
        }
    }
    Ok(Field {
        nx: g.nx,
        nt: g.nt,
        values,
    })
}

/// Evaluates `f` for a quadrature routine that takes plain `f64`
/// integrands, remembering the first failure.
struct Capture(RefCell<Option<Error>>);

impl Capture {
    fn new() -> Self {
        Capture(RefCell::new(None))
    }

    fn wrap(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    fn finish(self, v: Result<f64>) -> Result<f64> {
        if let Some(e) = self.0.into_inner() {
            return Err(e);
        }
        v
    }
}

/// Maximum absolute deviation of `(computed, expected)` pairs.
fn identity_report(id: &str, tol: f64, cases: Result<Vec<(f64, f64)>>) -> ResidualReport {
    match cases {
        Ok(v) => {
            let devs: Vec<f64> = v.iter().map(|(a, b)| (a - b).abs()).collect();
            let max = devs.iter().fold(0.0_f64, |m, d| if d.is_nan() { f64::INFINITY } else { m.max(*d) });
            let rms = (devs.iter().map(|d| d * d).sum::<f64>() / devs.len().max(1) as f64).sqrt();
            ResidualReport::new(id.to_string(), max, rms, Vec::new(), f64::INFINITY, tol)
        }
        Err(e) => failure_report(id.to_string(), tol, &e),
    }
}

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn ml(a: f64, b: f64, z: f64) -> Result<f64> {
    Ok(mittag_leffler(a, b, z, &SeriesControl::default())?.value)
}

fn laplace_h_in_x() -> Result<Vec<(f64, f64)>> {
    // ∫ e^{−λx} h_ν(x, t) dx = e^{−tλ^ν}
    let mut out = Vec::new();
    for &(nu, lam, t) in &[(0.5, 1.0, 2.0), (0.3, 1.0, 1.0), (0.7, 2.0, 0.5)] {
        let cap = Capture::new();
        let v = laplace(|x| cap.wrap(h_density(nu, x, t).map(|k| k.value)), lam, &q());
        out.push((cap.finish(v)?, (-t * lam.powf(nu)).exp()));
    }
    Ok(out)
}

fn laplace_l_in_x() -> Result<Vec<(f64, f64)>> {
    // ∫ e^{−ξx} l_ν(x, t) dx = E_ν(−ξ t^ν)
    let mut out = Vec::new();
    for &(nu, xi, t) in &[(0.5, 1.0, 1.0), (0.7, 2.0, 0.5)] {
        let cap = Capture::new();
        let v = laplace(|x| cap.wrap(l_density(nu, x, t).map(|k| k.value)), xi, &q());
        out.push((cap.finish(v)?, ml(nu, 1.0, -xi * t.powf(nu))?));
    }
    Ok(out)
}

fn laplace_mittag_leffler() -> Result<Vec<(f64, f64)>> {
    // ∫_0^Z e^{−λz} z^{β−1} E_{α,β}(−z^α) dz with Z^α at the series cutoff;
    // the neglected tail is below e^{−λZ}/Γ(β)·Z^{β−1}/λ ≈ 10^{−15}
    let mut out = Vec::new();
    for &(a, b) in &[(0.5, 1.0), (0.5, 0.5), (0.8, 0.9)] {
        let z_max = 30f64.powf(1.0 / a);
        for &lam in &[0.5, 1.0, 2.0] {
            let cap = Capture::new();
            let f = |z: f64| {
                if z > z_max {
                    0.0
                } else {
                    cap.wrap(ml(a, b, -z.powf(a)).map(|e| z.powf(b - 1.0) * e))
                }
            };
            let v = laplace(f, lam, &q());
            out.push((cap.finish(v)?, lam.powf(a - b) / (lam.powf(a) + 1.0)));
        }
    }
    Ok(out)
}

fn laplace_phi() -> Result<Vec<(f64, f64)>> {
    // ∫ e^{−ζt} Φ_α(t) dt = ζ^{α−1}
    let mut out = Vec::new();
    for &(a, z) in &[(0.5, 4.0), (0.5, 1.0), (0.3, 2.0)] {
        let cap = Capture::new();
        let v = laplace(|t| cap.wrap(phi_alpha(a, t)), z, &q());
        out.push((cap.finish(v)?, z.powf(a - 1.0)));
    }
    Ok(out)
}

fn double_laplace_h() -> Result<Vec<(f64, f64)>> {
    // ∬ e^{−λt−ξx} h_ν(x, t) dx dt = 1/(λ + ξ^ν). As t → 0, h_ν(·, t)
    // tends to a point mass, and as x → 0 it overflows, so neither
    // iterated order works on the raw kernel. With h_ν(x, t) = x^{−1}H(t x^{−ν}),
    // H(σ) = h_ν(1, σ), the inner t-integral is
    // x^{ν−1} ∫ e^{−λx^ν σ} H(σ) dσ, which is well scaled for every x.
    let mut out = Vec::new();
    for &(nu, lam, xi) in &[(0.5, 1.0, 1.0), (0.7, 2.0, 1.0)] {
        let cap = Capture::new();
        let outer = |x: f64| {
            let inner = laplace(|s| cap.wrap(h_density(nu, 1.0, s).map(|k| k.value)), lam * x.powf(nu), &q());
            cap.wrap(inner.map(|v| x.powf(nu - 1.0) * v))
        };
        let v = laplace(outer, xi, &q());
        out.push((cap.finish(v)?, 1.0 / (lam + xi.powf(nu))));
    }
    Ok(out)
}

fn laplace_h_in_t() -> Result<Vec<(f64, f64)>> {
    // ∫ e^{−λt} h_ν(x, t) dt = x^{ν−1} E_{ν,ν}(−λ x^ν)
    let mut out = Vec::new();
    for &(nu, lam, x) in &[(0.5, 1.0, 1.0), (0.3, 2.0, 0.7)] {
        let cap = Capture::new();
        let v = laplace(|t| cap.wrap(h_density(nu, x, t).map(|k| k.value)), lam, &q());
        out.push((cap.finish(v)?, x.powf(nu - 1.0) * ml(nu, nu, -lam * x.powf(nu))?));
    }
    Ok(out)
}

fn double_laplace_l() -> Result<Vec<(f64, f64)>> {
    // ∫ e^{−ξx} ∫ e^{−λt} l_ν(x, t) dt dx = λ^{ν−1}/(λ^ν + ξ)
    let mut out = Vec::new();
    for &(nu, lam, xi) in &[(0.5, 1.0, 1.0), (0.3, 1.0, 2.0)] {
        let cap = Capture::new();
        let v = double_laplace(|t, x| cap.wrap(l_density(nu, x, t).map(|k| k.value)), lam, xi, &q());
        out.push((cap.finish(v)?, lam.powf(nu - 1.0) / (lam.powf(nu) + xi)));
    }
    Ok(out)
}

/// Tolerance for single Laplace identities.
pub const LAPLACE_TOL: f64 = 1e-6;
/// Tolerance for double Laplace identities.
pub const DOUBLE_LAPLACE_TOL: f64 = 1e-5;

/// The Laplace-transform identities of the kernels, one report each:
///
/// | id | identity |
/// |---|---|
/// | `LAPLACE_X[h]` | `∫e^{−λx}h_ν(x,t)dx = e^{−tλ^ν}` |
/// | `LAPLACE_X[l]` | `∫e^{−ξx}l_ν(x,t)dx = E_ν(−ξt^ν)` |
/// | `LAPLACE[mittag-leffler]` | `∫e^{−λz}z^{β−1}E_{α,β}(−z^α)dz = λ^{α−β}/(λ^α+1)` |
/// | `LAPLACE[phi]` | `∫e^{−ζt}Φ_α(t)dt = ζ^{α−1}` |
/// | `LAPLACE_XT[h]` | `∬e^{−λt−ξx}h_ν = 1/(λ+ξ^ν)` |
/// | `LAPLACE_T[h]` | `∫e^{−λt}h_ν(x,t)dt = x^{ν−1}E_{ν,ν}(−λx^ν)` |
/// | `LAPLACE_XT[l]` | `∬e^{−ξx−λt}l_ν = λ^{ν−1}/(λ^ν+ξ)` |
pub fn laplace_identity_suite() -> Vec<ResidualReport> {
    vec![
        identity_report("LAPLACE_X[h]", LAPLACE_TOL, laplace_h_in_x()),
        identity_report("LAPLACE_X[l]", LAPLACE_TOL, laplace_l_in_x()),
        identity_report("LAPLACE[mittag-leffler]", LAPLACE_TOL, laplace_mittag_leffler()),
        identity_report("LAPLACE[phi]", LAPLACE_TOL, laplace_phi()),
        identity_report("LAPLACE_XT[h]", DOUBLE_LAPLACE_TOL, double_laplace_h()),
        identity_report("LAPLACE_T[h]", LAPLACE_TOL, laplace_h_in_t()),
        identity_report("LAPLACE_XT[l]", DOUBLE_LAPLACE_TOL, double_laplace_l()),
    ]
}

/// Measured normalizing constant `C` in
/// `h_{1/3}(s, t) = C·(t/s)^{3/2} K_{1/3}(2t^{3/2}/(3^{3/2}√s))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantStudy {
    /// `(s, t, C(s, t))` with `h_{1/3}` from Bromwich inversion.
    pub samples: Vec<(f64, f64, f64)>,
    /// Mean of the sampled constants.
    pub measured: f64,
    /// Largest relative spread of the samples around the mean.
    pub spread: f64,
    /// `(label, value, relative deviation from measured)`.
    pub candidates: Vec<(String, f64, f64)>,
}

impl ConstantStudy {
    /// Plain-text summary.
    pub fn report(&self) -> String {
        let mut s = String::from("normalizing constant of h_{1/3}(s,t) = C (t/s)^{3/2} K_{1/3}(2 t^{3/2} / (3^{3/2} s^{1/2}))\n");
        s.push_str("oracle: Bromwich inversion of exp(-t lambda^{1/3})\n");
        for (x, t, c) in &self.samples {
            s.push_str(&format!("s={x} t={t} C={c:.15e}\n"));
        }
        s.push_str(&format!("measured C = {:.15e} (relative spread {:.3e})\n", self.measured, self.spread));
        for (name, v, d) in &self.candidates {
            s.push_str(&format!("candidate {name} = {v:.15e}: relative deviation {d:.3e}\n"));
        }
        s
    }
}

/// Measures the constant of the Bessel form of `h_{1/3}` and compares it
/// with `1/(3π)` and `1/π`.
pub fn u3_constant_study() -> Result<ConstantStudy> {
    let c = ContourSpec::default();
    let mut samples = Vec::new();
    for &(s, t) in &[(0.5, 1.0), (1.0, 1.0), (2.0, 1.0), (1.0, 2.0), (0.3, 0.7)] {
        let h = bromwich_invert_log(|l: Complex64| -t * l.cbrt(), s, &c)?;
        let z = 2.0 * t.powf(1.5) / (3f64.powf(1.5) * s.sqrt());
        let form = (t / s).powf(1.5) * bessel_k(1.0 / 3.0, z)?.value;
        samples.push((s, t, h / form));
    }
    let measured = samples.iter().map(|p| p.2).sum::<f64>() / samples.len() as f64;
    let spread = samples.iter().fold(0.0_f64, |m, p| m.max((p.2 / measured - 1.0).abs()));
    let candidates = [("1/(3 pi)", 1.0 / (3.0 * PI)), ("1/pi", 1.0 / PI)]
        .iter()
        .map(|&(n, v)| (n.to_string(), v, (v / measured - 1.0).abs()))
        .collect();
    Ok(ConstantStudy {
        samples,
        measured,
        spread,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_is_geometric_with_diagonal() {
        let l = lemma0_lattice();
        assert_eq!(l.xs.len(), 10);
        assert!((l.xs[0] - 10f64.powf(-0.9)).abs() < 1e-15);
        assert!((l.xs[9] - 10f64.powf(0.9)).abs() < 1e-12);
        assert_eq!(l.xs, l.ts);
    }

    #[test]
    fn lemma0_small_lattice() {
        let l = Lattice {
            xs: vec![0.2, 1.0, 5.0],
            ts: vec![0.3, 1.0, 4.0],
        };
        for nu in [0.3, 0.5, 0.7] {
            let r = lemma0_check(nu, &l, lemma0_tolerance(nu)).unwrap();
            assert!(r.passed, "{}", r.line());
        }
    }

    #[test]
    fn constant_is_one_over_three_pi() {
        let s = u3_constant_study().unwrap();
        assert!(s.spread < 1e-8, "{}", s.report());
        assert!(s.candidates[0].2 < 1e-8, "{}", s.report());
        assert!(s.candidates[1].2 > 0.5);
    }
}
