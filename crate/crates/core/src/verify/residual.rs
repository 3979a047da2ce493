//! Grid residuals of the governing equations.

use std::f64::consts::PI;

use super::lines::{apply_on_line, AxisOp, LineResolution, Uniform};
use super::{boundary_check, EquationId, EquationSpec, GridRect, ResidualReport, TimeForm};
use crate::error::{invalid, Result};
use crate::kernels::{compose_density, h_density, l_density, pseudo_kernel, u_mn};
use crate::specfun::{airy_ai, rgamma};

/// Residual values on one grid, row-major in t then x.
pub(crate) struct Field {
    pub nx: usize,
    pub nt: usize,
    pub values: Vec<f64>,
}

pub(crate) type Kernel<'a> = dyn Fn(f64, f64) -> Result<f64> + 'a;

/// Grid residual of `eq` on the base grid and after one halving, with
/// the boundary checks that belong to the equation.
pub fn residual(eq: &EquationSpec) -> Result<ResidualReport> {
    eq.validate()?;
    let g0 = eq.grid;
    let g1 = eq.grid.refined(1);
    let (f0, f1) = match eq.id {
        EquationId::PdeCompose { nu1, nu2 } => {
            let p = ComposeProfiles::new(nu1, nu2, &g0)?;
            let caputo = eq.form == TimeForm::Caputo;
            (p.field(&g0, caputo)?, p.field(&g1, caputo)?)
        }
        EquationId::PdeUmn { m, n } => (umn_field(m, n, &g0, 0)?, umn_field(m, n, &g1, 1)?),
        _ => (direct_field(eq, &g0)?, direct_field(eq, &g1)?),
    };
    let checks = boundary_check(eq)?;
    Ok(assemble(eq.label(), &f0, &f1, checks, eq.tolerance))
}

pub(crate) fn assemble(
    id: String,
    f0: &Field,
    f1: &Field,
    checks: Vec<super::BoundaryCheck>,
    tol: f64,
) -> ResidualReport {
    let max0 = f0.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let max1 = f1.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let rms1 = (f1.values.iter().map(|v| v * v).sum::<f64>() / f1.values.len() as f64).sqrt();
    let mut common = 0.0_f64;
    for j in 0..f0.nt {
        for i in 0..f0.nx {
            common = common.max(f1.values[2 * j * f1.nx + 2 * i].abs());
        }
    }
    debug_assert_eq!(f1.nt, 2 * f0.nt - 1);
    let ratio = if common > 0.0 { max0 / common } else { f64::INFINITY };
    let ratio = if ratio.is_nan() { 0.0 } else { ratio };
    let max1 = if max1.is_nan() { f64::INFINITY } else { max1 };
    ResidualReport::new(id, max1, rms1, checks, ratio, tol)
}

fn heat_kernel(x: f64, t: f64) -> f64 {
    (-x * x / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
}

fn airy_kernel(kappa: f64, x: f64, t: f64) -> Result<f64> {
    let c = (3.0 * t).cbrt();
    Ok(airy_ai(-kappa * x / c)?.value / c)
}

/// `v_n(x, t)`: closed forms for `n = 2, 3`, quadrature otherwise.
pub(crate) fn pseudo_value(n: u32, kappa: i32, x: f64, t: f64) -> Result<f64> {
    match n {
        2 => Ok(heat_kernel(x, t)),
        3 => airy_kernel(kappa as f64, x, t),
        _ => Ok(pseudo_kernel(n, kappa, x, t)?.value),
    }
}

/// Kernel with the limit value 0 at `t = 0` (used on t-lines from 0).
fn zero_at_t0<'a>(k: impl Fn(f64, f64) -> Result<f64> + 'a) -> Box<Kernel<'a>> {
    Box::new(move |x, t| if t == 0.0 { Ok(0.0) } else { k(x, t) })
}

/// The residual `c_t·(T K) + c_x·(X K)` with `T` acting in t and `X` in x.
pub(crate) struct Split<'a> {
    pub kernel: Box<Kernel<'a>>,
    pub t_op: AxisOp,
    pub t_coef: f64,
    pub x_op: AxisOp,
    pub x_coef: f64,
}

fn sign(n: u32) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn split(eq: &EquationSpec) -> Result<Split<'static>> {
    let (nu_l, n_l, nu_h, n_h) = match eq.id {
        EquationId::ThmL { nu, n } => (nu, n, 0.0, 0),
        EquationId::CoroL { n } => (1.0, n, 0.0, 0),
        EquationId::ThmH { nu, n } => (0.0, 0, nu, n),
        EquationId::CoroH { n } => (0.0, 0, 1.0, n),
        _ => (0.0, 0, 0.0, 0),
    };
    let caputo = eq.form == TimeForm::Caputo;
    Ok(match eq.id {
        EquationId::PdeH { nu } => Split {
            kernel: Box::new(move |x, t| Ok(h_density(nu, x, t)?.value)),
            t_op: AxisOp::Deriv(1),
            t_coef: 1.0,
            x_op: AxisOp::Rl(nu),
            x_coef: 1.0,
        },
        EquationId::PdeL { nu } => Split {
            kernel: zero_at_t0(move |x, t| Ok(l_density(nu, x, t)?.value)),
            t_op: if caputo { AxisOp::Caputo(nu) } else { AxisOp::Rl(nu) },
            t_coef: 1.0,
            x_op: AxisOp::Deriv(1),
            x_coef: 1.0,
        },
        EquationId::ThmL { .. } | EquationId::CoroL { .. } => {
            let a = nu_l / n_l as f64;
            Split {
                kernel: zero_at_t0(move |x, t| Ok(l_density(a, x, t)?.value)),
                t_op: AxisOp::rl(nu_l),
                t_coef: -1.0,
                x_op: AxisOp::Deriv(n_l as usize),
                x_coef: sign(n_l),
            }
        }
        EquationId::ThmH { .. } | EquationId::CoroH { .. } => {
            let a = nu_h / n_h as f64;
            Split {
                kernel: Box::new(move |x, t| Ok(h_density(a, x, t)?.value)),
                t_op: AxisOp::Deriv(n_h as usize),
                t_coef: sign(n_h),
                x_op: AxisOp::rl(nu_h),
                x_coef: -1.0,
            }
        }
        EquationId::PdePseudo { n, kappa } => Split {
            kernel: Box::new(move |x, t| pseudo_value(n, kappa, x, t)),
            t_op: AxisOp::Deriv(1),
            t_coef: 1.0,
            x_op: AxisOp::Deriv(n as usize),
            x_coef: -(kappa as f64),
        },
        EquationId::PdeCompose { .. } | EquationId::PdeUmn { .. } => {
            return Err(invalid("internal: composition kernels use self-similar profiles"))
        }
    })
}

/// Fractional x-lines of `h_α` with `α < 1/2` carry a sharp peak near
/// `x ~ t^{1/α}` that the uniform lines from 0 must resolve.
const FINE_LINES: LineResolution = LineResolution { frac: 64, int: 1 };

fn direct_field(eq: &EquationSpec, g: &GridRect) -> Result<Field> {
    let res = match eq.id {
        EquationId::ThmH { nu, .. } if nu != 1.0 => FINE_LINES,
        _ => LineResolution::default(),
    };
    split_field(&split(eq)?, g, res)
}

pub(crate) fn split_field(s: &Split<'_>, g: &GridRect, res: LineResolution) -> Result<Field> {
    let xs = g.xs();
    let ts = g.ts();
    let mut values = vec![0.0; g.nx * g.nt];
    for (i, &x) in xs.iter().enumerate() {
        let col = apply_on_line(&|t| (s.kernel)(x, t), s.t_op, g.t0, g.ht(), g.nt, res)?;
        for (j, v) in col.into_iter().enumerate() {
            values[j * g.nx + i] = s.t_coef * v;
        }
    }
    for (j, &t) in ts.iter().enumerate() {
        let row = apply_on_line(&|x| (s.kernel)(x, t), s.x_op, g.x0, g.hx(), g.nx, res)?;
        for (i, v) in row.into_iter().enumerate() {
            values[j * g.nx + i] += s.x_coef * v;
        }
    }
    Ok(Field {
        nx: g.nx,
        nt: g.nt,
        values,
    })
}

/// Number of interpolation nodes used to tabulate a composition profile.
const PROFILE_NODES: usize = 400;

/// Tabulated profiles `g(y) = 𝔣(y, 1)` and `G(σ) = 𝔣(1, σ)` of the
/// composition density, which is self-similar:
/// `𝔣(x, t) = t^{−a} g(x t^{−a}) = x^{−1} G(t x^{−1/a})`, `a = ν1/ν2`.
///
/// Near 0, `g(y) ~ Σ_k c_k y^{β_k}` with `β_k = ν2(k+1) − 1` and
/// `c_k = (−1)^k Φ_{ν1(k+1)}(1)/Γ(ν2(k+1))`; the terms with `β_k ≤ 0` are
/// subtracted and differentiated exactly. What remains, like `G`, is a
/// smooth function of `y^{ν2}` (resp. `σ^{ν1}`) and is interpolated in
/// that variable.
struct ComposeProfiles {
    nu1: f64,
    nu2: f64,
    a: f64,
    /// `(c_k, β_k)` of the subtracted terms.
    singular: Vec<(f64, f64)>,
    g_reg: Uniform,
    big_g: Uniform,
    y_max: f64,
    s_max: f64,
}

impl ComposeProfiles {
    fn new(nu1: f64, nu2: f64, g: &GridRect) -> Result<Self> {
        let a = nu1 / nu2;
        let y_max = 1.05 * g.x1 * g.t0.powf(-a);
        let s_max = 1.05 * g.t1 * g.x0.powf(-1.0 / a);
        let mut singular = Vec::new();
        let mut k = 0;
        loop {
            let beta = nu2 * (k + 1) as f64 - 1.0;
            if beta > 1e-12 {
                break;
            }
            let c = sign(k) * rgamma(1.0 - nu1 * (k + 1) as f64) * rgamma(nu2 * (k + 1) as f64);
            singular.push((c, beta));
            k += 1;
        }
        let wy = y_max.powf(nu2) / PROFILE_NODES as f64;
        let mut gv = vec![0.0];
        for k in 1..=PROFILE_NODES {
            let y = (k as f64 * wy).powf(1.0 / nu2);
            let sing: f64 = singular.iter().map(|&(c, b)| c * y.powf(b)).sum();
            gv.push(compose_density(nu1, nu2, y, 1.0)?.value - sing);
        }
        let ws = s_max.powf(nu1) / PROFILE_NODES as f64;
        let mut sv = vec![0.0];
        for k in 1..=PROFILE_NODES {
            let s = (k as f64 * ws).powf(1.0 / nu1);
            sv.push(compose_density(nu1, nu2, 1.0, s)?.value);
        }
        Ok(Self {
            nu1,
            nu2,
            a,
            singular,
            g_reg: Uniform {
                start: 0.0,
                step: wy,
                values: gv,
            },
            big_g: Uniform {
                start: 0.0,
                step: ws,
                values: sv,
            },
            y_max,
            s_max,
        })
    }

    /// Fractional derivative of a tabulated profile, itself tabulated on
    /// nodes `k·hp` (`k ≥ 1`) up to `z_max`.
    fn derivative_table(prof: &Uniform, power: f64, op: AxisOp, hp: f64, z_max: f64) -> Result<Uniform> {
        let count = (z_max / hp).ceil() as usize + 1;
        let f = |z: f64| Ok(prof.eval(z.powf(power)));
        let res = LineResolution { frac: 4, int: 1 };
        let values = apply_on_line(&f, op, hp, hp, count, res)?;
        Ok(Uniform {
            start: hp,
            step: hp,
            values,
        })
    }

    fn field(&self, g: &GridRect, caputo: bool) -> Result<Field> {
        // internal step hx/16 on both profiles, halved with the grid
        let hp = g.hx() / 4.0;
        let dg = Self::derivative_table(&self.g_reg, self.nu2, AxisOp::Rl(self.nu2), hp, self.y_max)?;
        let t_op = if caputo {
            AxisOp::Caputo(self.nu1)
        } else {
            AxisOp::Rl(self.nu1)
        };
        let d_big = Self::derivative_table(&self.big_g, self.nu1, t_op, hp, self.s_max)?;
        let mut values = Vec::with_capacity(g.nx * g.nt);
        for t in g.ts() {
            for x in g.xs() {
                let y = x * t.powf(-self.a);
                let sing: f64 = self
                    .singular
                    .iter()
                    .map(|&(c, b)| c * rgamma(b + 1.0 - self.nu2) / rgamma(b + 1.0) * y.powf(b - self.nu2))
                    .sum();
                let dx = t.powf(-self.a * (1.0 + self.nu2)) * (dg.eval(y) + sing);
                let sigma = t * x.powf(-1.0 / self.a);
                let dt = x.powf(-1.0 - self.nu2) * d_big.eval(sigma);
                values.push(dt + dx);
            }
        }
        Ok(Field {
            nx: g.nx,
            nt: g.nt,
            values,
        })
    }
}

/// `𝔲_{m,n}` residual via its self-similar profiles
/// `𝔲(x, t) = t^{−n/m} U(x t^{−n/m}) = x^{−1} G(t x^{−m/n})`, so that
/// `∂^m_x 𝔲 = t^{−n/m−n} U^{(m)}(y)` and `∂^n_t 𝔲 = x^{−1−m} G^{(n)}(σ)`.
fn umn_field(m: u32, n: u32, g: &GridRect, level: u32) -> Result<Field> {
    let r = n as f64 / m as f64;
    let profile = |order: u32, lo: f64, hi: f64, f: &dyn Fn(f64) -> Result<f64>| -> Result<Uniform> {
        let span = hi - lo;
        let hp0 = (span / 63.0).min(lo / (2.0 * (3 + order) as f64));
        let hp = hp0 / (1u32 << level) as f64;
        let start = lo - 3.0 * hp;
        let count = ((hi + 3.0 * hp - start) / hp).ceil() as usize + 1;
        let values = apply_on_line(f, AxisOp::Deriv(order as usize), start, hp, count, LineResolution::default())?;
        Ok(Uniform {
            start,
            step: hp,
            values,
        })
    };
    let y_lo = g.x0 * g.t1.powf(-r);
    let y_hi = g.x1 * g.t0.powf(-r);
    let s_lo = g.t0 * g.x1.powf(-1.0 / r);
    let s_hi = g.t1 * g.x0.powf(-1.0 / r);
    let du = profile(m, y_lo, y_hi, &|y| Ok(u_mn(m, n, y, 1.0)?.value))?;
    let dg = profile(n, s_lo, s_hi, &|s| Ok(u_mn(m, n, 1.0, s)?.value))?;
    let mut values = Vec::with_capacity(g.nx * g.nt);
    for t in g.ts() {
        for x in g.xs() {
            let dx = t.powf(-r - n as f64) * du.eval(x * t.powf(-r));
            let dt = x.powf(-1.0 - m as f64) * dg.eval(t * x.powf(-1.0 / r));
            values.push(sign(n) * dt + sign(m) * dx);
        }
    }
    Ok(Field {
        nx: g.nx,
        nt: g.nt,
        values,
    })
}
