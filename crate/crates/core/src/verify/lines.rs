//! One-dimensional operator application along grid lines, with one
//! Richardson step, and local Lagrange interpolation on uniform grids.

use crate::error::{invalid, Error, Result};
use crate::fracops::{caputo, integer_deriv, rl_plus, FracOrder, GridFunction};

/// An operator acting on one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum AxisOp {
    /// `d^n/dz^n`.
    Deriv(usize),
    /// Left Riemann–Liouville derivative from 0 (fractional order).
    Rl(f64),
    /// Left Caputo derivative from 0, order in (0,1).
    Caputo(f64),
}

impl AxisOp {
    /// The operator `D^α_{0+}`; integer orders become plain derivatives.
    pub(crate) fn rl(alpha: f64) -> AxisOp {
        if alpha == alpha.round() {
            AxisOp::Deriv(alpha as usize)
        } else {
            AxisOp::Rl(alpha)
        }
    }
}

/// Line resolution: internal steps per node spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LineResolution {
    /// Minimum subdivisions for fractional operators (the actual count is
    /// the smallest multiple-compatible value so that the first node falls
    /// on the internal grid).
    pub frac: usize,
    /// Subdivisions for finite-difference stencils.
    pub int: usize,
}

impl Default for LineResolution {
    fn default() -> Self {
        Self { frac: 16, int: 1 }
    }
}

fn sample(f: &dyn Fn(f64) -> Result<f64>, start: f64, step: f64, count: usize) -> Result<Vec<f64>> {
    (0..count)
        .map(|k| {
            let v = f(start + k as f64 * step)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite("kernel sample"))
            }
        })
        .collect()
}

fn every_other(v: &[f64]) -> Vec<f64> {
    v.iter().step_by(2).copied().collect()
}

/// Smallest `q ≥ q_min` with `z0/(h/q)` an integer (up to rounding).
fn commensurate(z0: f64, h: f64, q_min: usize) -> Result<(usize, usize)> {
    for q in q_min..=(8 * q_min.max(1)) {
        let m = z0 / (h / q as f64);
        let r = m.round();
        if (m - r).abs() <= 1e-9 * r.max(1.0) {
            return Ok((q, r as usize));
        }
    }
    Err(invalid(format!(
        "grid origin {z0} is not commensurate with the node spacing {h}"
    )))
}

/// `op f` at the nodes `z0 + i·h`, `i < count`.
///
/// Derivatives use repeated central differences on a line extended past
/// both ends (no one-sided rows reach the nodes) at steps `s` and `s/2`,
/// combined as `(4D_{s/2} − D_s)/3`. Fractional operators sample `f`
/// from 0 at steps `d` and `d/2` and combine Grünwald–Letnikov as
/// `2G_{d/2} − G_d`, and L1 as `(2^p L_{d/2} − L_d)/(2^p − 1)` with
/// `p = 2 − α`.
pub(crate) fn apply_on_line(
    f: &dyn Fn(f64) -> Result<f64>,
    op: AxisOp,
    z0: f64,
    h: f64,
    count: usize,
    res: LineResolution,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    match op {
        AxisOp::Deriv(0) => sample(f, z0, h, count),
        AxisOp::Deriv(n) => {
            let q = res.int.max(1);
            let s = h / q as f64;
            let fine_len = 2 * q * (count - 1) + 4 * n + 1;
            let vals = sample(f, z0 - n as f64 * s, s / 2.0, fine_len)?;
            let fine = integer_deriv(&GridFunction::new(s / 2.0, vals.clone())?, n)?;
            let coarse = integer_deriv(&GridFunction::new(s, every_other(&vals))?, n)?;
            Ok((0..count)
                .map(|i| {
                    let a = fine.samples()[2 * n + 2 * q * i];
                    let b = coarse.samples()[n + q * i];
                    (4.0 * a - b) / 3.0
                })
                .collect())
        }
        AxisOp::Rl(alpha) | AxisOp::Caputo(alpha) => {
            if !(z0 > 0.0) {
                return Err(invalid("fractional line operators need a positive first node"));
            }
            let (q, m0) = commensurate(z0, h, res.frac)?;
            let d = h / q as f64;
            let last = m0 + q * (count - 1);
            let vals = sample(f, 0.0, d / 2.0, 2 * last + 1)?;
            let gf = GridFunction::new(d / 2.0, vals.clone())?;
            let gc = GridFunction::new(d, every_other(&vals))?;
            let (fine, coarse, w) = if let AxisOp::Rl(a) = op {
                let o = FracOrder::new(a)?;
                (rl_plus(&gf, o)?, rl_plus(&gc, o)?, 2.0)
            } else {
                (caputo(&gf, alpha)?, caputo(&gc, alpha)?, 2f64.powf(2.0 - alpha))
            };
            Ok((0..count)
                .map(|i| {
                    let j = m0 + q * i;
                    (w * fine.samples()[2 * j] - coarse.samples()[j]) / (w - 1.0)
                })
                .collect())
        }
    }
}

/// Values on a uniform grid `start + k·step`, interpolated by the
/// six-point Lagrange polynomial centred on the query.
#[derive(Debug, Clone)]
pub(crate) struct Uniform {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl Uniform {
    pub(crate) fn eval(&self, z: f64) -> f64 {
        let n = self.values.len();
        let p = 6.min(n);
        let u = (z - self.start) / self.step;
        let lo = (u.floor() as isize - (p as isize / 2 - 1)).clamp(0, (n - p) as isize) as usize;
        let mut acc = 0.0;
        for j in lo..lo + p {
            let mut w = 1.0;
            for k in lo..lo + p {
                if k != j {
                    w *= (u - k as f64) / (j as f64 - k as f64);
                }
            }
            acc += w * self.values[j];
        }
        acc
    }
}
