//! Numerical integration engine used by the special functions, kernels and
//! the transform oracles: adaptive Gauss–Kronrod (10/21), tanh-sinh for
//! integrable endpoint singularities, a geometric half-line driver, and an
//! oscillatory half-line driver with Wynn-epsilon acceleration.
//!
//! All drivers sum their panels in a fixed order with compensated
//! summation, so results are bit-reproducible.

mod gk;
mod osc;
mod tanh_sinh;

pub use gk::{gk21, integrate, integrate_breaks};
pub use osc::{osc_half_line, wynn_epsilon, OscOptions};
pub use tanh_sinh::tanh_sinh;

use crate::error::{Error, Result};

/// Tolerances for the adaptive drivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 500,
        }
    }
}

impl QuadOptions {
    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// An integral with its error estimate and the number of integrand calls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let s = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - s) + x;
        } else {
            self.comp += (x - s) + self.sum;
        }
        self.sum = s;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `∫_0^∞ f(x) dx`: tanh-sinh on `[0, scale]` (absorbing an integrable
/// singularity at 0), then Gauss–Kronrod on `[scale·2^k, scale·2^{k+1}]`
/// until two consecutive panels contribute less than the tolerance.
pub fn half_line<F>(f: &F, scale: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    if !(scale > 0.0) {
        return Err(crate::error::invalid("half_line: scale must be positive"));
    }
    let head = tanh_sinh(f, 0.0, scale, opts)?;
    let mut total = KahanSum::default();
    total.add(head.value);
    let mut error = head.error;
    let mut evaluations = head.evaluations;
    let mut a = scale;
    let mut small = 0;
    for _ in 0..200 {
        let b = 2.0 * a;
        let panel = integrate(f, a, b, opts)?;
        total.add(panel.value);
        error += panel.error;
        evaluations += panel.evaluations;
        if panel.value.abs() <= 0.1 * opts.target(total.value()) {
            small += 1;
            if small >= 2 {
                return Ok(QuadResult {
                    value: total.value(),
                    error: error + panel.value.abs(),
                    evaluations,
                });
            }
        } else {
            small = 0;
        }
        a = b;
    }
    Err(Error::Quadrature {
        what: "half_line",
        estimate: error,
    })
}
