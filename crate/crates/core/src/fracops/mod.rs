//! Discrete fractional and integer derivatives on uniform grids that start
//! at the origin: left and right Riemann–Liouville derivatives
//! (Grünwald–Letnikov), the Caputo derivative (L1 scheme) and integer
//! derivatives (repeated second-order differences), plus the boundary
//! profile `Φ_α`.

mod conv;
mod ops;

pub use conv::convolve_causal;
pub use ops::{caputo, gl_weights, integer_deriv, rl_minus, rl_plus, RL_MINUS_DECAY_THRESHOLD};

use crate::error::{invalid, Error, Result};
use crate::specfun::rgamma;

/// An admissible derivative order: a value in `(0, 1]` or a positive integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(value: f64) -> Result<Self> {
        let integer = value >= 1.0 && value == value.floor() && value < 1e6;
        if (value > 0.0 && value <= 1.0) || integer {
            Ok(Self(value))
        } else {
            Err(invalid(format!(
                "order {value} is outside (0,1] and is not a positive integer"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `Some(n)` for integer orders.
    pub fn as_integer(self) -> Option<usize> {
        if self.0 == self.0.floor() {
            Some(self.0 as usize)
        } else {
            None
        }
    }
}

/// Samples `f(0), f(h), f(2h), …` of a function on `[0, (N−1)h]`.
///
/// Operators return grids of the same shape and mark how many rows at each
/// end were produced by low-order one-sided stencils (`boundary_rows`);
/// those rows are excluded from residual norms.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    origin: f64,
    step: f64,
    samples: Vec<f64>,
    boundary_rows: usize,
    warning: Option<String>,
}

impl GridFunction {
    pub fn new(step: f64, samples: Vec<f64>) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(invalid("grid step must be positive"));
        }
        if samples.len() < 2 {
            return Err(Error::GridTooShort {
                needed: 2,
                have: samples.len(),
            });
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("grid samples"));
        }
        Ok(Self {
            origin: 0.0,
            step,
            samples,
            boundary_rows: 0,
            warning: None,
        })
    }

    /// Samples `f` at `0, h, …, (n−1)h`.
    pub fn from_fn<F: FnMut(f64) -> f64>(step: f64, n: usize, mut f: F) -> Result<Self> {
        let samples = (0..n).map(|i| f(i as f64 * step)).collect();
        Self::new(step, samples)
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Abscissa of sample `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.step
    }

    /// Rows at each end computed with one-sided (low-accuracy) stencils.
    pub fn boundary_rows(&self) -> usize {
        self.boundary_rows
    }

    /// Diagnostic attached by an operator (e.g. insufficient decay).
    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    pub(crate) fn derived(&self, samples: Vec<f64>, boundary_rows: usize) -> Self {
        Self {
            origin: self.origin,
            step: self.step,
            samples,
            boundary_rows,
            warning: None,
        }
    }

    pub(crate) fn with_warning(mut self, w: Option<String>) -> Self {
        self.warning = w;
        self
    }
}

/// `Φ_α(t) = t_+^{−α}/Γ(1−α)`; identically zero for `α = 1`.
///
/// Orders `α ∈ {2, 3, …}` are rejected.
pub fn phi_alpha(alpha: f64, t: f64) -> Result<f64> {
    if !alpha.is_finite() || t.is_nan() {
        return Err(Error::NonFinite("phi_alpha"));
    }
    if alpha >= 2.0 && alpha == alpha.floor() {
        return Err(invalid(format!("phi_alpha: alpha = {alpha} is an integer ≥ 2")));
    }
    if alpha == 1.0 || t <= 0.0 {
        return Ok(0.0);
    }
    Ok(t.powf(-alpha) * rgamma(1.0 - alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn phi_values() {
        assert_eq!(phi_alpha(1.0, 0.7).unwrap(), 0.0);
        assert_relative_eq!(phi_alpha(0.5, 1.0).unwrap(), 1.0 / std::f64::consts::PI.sqrt(), max_relative = 1e-15);
        assert_eq!(phi_alpha(0.5, -1.0).unwrap(), 0.0);
        assert!(phi_alpha(2.0, 1.0).is_err());
        // Φ_{3/2}(x) = x^{−3/2}/Γ(−1/2)
        assert_relative_eq!(
            phi_alpha(1.5, 4.0).unwrap(),
            -1.0 / (8.0 * 2.0 * std::f64::consts::PI.sqrt()),
            max_relative = 1e-14
        );
    }

    #[test]
    fn phi_laplace_transform() {
        // ∫ e^{−ζt} Φ_α(t) dt = ζ^{α−1}
        let o = crate::quad::QuadOptions::default();
        for &(a, z) in &[(0.5, 1.0), (0.3, 2.0), (0.5, 4.0)] {
            let f = |t: f64| (-z * t).exp() * phi_alpha(a, t).unwrap();
            let v = crate::quad::half_line(&f, 1.0, &o).unwrap().value;
            assert_relative_eq!(v, z.powf(a - 1.0), max_relative = 1e-9);
        }
    }

    #[test]
    fn order_validation() {
        assert!(FracOrder::new(0.5).is_ok());
        assert!(FracOrder::new(3.0).is_ok());
        assert!(FracOrder::new(1.5).is_err());
        assert!(FracOrder::new(0.0).is_err());
        assert!(FracOrder::new(f64::NAN).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(GridFunction::new(0.1, vec![1.0]).is_err());
        assert!(GridFunction::new(0.0, vec![1.0, 2.0]).is_err());
        assert!(GridFunction::new(0.1, vec![1.0, f64::NAN]).is_err());
    }
}
