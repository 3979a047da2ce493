//! Density kernels: the stable subordinator density `h_ν`, its inverse
//! `l_ν`, the Lamperti law, subordinated compositions `𝔣_{ν1,ν2}` and
//! `𝔲_{m,n}`, folded stable laws, pseudo-process kernels `v_n`, and the
//! closed forms `u1`, `u2`, `u3`.
//!
//! Kernels are evaluated from series and quadrature only; the transform
//! oracles in [`crate::transforms`] are kept independent so that they can
//! check these routes.

mod closed;
mod compose;
mod density;

pub use closed::{u2_printed, u_closed, ClosedForm};
pub use compose::{compose_density, subordinate, u_mn};
pub use density::{folded_stable, h_density, l_density, lamperti, levy_exponent, pseudo_kernel};

use crate::error::{invalid, Error, Result};

/// How a kernel value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Series,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Series => "series",
            Method::Quadrature => "quadrature",
        }
    }
}

/// A kernel value with its provenance and error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
}

impl KernelValue {
    pub(crate) fn new(value: f64, method: Method, error_estimate: f64) -> Self {
        Self {
            value,
            method,
            error_estimate: error_estimate.abs(),
        }
    }
}

/// Identifies a kernel and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// Stable subordinator density `h_ν(x, t)`.
    H { nu: f64 },
    /// Inverse stable subordinator density `l_ν(x, t)`.
    L { nu: f64 },
    /// Lamperti density `f_ν(x)` (t is ignored).
    Lamperti { nu: f64 },
    /// `𝔣_{ν1,ν2}(x, t) = ∫ h_{ν2}(x, s) l_{ν1}(s, t) ds`.
    Compose { nu1: f64, nu2: f64 },
    /// `𝔲_{m,n}(x, t) = ∫ l_{1/m}(x, s) h_{1/n}(s, t) ds`.
    Umn { m: u32, n: u32 },
    /// Pseudo-process kernel `v_n` with sign `κ`.
    Pseudo { n: u32, kappa: i32 },
    U1,
    U2,
    U3,
    /// Density of `|S_α(t)|` for the symmetric α-stable law.
    FoldedStable { alpha: f64 },
}

fn unit_interval(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} = {v} must lie in (0,1)")))
    }
}

/// κ_n forced by convergence for even n = 2p: κ = (−1)^{p+1}.
pub fn admissible_kappa(n: u32) -> Option<i32> {
    if n.is_multiple_of(2) {
        Some(if (n / 2) % 2 == 1 { 1 } else { -1 })
    } else {
        None
    }
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::H { nu } | KernelSpec::L { nu } | KernelSpec::Lamperti { nu } => unit_interval("nu", nu),
            KernelSpec::Compose { nu1, nu2 } => {
                unit_interval("nu1", nu1)?;
                unit_interval("nu2", nu2)
            }
            KernelSpec::Umn { m, n } => {
                if m >= 1 && n >= 1 {
                    Ok(())
                } else {
                    Err(invalid("m and n must be positive integers"))
                }
            }
            KernelSpec::Pseudo { n, kappa } => {
                if n < 2 {
                    return Err(invalid("pseudo kernel needs n ≥ 2"));
                }
                if kappa != 1 && kappa != -1 {
                    return Err(invalid("kappa must be +1 or -1"));
                }
                match admissible_kappa(n) {
                    Some(k) if k != kappa => Err(Error::Divergent(format!(
                        "n = {n} requires kappa = {k:+}; the symbol grows with the other sign"
                    ))),
                    _ => Ok(()),
                }
            }
            KernelSpec::U1 | KernelSpec::U2 | KernelSpec::U3 => Ok(()),
            KernelSpec::FoldedStable { alpha } => {
                if alpha > 0.0 && alpha <= 2.0 {
                    Ok(())
                } else {
                    Err(invalid("alpha must lie in (0,2]"))
                }
            }
        }
    }

    /// Evaluates the kernel at `(x, t)`.
    pub fn evaluate(&self, x: f64, t: f64) -> Result<KernelValue> {
        self.validate()?;
        match *self {
            KernelSpec::H { nu } => h_density(nu, x, t),
            KernelSpec::L { nu } => l_density(nu, x, t),
            KernelSpec::Lamperti { nu } => lamperti(nu, x),
            KernelSpec::Compose { nu1, nu2 } => compose_density(nu1, nu2, x, t),
            KernelSpec::Umn { m, n } => u_mn(m, n, x, t),
            KernelSpec::Pseudo { n, kappa } => pseudo_kernel(n, kappa, x, t),
            KernelSpec::U1 => u_closed(ClosedForm::U1, x, t),
            KernelSpec::U2 => u_closed(ClosedForm::U2, x, t),
            KernelSpec::U3 => u_closed(ClosedForm::U3, x, t),
            KernelSpec::FoldedStable { alpha } => folded_stable(alpha, x, t),
        }
    }
}

/// Even extension `x ↦ K(|x|, t)` of an `L` or `U_MN` kernel.
///
/// The extension is not renormalized: its integral over ℝ is 2.
pub fn symmetric_extension(kernel: &KernelSpec, x: f64, t: f64) -> Result<KernelValue> {
    match kernel {
        KernelSpec::L { .. } | KernelSpec::Umn { .. } => kernel.evaluate(x.abs(), t),
        _ => Err(invalid("symmetric_extension applies to L and U_MN kernels only")),
    }
}

pub(crate) fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("t = {t} must be finite and positive")))
    }
}

pub(crate) fn check_x_nonneg(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("x = {x} must be finite and non-negative")))
    }
}
