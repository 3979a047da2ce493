//! Numerical toolkit for stable subordinators, their inverses and the
//! fractional and higher-order heat-type equations their densities solve.
//!
//! Layering (lower modules never call higher ones):
//!
//! * [`specfun`] — Mittag-Leffler, Wright, Bessel I/K, Airy, Whittaker.
//! * [`quad`] — quadrature engine shared by everything above it.
//! * [`fracops`] — discrete Riemann–Liouville, Caputo and integer derivatives.
//! * [`kernels`] — density kernels `h_ν`, `l_ν`, compositions, closed forms.
//! * [`transforms`] — independent oracles (Laplace, Bromwich, Fourier); these
//!   never call [`kernels`].
//! * [`verify`] — residual, boundary and identity checks with reports.
//! * [`cli`] — the `fracorder` command-line front end.

// Quadrature tables keep their published digits, and `!(x > 0.0)` guards are
// deliberate: they reject NaN along with non-positive values.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fracops;
pub mod kernels;
pub mod quad;
pub mod specfun;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
