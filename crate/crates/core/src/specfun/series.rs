//! Shared summation loop for the entire power series in this module.

use super::{SeriesControl, SpecialValue};
use crate::error::{Error, Result};

/// Sums `Σ_k term(k)` where `term(k)` returns the k-th term together with
/// the natural log of an envelope `E_k ≥ |term(k)|`.
///
/// The envelope must be eventually log-concave (its successive ratios
/// eventually decrease), which holds for every entire series used here.
/// Once the ratio `r_k = E_k/E_{k−1}` has been below one and non-increasing
/// for three consecutive terms, the tail is bounded by `E_k·r_k/(1−r_k)`.
/// Rounding is bounded by `4ε·Σ|term|`.
pub(crate) fn sum_series<F>(ctl: &SeriesControl, what: &'static str, mut term: F) -> Result<SpecialValue>
where
    F: FnMut(usize) -> (f64, f64),
{
    ctl.validate()?;
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut abs_sum = 0.0_f64;
    let mut prev_ln_env = f64::NAN;
    let mut prev_ratio = f64::INFINITY;
    let mut streak = 0usize;
    let mut last_estimate = f64::INFINITY;

    for k in 0..ctl.max_terms {
        let (t, ln_env) = term(k);
        if !t.is_finite() {
            return Err(Error::NonFinite(what));
        }
        // Neumaier compensated summation keeps the result independent of
        // the magnitude ordering of the terms.
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
        abs_sum += t.abs();

        if k == 0 {
            prev_ln_env = ln_env;
            continue;
        }
        let ratio = if ln_env == f64::NEG_INFINITY {
            0.0
        } else {
            (ln_env - prev_ln_env).exp()
        };
        prev_ln_env = ln_env;
        if ratio < 1.0 && ratio <= prev_ratio {
            streak += 1;
        } else {
            streak = 0;
        }
        prev_ratio = ratio;

        let value = sum + comp;
        let tail = if ln_env == f64::NEG_INFINITY {
            0.0
        } else {
            ln_env.exp() * ratio / (1.0 - ratio)
        };
        let rounding = 4.0 * f64::EPSILON * abs_sum;
        last_estimate = tail + rounding;
        // Terms decay super-geometrically, so a few extra terms push the
        // tail far below the requested tolerance at negligible cost.
        if streak >= 3 && tail <= (f64::EPSILON * value.abs()).max(1e-4 * ctl.target(value)) {
            if rounding > ctl.target(value) {
                // The sum is dominated by cancellation; the digits are gone.
                return Err(Error::NonConvergence {
                    what,
                    terms: k + 1,
                    estimate: last_estimate,
                });
            }
            return Ok(SpecialValue {
                value,
                error_estimate: last_estimate,
                terms_used: k + 1,
            });
        }
    }
    Err(Error::NonConvergence {
        what,
        terms: ctl.max_terms,
        estimate: last_estimate,
    })
}

/// Cancellation factor `Σ|t_k| / |Σ t_k|` of a series evaluated by
/// [`sum_series`]: `error_estimate` is dominated by `4ε·Σ|t_k|` for
/// well-converged sums, so this returns (an upper bound on) that ratio.
pub(crate) fn cancellation(v: &SpecialValue) -> f64 {
    if v.value == 0.0 {
        return f64::INFINITY;
    }
    v.error_estimate / (4.0 * f64::EPSILON * v.value.abs())
}

/// Running value of `z^k / k!`, kept in linear scale while that is safe and
/// in log scale otherwise.
pub(crate) struct PowerOverFactorial {
    z: f64,
    ln_abs_z: f64,
    lin: f64,
    ln_mag: f64,
    in_log: bool,
    k: usize,
}

impl PowerOverFactorial {
    pub(crate) fn new(z: f64) -> Self {
        Self {
            z,
            ln_abs_z: z.abs().ln(),
            lin: 1.0,
            ln_mag: 0.0,
            in_log: false,
            k: 0,
        }
    }

    /// Advances to `z^{k+1}/(k+1)!`.
    pub(crate) fn step(&mut self) {
        self.k += 1;
        let kf = self.k as f64;
        self.ln_mag += self.ln_abs_z - kf.ln();
        if !self.in_log {
            self.lin *= self.z / kf;
            if !(self.lin.abs() < 1e280 && (self.lin == 0.0 || self.lin.abs() > 1e-280)) {
                self.in_log = true;
            }
        }
    }

    /// `ln|z^k/k!|`.
    pub(crate) fn ln_abs(&self) -> f64 {
        self.ln_mag
    }

    /// `z^k/k! · r` where `r = 1/Γ(arg)`, with `ln|r|` used when the
    /// linear product would under- or overflow.
    pub(crate) fn times_rgamma(&self, arg: f64) -> f64 {
        if self.z == 0.0 {
            return if self.k == 0 { super::rgamma(arg) } else { 0.0 };
        }
        if super::gamma::is_pole(arg) {
            return 0.0;
        }
        if !self.in_log && arg.abs() < 160.0 {
            return self.lin * super::rgamma(arg);
        }
        let (lg, sg) = super::ln_gamma_signed(arg);
        let sign_z = if self.z < 0.0 && self.k % 2 == 1 { -1.0 } else { 1.0 };
        sign_z * sg * (self.ln_mag - lg).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_series() {
        let ctl = SeriesControl::default();
        let mut lf = 0.0;
        let v = sum_series(&ctl, "exp", |k| {
            if k > 0 {
                lf += (k as f64).ln();
            }
            let t = 2.0_f64.powi(k as i32) / lf.exp();
            (t, k as f64 * 2.0_f64.ln() - lf)
        })
        .unwrap();
        assert!((v.value - 2.0_f64.exp()).abs() < 1e-13);
        assert!(v.error_estimate <= ctl.target(v.value));
    }

    #[test]
    fn reports_failure_when_out_of_terms() {
        let ctl = SeriesControl::new(1e-12, 1e-10, 5).unwrap();
        let r = sum_series(&ctl, "slow", |k| {
            let t = 0.9_f64.powi(k as i32);
            (t, t.ln())
        });
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}
