//! The operators themselves.

use super::{convolve_causal, FracOrder, GridFunction};
use crate::error::{invalid, Error, Result};
use crate::specfun::rgamma;

/// Relative size of `|f(Z)|` (against `max|f|`) above which a right-sided
/// derivative is flagged as truncation-contaminated.
pub const RL_MINUS_DECAY_THRESHOLD: f64 = 1e-8;

/// Grünwald–Letnikov weights `w_k = (−1)^k C(α, k)`, `k < count`, from
/// `w_0 = 1`, `w_k = w_{k−1}(1 − (α+1)/k)`.
pub fn gl_weights(alpha: f64, count: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(count);
    let mut cur = 1.0;
    for k in 0..count {
        if k > 0 {
            cur *= 1.0 - (alpha + 1.0) / k as f64;
        }
        w.push(cur);
    }
    w
}

/// Left Riemann–Liouville derivative `D^α_{0+}` by Grünwald–Letnikov,
/// `h^{−α} Σ_{k≤j} w_k f_{j−k}` (first order in h). Integer orders use
/// [`integer_deriv`].
pub fn rl_plus(f: &GridFunction, alpha: FracOrder) -> Result<GridFunction> {
    if let Some(n) = alpha.as_integer() {
        return integer_deriv(f, n);
    }
    let a = alpha.value();
    let w = gl_weights(a, f.len());
    let scale = f.step().powf(-a);
    let c = convolve_causal(&w, f.samples());
    Ok(f.derived(c.into_iter().map(|v| v * scale).collect(), 0))
}

/// Right Riemann–Liouville derivative `D^α_{0−}` (integrating over
/// `[x, ∞)`), by the mirrored Grünwald–Letnikov sum. The function is taken
/// to vanish beyond `tail_cutoff`, which must lie inside the grid. If
/// `|f|` at the cutoff exceeds `10⁻⁸·max|f|` the result carries a warning.
///
/// Integer orders return `(−1)^n·integer_deriv(f, n)`.
pub fn rl_minus(f: &GridFunction, alpha: FracOrder, tail_cutoff: f64) -> Result<GridFunction> {
    if let Some(n) = alpha.as_integer() {
        let d = integer_deriv(f, n)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let b = d.boundary_rows();
        return Ok(f.derived(d.samples().iter().map(|v| sign * v).collect(), b));
    }
    let last_x = f.x(f.len() - 1);
    if !(tail_cutoff > 0.0) || tail_cutoff > last_x * (1.0 + 1e-12) {
        return Err(invalid(format!(
            "rl_minus: tail_cutoff {tail_cutoff} must lie in (0, {last_x}]"
        )));
    }
    let m = ((tail_cutoff / f.step()) + 1e-9).floor() as usize + 1;
    let m = m.min(f.len());
    let s = f.samples();
    let max = s[..m].iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let warning = if s[m - 1].abs() > RL_MINUS_DECAY_THRESHOLD * max {
        Some(format!(
            "rl_minus: |f(Z)| = {:.3e} exceeds {:.0e}·max|f|; the truncated tail is not negligible",
            s[m - 1].abs(),
            RL_MINUS_DECAY_THRESHOLD
        ))
    } else {
        None
    };
    let a = alpha.value();
    let w = gl_weights(a, m);
    let rev: Vec<f64> = s[..m].iter().rev().copied().collect();
    let c = convolve_causal(&w, &rev);
    let scale = f.step().powf(-a);
    let mut out = vec![0.0; f.len()];
    for j in 0..m {
        out[j] = c[m - 1 - j] * scale;
    }
    // rows past the cutoff and just before it see the artificial zero tail
    Ok(f.derived(out, 1).with_warning(warning))
}

/// Caputo derivative of order `α ∈ (0,1)` by the L1 scheme:
/// `h^{−α}/Γ(2−α) Σ_{k<j} b_k (f_{j−k} − f_{j−k−1})`,
/// `b_k = (k+1)^{1−α} − k^{1−α}`.
pub fn caputo(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("caputo: alpha must lie in (0,1)"));
    }
    let n = f.len();
    let s = f.samples();
    let e = 1.0 - alpha;
    let b: Vec<f64> = (0..n).map(|k| ((k + 1) as f64).powf(e) - (k as f64).powf(e)).collect();
    // d_i = f_{i+1} − f_i, so c_{j−1} = Σ_{k≤j−1} b_k d_{j−1−k}
    let d: Vec<f64> = (0..n).map(|i| if i + 1 < n { s[i + 1] - s[i] } else { 0.0 }).collect();
    let c = convolve_causal(&b, &d);
    let scale = f.step().powf(-alpha) * rgamma(2.0 - alpha);
    let mut out = vec![0.0; n];
    for j in 1..n {
        out[j] = c[j - 1] * scale;
    }
    Ok(f.derived(out, 0))
}

fn first_derivative(s: &[f64], h: f64) -> Vec<f64> {
    let n = s.len();
    let mut d = vec![0.0; n];
    d[0] = (-3.0 * s[0] + 4.0 * s[1] - s[2]) / (2.0 * h);
    for i in 1..n - 1 {
        d[i] = (s[i + 1] - s[i - 1]) / (2.0 * h);
    }
    d[n - 1] = (3.0 * s[n - 1] - 4.0 * s[n - 2] + s[n - 3]) / (2.0 * h);
    d
}

/// `n`-th derivative by `n` applications of the second-order central
/// difference (second-order one-sided at the ends). Needs `n + 2` points.
pub fn integer_deriv(f: &GridFunction, n: usize) -> Result<GridFunction> {
    if n == 0 {
        return Ok(f.clone());
    }
    let needed = (n + 2).max(3);
    if f.len() < needed {
        return Err(Error::GridTooShort {
            needed,
            have: f.len(),
        });
    }
    let mut cur = f.samples().to_vec();
    for _ in 0..n {
        cur = first_derivative(&cur, f.step());
    }
    Ok(f.derived(cur, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;
    use approx::assert_relative_eq;

    fn order(a: f64) -> FracOrder {
        FracOrder::new(a).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(gl_weights(1.0, 3), vec![1.0, -1.0, 0.0]);
        let w = gl_weights(0.5, 3);
        assert_relative_eq!(w[1], -0.5);
        assert_relative_eq!(w[2], -0.125);
        // partial sums decay toward (1−1)^α = 0
        let s1: f64 = gl_weights(0.5, 100).iter().sum();
        let s2: f64 = gl_weights(0.5, 10_000).iter().sum();
        assert!(s2.abs() < s1.abs() && s2.abs() < 1e-2);
    }

    #[test]
    fn power_rule_sqrt_and_linear() {
        let h = 1e-4;
        let n = (1.0 / h) as usize + 1;
        let f = GridFunction::from_fn(h, n, |t| t.sqrt()).unwrap();
        let d = rl_plus(&f, order(0.5)).unwrap();
        assert!((d.samples()[n - 1] - gamma(1.5)).abs() < 1e-3);
        let f = GridFunction::from_fn(h, n, |t| t).unwrap();
        let d = rl_plus(&f, order(0.5)).unwrap();
        assert!((d.samples()[n - 1] - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn order_one_is_an_ordinary_derivative() {
        let h = 1e-3;
        let f = GridFunction::from_fn(h, 2001, |t| t.sin()).unwrap();
        let d = rl_plus(&f, order(1.0)).unwrap();
        let backward = (f.samples()[1000] - f.samples()[999]) / h;
        assert!((d.samples()[1000] - backward).abs() < 1e-3);
        assert!((d.samples()[1000] - 1f64.cos()).abs() < 1e-6);
    }

    #[test]
    fn right_derivative_of_exponential() {
        let h = 1e-3;
        let f = GridFunction::from_fn(h, 40_001, |z| (-z).exp()).unwrap();
        let d = rl_minus(&f, order(0.5), 40.0).unwrap();
        assert!(d.warning().is_none());
        for &i in &[0usize, 500, 1000, 3000] {
            assert!((d.samples()[i] - f.samples()[i]).abs() < 1e-3 * f.samples()[i].max(1e-3));
        }
        let d1 = rl_minus(&f, order(1.0), 40.0).unwrap();
        assert!((d1.samples()[1000] - (-1f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn right_derivative_flags_slow_decay() {
        let f = GridFunction::from_fn(0.01, 101, |z| 1.0 / (1.0 + z)).unwrap();
        let d = rl_minus(&f, order(0.5), 1.0).unwrap();
        assert!(d.warning().is_some());
        assert!(rl_minus(&f, order(0.5), 2.0).is_err());
    }

    #[test]
    fn caputo_constant_and_linear() {
        let h = 1e-3;
        let f = GridFunction::from_fn(h, 1001, |_| 3.0).unwrap();
        // zero differences in; only FFT rounding out
        assert!(caputo(&f, 0.5).unwrap().samples().iter().all(|v| v.abs() < 1e-12));
        let f = GridFunction::from_fn(h, 1001, |t| t).unwrap();
        let d = caputo(&f, 0.5).unwrap();
        // L1 is exact for piecewise-linear functions
        assert_relative_eq!(d.samples()[1000], 2.0 / std::f64::consts::PI.sqrt(), max_relative = 1e-10);
    }

    #[test]
    fn rl_caputo_relation() {
        // D^α_RL f = D^α_C f + f(0) t^{−α}/Γ(1−α) for f = e^{−t}
        let h = 2e-4;
        let n = 5001;
        let f = GridFunction::from_fn(h, n, |t| (-t).exp()).unwrap();
        let rl = rl_plus(&f, order(0.5)).unwrap();
        let c = caputo(&f, 0.5).unwrap();
        for &i in &[1000usize, 2500, 5000] {
            let t = f.x(i);
            let rhs = c.samples()[i] + t.powf(-0.5) * crate::specfun::rgamma(0.5);
            assert!((rl.samples()[i] - rhs).abs() < 2e-3, "t = {t}");
        }
    }

    #[test]
    fn integer_derivatives() {
        let h = 0.01;
        let f = GridFunction::from_fn(h, 101, |t| t * t).unwrap();
        let d = integer_deriv(&f, 2).unwrap();
        assert!(d.samples().iter().all(|v| (v - 2.0).abs() < 1e-9));
        let f = GridFunction::from_fn(h, 101, |t| t * t * t).unwrap();
        let d = integer_deriv(&f, 3).unwrap();
        let b = d.boundary_rows();
        assert!(d.samples()[b..101 - b].iter().all(|v| (v - 6.0).abs() < 1e-6));
        let f = GridFunction::from_fn(h, 301, |t| t.sin()).unwrap();
        let d = integer_deriv(&f, 3).unwrap();
        assert!((d.samples()[150] + 1.5f64.cos()).abs() < 1e-3);
        assert!(integer_deriv(&GridFunction::new(0.1, vec![1.0, 2.0, 3.0]).unwrap(), 2).is_err());
    }

    #[test]
    fn sign_law_is_exact() {
        let f = GridFunction::from_fn(0.05, 60, |t| (t * 1.3).cos() * (-t).exp()).unwrap();
        for n in 1..=4 {
            let a = rl_minus(&f, order(n as f64), 1.0).unwrap();
            let b = rl_plus(&f, order(n as f64)).unwrap();
            let s = if n % 2 == 0 { -1.0 } else { 1.0 };
            for (x, y) in a.samples().iter().zip(b.samples()) {
                assert_eq!(x + s * y, 0.0);
            }
        }
    }
}
