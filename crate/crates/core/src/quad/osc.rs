//! Oscillatory half-line integrals `∫_0^∞ A(ζ) e^{iθ(ζ)} dζ`.
//!
//! The integrand is supplied as `ζ ↦ (ln A(ζ), θ(ζ))`. The head `[0, Z]`
//! is integrated adaptively, where `Z` is the first point past which the
//! phase is monotone with non-decreasing speed (or the amplitude is
//! negligible). The tail is cut at the points where `θ` advances by π;
//! the resulting alternating partial sums are accelerated with Wynn's
//! epsilon algorithm.

use num_complex::Complex64;

use super::{gk21, integrate_breaks, KahanSum, QuadOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of half-period tail panels.
    pub max_panels: usize,
    /// Largest head length tried before giving up.
    pub max_head: f64,
}

impl Default for OscOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_panels: 400,
            max_head: 1e6,
        }
    }
}

fn dphase<F: Fn(f64) -> (f64, f64) + ?Sized>(f: &F, z: f64) -> (f64, f64) {
    let h = 1e-4 * z.max(1e-2);
    let (_, p0) = f(z - h);
    let (_, p1) = f(z);
    let (_, p2) = f(z + h);
    ((p2 - p0) / (2.0 * h), (p2 - 2.0 * p1 + p0) / (h * h))
}

/// Last element of the highest even column of Wynn's epsilon table.
pub fn wynn_epsilon(s: &[f64]) -> f64 {
    let n = s.len();
    if n < 3 {
        return *s.last().unwrap_or(&0.0);
    }
    // e[k] holds column k of the table, updated in place along antidiagonals
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut cur: Vec<f64> = s.to_vec();
    let mut best = s[n - 1];
    let mut col = 0usize;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            let base = if col == 0 { 0.0 } else { prev[i + 1] };
            if d == 0.0 || !d.is_finite() {
                // converged exactly (or broke down): the even column above
                // is the answer
                return if col.is_multiple_of(2) { cur[i + 1] } else { best };
            }
            next.push(base + 1.0 / d);
        }
        col += 1;
        prev = cur;
        cur = next;
        if col.is_multiple_of(2) {
            if let Some(&v) = cur.last() {
                if v.is_finite() {
                    best = v;
                }
            }
        }
    }
    best
}

/// Finds `ζ ∈ (lo, hi]` with `θ(ζ) = target` given a sign change of
/// `θ − target` over the bracket (Illinois false position).
fn phase_root<F: Fn(f64) -> (f64, f64) + ?Sized>(f: &F, mut lo: f64, mut hi: f64, target: f64) -> f64 {
    let g = |z: f64| f(z).1 - target;
    let mut glo = g(lo);
    let mut ghi = g(hi);
    let mut side = 0i32;
    for _ in 0..100 {
        let z = (lo * ghi - hi * glo) / (ghi - glo);
        let z = if z > lo && z < hi { z } else { 0.5 * (lo + hi) };
        let gz = g(z);
        if gz == 0.0 || (hi - lo) <= 4.0 * f64::EPSILON * hi.abs() {
            return z;
        }
        if (gz > 0.0) == (ghi > 0.0) {
            hi = z;
            ghi = gz;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        } else {
            lo = z;
            glo = gz;
            if side == -1 {
                ghi *= 0.5;
            }
            side = -1;
        }
    }
    0.5 * (lo + hi)
}

/// `∫_0^∞ A(ζ) e^{iθ(ζ)} dζ` with `f(ζ) = (ln A(ζ), θ(ζ))`.
pub fn osc_half_line<F>(f: &F, opts: &OscOptions) -> Result<Complex64>
where
    F: Fn(f64) -> (f64, f64) + ?Sized,
{
    let re = |z: f64| {
        let (la, th) = f(z);
        if la < -745.0 {
            0.0
        } else {
            la.exp() * th.cos()
        }
    };
    let im = |z: f64| {
        let (la, th) = f(z);
        if la < -745.0 {
            0.0
        } else {
            la.exp() * th.sin()
        }
    };
    let ln_tiny = (1e-3 * opts.abs_tol).ln();

    // locate the head length
    let mut z = 1.0;
    let decaying;
    loop {
        let (la, _) = f(z);
        let (la2, _) = f(2.0 * z);
        if la < ln_tiny && la2 <= la {
            decaying = true;
            break;
        }
        let (d1, d2) = dphase(f, z);
        let (e1, e2) = dphase(f, 2.0 * z);
        let monotone = d1 != 0.0
            && d1.signum() == e1.signum()
            && d1 * d2 >= 0.0
            && e1 * e2 >= 0.0
            && e1.abs() >= d1.abs()
            && d1.abs() * z >= 1.0
            && la2 <= la + 1e-12;
        if monotone {
            decaying = false;
            break;
        }
        z *= 2.0;
        if z > opts.max_head {
            return Err(Error::Divergent(
                "oscillatory integral: amplitude does not decay and phase never becomes monotone".into(),
            ));
        }
    }

    // head: break at roughly every half period so the adaptive rule never
    // starts from a panel that hides oscillations
    let speed = dphase(f, z).0.abs().max(dphase(f, 0.5 * z).0.abs()).max(1.0);
    let pieces = ((z * speed / std::f64::consts::PI).ceil() as usize).clamp(1, 20_000);
    let breaks: Vec<f64> = (0..=pieces).map(|i| z * i as f64 / pieces as f64).collect();
    let qo = QuadOptions {
        abs_tol: 0.1 * opts.abs_tol,
        rel_tol: 0.1 * opts.rel_tol,
        max_subdivisions: 20 * pieces + 500,
    };
    let head_re = integrate_breaks(&re, &breaks, &qo)?.value;
    let head_im = integrate_breaks(&im, &breaks, &qo)?.value;
    if decaying {
        return Ok(Complex64::new(head_re, head_im));
    }

    // tail: panels between successive π-advances of the phase
    let s = dphase(f, z).0.signum();
    let theta0 = f(z).1;
    let mut a = z;
    let mut acc_re = KahanSum::default();
    let mut acc_im = KahanSum::default();
    acc_re.add(head_re);
    acc_im.add(head_im);
    let mut seq_re = Vec::new();
    let mut seq_im = Vec::new();
    let mut last = Complex64::new(f64::NAN, f64::NAN);
    let mut stable = 0;
    for j in 1..=opts.max_panels {
        let target = theta0 + s * j as f64 * std::f64::consts::PI;
        let speed = dphase(f, a).0.abs();
        let mut hi = a + std::f64::consts::PI / speed;
        // the bound holds for non-decreasing speed; widen defensively
        let mut tries = 0;
        while (f(hi).1 - target) * s < 0.0 && tries < 60 {
            hi = a + 2.0 * (hi - a);
            tries += 1;
        }
        let b = phase_root(f, a, hi, target);
        let (pr, _, _) = gk21(&re, a, b);
        let (pi, _, _) = gk21(&im, a, b);
        acc_re.add(pr);
        acc_im.add(pi);
        seq_re.push(acc_re.value());
        seq_im.push(acc_im.value());
        a = b;
        let (la, _) = f(a);
        if la < ln_tiny {
            return Ok(Complex64::new(acc_re.value(), acc_im.value()));
        }
        if seq_re.len() >= 6 {
            let w = seq_re.len().min(40);
            let est = Complex64::new(
                wynn_epsilon(&seq_re[seq_re.len() - w..]),
                wynn_epsilon(&seq_im[seq_im.len() - w..]),
            );
            let tol = opts.abs_tol.max(opts.rel_tol * est.norm());
            if (est - last).norm() <= tol {
                stable += 1;
                if stable >= 2 {
                    return Ok(est);
                }
            } else {
                stable = 0;
            }
            last = est;
        }
    }
    Err(Error::Quadrature {
        what: "oscillatory tail",
        estimate: f64::NAN,
    })
}
