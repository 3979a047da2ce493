//! Causal discrete convolution `c_j = Σ_{k≤j} w_k f_{j−k}`.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Below this length the direct sum is cheaper than three FFTs.
const DIRECT_MAX: usize = 96;

/// `c_j = Σ_{k=0}^{j} w_k f_{j−k}` for `j < f.len()`; `w` must be at least
/// as long as `f`.
pub fn convolve_causal(w: &[f64], f: &[f64]) -> Vec<f64> {
    let n = f.len();
    assert!(w.len() >= n, "weight vector shorter than the signal");
    if n <= DIRECT_MAX {
        return (0..n)
            .map(|j| (0..=j).map(|k| w[k] * f[j - k]).sum())
            .collect();
    }
    let len = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);
    // pack both real sequences into one complex transform
    let mut a: Vec<Complex64> = (0..len)
        .map(|i| {
            let re = if i < n { w[i] } else { 0.0 };
            let im = if i < n { f[i] } else { 0.0 };
            Complex64::new(re, im)
        })
        .collect();
    fwd.process(&mut a);
    let mut prod = vec![Complex64::new(0.0, 0.0); len];
    for k in 0..len {
        let ak = a[k];
        let bk = a[(len - k) % len].conj();
        let wk = (ak + bk) * 0.5;
        let fk = (ak - bk) * Complex64::new(0.0, -0.5);
        prod[k] = wk * fk;
    }
    inv.process(&mut prod);
    let scale = 1.0 / len as f64;
    prod[..n].iter().map(|c| c.re * scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fft_matches_direct() {
        let n = 500;
        let w: Vec<f64> = (0..n).map(|k| 1.0 / (1.0 + k as f64)).collect();
        let f: Vec<f64> = (0..n).map(|k| (k as f64 * 0.1).sin()).collect();
        let fast = convolve_causal(&w, &f);
        for j in [0, 1, 77, 250, 499] {
            let direct: f64 = (0..=j).map(|k| w[k] * f[j - k]).sum();
            assert!((fast[j] - direct).abs() < 1e-12, "j = {j}");
        }
    }
}
