//! Clenshaw-Curtis and Gauss-Legendre rules.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Clenshaw-Curtis nodes `cos(j pi / n)` and weights on `[-1, 1]`.
pub fn clenshaw_curtis_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2 && n % 2 == 0, "Clenshaw-Curtis order must be even");
    let nodes: Vec<f64> = (0..=n).map(|j| (j as f64 * PI / n as f64).cos()).collect();
    let half = n / 2;
    let weights = (0..=n)
        .map(|j| {
            let c = if j == 0 || j == n { 1.0 } else { 2.0 };
            let mut s = 1.0;
            for k in 1..=half {
                let b = if k == half { 1.0 } else { 2.0 };
                let kf = k as f64;
                s -= b / (4.0 * kf * kf - 1.0) * (2.0 * kf * j as f64 * PI / n as f64).cos();
            }
            c * s / n as f64
        })
        .collect();
    (nodes, weights)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Map a reference rule onto `[a, b]`.
pub fn map_rule(rule: &(Vec<f64>, Vec<f64>), a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    rule.0
        .iter()
        .zip(rule.1.iter())
        .map(move |(x, w)| (mid + half * x, half * w))
}

/// Composite Clenshaw-Curtis over `breakpoints`, doubling the per-panel
/// order from 16 until two successive levels agree to `tol` for every
/// output. `f` maps a node to a vector of integrands of length `width`.
pub fn adaptive_cc_vec<F>(f: F, breakpoints: &[f64], width: usize, tol: f64, max_order: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Vec<f64>,
{
    let mut prev: Option<Vec<f64>> = None;
    let mut n = 16;
    while n <= max_order {
        let rule = clenshaw_curtis_rule(n);
        let mut acc = vec![0.0; width];
        for pair in breakpoints.windows(2) {
            for (x, w) in map_rule(&rule, pair[0], pair[1]) {
                for (a, v) in acc.iter_mut().zip(f(x)) {
                    *a += w * v;
                }
            }
        }
        if let Some(p) = &prev {
            let diff = p.iter().zip(&acc).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if diff <= tol {
                return Ok(acc);
            }
        }
        prev = Some(acc);
        n *= 2;
    }
    Err(Error::QuadratureFailure(format!(
        "no agreement to {tol:e} up to order {max_order}"
    )))
}

pub fn adaptive_cc<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], tol: f64, max_order: usize) -> Result<f64> {
    adaptive_cc_vec(|x| vec![f(x)], breakpoints, 1, tol, max_order).map(|v| v[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cc_integrates_polynomials_exactly() {
        let rule = clenshaw_curtis_rule(16);
        let s: f64 = map_rule(&rule, 0.0, 2.0).map(|(x, w)| w * x.powi(9)).sum();
        assert!((s - 2f64.powi(10) / 10.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_exactness() {
        let rule = gauss_legendre_rule(10);
        let s: f64 = map_rule(&rule, -1.0, 3.0).map(|(x, w)| w * x.powi(19)).sum();
        let exact = (3f64.powi(20) - 1.0) / 20.0;
        assert!((s - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn adaptive_handles_panel_kink() {
        // int_{-pi}^{pi} |sin x| dx = 4
        let v = adaptive_cc(|x: f64| x.sin().abs(), &[-PI, 0.0, PI], 1e-13, 1024).unwrap();
        assert!((v - 4.0).abs() < 1e-13);
    }

    #[test]
    fn adaptive_reports_failure() {
        let r = adaptive_cc(|x: f64| x.abs().sqrt(), &[-1.0, 1.0], 1e-15, 32);
        assert!(matches!(r, Err(Error::QuadratureFailure(_))));
    }
}
