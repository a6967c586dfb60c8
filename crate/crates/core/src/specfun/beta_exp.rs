//! Radial inverse Fourier transform of `exp(-|x|^beta)` in `n` dimensions
//! as a power series in the radius, valid for `beta > 1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::{gamma, ln_gamma};
use super::KahanSum;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaExpSeries {
    pub beta: f64,
    pub dim: u32,
    pub term_cap: usize,
    pub tol: f64,
}

impl BetaExpSeries {
    pub fn new(beta: f64, dim: u32) -> Result<Self> {
        Self::with_limits(beta, dim, 2000, 1e-16)
    }

    pub fn with_limits(beta: f64, dim: u32, term_cap: usize, tol: f64) -> Result<Self> {
        if !(beta > 1.0) {
            return Err(Error::Domain(format!("series needs beta > 1, got {beta}")));
        }
        if dim == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        if term_cap < 10 {
            return Err(Error::Domain(format!("term cap {term_cap} below 10")));
        }
        Ok(Self { beta, dim, term_cap, tol })
    }

    fn prefactor(&self) -> f64 {
        let n = self.dim as f64;
        2f64.powf(1.0 - n) / (PI.powf(0.5 * n) * self.beta)
    }

    /// Signed k-th term without the prefactor.
    pub fn term(&self, k: usize, radius: f64) -> f64 {
        let n = self.dim as f64;
        let kf = k as f64;
        let lg = ln_gamma((n + 2.0 * kf) / self.beta) - ln_gamma(kf + 1.0) - ln_gamma(kf + 0.5 * n);
        if k == 0 {
            return lg.exp();
        }
        if radius == 0.0 {
            return 0.0;
        }
        let mag = (2.0 * kf * (0.5 * radius).ln() + lg).exp();
        if k % 2 == 0 {
            mag
        } else {
            -mag
        }
    }

    /// Bound on `sum_{k > from} |t_k|` when the term ratios are nonincreasing
    /// from `from` on (checked up to the term cap); `None` otherwise.
    pub fn tail_bound(&self, radius: f64, from: usize) -> Option<f64> {
        let t0 = self.term(from, radius).abs();
        if t0 == 0.0 {
            return Some(0.0);
        }
        let r0 = self.term(from + 1, radius).abs() / t0;
        if !(r0 < 1.0) {
            return None;
        }
        let mut prev = r0;
        for k in from + 1..self.term_cap {
            let tk = self.term(k, radius).abs();
            if tk == 0.0 {
                break;
            }
            let r = self.term(k + 1, radius).abs() / tk;
            if r > prev * (1.0 + 1e-12) {
                return None;
            }
            prev = r;
        }
        Some(t0 * r0 / (1.0 - r0))
    }
}

/// Value of the inverse transform at `radius`.
pub fn inverse_ft_beta_exp(series: &BetaExpSeries, radius: f64) -> Result<f64> {
    let radius = radius.abs();
    let mut sum = KahanSum::new();
    let mut max_term: f64 = 0.0;
    let mut last = f64::INFINITY;
    for k in 0..series.term_cap {
        let t = series.term(k, radius);
        sum.add(t);
        max_term = max_term.max(t.abs());
        let s = sum.value().abs();
        // alternating tail: first omitted term bounds the error once terms shrink
        if k > 0 && t.abs() <= last && t.abs() <= series.tol * s.max(f64::MIN_POSITIVE) {
            let lost = max_term * 4.0 * f64::EPSILON;
            if lost > 1e-6 * s {
                return Err(Error::SlowConvergence(format!(
                    "radius {radius}: cancellation from terms of size {max_term:e}"
                )));
            }
            return Ok(series.prefactor() * sum.value());
        }
        if radius == 0.0 {
            return Ok(series.prefactor() * sum.value());
        }
        last = t.abs();
    }
    Err(Error::SlowConvergence(format!(
        "radius {radius}: no convergence within {} terms",
        series.term_cap
    )))
}

/// Closed form for `beta = 1` (the Poisson kernel).
pub fn inverse_ft_poisson(dim: u32, radius: f64) -> f64 {
    let a = 0.5 * (dim as f64 + 1.0);
    gamma(a) / (PI.powf(a) * (1.0 + radius * radius).powf(a))
}

/// Closed form for `beta = 2` (Gaussian).
pub fn inverse_ft_gaussian(dim: u32, radius: f64) -> f64 {
    (4.0 * PI).powf(-0.5 * dim as f64) * (-0.25 * radius * radius).exp()
}

/// One-dimensional series for `beta = 2N` after the duplication formula
/// `k! Gamma(k + 1/2) = sqrt(pi) (2k)! / 4^k`.
pub fn inverse_ft_even_power_1d(half_power: u32, radius: f64) -> Result<f64> {
    if half_power == 0 {
        return Err(Error::Domain("beta = 2N needs N >= 1".into()));
    }
    let two_n = 2.0 * half_power as f64;
    let mut sum = KahanSum::new();
    let mut log_pow_fact = 0.0; // log(x^{2k} / (2k)!)
    for k in 0..2000usize {
        let kf = k as f64;
        if k > 0 {
            if radius == 0.0 {
                break;
            }
            log_pow_fact += 2.0 * radius.ln() - ((2.0 * kf - 1.0) * 2.0 * kf).ln();
        }
        let mag = (log_pow_fact + ln_gamma((2.0 * kf + 1.0) / two_n)).exp();
        let t = if k % 2 == 0 { mag } else { -mag };
        sum.add(t);
        if k > 2 && mag < 1e-17 * sum.value().abs() {
            break;
        }
    }
    Ok(sum.value() / (two_n * PI))
}
