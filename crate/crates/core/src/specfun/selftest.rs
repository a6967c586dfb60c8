//! Closed-form and quadrature oracles for the special functions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{inverse_ft_beta_exp, inverse_ft_gaussian, inverse_ft_poisson, sin_abs_fourier_identity, BetaExpSeries};
use crate::error::Result;
use crate::quadrature::adaptive_cc;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfTestCase {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn case(name: &str, max_error: f64, tolerance: f64) -> SelfTestCase {
    SelfTestCase { name: name.into(), max_error, tolerance, passed: max_error <= tolerance }
}

fn half_line(f: impl Fn(f64) -> f64, end: f64, pieces: usize) -> Result<f64> {
    let bps: Vec<f64> = (0..=pieces).map(|i| end * i as f64 / pieces as f64).collect();
    adaptive_cc(f, &bps, 1e-14, 1 << 12)
}

/// Series against the Gaussian closed form, `beta = 2`, `n = 1, 2, 3`, `r in [0, 3]`.
pub fn gaussian_case() -> Result<SelfTestCase> {
    let mut worst = 0.0f64;
    for dim in 1..=3 {
        let s = BetaExpSeries::new(2.0, dim)?;
        for i in 0..=30 {
            let r = 0.1 * i as f64;
            worst = worst.max((inverse_ft_beta_exp(&s, r)? - inverse_ft_gaussian(dim, r)).abs());
        }
    }
    Ok(case("beta=2 series vs Gaussian closed form", worst, 1e-10))
}

/// Poisson closed form against quadrature of the radial transform, `n = 1, 3`.
pub fn poisson_case() -> Result<SelfTestCase> {
    let mut worst = 0.0f64;
    for i in 0..=12 {
        let r = 0.25 * i as f64;
        let one = half_line(|s| (-s).exp() * (r * s).cos(), 45.0, 64)? / PI;
        worst = worst.max((one - inverse_ft_poisson(1, r)).abs());
        let three = if r == 0.0 {
            half_line(|s| (-s).exp() * s * s, 60.0, 64)? / (2.0 * PI * PI)
        } else {
            half_line(|s| (-s).exp() * s * (r * s).sin(), 60.0, 64)? / (2.0 * PI * PI * r)
        };
        worst = worst.max((three - inverse_ft_poisson(3, r)).abs());
    }
    Ok(case("beta=1 closed form vs quadrature", worst, 1e-8))
}

/// Fourier coefficients of `|sin|` at `2k`, `|k| <= 8`, against quadrature.
pub fn sin_abs_case() -> Result<SelfTestCase> {
    let mut worst = 0.0f64;
    for k in -8i64..=8 {
        let q = adaptive_cc(|t| t.sin().abs() * (2.0 * k as f64 * t).cos(), &[-PI, 0.0, PI], 1e-14, 1 << 12)?
            / (2.0 * PI);
        worst = worst.max((q - sin_abs_fourier_identity(k)).abs());
    }
    Ok(case("|sin| Fourier identity vs quadrature", worst, 1e-10))
}

/// `beta = 4`, `n = 1` at the origin against `(1/pi) int_0^inf exp(-x^4)`.
pub fn quartic_case() -> Result<SelfTestCase> {
    let s = BetaExpSeries::new(4.0, 1)?;
    let q = half_line(|x| (-x.powi(4)).exp(), 8.0, 16)? / PI;
    Ok(case("beta=4 value at 0 vs quadrature", (inverse_ft_beta_exp(&s, 0.0)? - q).abs(), 1e-8))
}

pub fn selftest() -> Result<Vec<SelfTestCase>> {
    Ok(vec![gaussian_case()?, poisson_case()?, sin_abs_case()?, quartic_case()?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cases_pass() {
        for c in selftest().unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }
}
