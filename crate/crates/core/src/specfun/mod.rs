//! Special functions: gamma and digamma, modified Bessel `K_s`, Hurwitz zeta,
//! exponential integrals, and the radial inverse transform of
//! `exp(-|x|^beta)`.

mod bessel;
mod beta_exp;
mod expint;
mod gamma;
mod selftest;
mod zeta;

pub use bessel::{
    bessel_k, bessel_k01_cf, bessel_k_large, bessel_k_sequence, bessel_k_smallarg, BRANCH_POINT,
};
pub use beta_exp::{
    inverse_ft_beta_exp, inverse_ft_even_power_1d, inverse_ft_gaussian, inverse_ft_poisson,
    BetaExpSeries,
};
pub use expint::{cos_cubic_tail, expint_n};
pub use gamma::{digamma, digamma_int, gamma, gamma_digamma, ln_gamma};
pub use selftest::{selftest, SelfTestCase};
pub use zeta::hurwitz_zeta;

/// Kahan-Babuska (Neumaier) compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Fourier coefficient of `|sin|` at frequency `2k`: `2 / (pi (1 - 4k^2))`.
///
/// This is the weight of the even-integer comb in the distributional inverse
/// transform of `|sin|`, evaluated at `x = 2k`.
pub fn sin_abs_fourier_identity(k: i64) -> f64 {
    let kf = k as f64;
    2.0 / (std::f64::consts::PI * (1.0 - 4.0 * kf * kf))
}

/// Fourier coefficient of `|sin|` at an arbitrary integer frequency.
pub fn sin_abs_coefficient(freq: i64) -> f64 {
    if freq % 2 != 0 {
        0.0
    } else {
        sin_abs_fourier_identity(freq / 2)
    }
}
