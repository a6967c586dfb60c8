//! Truncated Taylor arithmetic ("jets") for exact derivatives of Fourier
//! transforms at lattice points and kinks.
//!
//! A jet stores `c[k] = f^(k)(x0) / k!`. Non-smooth points are handled by
//! evaluating one side at a time: `abs_at` picks the branch of `|f|` that is
//! valid on the requested side of `x0`.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub const JET_LEN: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub c: [f64; JET_LEN],
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet { c }
    }

    /// The independent variable `x0 + u`.
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = x0;
        c[1] = 1.0;
        Jet { c }
    }

    pub fn from_coeffs(coeffs: &[f64]) -> Self {
        let mut c = [0.0; JET_LEN];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Jet { c }
    }

    /// Jet from derivatives `f^(k)(x0)`.
    pub fn from_derivatives(d: &[f64]) -> Self {
        let mut c = [0.0; JET_LEN];
        for (k, v) in d.iter().enumerate().take(JET_LEN) {
            c[k] = v / factorial(k);
        }
        Jet { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn derivative(&self, d: usize) -> f64 {
        self.c[d] * factorial(d)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|v| *v *= s);
        Jet { c }
    }

    pub fn recip(&self) -> Self {
        Jet::constant(1.0) / *self
    }

    pub fn exp(&self) -> Self {
        let mut e = [0.0; JET_LEN];
        e[0] = self.c[0].exp();
        for k in 1..JET_LEN {
            let s: f64 = (1..=k).map(|j| j as f64 * self.c[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Jet { c: e }
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let mut s = [0.0; JET_LEN];
        let mut co = [0.0; JET_LEN];
        s[0] = self.c[0].sin();
        co[0] = self.c[0].cos();
        for k in 1..JET_LEN {
            let mut a = 0.0;
            let mut b = 0.0;
            for j in 1..=k {
                a += j as f64 * self.c[j] * co[k - j];
                b += j as f64 * self.c[j] * s[k - j];
            }
            s[k] = a / k as f64;
            co[k] = -b / k as f64;
        }
        (Jet { c: s }, Jet { c: co })
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn ln(&self) -> Self {
        let a0 = self.c[0];
        let mut l = [0.0; JET_LEN];
        l[0] = a0.ln();
        for k in 1..JET_LEN {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * self.c[k - j]).sum();
            l[k] = (self.c[k] - s / k as f64) / a0;
        }
        Jet { c: l }
    }

    /// `self^alpha` for a jet with nonzero value.
    pub fn powf(&self, alpha: f64) -> Self {
        let a0 = self.c[0];
        let mut p = [0.0; JET_LEN];
        p[0] = a0.powf(alpha);
        for k in 1..JET_LEN {
            let s: f64 = (1..=k)
                .map(|j| ((alpha + 1.0) * j as f64 - k as f64) * self.c[j] * p[k - j])
                .sum();
            p[k] = s / (k as f64 * a0);
        }
        Jet { c: p }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut out = Jet::constant(1.0);
        for _ in 0..n {
            out = out * *self;
        }
        out
    }

    /// One-sided branch of `|f|` near `x0`.
    ///
    /// When `f(x0) == 0` the sign is read off the first nonzero coefficient;
    /// on the left side odd powers of `u` flip sign.
    pub fn abs_at(&self, side: Side) -> Self {
        if self.c[0] != 0.0 {
            return self.scale(self.c[0].signum());
        }
        match self.c.iter().position(|v| *v != 0.0) {
            None => *self,
            Some(k) => {
                let mut s = self.c[k].signum();
                if side == Side::Left && k % 2 == 1 {
                    s = -s;
                }
                self.scale(s)
            }
        }
    }

    /// Divide by `u^k`, treating the first `k` coefficients as exact zeros.
    /// The top `k` coefficients become unknown and are set to zero.
    pub fn shift_down(&self, k: usize) -> Self {
        let mut c = [0.0; JET_LEN];
        for i in 0..JET_LEN - k {
            c[i] = self.c[i + k];
        }
        Jet { c }
    }

    /// Force the first `k` coefficients to exact zero.
    pub fn with_zero_prefix(&self, k: usize) -> Self {
        let mut c = self.c;
        c.iter_mut().take(k).for_each(|v| *v = 0.0);
        Jet { c }
    }

    /// Evaluate the truncated Taylor polynomial at offset `u`.
    pub fn eval_offset(&self, u: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, v| acc * u + v)
    }
}

/// Jet of `sin(scale * x)` at `x0`, with an exact zero value when
/// `scale * x0` is within `1e-12` of a multiple of pi.
pub fn sin_scaled(x0: f64, scale: f64) -> Jet {
    let arg = scale * x0;
    let k = (arg / std::f64::consts::PI).round();
    if (arg - k * std::f64::consts::PI).abs() < 1e-12 {
        let s = if (k as i64) % 2 == 0 { 1.0 } else { -1.0 };
        Jet::variable(0.0).scale(scale).sin().scale(s)
    } else {
        Jet::variable(x0).scale(scale).sin()
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        c.iter_mut().zip(rhs.c.iter()).for_each(|(a, b)| *a += b);
        Jet { c }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        c.iter_mut().zip(rhs.c.iter()).for_each(|(a, b)| *a -= b);
        Jet { c }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            c[k] = (0..=k).map(|j| self.c[j] * rhs.c[k - j]).sum();
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let b0 = rhs.c[0];
        let mut q = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let s: f64 = (1..=k).map(|j| rhs.c[j] * q[k - j]).sum();
            q[k] = (self.c[k] - s) / b0;
        }
        Jet { c: q }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut c = self.c;
        c[0] += rhs;
        Jet { c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_derivatives() {
        let x = Jet::variable(0.7);
        let f = (x.sin() * x.exp()) / (x * x + 1.0);
        // finite-difference free check against closed forms of the first derivative
        let g = |t: f64| t.sin() * t.exp() / (t * t + 1.0);
        let h = 1e-5;
        let fd = (g(0.7 + h) - g(0.7 - h)) / (2.0 * h);
        assert!((f.derivative(1) - fd).abs() < 1e-9);
        let p = x.powf(1.5);
        assert!((p.derivative(2) - 0.75 * 0.7f64.powf(-0.5)).abs() < 1e-13);
        let l = x.ln();
        assert!((l.derivative(3) - 2.0 / 0.7f64.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn one_sided_abs() {
        let u = Jet::variable(0.0);
        let cube = u.powi(3);
        let right = cube.abs_at(Side::Right);
        let left = cube.abs_at(Side::Left);
        assert_eq!(right.derivative(3), 6.0);
        assert_eq!(left.derivative(3), -6.0);
        let s = u.sin().abs_at(Side::Left);
        assert_eq!(s.derivative(1), -1.0);
    }

    #[test]
    fn snapped_sine_has_exact_zero() {
        let j = sin_scaled(3.0 * std::f64::consts::PI, 1.0);
        assert_eq!(j.value(), 0.0);
        assert_eq!(j.derivative(1), -1.0);
        let h = sin_scaled(2.0 * std::f64::consts::PI, 0.5);
        assert_eq!(h.value(), 0.0);
        assert!((h.derivative(1) + 0.5).abs() < 1e-16);
    }

    #[test]
    fn shifting_divides_by_powers() {
        let u = Jet::variable(0.0);
        let sinc = u.sin().shift_down(1);
        assert!((sinc.value() - 1.0).abs() < 1e-15);
        assert!((sinc.derivative(2) + 1.0 / 3.0).abs() < 1e-15);
    }
}
