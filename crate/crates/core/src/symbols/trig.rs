use serde::{Deserialize, Serialize};

use crate::exact::{rat, Symbolic};
use crate::jet::Jet;

/// `P(xi) = sum_{k=-N}^{N} mu_k e^{i k xi}` with real symmetric coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPolynomial {
    pub bandwidth: usize,
    /// `mu_{-N} .. mu_N`.
    pub coeffs: Vec<f64>,
    /// Exact `mu_0 .. mu_N` when the polynomial came from a moment system.
    pub exact: Option<Vec<Symbolic>>,
    /// `log c` used to evaluate `exact`.
    pub log_c: f64,
    taylor0: Vec<f64>,
}

const TAYLOR_LEN: usize = 40;

impl TrigPolynomial {
    /// Build from `mu_0 .. mu_N`, mirrored to negative indices.
    pub fn symmetric(half: &[f64]) -> Self {
        assert!(!half.is_empty());
        let n = half.len() - 1;
        let mut coeffs = Vec::with_capacity(2 * n + 1);
        coeffs.extend(half.iter().rev());
        coeffs.extend(&half[1..]);
        let mut p = Self { bandwidth: n, coeffs, exact: None, log_c: 0.0, taylor0: Vec::new() };
        p.taylor0 = p.compute_taylor(TAYLOR_LEN);
        p
    }

    pub fn symmetric_exact(half: Vec<Symbolic>, log_c: f64) -> Self {
        let vals: Vec<f64> = half.iter().map(|s| s.eval(log_c)).collect();
        let mut p = Self::symmetric(&vals);
        p.exact = Some(half);
        p.log_c = log_c;
        p.taylor0 = p.compute_taylor(TAYLOR_LEN);
        p
    }

    pub fn constant(v: f64) -> Self {
        Self::symmetric(&[v])
    }

    /// `(1 - cos xi)^2 / 3`.
    pub fn multiquadric_basic() -> Self {
        let half = vec![Symbolic::frac(1, 2), Symbolic::frac(-1, 3), Symbolic::frac(1, 12)];
        Self::symmetric_exact(half, 0.0)
    }

    pub fn coeff(&self, k: i64) -> f64 {
        let n = self.bandwidth as i64;
        if k.abs() > n {
            0.0
        } else {
            self.coeffs[(k + n) as usize]
        }
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let n = self.bandwidth as i64;
        let mut s = self.coeff(0);
        for k in 1..=n {
            s += (self.coeff(k) + self.coeff(-k)) * (k as f64 * xi).cos();
        }
        s
    }

    /// Taylor coefficients `(-1)^{n/2} M_n / n!` at 0, exact moments where
    /// available so that vanishing moments give exact zeros.
    pub fn taylor_at_zero(&self, len: usize) -> Vec<f64> {
        if len <= self.taylor0.len() {
            return self.taylor0[..len].to_vec();
        }
        self.compute_taylor(len)
    }

    fn compute_taylor(&self, len: usize) -> Vec<f64> {
        let mut fact = 1.0;
        (0..len)
            .map(|n| {
                if n > 0 {
                    fact *= n as f64;
                }
                if n % 2 == 1 {
                    return 0.0;
                }
                let m = match self.exact_moment(n as u32) {
                    Some(s) if n <= 16 => s.eval(self.log_c),
                    _ => self.moment(n as u32),
                };
                let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                sign * m / fact
            })
            .collect()
    }

    /// Value with the Taylor series near multiples of `2 pi`.
    pub fn eval_accurate(&self, xi: f64) -> f64 {
        let t = xi - 2.0 * std::f64::consts::PI * (xi / (2.0 * std::f64::consts::PI)).round();
        if t.abs() < 0.25 && self.exact.is_some() {
            self.taylor0.iter().rev().fold(0.0, |acc, v| acc * t + v)
        } else {
            self.eval(xi)
        }
    }

    /// Jet at `xi0`; at multiples of `2 pi` the coefficients come from the
    /// moments.
    pub fn jet_accurate(&self, xi0: f64) -> Jet {
        let t = xi0 - 2.0 * std::f64::consts::PI * (xi0 / (2.0 * std::f64::consts::PI)).round();
        if t.abs() < 1e-12 {
            Jet::from_coeffs(&self.taylor_at_zero(crate::jet::JET_LEN))
        } else {
            self.jet(xi0)
        }
    }

    pub fn jet(&self, xi0: f64) -> Jet {
        let x = Jet::variable(xi0);
        let mut s = Jet::constant(self.coeff(0));
        for k in 1..=self.bandwidth as i64 {
            s = s + x.scale(k as f64).cos().scale(self.coeff(k) + self.coeff(-k));
        }
        s
    }

    /// `sum_k k^n mu_k`.
    pub fn moment(&self, n: u32) -> f64 {
        let nb = self.bandwidth as i64;
        (-nb..=nb).map(|k| (k as f64).powi(n as i32) * self.coeff(k)).sum()
    }

    /// Exact moment when exact coefficients are present.
    pub fn exact_moment(&self, n: u32) -> Option<Symbolic> {
        let half = self.exact.as_ref()?;
        if n % 2 == 1 {
            return Some(Symbolic::zero());
        }
        let mut acc = if n == 0 { half[0].clone() } else { Symbolic::zero() };
        for (k, mu) in half.iter().enumerate().skip(1) {
            let kp = num_traits::pow::pow(rat(k as i64, 1), n as usize);
            acc = &acc + &mu.scale(&(kp * rat(2, 1)));
        }
        Some(acc)
    }

    pub fn to_record(&self, log_c: f64) -> TrigPolynomialRecord {
        TrigPolynomialRecord {
            bandwidth: self.bandwidth,
            coeffs: self.coeffs.clone(),
            exact: self
                .exact
                .as_ref()
                .map(|h| h.iter().map(|s| s.record(log_c).exact).collect()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TrigPolynomialRecord {
    pub bandwidth: usize,
    pub coeffs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<String>>,
}
