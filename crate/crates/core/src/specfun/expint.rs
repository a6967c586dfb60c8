//! Generalized exponential integral `E_n(z) = int_1^inf e^{-z t} t^{-n} dt`
//! for complex arguments off the negative real axis.

use num_complex::Complex64;

use super::gamma::digamma_int;
use crate::error::{Error, Result};

pub fn expint_n(n: u32, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Ok((-z).exp() / z);
    }
    if z.norm() == 0.0 {
        if n > 1 {
            return Ok(Complex64::new(1.0 / (n as f64 - 1.0), 0.0));
        }
        return Err(Error::Domain("E_1(0) diverges".into()));
    }
    if z.norm() >= 1.0 {
        // modified Lentz continued fraction
        let tiny = 1e-300;
        let mut b = z + n as f64;
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = b.inv();
        let mut h = d;
        for i in 1..100_000u64 {
            let an = -((i * (n as u64 - 1 + i)) as f64);
            b += 2.0;
            d = (d * an + b).inv();
            c = b + c.inv() * an;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                return Ok(h * (-z).exp());
            }
        }
        Err(Error::ConvergenceFailure(format!("E_{n}({z}) continued fraction")))
    } else {
        let nm1 = n as i64 - 1;
        let mut ans = if nm1 != 0 {
            Complex64::new(1.0 / nm1 as f64, 0.0)
        } else {
            -z.ln() - crate::exact::EULER_GAMMA
        };
        let mut fact = Complex64::new(1.0, 0.0);
        for i in 1..1000i64 {
            fact *= -z / i as f64;
            let del = if i != nm1 {
                -fact / (i - nm1) as f64
            } else {
                fact * (-z.ln() + digamma_int(n))
            };
            ans += del;
            if del.norm() < ans.norm() * 1e-17 {
                return Ok(ans);
            }
        }
        Err(Error::ConvergenceFailure(format!("E_{n}({z}) series")))
    }
}

/// `int_X^inf cos(w t) t^-3 dt` for `X > 0`.
pub fn cos_cubic_tail(omega: f64, x: f64) -> Result<f64> {
    let z = Complex64::new(0.0, -omega.abs() * x);
    Ok((expint_n(3, z)? / (x * x)).re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tail_quadrature(omega: f64, x: f64) -> f64 {
        // substitute t = x / s, s in (0, 1]: integrand cos(w x / s) s / x^2
        let n = 400_000;
        let h = 1.0 / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let s = (i as f64 + 0.5) * h;
            acc += (omega * x / s).cos() * s;
        }
        acc * h / (x * x)
    }

    #[test]
    fn real_axis_values() {
        let e1 = expint_n(1, Complex64::new(1.0, 0.0)).unwrap();
        assert!((e1.re - 0.219_383_934_395_520_27).abs() < 1e-14);
        // E_1(1/2), then the recurrence E_{n+1} = (e^-x - x E_n) / n
        let x: f64 = 0.5;
        let e1h = 0.559_773_594_776_160_8;
        let e2h = (-x).exp() - x * e1h;
        let e3h = ((-x).exp() - x * e2h) / 2.0;
        let e3 = expint_n(3, Complex64::new(x, 0.0)).unwrap();
        assert!((e3.re - e3h).abs() < 1e-14);
    }

    #[test]
    fn branches_continuous_on_unit_circle() {
        for k in 0..8 {
            let th = k as f64 * 0.4 - 1.5;
            let z_in = Complex64::from_polar(0.999_999, th);
            let z_out = Complex64::from_polar(1.000_001, th);
            let a = expint_n(3, z_in).unwrap();
            let b = expint_n(3, z_out).unwrap();
            assert!((a - b).norm() < 1e-5);
        }
    }

    #[test]
    fn cosine_tail_matches_quadrature() {
        for &(w, x) in &[(0.0, 2.0), (0.3, 2.0), (1.7, 3.0)] {
            let a = cos_cubic_tail(w, x).unwrap();
            let b = tail_quadrature(w, x);
            assert!((a - b).abs() < 1e-6, "w={w}: {a} vs {b}");
        }
        assert!((cos_cubic_tail(0.0, 2.0).unwrap() - 0.125).abs() < 1e-15);
    }
}
