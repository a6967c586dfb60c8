//! Modified Bessel functions of the second kind `K_s` for integer order.
//!
//! Two independent branches: the small-argument expansion (a finite
//! principal part, a logarithmic part carried by `I_s`, and a digamma
//! part), and Steed's continued fraction for `K_0`, `K_1` followed by
//! upward recurrence. The branches are cross-validated around `z = 2`.

use std::f64::consts::PI;

use super::gamma::digamma_int;
use super::KahanSum;
use crate::error::{Error, Result};

/// Switch point between the series and the continued fraction.
pub const BRANCH_POINT: f64 = 2.0;

const DEFAULT_TERM_CAP: usize = 200;

/// `K_s(z)` from the small-argument expansion. `term_cap` bounds the number
/// of terms of the two infinite series.
pub fn bessel_k_smallarg(s: u32, z: f64, term_cap: usize) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("K_s requires z > 0, got {z}")));
    }
    let half = 0.5 * z;
    let q = 0.25 * z * z;
    let sf = s as usize;

    // principal part: 1/2 (z/2)^-s sum_{k<s} (s-k-1)!/k! (-z^2/4)^k
    let mut principal = KahanSum::new();
    let mut fact_num = (1..sf).fold(1.0, |a, k| a * k as f64); // (s-1)!
    let mut fact_den = 1.0;
    let mut qk = 1.0;
    for k in 0..sf {
        principal.add(fact_num / fact_den * qk);
        if k + 1 < sf {
            fact_num /= (sf - k - 1) as f64;
            fact_den *= (k + 1) as f64;
            qk *= -q;
        }
    }
    let principal = 0.5 * half.powi(-(s as i32)) * principal.value();

    // I_s(z) and the digamma series share the factor (z^2/4)^k / (k! (s+k)!)
    let mut i_series = KahanSum::new();
    let mut psi_series = KahanSum::new();
    let mut term = 1.0 / (1..=sf).fold(1.0, |a, k| a * k as f64);
    let mut psi_k1 = digamma_int(1);
    let mut psi_sk1 = digamma_int(s + 1);
    let mut converged = false;
    for k in 0..term_cap {
        i_series.add(term);
        psi_series.add((psi_k1 + psi_sk1) * term);
        let next = term * q / ((k + 1) as f64 * (sf + k + 1) as f64);
        psi_k1 += 1.0 / (k + 1) as f64;
        psi_sk1 += 1.0 / (sf + k + 1) as f64;
        if next.abs() <= 1e-17 * i_series.value().abs() {
            converged = true;
            break;
        }
        term = next;
    }
    if !converged {
        return Err(Error::ConvergenceFailure(format!(
            "K_{s}({z}) series did not settle within {term_cap} terms"
        )));
    }
    let pow = half.powi(s as i32);
    let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
    let log_part = -sign * half.ln() * pow * i_series.value();
    let psi_part = sign * 0.5 * pow * psi_series.value();
    Ok(principal + log_part + psi_part)
}

/// `(K_0(z), K_1(z))` by Steed's continued fraction (Temme's CF2).
pub fn bessel_k01_cf(z: f64) -> Result<(f64, f64)> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("K requires z > 0, got {z}")));
    }
    let xmu = 0.0_f64;
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - xmu * xmu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..20_000 {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure(format!("K continued fraction at z = {z}")));
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * z)).sqrt() * (-z).exp() / s;
    let k1 = k0 * (xmu + z + 0.5 - h) / z;
    Ok((k0, k1))
}

/// `K_0 .. K_nmax` at `z`, branch chosen by `z`.
pub fn bessel_k_sequence(z: f64, nmax: usize) -> Result<Vec<f64>> {
    let (k0, k1) = if z <= BRANCH_POINT {
        (
            bessel_k_smallarg(0, z, DEFAULT_TERM_CAP)?,
            bessel_k_smallarg(1, z, DEFAULT_TERM_CAP)?,
        )
    } else {
        bessel_k01_cf(z)?
    };
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(k0);
    if nmax >= 1 {
        out.push(k1);
    }
    for n in 1..nmax {
        let next = out[n - 1] + 2.0 * n as f64 / z * out[n];
        out.push(next);
    }
    Ok(out)
}

/// `K_s(z)` using the small-argument series up to the branch point and the
/// continued fraction beyond.
pub fn bessel_k(s: u32, z: f64) -> Result<f64> {
    if z <= BRANCH_POINT {
        bessel_k_smallarg(s, z, DEFAULT_TERM_CAP)
    } else {
        Ok(bessel_k_sequence(z, s as usize)?[s as usize])
    }
}

/// Large-argument branch only (for cross-validation).
pub fn bessel_k_large(s: u32, z: f64) -> Result<f64> {
    let (k0, k1) = bessel_k01_cf(z)?;
    let mut seq = vec![k0, k1];
    for n in 1..s as usize {
        seq.push(seq[n - 1] + 2.0 * n as f64 / z * seq[n]);
    }
    Ok(seq[s as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// K_s(z) = int_0^inf exp(-z cosh t) cosh(s t) dt by composite Simpson.
    fn k_quadrature(s: u32, z: f64) -> f64 {
        let upper = (40.0 / z + 1.0).ln() + 4.0;
        let n = 20_000;
        let h = upper / n as f64;
        let f = |t: f64| (-z * t.cosh()).exp() * (s as f64 * t).cosh();
        let mut acc = f(0.0) + f(upper);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn branches_agree_in_overlap_band() {
        for s in 0..=4u32 {
            let mut z = 1.5;
            while z <= 2.5 + 1e-12 {
                let a = bessel_k_smallarg(s, z, 200).unwrap();
                let b = bessel_k_large(s, z).unwrap();
                assert!(rel(a, b) < 1e-10, "s={s} z={z}: {a} vs {b}");
                z += 0.05;
            }
        }
    }

    #[test]
    fn k2_at_branch_point() {
        let a = bessel_k_smallarg(2, 2.0, 200).unwrap();
        let b = bessel_k_large(2, 2.0).unwrap();
        assert!(rel(a, b) < 1e-10);
    }

    #[test]
    fn k1_at_one_against_quadrature() {
        let oracle = k_quadrature(1, 1.0);
        let v = bessel_k(1, 1.0).unwrap();
        assert!(rel(v, oracle) < 1e-12, "{v} vs {oracle}");
    }

    #[test]
    fn k2_small_argument_leading_behaviour() {
        for &z in &[1e-2, 1e-3, 1e-4] {
            let v = bessel_k(2, z).unwrap();
            assert!(rel(v, 2.0 / (z * z)) < z, "z={z}");
        }
    }

    #[test]
    fn large_argument_against_quadrature() {
        for &(s, z) in &[(0u32, 3.0), (2, 5.0), (3, 10.0)] {
            assert!(rel(bessel_k(s, z).unwrap(), k_quadrature(s, z)) < 1e-11);
        }
    }

    #[test]
    fn term_cap_is_enforced() {
        assert!(matches!(
            bessel_k_smallarg(2, 2.0, 3),
            Err(Error::ConvergenceFailure(_))
        ));
    }
}
