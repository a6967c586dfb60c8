use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    // z already shifted down by one
    let mut x = LANCZOS_P[0];
    for (i, p) in LANCZOS_P.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    x
}

/// Gamma function for real arguments (reflection below 1/2).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x == x.floor() && x <= 171.0 {
        return (1..x as u64).fold(1.0, |acc, k| acc * k as f64);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
}

/// `ln |Gamma(x)|` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// Digamma `Gamma'(x)/Gamma(x)` for `x > 0`.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let x2 = 1.0 / (x * x);
    // Bernoulli tail: B_2k / (2k x^2k)
    let series = x2
        * (1.0 / 12.0
            - x2 * (1.0 / 120.0
                - x2 * (1.0 / 252.0
                    - x2 * (1.0 / 240.0
                        - x2 * (1.0 / 132.0 - x2 * (691.0 / 32_760.0 - x2 / 12.0))))));
    acc + x.ln() - 0.5 / x - series
}

/// Gamma and digamma together; both only for positive arguments.
pub fn gamma_digamma(z: f64) -> Result<(f64, f64)> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("gamma_digamma requires z > 0, got {z}")));
    }
    Ok((gamma(z), digamma(z)))
}

/// Digamma at a positive integer: `-gamma + H_{n-1}`.
pub fn digamma_int(n: u32) -> f64 {
    -crate::exact::EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::EULER_GAMMA;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unit_argument() {
        let (g, d) = gamma_digamma(1.0).unwrap();
        assert_eq!(g, 1.0);
        assert!(rel(d, -EULER_GAMMA) < 1e-13);
    }

    #[test]
    fn half_argument() {
        // sqrt(pi) and -gamma - 2 log 2, both to 17 significant digits
        let (g, d) = gamma_digamma(0.5).unwrap();
        assert!(rel(g, 1.772_453_850_905_516_0) < 1e-13);
        assert!(rel(d, -1.963_510_026_021_423_5) < 1e-13);
    }

    #[test]
    fn integer_arguments() {
        let (g, d) = gamma_digamma(5.0).unwrap();
        assert_eq!(g, 24.0);
        assert!(rel(d, 1.506_117_668_431_800_5) < 1e-13);
        assert!(rel(digamma(3.0), digamma_int(3)) < 1e-14);
    }

    #[test]
    fn non_integer_values() {
        // Gamma(1/4), Gamma(3.7), digamma(0.1)
        assert!(rel(gamma(0.25), 3.625_609_908_221_908_3) < 1e-13);
        assert!(rel(gamma(3.7), 4.170_651_783_796_603) < 1e-13);
        assert!(rel(digamma(0.1), -10.423_754_940_411_076) < 1e-13);
        assert!(rel(ln_gamma(50.5), gamma(50.5).ln()) < 1e-13);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(gamma_digamma(0.0).is_err());
        assert!(gamma_digamma(-1.5).is_err());
    }
}
