use crate::error::{Error, Result};

// B_2j / (2j)!
const BERNOULLI_OVER_FACT: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
];

/// Hurwitz zeta `sum_{k>=0} (a + k)^-s` for `s > 1`, `a > 0`, by
/// Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s > 1.0) || !(a > 0.0) {
        return Err(Error::Domain(format!("hurwitz_zeta({s}, {a})")));
    }
    const N: usize = 12;
    let mut sum = 0.0;
    for k in (0..N).rev() {
        sum += (a + k as f64).powf(-s);
    }
    let b = a + N as f64;
    sum += b.powf(1.0 - s) / (s - 1.0) + 0.5 * b.powf(-s);
    let mut rising = s; // s (s+1) ... (s + 2j - 2)
    let mut bpow = b.powf(-s - 1.0);
    for (j, coef) in BERNOULLI_OVER_FACT.iter().enumerate() {
        sum += coef * rising * bpow;
        let m = 2 * j as u32 + 1;
        rising *= (s + m as f64) * (s + m as f64 + 1.0);
        bpow /= b * b;
    }
    Ok(sum)
}
