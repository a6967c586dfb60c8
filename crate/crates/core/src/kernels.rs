//! Radial basis functions and the structure of their generalized Fourier
//! transforms near the origin.
//!
//! Transforms follow `f^(xi) = int f(x) e^{-i xi x} dx`. The `delta''` part of
//! the thin-plate spline transform only acts on polynomials and is dropped.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_from_decimal_f64, Symbolic};
use crate::jet::{Jet, Side, JET_LEN};
use crate::specfun::{bessel_k, bessel_k_sequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    ThinPlateSpline,
    GeneralizedMultiquadric,
    CubicPower,
    CubicBSpline,
}

/// `phi(r) = (r^2 + c^2)^{3/2}` has transform `A (c/|xi|)^2 K_2(c|xi|)` with
/// `A = (2 pi)^{1/2} 2^{5/2} / Gamma(-3/2) = 6`.
pub const GMQ_TRANSFORM_CONSTANT: f64 = 6.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialKernel {
    pub kind: KernelKind,
    /// Shape parameter; only used by the multiquadric.
    pub c: f64,
    pub dim: u32,
}

impl RadialKernel {
    pub fn thin_plate() -> Self {
        Self { kind: KernelKind::ThinPlateSpline, c: 0.0, dim: 1 }
    }

    pub fn multiquadric(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Domain(format!("multiquadric needs c > 0, got {c}")));
        }
        Ok(Self { kind: KernelKind::GeneralizedMultiquadric, c, dim: 1 })
    }

    pub fn cubic_power() -> Self {
        Self { kind: KernelKind::CubicPower, c: 0.0, dim: 1 }
    }

    pub fn cubic_bspline() -> Self {
        Self { kind: KernelKind::CubicBSpline, c: 0.0, dim: 1 }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            KernelKind::ThinPlateSpline => "thin-plate",
            KernelKind::GeneralizedMultiquadric => "multiquadric",
            KernelKind::CubicPower => "cubic-power",
            KernelKind::CubicBSpline => "cubic-bspline",
        }
    }

    /// Order `mu` of the transform singularity, `phi^(r) ~ r^-mu` at 0.
    pub fn singularity_order(&self) -> u32 {
        match self.kind {
            KernelKind::ThinPlateSpline => 3,
            KernelKind::GeneralizedMultiquadric | KernelKind::CubicPower => 4,
            KernelKind::CubicBSpline => 0,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.kind == KernelKind::CubicBSpline
    }

    pub fn value(&self, r: f64) -> f64 {
        kernel_value(self, r)
    }

    /// Factor that turns the kernel's canonical symbol into `psi^(0) = 1`.
    ///
    /// The canonical symbol is `(2 - 2 cos)^{mu/2}` (about `|xi|^mu`) for odd
    /// `mu` and `(1 - cos)^{mu/2}` (about `(xi^2/2)^{mu/2}`) for even `mu`.
    pub fn normalization(&self) -> f64 {
        match self.kind {
            KernelKind::ThinPlateSpline => 1.0 / (2.0 * PI),
            KernelKind::GeneralizedMultiquadric | KernelKind::CubicPower => 1.0 / 3.0,
            KernelKind::CubicBSpline => 1.0,
        }
    }
}

pub fn kernel_value(k: &RadialKernel, r: f64) -> f64 {
    let r = r.abs();
    match k.kind {
        KernelKind::ThinPlateSpline => {
            if r == 0.0 {
                0.0
            } else {
                r * r * r.ln()
            }
        }
        KernelKind::GeneralizedMultiquadric => (r * r + k.c * k.c).powf(1.5),
        KernelKind::CubicPower => r * r * r,
        KernelKind::CubicBSpline => {
            if r < 1.0 {
                2.0 / 3.0 - r * r + 0.5 * r * r * r
            } else if r < 2.0 {
                let t = 2.0 - r;
                t * t * t / 6.0
            } else {
                0.0
            }
        }
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Generalized transform `phi^(|xi|)`.
pub fn transform_value(k: &RadialKernel, xi: f64) -> Result<f64> {
    let a = xi.abs();
    if a == 0.0 && k.singularity_order() > 0 {
        return Err(Error::Domain(format!("{} transform is singular at 0", k.name())));
    }
    Ok(match k.kind {
        KernelKind::ThinPlateSpline => 2.0 * PI / (a * a * a),
        KernelKind::GeneralizedMultiquadric => {
            GMQ_TRANSFORM_CONSTANT * k.c * k.c / (a * a) * bessel_k(2, k.c * a)?
        }
        KernelKind::CubicPower => 12.0 / (a * a * a * a),
        KernelKind::CubicBSpline => sinc(0.5 * a).powi(4),
    })
}

/// Taylor jet of the transform at `xi0` on one side. `xi0 = 0` is only
/// allowed for the bounded kernel.
pub fn transform_jet(k: &RadialKernel, xi0: f64, side: Side) -> Result<Jet> {
    if k.kind == KernelKind::CubicBSpline {
        let half = Jet::variable(xi0).scale(0.5);
        let s = if xi0 == 0.0 {
            half.sin().shift_down(1).scale(2.0)
        } else {
            half.sin() / half
        };
        return Ok(s.powi(4));
    }
    if xi0 == 0.0 {
        return Err(Error::Domain(format!("{} transform is singular at 0", k.name())));
    }
    let abs = Jet::variable(xi0).abs_at(side);
    Ok(match k.kind {
        KernelKind::ThinPlateSpline => abs.powf(-3.0).scale(2.0 * PI),
        KernelKind::CubicPower => abs.powf(-4.0).scale(12.0),
        KernelKind::GeneralizedMultiquadric => {
            let c = k.c;
            let z0 = c * xi0.abs();
            let seq = bessel_k_sequence(z0, JET_LEN + 2)?;
            let kidx = |n: i64| seq[n.unsigned_abs() as usize];
            // K_2^{(d)}(z) = (-1/2)^d sum_i binom(d, i) K_{2 - d + 2i}(z)
            let slope = c * xi0.signum();
            let mut coeffs = [0.0; JET_LEN];
            let mut fact = 1.0;
            for (d, coef) in coeffs.iter_mut().enumerate() {
                if d > 0 {
                    fact *= d as f64;
                }
                let mut binom = 1.0;
                let mut s = 0.0;
                for i in 0..=d {
                    s += binom * kidx(2 - d as i64 + 2 * i as i64);
                    binom = binom * (d - i) as f64 / (i + 1) as f64;
                }
                *coef = (-0.5f64).powi(d as i32) * s / fact * slope.powi(d as i32);
            }
            let k2 = Jet { c: coeffs };
            k2 * abs.powf(-2.0).scale(GMQ_TRANSFORM_CONSTANT * c * c)
        }
        KernelKind::CubicBSpline => unreachable!(),
    })
}

/// One term `coef * xi^exponent * (log|xi|)^log_power` of an expansion at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentTerm {
    pub exponent: i32,
    pub log_power: u8,
    pub coef: Symbolic,
}

/// Expansion of an even function about 0 with exact coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentSeries {
    pub terms: Vec<LaurentTerm>,
}

impl LaurentSeries {
    /// Add a term, merging like terms and keeping exponents sorted.
    pub fn push(&mut self, exponent: i32, log_power: u8, coef: Symbolic) {
        if coef.is_zero() {
            return;
        }
        if let Some(t) = self
            .terms
            .iter_mut()
            .find(|t| t.exponent == exponent && t.log_power == log_power)
        {
            t.coef = &t.coef + &coef;
        } else {
            self.terms.push(LaurentTerm { exponent, log_power, coef });
        }
        self.terms.retain(|t| !t.coef.is_zero());
        self.terms.sort_by_key(|t| (t.exponent, t.log_power));
    }

    /// Non-log coefficient of `xi^e`.
    pub fn coefficient(&self, e: i32) -> Symbolic {
        self.terms
            .iter()
            .find(|t| t.exponent == e && t.log_power == 0)
            .map(|t| t.coef.clone())
            .unwrap_or_default()
    }

    pub fn leading_exponent(&self) -> Option<i32> {
        self.terms.first().map(|t| t.exponent)
    }

    /// Product with a power series `sum_k a_k xi^k` (rational coefficients),
    /// truncated to exponents `<= max_exponent`.
    pub fn times_power_series(&self, series: &[BigRational], max_exponent: i32) -> LaurentSeries {
        let mut out = LaurentSeries::default();
        for t in &self.terms {
            for (k, a) in series.iter().enumerate() {
                let e = t.exponent + k as i32;
                if e > max_exponent || a.is_zero() {
                    continue;
                }
                out.push(e, t.log_power, t.coef.scale(a));
            }
        }
        out
    }

    pub fn truncate(&self, max_exponent: i32) -> LaurentSeries {
        LaurentSeries {
            terms: self
                .terms
                .iter()
                .filter(|t| t.exponent <= max_exponent)
                .cloned()
                .collect(),
        }
    }

    pub fn eval(&self, xi: f64, log_c: f64) -> f64 {
        let a = xi.abs();
        self.terms
            .iter()
            .map(|t| t.coef.eval(log_c) * a.powi(t.exponent) * a.ln().powi(t.log_power as i32))
            .sum()
    }
}

/// Digamma at a positive integer as an exact symbolic value.
fn digamma_exact(n: u32) -> Symbolic {
    let mut h = BigRational::zero();
    for k in 1..n {
        h += rat(1, k as i64);
    }
    &Symbolic::from_rat(h) - &Symbolic::euler_gamma()
}

fn factorial_rat(n: u32) -> BigRational {
    let mut f = BigRational::one();
    for k in 2..=n {
        f *= rat(k as i64, 1);
    }
    f
}

/// Exact expansion of the multiquadric transform `6 (c/|xi|)^2 K_2(c|xi|)`
/// through `xi^max_exponent`, with `c` taken as an exact rational.
fn multiquadric_laurent(c: &BigRational, max_exponent: i32) -> LaurentSeries {
    const S: u32 = 2;
    let mut out = LaurentSeries::default();
    let six = rat(6, 1);
    let c2 = c * c;
    let pow_c2 = |k: u32| -> BigRational {
        let mut p = BigRational::one();
        for _ in 0..k {
            p *= &c2;
        }
        p
    };
    // principal part: 2^{s-1} xi^{-2s} sum_{k<s} (s-k-1)! / (k! (-4)^k) c^{2k} xi^{2k}
    for k in 0..S {
        let e = -2 * S as i32 + 2 * k as i32;
        if e > max_exponent {
            continue;
        }
        let mut coef = factorial_rat(S - k - 1) / factorial_rat(k) * pow_c2(k);
        coef *= rat(1 << (S - 1), 1);
        let m4 = rat(-4, 1);
        for _ in 0..k {
            coef /= &m4;
        }
        out.push(e, 0, Symbolic::from_rat(coef * &six));
    }
    // (-c^2/2)^s prefactor of the three infinite series
    let mut pre = BigRational::one();
    for _ in 0..S {
        pre *= -&c2 / rat(2, 1);
    }
    let mut k = 0u32;
    loop {
        let e = 2 * k as i32;
        if e > max_exponent {
            break;
        }
        let mut base = pow_c2(k) / (factorial_rat(k) * factorial_rat(S + k));
        for _ in 0..k {
            base /= rat(4, 1);
        }
        let scaled = &pre * &base * &six;
        // -log|xi| and -log c parts
        out.push(e, 1, Symbolic::from_rat(-scaled.clone()));
        out.push(e, 0, Symbolic::logc().scale(&(-scaled.clone())));
        // log 2 + (digamma(k+1) + digamma(s+k+1)) / 2
        let psi = &digamma_exact(k + 1) + &digamma_exact(S + k + 1);
        let inner = &Symbolic::log2() + &psi.scale(&rat(1, 2));
        out.push(e, 0, inner.scale(&scaled));
        k += 1;
    }
    out
}

/// Exact Taylor coefficients of `sin(x)/x` in `x`.
pub fn sinc_series(max_degree: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); max_degree + 1];
    let mut fact = BigRational::one();
    for n in 0..=max_degree / 2 {
        if n > 0 {
            fact *= rat(((2 * n) * (2 * n + 1)) as i64, 1);
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        out[2 * n] = rat(sign, 1) / &fact;
    }
    out
}

/// Product of two power series truncated at `max_degree`.
pub fn series_mul(a: &[BigRational], b: &[BigRational], max_degree: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); max_degree + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= max_degree {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exact expansion of the transform about 0, through `xi^max_exponent`.
pub fn laurent_series(k: &RadialKernel, max_exponent: i32) -> Result<LaurentSeries> {
    let mut out = LaurentSeries::default();
    match k.kind {
        KernelKind::ThinPlateSpline => {
            out.push(-3, 0, &Symbolic::pi() * &Symbolic::from_int(2));
        }
        KernelKind::CubicPower => out.push(-4, 0, Symbolic::from_int(12)),
        KernelKind::GeneralizedMultiquadric => {
            out = multiquadric_laurent(&rat_from_decimal_f64(k.c)?, max_exponent);
        }
        KernelKind::CubicBSpline => {
            if max_exponent < 0 {
                return Ok(out);
            }
            let deg = max_exponent as usize;
            // sinc(xi/2)^4
            let mut half: Vec<BigRational> = sinc_series(deg);
            for (n, v) in half.iter_mut().enumerate() {
                for _ in 0..n {
                    *v /= rat(2, 1);
                }
            }
            let sq = series_mul(&half, &half, deg);
            let quad = series_mul(&sq, &sq, deg);
            for (n, v) in quad.into_iter().enumerate() {
                out.push(n as i32, 0, Symbolic::from_rat(v));
            }
        }
    }
    Ok(out.truncate(max_exponent))
}

/// Singular structure of a transform near 0: the listed terms plus a smooth
/// remainder.
#[derive(Clone, Debug)]
pub struct TransformExpansion {
    pub kernel: RadialKernel,
    pub order: i32,
    pub exact: LaurentSeries,
    pub singular_terms: Vec<SingularTerm>,
    pub normalization: f64,
    /// Numeric terms beyond `order`, for the multiquadric only.
    tail: Vec<(i32, u8, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularTerm {
    pub exponent: f64,
    pub has_log: bool,
    pub coefficient: f64,
}

impl TransformExpansion {
    pub fn eval_terms(&self, xi: f64) -> f64 {
        self.exact.eval(xi, self.log_c())
    }

    fn log_c(&self) -> f64 {
        if self.kernel.kind == KernelKind::GeneralizedMultiquadric {
            self.kernel.c.ln()
        } else {
            0.0
        }
    }

    /// Remainder `phi^(xi) - sum of listed terms`, evaluated without
    /// cancellation for small `|c xi|`.
    pub fn smooth_tail(&self, xi: f64) -> Result<f64> {
        match self.kernel.kind {
            KernelKind::ThinPlateSpline | KernelKind::CubicPower => Ok(0.0),
            KernelKind::GeneralizedMultiquadric if (self.kernel.c * xi).abs() <= 2.0 => {
                let a = xi.abs();
                Ok(self
                    .tail
                    .iter()
                    .map(|&(e, l, v)| v * a.powi(e) * a.ln().powi(l as i32))
                    .sum())
            }
            _ => Ok(transform_value(&self.kernel, xi)? - self.eval_terms(xi)),
        }
    }
}

/// Expansion of the transform about 0 through order `order`.
pub fn transform_expansion(k: &RadialKernel, order: i32) -> Result<TransformExpansion> {
    if k.kind == KernelKind::CubicBSpline {
        return Err(Error::UnsupportedKernel(k.name().into()));
    }
    let lead = -(k.singularity_order() as i32);
    if order < lead {
        return Err(Error::Domain(format!("order {order} below leading exponent {lead}")));
    }
    let exact = laurent_series(k, order)?;
    let log_c = if k.kind == KernelKind::GeneralizedMultiquadric { k.c.ln() } else { 0.0 };
    let singular_terms = exact
        .terms
        .iter()
        .map(|t| SingularTerm {
            exponent: t.exponent as f64,
            has_log: t.log_power > 0,
            coefficient: t.coef.eval(log_c),
        })
        .collect();
    let tail = if k.kind == KernelKind::GeneralizedMultiquadric {
        multiquadric_laurent(&rat_from_decimal_f64(k.c)?, 40)
            .terms
            .iter()
            .filter(|t| t.exponent > order)
            .map(|t| (t.exponent, t.log_power, t.coef.eval(log_c)))
            .collect()
    } else {
        Vec::new()
    };
    Ok(TransformExpansion {
        kernel: *k,
        order,
        exact,
        singular_terms,
        normalization: k.normalization(),
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn kernel_values() {
        assert_eq!(kernel_value(&RadialKernel::thin_plate(), 1.0), 0.0);
        assert_eq!(kernel_value(&RadialKernel::thin_plate(), 0.0), 0.0);
        assert_eq!(kernel_value(&RadialKernel::multiquadric(1.0).unwrap(), 0.0), 1.0);
        assert_eq!(kernel_value(&RadialKernel::cubic_bspline(), 2.0), 0.0);
        assert!((kernel_value(&RadialKernel::cubic_bspline(), 0.0) - 2.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn multiquadric_constant_is_six() {
        let a = (2.0 * PI).sqrt() * 2f64.powf(2.5) / gamma(-1.5);
        assert!((a - GMQ_TRANSFORM_CONSTANT).abs() < 1e-13);
    }

    #[test]
    fn transform_examples() {
        let b = RadialKernel::cubic_bspline();
        assert!(transform_value(&b, 2.0 * PI).unwrap().abs() < 1e-30);
        let t = RadialKernel::thin_plate();
        assert!((transform_value(&t, 1.0).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!(matches!(transform_value(&t, 0.0), Err(Error::Domain(_))));
        let g = RadialKernel::multiquadric(1.0).unwrap();
        let xi: f64 = 0.01;
        let v = transform_value(&g, xi).unwrap();
        let lead = 12.0 / xi.powi(4) - 3.0 / (xi * xi);
        assert!(((v - lead) / v).abs() < 1e-4);
    }

    #[test]
    fn multiquadric_expansion_matches_known_terms() {
        let g = RadialKernel::multiquadric(1.0).unwrap();
        let e = transform_expansion(&g, 4).unwrap();
        let c = |exp: i32| e.exact.coefficient(exp).eval(0.0);
        assert_eq!(c(-4), 12.0);
        assert_eq!(c(-2), -3.0);
        // 6 (c^4/16 (3/2 - 2 gamma) + c^4 log 2 / 8)
        let want0 = 6.0 * ((1.5 - 2.0 * crate::exact::EULER_GAMMA) / 16.0 + std::f64::consts::LN_2 / 8.0);
        assert!((c(0) - want0).abs() < 1e-14);
        assert!(e.singular_terms.iter().any(|t| t.has_log && t.exponent == 4.0));
        let log0 = e.singular_terms.iter().find(|t| t.has_log && t.exponent == 0.0).unwrap();
        assert!((log0.coefficient + 6.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn power_kernel_expansions() {
        let t = transform_expansion(&RadialKernel::thin_plate(), 0).unwrap();
        assert_eq!(t.singular_terms.len(), 1);
        assert_eq!(t.singular_terms[0].exponent, -3.0);
        assert!((t.singular_terms[0].coefficient - 2.0 * PI).abs() < 1e-15);
        let p = transform_expansion(&RadialKernel::cubic_power(), 0).unwrap();
        assert_eq!(p.singular_terms[0].exponent, -4.0);
        assert!(matches!(
            transform_expansion(&RadialKernel::cubic_bspline(), 0),
            Err(Error::UnsupportedKernel(_))
        ));
    }

    #[test]
    fn remainder_after_singular_terms_is_bounded() {
        for c in [0.5, 1.0, 2.0] {
            let g = RadialKernel::multiquadric(c).unwrap();
            let e = transform_expansion(&g, 0).unwrap();
            // agrees with brute subtraction where cancellation is mild
            for &xi in &[0.05, 0.1, 0.5] {
                let direct = transform_value(&g, xi).unwrap() - e.eval_terms(xi);
                let tail = e.smooth_tail(xi).unwrap();
                assert!((direct - tail).abs() < 1e-7 * transform_value(&g, xi).unwrap().abs().max(1.0));
            }
            let mut xi: f64 = 1e-6;
            while xi <= 0.1 {
                assert!(e.smooth_tail(xi).unwrap().abs() < 1.0);
                xi *= 1.5;
            }
        }
    }

    #[test]
    fn multiquadric_transform_positive_and_even() {
        let g = RadialKernel::multiquadric(1.3).unwrap();
        for i in 1..=1000 {
            let xi = i as f64 * 0.01;
            let a = transform_value(&g, xi).unwrap();
            assert!(a > 0.0);
            assert_eq!(a, transform_value(&g, -xi).unwrap());
        }
    }

    #[test]
    fn transform_jets_match_values() {
        let g = RadialKernel::multiquadric(0.8).unwrap();
        for &xi in &[0.5, 2.0 * PI, -3.0] {
            let j = transform_jet(&g, xi, Side::Right).unwrap();
            assert!((j.value() - transform_value(&g, xi).unwrap()).abs() < 1e-12);
            let h = 1e-4;
            let fd = (transform_value(&g, xi + h).unwrap() - transform_value(&g, xi - h).unwrap()) / (2.0 * h);
            assert!((j.derivative(1) - fd).abs() < 1e-6 * fd.abs().max(1.0));
        }
        let b = transform_jet(&RadialKernel::cubic_bspline(), 0.0, Side::Right).unwrap();
        assert!((b.value() - 1.0).abs() < 1e-15);
        assert!((b.derivative(2) + 1.0 / 3.0).abs() < 1e-14);
    }
}
