//! Quasi-Lagrange functions `psi` and their transforms.
//!
//! Finite combinations of the multiquadric or cubic kernels are summed in
//! real space, switching to a moment expansion far from the origin. Infinite
//! symbols and Fourier profiles go through the inverse transform, with the
//! algebraic tail of `psi^` integrated exactly via `E_mu`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{sin_scaled, Jet, Side, JET_LEN};
use crate::kernels::{
    kernel_value, laurent_series, transform_jet, transform_value, KernelKind, RadialKernel,
};
use crate::quadrature::{gauss_legendre_rule, map_rule};
use crate::specfun::{expint_n, KahanSum};
use crate::symbols::{fourier_coefficients, reciprocal_symbol_coefficients, PeriodicSymbol, SymbolSource};

/// Panels per interval of length `pi` in the inverse transform.
const PANELS_PER_PI: usize = 32;
const NODES_PER_PANEL: usize = 48;
/// Cut-off `32 pi` for algebraically decaying transforms.
const POWER_CUTOFF_PERIODS: usize = 16;
const TAIL_TERMS: usize = 256;
/// Sine-product coefficients decay like `j^-2` and are exact, so the tail runs longer.
const SINE_TAIL_TERMS: usize = 1024;
const TAIL_TOL: f64 = 1e-10;
const PROFILE_LOG_CUTOFF: f64 = -41.5;

/// `psi^(xi) = exp(p(xi)) |sin(xi)/xi|^{m+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierProfile {
    /// Coefficients of `p`, constant term first.
    pub p_coeffs: Vec<f64>,
    pub m: u32,
}

impl FourierProfile {
    pub fn new(p_coeffs: Vec<f64>, m: u32) -> Result<Self> {
        if m % 2 == 1 {
            return Err(Error::InvalidProfile(format!("m = {m} must be even")));
        }
        if p_coeffs.first().copied().unwrap_or(0.0) != 0.0 {
            return Err(Error::InvalidProfile("p(0) must vanish".into()));
        }
        let deg = p_coeffs.iter().rposition(|c| *c != 0.0);
        match deg {
            Some(d) if d % 2 == 0 && p_coeffs[d] < 0.0 => {}
            _ => {
                return Err(Error::InvalidProfile(
                    "p needs a negative leading coefficient of even degree".into(),
                ))
            }
        }
        let mut p_coeffs = p_coeffs;
        p_coeffs.truncate(deg.unwrap() + 1);
        Ok(Self { p_coeffs, m })
    }

    /// `p(xi) = -a xi^4 + xi^2 / 2`, `m = 2`.
    pub fn quartic(a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::InvalidProfile(format!("a = {a} must be positive")));
        }
        Self::new(vec![0.0, 0.0, 0.5, 0.0, -a], 2)
    }

    pub fn p(&self, xi: f64) -> f64 {
        self.p_coeffs.iter().rev().fold(0.0, |acc, c| acc * xi + c)
    }

    fn p_jet(&self, xi0: f64) -> Jet {
        let x = Jet::variable(xi0);
        self.p_coeffs
            .iter()
            .rev()
            .fold(Jet::constant(0.0), |acc, c| acc * x + *c)
    }

    pub fn hat(&self, xi: f64) -> f64 {
        let s = if xi == 0.0 { 1.0 } else { (xi.sin() / xi).abs() };
        self.p(xi).exp() * s.powi(self.m as i32 + 1)
    }

    pub fn hat_jet(&self, xi0: f64, side: Side) -> Jet {
        let sinc = if xi0 == 0.0 {
            Jet::variable(0.0).sin().shift_down(1)
        } else {
            sin_scaled(xi0, 1.0) / Jet::variable(xi0)
        };
        self.p_jet(xi0).exp() * sinc.abs_at(side).powi(self.m + 1)
    }

    /// `Q(xi) sin(xi)^{m+1} = xi^{m+1} + O(xi^{2m+2})`, checked on the Taylor
    /// coefficients of `Q sinc^{m+1}` through order `m`.
    pub fn satisfies_condition_q(&self) -> bool {
        let j = self.hat_jet(0.0, Side::Right);
        (j.c[0] - 1.0).abs() < 1e-12 && j.c[1..=self.m as usize].iter().all(|c| c.abs() < 1e-12)
    }

    /// Multiple of `pi` beyond which `exp(p) < 1e-18`.
    pub fn cutoff(&self) -> f64 {
        let mut hi = 1.0;
        while self.p(hi) > -1000.0 || self.p(hi * 1.01) > self.p(hi) {
            hi *= 2.0;
        }
        let step = 1e-2;
        let mut x = hi;
        while x > 0.0 && self.p(x) < PROFILE_LOG_CUTOFF {
            x -= step;
        }
        ((x + step) / PI).ceil().max(1.0) * PI
    }
}

#[derive(Clone, Debug)]
pub enum Route {
    RealSpace { kernel: RadialKernel, symbol: PeriodicSymbol, truncation: usize },
    FourierProfile(FourierProfile),
}

#[derive(Clone, Debug)]
struct FarField {
    moments: Vec<f64>,
    c2: f64,
    threshold: f64,
    ratio: f64,
}

impl FarField {
    /// `sum_i binom(3/2, i) c^{2i} sum_n binom(3 - 2i, n) (-1)^n M_n x^{3-2i-n}`.
    fn eval(&self, x: f64) -> f64 {
        let max_s = ((-40.0) / self.ratio.ln()).ceil() as usize + 2;
        let mut acc = KahanSum::new();
        let mut bi = 1.0; // binom(3/2, i)
        let mut c2i = 1.0;
        for i in 0..=max_s / 2 {
            if i > 0 {
                bi *= (1.5 - (i - 1) as f64) / i as f64;
                c2i *= self.c2;
            }
            if bi == 0.0 || c2i == 0.0 && i > 0 {
                break;
            }
            let alpha = 3.0 - 2.0 * i as f64;
            let mut bn = 1.0; // binom(alpha, n)
            for n in 0..=(max_s - 2 * i).min(self.moments.len() - 1) {
                if n > 0 {
                    bn *= (alpha - (n - 1) as f64) / n as f64;
                }
                if bn == 0.0 {
                    break;
                }
                let m = self.moments[n];
                if m != 0.0 {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    acc.add(bi * c2i * bn * sign * m * x.powf(alpha - n as f64));
                }
            }
        }
        acc.value()
    }
}

#[derive(Clone, Debug)]
struct FiniteSum {
    kernel: RadialKernel,
    /// Normalized weights for offsets `-N .. N`.
    weights: Vec<f64>,
    far: Option<FarField>,
}

impl FiniteSum {
    fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        if let Some(f) = &self.far {
            if x >= f.threshold {
                return f.eval(x);
            }
        }
        let n = (self.weights.len() / 2) as i64;
        let mut acc = KahanSum::new();
        acc.add(self.weights[n as usize] * kernel_value(&self.kernel, x));
        for k in 1..=n {
            acc.add(self.weights[(n + k) as usize] * kernel_value(&self.kernel, x + k as f64));
            acc.add(self.weights[(n - k) as usize] * kernel_value(&self.kernel, x - k as f64));
        }
        acc.value()
    }
}

#[derive(Clone, Debug)]
struct AlgebraicTail {
    mu: u32,
    cutoff: f64,
    scale: f64,
    /// `lambda_0 .. lambda_J`.
    lambdas: Vec<f64>,
}

impl AlgebraicTail {
    /// `int_X^inf cos(w t) t^-mu dt`.
    fn integral(&self, omega: f64) -> Result<f64> {
        let z = Complex64::new(0.0, -omega.abs() * self.cutoff);
        Ok(expint_n(self.mu, z)?.re / self.cutoff.powi(self.mu as i32 - 1))
    }

    /// `scale sum_{|j| <= J} lambda_j I(x + j)`, checked against the half-length sum.
    fn eval(&self, x: f64) -> Result<f64> {
        let jmax = self.lambdas.len() - 1;
        let mut acc = KahanSum::new();
        let mut half = 0.0;
        acc.add(self.lambdas[0] * self.integral(x)?);
        for j in 1..=jmax {
            let jf = j as f64;
            acc.add(self.lambdas[j] * (self.integral(x + jf)? + self.integral(x - jf)?));
            if j == jmax / 2 {
                half = acc.value();
            }
        }
        let full = acc.value();
        if (full - half).abs() * self.scale > TAIL_TOL {
            return Err(Error::ToleranceNotMet(format!(
                "transform tail at x = {x} changes by {:e} between J = {} and {jmax}",
                (full - half).abs() * self.scale,
                jmax / 2
            )));
        }
        Ok(self.scale * full)
    }
}

#[derive(Clone, Debug)]
struct FourierEval {
    nodes: Vec<f64>,
    /// Quadrature weight times `psi^(node) / pi`.
    weights: Vec<f64>,
    tail: Option<AlgebraicTail>,
}

impl FourierEval {
    fn new<F: Fn(f64) -> Result<f64>>(hat: F, cutoff: f64, tail: Option<AlgebraicTail>) -> Result<Self> {
        let rule = gauss_legendre_rule(NODES_PER_PANEL);
        let panels = (cutoff / PI).round() as usize * PANELS_PER_PI;
        let width = cutoff / panels as f64;
        let mut nodes = Vec::with_capacity(panels * NODES_PER_PANEL);
        let mut weights = Vec::with_capacity(panels * NODES_PER_PANEL);
        for p in 0..panels {
            for (x, w) in map_rule(&rule, p as f64 * width, (p + 1) as f64 * width) {
                nodes.push(x);
                weights.push(w * hat(x)? / PI);
            }
        }
        Ok(Self { nodes, weights, tail })
    }

    fn eval(&self, x: f64) -> Result<f64> {
        let body: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| w * (x * n).cos())
            .sum();
        let tail = match &self.tail {
            Some(t) => t.eval(x)?,
            None => 0.0,
        };
        Ok(body + tail)
    }
}

#[derive(Clone, Debug)]
enum Evaluator {
    FiniteSum(FiniteSum),
    Fourier(FourierEval),
}

/// A quasi-Lagrange function, immutable after construction.
#[derive(Clone, Debug)]
pub struct QuasiLagrange {
    pub route: Route,
    pub normalization: f64,
    evaluator: Evaluator,
}

/// One-sided limits of `psi^(d)` at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinkEntry {
    pub order: usize,
    pub left: f64,
    pub right: f64,
    pub jump: bool,
}

fn amplitude(kind: KernelKind) -> Option<(u32, f64)> {
    match kind {
        KernelKind::ThinPlateSpline => Some((3, 2.0 * PI)),
        KernelKind::CubicPower => Some((4, 12.0)),
        _ => None,
    }
}

fn same(a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

impl QuasiLagrange {
    /// Real-space route: `psi^ = normalization * symbol * phi^`.
    pub fn real_space(kernel: RadialKernel, symbol: PeriodicSymbol, normalization: f64) -> Result<Self> {
        let truncation = symbol.j_max;
        build_psi(Route::RealSpace { kernel, symbol, truncation }, normalization)
    }

    pub fn profile(p: FourierProfile) -> Result<Self> {
        build_psi(Route::FourierProfile(p), 1.0)
    }

    pub fn eval_psi(&self, x: f64) -> Result<f64> {
        match &self.evaluator {
            Evaluator::FiniteSum(f) => Ok(f.eval(x)),
            Evaluator::Fourier(f) => f.eval(x),
        }
    }

    /// Absolute accuracy of `eval_psi`.
    pub fn noise_floor(&self) -> f64 {
        match &self.evaluator {
            Evaluator::FiniteSum(_) => 1e-15,
            Evaluator::Fourier(_) => 1e-13,
        }
    }

    /// Radius outside which `psi` vanishes identically.
    pub fn support_radius(&self) -> Option<f64> {
        match &self.route {
            Route::RealSpace { kernel, symbol: PeriodicSymbol { source: SymbolSource::ClosedForm(p), .. }, .. }
                if kernel.kind == KernelKind::CubicBSpline =>
            {
                Some(2.0 + p.bandwidth as f64)
            }
            _ => None,
        }
    }

    pub fn eval_psi_many(&self, xs: &[f64]) -> Result<Vec<f64>> {
        xs.par_iter().map(|&x| self.eval_psi(x)).collect()
    }

    /// `psi^(xi)` for `xi != 0`; at 0 from the one-sided jet.
    pub fn hat_value(&self, xi: f64) -> Result<f64> {
        if xi == 0.0 {
            return Ok(self.hat_jet(0.0, Side::Right)?.value());
        }
        match &self.route {
            Route::FourierProfile(p) => Ok(p.hat(xi)),
            Route::RealSpace { kernel, symbol, .. } => {
                Ok(self.normalization * symbol.value(xi)? * transform_value(kernel, xi)?)
            }
        }
    }

    /// One-sided Taylor jet of `psi^` at `xi0`. Derivatives that are
    /// infinite because of a logarithmic term are `+inf` or `-inf`.
    pub fn hat_jet(&self, xi0: f64, side: Side) -> Result<Jet> {
        let (kernel, symbol) = match &self.route {
            Route::FourierProfile(p) => return Ok(p.hat_jet(xi0, side)),
            Route::RealSpace { kernel, symbol, .. } => (kernel, symbol),
        };
        let norm = self.normalization;
        if xi0 != 0.0 || kernel.is_bounded() {
            return Ok((symbol.jet(xi0, side)? * transform_jet(kernel, xi0, side)?).scale(norm));
        }
        if let Some((mu, amp)) = amplitude(kernel.kind) {
            let s = symbol.jet(0.0, side)?;
            check_prefix(&s, mu as usize)?;
            let sign = if side == Side::Left && mu % 2 == 1 { -1.0 } else { 1.0 };
            return Ok(s.shift_down(mu as usize).scale(norm * amp * sign));
        }
        multiquadric_jet_at_zero(kernel, symbol, norm, side)
    }

    /// `d`-th derivative of `psi^` at `xi`; a jump between the one-sided
    /// limits is reported as `NonDifferentiablePoint`.
    pub fn eval_psi_hat(&self, xi: f64, d: usize) -> Result<f64> {
        if d >= JET_LEN - 4 {
            return Err(Error::Domain(format!("derivative order {d} too high")));
        }
        if d == 0 && xi != 0.0 {
            return self.hat_value(xi);
        }
        let left = self.hat_jet(xi, Side::Left)?.derivative(d);
        let right = self.hat_jet(xi, Side::Right)?.derivative(d);
        if same(left, right) {
            Ok(if left.is_infinite() { left } else { 0.5 * (left + right) })
        } else {
            Err(Error::NonDifferentiablePoint { at: xi, order: d, left, right })
        }
    }

    /// One-sided limits of `psi^(d)`, `d = 0 ..= max_d`, at `xi`.
    pub fn kink_report(&self, xi: f64, max_d: usize) -> Result<Vec<KinkEntry>> {
        let l = self.hat_jet(xi, Side::Left)?;
        let r = self.hat_jet(xi, Side::Right)?;
        Ok((0..=max_d)
            .map(|order| {
                let (left, right) = (l.derivative(order), r.derivative(order));
                KinkEntry { order, left, right, jump: !same(left, right) }
            })
            .collect())
    }

    /// `(x, psi(x))` rows as CSV.
    pub fn psi_csv(&self, xs: &[f64]) -> Result<String> {
        let vals = self.eval_psi_many(xs)?;
        let mut out = String::from("x,psi\n");
        for (x, v) in xs.iter().zip(vals) {
            out.push_str(&format!("{x},{v}\n"));
        }
        Ok(out)
    }

    /// `(xi, psi^(d)(xi))` rows as CSV; jumps are written as the right limit.
    pub fn psi_hat_csv(&self, xis: &[f64], d: usize) -> Result<String> {
        let mut out = format!("xi,psi_hat_d{d}\n");
        for &xi in xis {
            let v = match self.eval_psi_hat(xi, d) {
                Ok(v) => v,
                Err(Error::NonDifferentiablePoint { right, .. }) => right,
                Err(e) => return Err(e),
            };
            out.push_str(&format!("{xi},{v}\n"));
        }
        Ok(out)
    }
}

fn check_prefix(s: &Jet, mu: usize) -> Result<()> {
    match s.c[..mu].iter().position(|c| c.abs() > 1e-12) {
        Some(k) => Err(Error::DivergentCombination(format!(
            "symbol has a nonzero order-{k} term at 0 against a kernel singularity of order {mu}"
        ))),
        None => Ok(()),
    }
}

/// `psi^` at 0 for the multiquadric: Taylor series of `P` times the
/// expansion of the transform. Terms `xi^k log|xi|` make every derivative of
/// order `>= k` infinite.
fn multiquadric_jet_at_zero(kernel: &RadialKernel, symbol: &PeriodicSymbol, norm: f64, side: Side) -> Result<Jet> {
    let p = match &symbol.source {
        SymbolSource::ClosedForm(p) => p,
        _ => {
            return Err(Error::UnsupportedSymbol(
                "multiquadric schemes need a finite symbol".into(),
            ))
        }
    };
    let taylor = p.taylor_at_zero(JET_LEN + 4);
    let series = laurent_series(kernel, JET_LEN as i32)?;
    let log_c = kernel.c.ln();
    let coef = |e: i32, log_power: u8| -> f64 {
        series
            .terms
            .iter()
            .filter(|t| t.log_power == log_power)
            .map(|t| {
                let n = e - t.exponent;
                if n < 0 || n as usize >= taylor.len() {
                    0.0
                } else {
                    taylor[n as usize] * t.coef.eval(log_c)
                }
            })
            .sum::<f64>()
            * norm
    };
    let lead = series.leading_exponent().unwrap_or(0);
    for e in lead..0 {
        if coef(e, 0).abs() > 1e-12 || coef(e, 1).abs() > 1e-12 {
            return Err(Error::DivergentCombination(format!(
                "term of order {e} survives at the origin"
            )));
        }
    }
    let first_log = (0..JET_LEN as i32).find(|&e| coef(e, 1).abs() > 1e-14);
    let mut c = [0.0; JET_LEN];
    for (d, cd) in c.iter_mut().enumerate() {
        let d = d as i32;
        *cd = match first_log {
            // d^d/dxi^d of a xi^k log|xi| near 0 behaves like a k! ... log|xi| for d >= k
            Some(k) if d >= k => {
                let a = coef(k, 1);
                let parity = if side == Side::Left && (d - k) % 2 == 1 { -1.0 } else { 1.0 };
                // log|xi| -> -inf at 0; higher derivatives pick up 1/xi^{d-k} factors
                let s = if d == k { -a.signum() } else { a.signum() * parity };
                s * f64::INFINITY
            }
            _ => coef(d, 0),
        };
    }
    Ok(Jet { c })
}

/// Coefficients of `symbol` to `J` terms, from its source.
fn extended_coefficients(symbol: &PeriodicSymbol, j: usize) -> Result<Vec<f64>> {
    let sym = match &symbol.source {
        SymbolSource::ClosedForm(_) => symbol.clone(),
        SymbolSource::SineProduct(p) => PeriodicSymbol::sine_product(p.clone(), j),
        SymbolSource::Quadrature(f) => fourier_coefficients(f, j, 1e-14)?,
        SymbolSource::Reciprocal(k) => reciprocal_symbol_coefficients(k, j)?,
    };
    Ok((0..=j as i64).map(|i| sym.lambda(i)).collect())
}

/// Assemble `psi`; checks that the symbol cancels the kernel singularity
/// and that `psi^(0) = 1`.
pub fn build_psi(route: Route, normalization: f64) -> Result<QuasiLagrange> {
    if !(normalization != 0.0 && normalization.is_finite()) {
        return Err(Error::Domain(format!("normalization {normalization}")));
    }
    let evaluator = match &route {
        Route::FourierProfile(p) => {
            let cutoff = p.cutoff();
            let pc = p.clone();
            Evaluator::Fourier(FourierEval::new(|x| Ok(pc.hat(x)), cutoff, None)?)
        }
        Route::RealSpace { kernel, symbol, .. } => match &symbol.source {
            SymbolSource::ClosedForm(p) => {
                let weights: Vec<f64> = p.coeffs.iter().map(|w| w * normalization).collect();
                let far = match kernel.kind {
                    KernelKind::GeneralizedMultiquadric | KernelKind::CubicPower => {
                        let moments: Vec<f64> = p
                            .taylor_at_zero(48)
                            .iter()
                            .enumerate()
                            .map(|(n, t)| {
                                // undo (-1)^{n/2} / n!
                                if n % 2 == 1 {
                                    return 0.0;
                                }
                                let fact: f64 = (1..=n).map(|k| k as f64).product();
                                let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                                t * fact * sign * normalization
                            })
                            .collect();
                        let reach = p.bandwidth as f64 + kernel.c;
                        let threshold = (3.0 * reach).max(12.0);
                        Some(FarField { moments, c2: kernel.c * kernel.c, threshold, ratio: reach / threshold })
                    }
                    _ => None,
                };
                Evaluator::FiniteSum(FiniteSum { kernel: *kernel, weights, far })
            }
            _ => {
                let (mu, amp) = amplitude(kernel.kind).ok_or_else(|| {
                    Error::UnsupportedKernel(format!(
                        "infinite symbols need a power-law kernel, got {}",
                        kernel.name()
                    ))
                })?;
                let cutoff = 2.0 * PI * POWER_CUTOFF_PERIODS as f64;
                let tail = AlgebraicTail {
                    mu,
                    cutoff,
                    scale: normalization * amp / PI,
                    lambdas: extended_coefficients(
                        symbol,
                        if matches!(symbol.source, SymbolSource::SineProduct(_)) { SINE_TAIL_TERMS } else { TAIL_TERMS },
                    )?,
                };
                let (k, s) = (*kernel, symbol.clone());
                let hat = move |x: f64| -> Result<f64> { Ok(normalization * s.value(x)? * transform_value(&k, x)?) };
                Evaluator::Fourier(FourierEval::new(hat, cutoff, Some(tail))?)
            }
        },
    };
    let q = QuasiLagrange { route, normalization, evaluator };
    let h0 = q.eval_psi_hat(0.0, 0)?;
    if (h0 - 1.0).abs() > 1e-10 {
        return Err(Error::Domain(format!("psi^(0) = {h0}, expected 1")));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_cc;
    use crate::symbols::{fractional_power_fn, TrigPolynomial};

    fn gmq_basic(c: f64) -> QuasiLagrange {
        let p = TrigPolynomial::symmetric(&[1.5, -1.0, 0.25]);
        let k = RadialKernel::multiquadric(c).unwrap();
        QuasiLagrange::real_space(k, PeriodicSymbol::closed_form(p), 1.0 / 3.0).unwrap()
    }

    #[test]
    fn multiquadric_finite_sum() {
        let q = gmq_basic(1.0);
        let phi = |r: f64| (r * r + 1.0).powf(1.5);
        for &x in &[0.0, 0.3, 2.5, -4.0] {
            let want = (0.25 * phi(x + 2.0) - phi(x + 1.0) + 1.5 * phi(x) - phi(x - 1.0) + 0.25 * phi(x - 2.0)) / 3.0;
            assert!((q.eval_psi(x).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn far_field_matches_direct_sum_at_threshold() {
        let q = gmq_basic(1.0);
        let Evaluator::FiniteSum(f) = &q.evaluator else { panic!() };
        let far = f.far.as_ref().unwrap();
        let x = far.threshold + 0.5;
        let direct = FiniteSum { far: None, ..f.clone() }.eval(x);
        let expanded = far.eval(x);
        assert!((direct - expanded).abs() < 1e-11, "{direct} vs {expanded}");
        // decay like x^-5
        let r = q.eval_psi(200.0).unwrap() / q.eval_psi(100.0).unwrap();
        assert!((r.log2() + 5.0).abs() < 0.05, "{}", r.log2());
    }

    #[test]
    fn bspline_identity_symbol() {
        let k = RadialKernel::cubic_bspline();
        let q = QuasiLagrange::real_space(k, PeriodicSymbol::closed_form(TrigPolynomial::constant(1.0)), 1.0).unwrap();
        for &x in &[0.0, 0.5, 1.5, 2.5] {
            assert_eq!(q.eval_psi(x).unwrap(), kernel_value(&k, x));
        }
        assert_eq!(q.eval_psi_hat(0.0, 0).unwrap(), 1.0);
    }

    #[test]
    fn profile_values() {
        let p = FourierProfile::quartic(1.0).unwrap();
        let want = (-1.0f64 + 0.5).exp() * 1f64.sin().powi(3);
        assert!((p.hat(1.0) - want).abs() < 1e-15);
        assert!(p.satisfies_condition_q());
        let bad = FourierProfile::new(vec![0.0, 0.0, 0.3, 0.0, -1.0], 2).unwrap();
        assert!(!bad.satisfies_condition_q());
        assert!(FourierProfile::new(vec![0.0, 0.0, 0.5, 0.0, 1.0], 2).is_err());
        assert!(FourierProfile::new(vec![0.0], 2).is_err());
        assert!(FourierProfile::new(vec![0.0, 0.0, -1.0], 3).is_err());
    }

    #[test]
    fn profile_psi_at_zero_two_ways() {
        let p = FourierProfile::quartic(0.01).unwrap();
        let q = QuasiLagrange::profile(p.clone()).unwrap();
        let x = p.cutoff();
        let mut bps: Vec<f64> = (0..=(2.0 * x / PI).round() as i64).map(|k| -x + k as f64 * PI).collect();
        bps.dedup();
        let direct = adaptive_cc(|t| p.hat(t), &bps, 1e-12, 4096).unwrap() / (2.0 * PI);
        assert!((q.eval_psi(0.0).unwrap() - direct).abs() < 1e-8);
    }

    #[test]
    fn cardinal_thin_plate_interpolates() {
        let k = RadialKernel::thin_plate();
        let sym = reciprocal_symbol_coefficients(&k, 64).unwrap();
        let q = QuasiLagrange::real_space(k, sym, 1.0).unwrap();
        for j in 0..=10 {
            let v = q.eval_psi(j as f64).unwrap();
            let want = if j == 0 { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-6, "k={j}: {v}");
        }
        assert!((q.eval_psi(-2.5).unwrap() - q.eval_psi(2.5).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn fractional_power_normalization() {
        let sym = fourier_coefficients(&fractional_power_fn(), 64, 1e-13).unwrap();
        let q = QuasiLagrange::real_space(RadialKernel::thin_plate(), sym, 1.0 / (2.0 * PI)).unwrap();
        // psi^ = |sinc(xi/2)|^3
        for &xi in &[0.5f64, 3.0, 7.0] {
            let want = ((0.5 * xi).sin() / (0.5 * xi)).abs().powi(3);
            assert!((q.hat_value(xi).unwrap() - want).abs() < 1e-14);
        }
        // sum over the lattice of psi^ at 2 pi j vanishes: psi has unit integral
        let s: f64 = (-200..=200).map(|x| q.eval_psi(x as f64 + 0.5).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-6, "{s}");
    }

    #[test]
    fn divergent_combination_rejected() {
        let p = TrigPolynomial::symmetric(&[1.0, -0.25]);
        let k = RadialKernel::multiquadric(1.0).unwrap();
        let r = QuasiLagrange::real_space(k, PeriodicSymbol::closed_form(p), 1.0);
        assert!(matches!(r, Err(Error::DivergentCombination(_))));
    }

    #[test]
    fn multiquadric_derivatives_at_zero() {
        let q = gmq_basic(1.0);
        assert!((q.eval_psi_hat(0.0, 0).unwrap() - 1.0).abs() < 1e-14);
        assert!(q.eval_psi_hat(0.0, 1).unwrap().abs() < 1e-14);
        assert!(q.eval_psi_hat(0.0, 2).unwrap().abs() > 1e-3);
        assert!(q.eval_psi_hat(0.0, 4).unwrap().is_infinite());
    }

    #[test]
    fn evenness() {
        let q = gmq_basic(0.7);
        for &x in &[0.3, 5.0, 40.0] {
            assert!((q.eval_psi(x).unwrap() - q.eval_psi(-x).unwrap()).abs() < 1e-12);
        }
    }
}
