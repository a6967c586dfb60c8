use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::moments::{solve_moment_system, MomentSystem};
use super::trig::TrigPolynomial;
use crate::error::{Error, Result};
use crate::jet::{sin_scaled, Jet, Side, JET_LEN};
use crate::kernels::{
    laurent_series, sinc_series, transform_jet, transform_value, KernelKind, RadialKernel,
};
use crate::quadrature::adaptive_cc_vec;
use crate::specfun::{hurwitz_zeta, sin_abs_coefficient};

pub const DEFAULT_TRUNCATION: usize = 64;
pub const DEFAULT_QUAD_TOL: f64 = 1e-13;
const MAX_CC_ORDER: usize = 1 << 14;

/// A 2π-periodic real function with known non-smooth points in `[-pi, pi]`.
#[derive(Clone)]
pub struct PeriodicFn {
    pub name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    jet: Option<Arc<dyn Fn(f64, Side) -> Jet + Send + Sync>>,
    pub breakpoints: Vec<f64>,
}

impl PeriodicFn {
    /// `breakpoints` are added to `{-pi, pi}`.
    pub fn new(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static, breakpoints: &[f64]) -> Self {
        let mut bp: Vec<f64> = vec![-PI, PI];
        bp.extend(breakpoints.iter().copied().filter(|b| b.abs() < PI));
        bp.sort_by(f64::total_cmp);
        bp.dedup();
        Self { name: name.into(), f: Arc::new(f), jet: None, breakpoints: bp }
    }

    /// Attach one-sided Taylor jets.
    pub fn with_jet(mut self, jet: impl Fn(f64, Side) -> Jet + Send + Sync + 'static) -> Self {
        self.jet = Some(Arc::new(jet));
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn jet(&self, x0: f64, side: Side) -> Option<Jet> {
        self.jet.as_ref().map(|j| j(x0, side))
    }
}

/// `(2 - 2 cos xi)^{3/2} = |2 sin(xi/2)|^3`.
pub fn fractional_power_fn() -> PeriodicFn {
    PeriodicFn::new("(2-2cos)^1.5", |t: f64| (2.0 * (0.5 * t).sin()).abs().powi(3), &[0.0])
        .with_jet(|t0, side| sin_scaled(t0, 0.5).scale(2.0).abs_at(side).powi(3))
}

impl fmt::Debug for PeriodicFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicFn")
            .field("name", &self.name)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum SymbolSource {
    ClosedForm(TrigPolynomial),
    /// `P(xi) |sin xi|`, coefficients by exact convolution.
    SineProduct(TrigPolynomial),
    Quadrature(PeriodicFn),
    Reciprocal(RadialKernel),
}

impl SymbolSource {
    pub fn label(&self) -> String {
        match self {
            SymbolSource::ClosedForm(_) => "closed-form".into(),
            SymbolSource::SineProduct(_) => "sine-product".into(),
            SymbolSource::Quadrature(f) => format!("quadrature:{}", f.name),
            SymbolSource::Reciprocal(k) => format!("reciprocal:{}", k.name()),
        }
    }
}

/// Fourier coefficients `lambda_j`, `|j| <= J`, of an even periodic symbol.
#[derive(Clone, Debug)]
pub struct PeriodicSymbol {
    pub source: SymbolSource,
    pub j_max: usize,
    /// `lambda_{-J} .. lambda_J`.
    coeffs: Vec<f64>,
    /// `|lambda_j| <= C |j|^{-d}`; `None` for finitely many nonzero terms.
    pub decay_exponent: Option<f64>,
    pub decay_constant: f64,
}

/// Least-squares fit of `log |lambda_j|` against `log j` over `[J/4, J]`,
/// skipping entries at or below `floor`. Returns `(d, C)` with
/// `C = max |lambda_j| j^d` over the fitted range.
pub fn fit_coefficient_decay(half: &[f64], floor: f64) -> Option<(f64, f64)> {
    let jmax = half.len().checked_sub(1)?;
    let lo = (jmax / 4).max(1);
    let pts: Vec<(f64, f64)> = (lo..=jmax)
        .filter(|&j| half[j].abs() > floor)
        .map(|j| ((j as f64).ln(), half[j].abs().ln()))
        .collect();
    if pts.len() < 4 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let d = -sxy / sxx;
    let c = pts.iter().map(|p| (p.1 + d * p.0).exp()).fold(0.0, f64::max);
    Some((d, c))
}

impl PeriodicSymbol {
    fn from_half(source: SymbolSource, half: Vec<f64>, floor: f64) -> Self {
        let j_max = half.len() - 1;
        let mut coeffs: Vec<f64> = half.iter().rev().copied().collect();
        coeffs.extend(&half[1..]);
        let fit = fit_coefficient_decay(&half, floor);
        Self {
            source,
            j_max,
            coeffs,
            decay_exponent: fit.map(|f| f.0),
            decay_constant: fit.map_or(0.0, |f| f.1),
        }
    }

    pub fn closed_form(p: TrigPolynomial) -> Self {
        let half: Vec<f64> = (0..=p.bandwidth as i64).map(|k| p.coeff(k)).collect();
        let mut s = Self::from_half(SymbolSource::ClosedForm(p), half, f64::INFINITY);
        s.decay_exponent = None;
        s
    }

    /// `P(xi) |sin xi|` with `lambda_j = sum_k mu_k s_{j-k}`, where `s_m` are
    /// the coefficients of `|sin|`.
    pub fn sine_product(p: TrigPolynomial, j_max: usize) -> Self {
        let n = p.bandwidth as i64;
        let half: Vec<f64> = (0..=j_max as i64)
            .map(|j| (-n..=n).map(|k| p.coeff(k) * sin_abs_coefficient(j - k)).sum())
            .collect();
        Self::from_half(SymbolSource::SineProduct(p), half, 1e-15)
    }

    pub fn lambda(&self, j: i64) -> f64 {
        let jm = self.j_max as i64;
        if j.abs() > jm {
            0.0
        } else {
            self.coeffs[(j + jm) as usize]
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Exact symbol value from its source (not the truncated series).
    pub fn value(&self, xi: f64) -> Result<f64> {
        match &self.source {
            SymbolSource::ClosedForm(p) => Ok(p.eval_accurate(xi)),
            SymbolSource::SineProduct(p) => Ok(p.eval_accurate(xi) * xi.sin().abs()),
            SymbolSource::Quadrature(f) => Ok(f.eval(reduce_period(xi))),
            SymbolSource::Reciprocal(k) => reciprocal_symbol_value(k, reduce_period(xi)),
        }
    }

    /// One-sided Taylor jet of the symbol at `xi0`.
    pub fn jet(&self, xi0: f64, side: Side) -> Result<Jet> {
        match &self.source {
            SymbolSource::ClosedForm(p) => Ok(p.jet_accurate(xi0)),
            SymbolSource::SineProduct(p) => Ok(p.jet_accurate(xi0) * sin_scaled(xi0, 1.0).abs_at(side)),
            SymbolSource::Quadrature(f) => f
                .jet(xi0, side)
                .ok_or_else(|| Error::UnsupportedSymbol(format!("no jet for {}", f.name))),
            SymbolSource::Reciprocal(k) => reciprocal_symbol_jet(k, snap_period(xi0), side),
        }
    }

    /// Bound on `sum_{|j| > J} |lambda_j|`.
    pub fn tail_bound(&self, j: usize) -> f64 {
        match self.decay_exponent {
            None => 0.0,
            Some(_) if j >= self.j_max && self.is_finite_polynomial() => 0.0,
            Some(d) if d > 1.0 => 2.0 * self.decay_constant * (j as f64).powf(1.0 - d) / (d - 1.0),
            Some(_) => f64::INFINITY,
        }
    }

    fn is_finite_polynomial(&self) -> bool {
        matches!(self.source, SymbolSource::ClosedForm(_))
    }

    /// Truncated series `sum_{|j| <= J} lambda_j e^{i j theta}`.
    pub fn eval(&self, theta: f64) -> f64 {
        let mut s = self.lambda(0);
        for j in 1..=self.j_max as i64 {
            s += 2.0 * self.lambda(j) * (j as f64 * theta).cos();
        }
        s
    }

    pub fn to_document(&self) -> SymbolDocument {
        let (bandwidth, exact) = match &self.source {
            SymbolSource::ClosedForm(p) | SymbolSource::SineProduct(p) => (
                Some(p.bandwidth),
                p.to_record(0.0).exact,
            ),
            _ => (None, None),
        };
        SymbolDocument {
            source: self.source.label(),
            bandwidth,
            j_max: self.j_max,
            coeffs: self.coeffs.clone(),
            exact_half: exact,
            decay_exponent: self.decay_exponent,
            tail_bound: self.decay_exponent.map(|_| self.tail_bound(self.j_max)),
        }
    }
}

/// JSON form of a symbol; `coeffs` runs over `j = -J .. J`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SymbolDocument {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<usize>,
    pub j_max: usize,
    pub coeffs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_half: Option<Vec<String>>,
    pub decay_exponent: Option<f64>,
    pub tail_bound: Option<f64>,
}

/// `lambda_j = (1/2pi) int f(t) cos(j t) dt` for `0 <= j <= J` by composite
/// Clenshaw-Curtis; `f` must be even.
pub fn fourier_coefficients(f: &PeriodicFn, j_max: usize, tol: f64) -> Result<PeriodicSymbol> {
    if j_max < 1 {
        return Err(Error::Domain("need J >= 1".into()));
    }
    let width = j_max + 1;
    let g = |t: f64| {
        let v = f.eval(t) / (2.0 * PI);
        let c1 = t.cos();
        let mut out = Vec::with_capacity(width);
        let (mut prev, mut cur) = (c1, 1.0);
        for _ in 0..width {
            out.push(v * cur);
            let next = 2.0 * c1 * cur - prev;
            prev = cur;
            cur = next;
        }
        out
    };
    let half = adaptive_cc_vec(g, &f.breakpoints, width, tol, MAX_CC_ORDER)?;
    Ok(PeriodicSymbol::from_half(SymbolSource::Quadrature(f.clone()), half, 100.0 * tol))
}

const SYMBOL_SCAN: usize = 512;
const LATTICE_CAP: usize = 100_000;

/// `sigma(theta) = sum_l phi^(theta + 2 pi l)` for `theta` in `(0, pi]`,
/// with the `l = 0` term split off as `(lead, rest)`.
fn lattice_parts(k: &RadialKernel, theta: f64) -> Result<(f64, f64)> {
    let t = theta.abs();
    let a = t / (2.0 * PI);
    let power_rest = |mu: f64| -> Result<f64> {
        Ok((2.0 * PI).powf(-mu) * (hurwitz_zeta(mu, 1.0 + a)? + hurwitz_zeta(mu, 1.0 - a)?))
    };
    match k.kind {
        KernelKind::ThinPlateSpline => Ok((2.0 * PI * t.powi(-3), 2.0 * PI * power_rest(3.0)?)),
        KernelKind::CubicPower => Ok((12.0 * t.powi(-4), 12.0 * power_rest(4.0)?)),
        KernelKind::CubicBSpline => {
            let s4 = (0.5 * t).sin().powi(4);
            Ok((transform_value(k, t)?, 16.0 * s4 * power_rest(4.0)?))
        }
        KernelKind::GeneralizedMultiquadric => {
            let lead = transform_value(k, t)?;
            let q = (-2.0 * PI * k.c).exp();
            let mut rest = 0.0;
            for l in 1..=LATTICE_CAP {
                let lf = l as f64;
                let near = transform_value(k, 2.0 * PI * lf - t)?;
                rest += near + transform_value(k, 2.0 * PI * lf + t)?;
                // phi^ decreases at least geometrically with ratio q per period
                let bound = 2.0 * near * q / (1.0 - q);
                if bound <= 1e-17 * (lead + rest) {
                    return Ok((lead, rest));
                }
            }
            Err(Error::TailBoundTooLoose(q))
        }
    }
}

/// Representative of `xi` in `[-pi, pi]`.
fn reduce_period(xi: f64) -> f64 {
    xi - 2.0 * PI * (xi / (2.0 * PI)).round()
}

/// Like `reduce_period`, snapping offsets below `1e-12` to exact zero.
fn snap_period(xi: f64) -> f64 {
    let t = reduce_period(xi);
    if t.abs() < 1e-12 {
        0.0
    } else {
        t
    }
}

/// Jet of `(2 pi)^{-mu} [zeta(mu, 1 + t/2pi) + zeta(mu, 1 - t/2pi)]` at `t0`.
fn lattice_rest_jet(mu: f64, t0: f64) -> Result<Jet> {
    let a = t0 / (2.0 * PI);
    let mut c = [0.0; JET_LEN];
    let mut poch = 1.0; // (mu)_n / n!
    for (n, cn) in c.iter_mut().enumerate() {
        if n > 0 {
            poch *= (mu + n as f64 - 1.0) / n as f64;
        }
        let s = mu + n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let z = sign * hurwitz_zeta(s, 1.0 + a)? + hurwitz_zeta(s, 1.0 - a)?;
        *cn = (2.0 * PI).powf(-s) * poch * z;
    }
    Ok(Jet { c })
}

/// Jet of `1/sigma` at `t0` in `[-pi, pi]`.
pub fn reciprocal_symbol_jet(k: &RadialKernel, t0: f64, side: Side) -> Result<Jet> {
    let abs_t = Jet::variable(t0).abs_at(side);
    match k.kind {
        KernelKind::ThinPlateSpline | KernelKind::CubicPower => {
            let (mu, amp) = if k.kind == KernelKind::ThinPlateSpline { (3, 2.0 * PI) } else { (4, 12.0) };
            let tm = abs_t.powi(mu);
            let rest = lattice_rest_jet(mu as f64, t0)?;
            Ok(tm / (tm * rest + 1.0).scale(amp))
        }
        KernelKind::CubicBSpline => {
            let lead = transform_jet(k, t0, side)?;
            let s4 = sin_scaled(t0, 0.5).powi(4).scale(16.0);
            Ok((lead + s4 * lattice_rest_jet(4.0, t0)?).recip())
        }
        KernelKind::GeneralizedMultiquadric => Err(Error::UnsupportedKernel(
            "reciprocal symbol jets need a power-law or B-spline kernel".into(),
        )),
    }
}

/// `1/sigma(theta)`, zero at `theta = 0` for singular kernels.
pub fn reciprocal_symbol_value(k: &RadialKernel, theta: f64) -> Result<f64> {
    let t = theta.abs();
    if t == 0.0 {
        return Ok(if k.is_bounded() { 1.0 } else { 0.0 });
    }
    let (lead, rest) = lattice_parts(k, t)?;
    // 1 / (lead + rest) written to stay accurate as lead blows up
    Ok((1.0 / lead) / (1.0 + rest / lead))
}

/// Coefficients of `1/sigma` for cardinal interpolation with `k`.
pub fn reciprocal_symbol_coefficients(k: &RadialKernel, j_max: usize) -> Result<PeriodicSymbol> {
    let mut min_sigma = f64::INFINITY;
    for i in 1..=SYMBOL_SCAN {
        let t = PI * i as f64 / SYMBOL_SCAN as f64;
        let (lead, rest) = lattice_parts(k, t)?;
        min_sigma = min_sigma.min(lead + rest);
    }
    if !(min_sigma > 1e-10) {
        return Err(Error::SymbolVanishes(min_sigma));
    }
    let kk = *k;
    let f = PeriodicFn::new(
        &format!("1/sigma[{}]", k.name()),
        move |t| reciprocal_symbol_value(&kk, t).unwrap_or(f64::NAN),
        &[0.0],
    );
    let mut sym = fourier_coefficients(&f, j_max, DEFAULT_QUAD_TOL)?;
    if sym.coeffs.iter().any(|v| !v.is_finite()) {
        return Err(Error::QuadratureFailure("non-finite reciprocal symbol".into()));
    }
    sym.source = SymbolSource::Reciprocal(*k);
    Ok(sym)
}

/// `P` for the thin-plate scheme with `|sin|`: contact with `2 pi sin(xi)/xi^3`.
pub fn tps_intermediate_polynomial() -> Result<TrigPolynomial> {
    let k = laurent_series(&RadialKernel::thin_plate(), 8)?;
    let mut sin: Vec<BigRational> = sinc_series(12);
    sin.insert(0, BigRational::zero());
    let series = k.times_power_series(&sin, 8);
    solve_moment_system(&MomentSystem::contact(&series, 2)?, 0.0)
}

pub fn build_tps_intermediate_symbol() -> Result<PeriodicSymbol> {
    Ok(PeriodicSymbol::sine_product(tps_intermediate_polynomial()?, DEFAULT_TRUNCATION))
}
