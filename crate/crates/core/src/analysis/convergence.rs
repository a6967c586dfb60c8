use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quasilagrange::QuasiLagrange;
use crate::specfun::KahanSum;

/// `Q_h f(x) = sum_j f(h j) psi(x / h - j)` on a ladder of `h`.
#[derive(Clone)]
pub struct GridExperiment {
    pub name: String,
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub lo: f64,
    pub hi: f64,
    pub hs: Vec<f64>,
    /// Fractional parts of `x / h` at which the error is sampled.
    pub offsets: Vec<f64>,
    /// Lattice window radius `W`; the reported errors use `2 W`.
    pub window: usize,
}

impl fmt::Debug for GridExperiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridExperiment")
            .field("name", &self.name)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("hs", &self.hs)
            .field("window", &self.window)
            .finish()
    }
}

/// `h = h0, h0 / ratio, ...` with `levels` entries.
pub fn geometric_ladder(h0: f64, ratio: f64, levels: usize) -> Vec<f64> {
    (0..levels).map(|i| h0 / ratio.powi(i as i32)).collect()
}

impl GridExperiment {
    pub fn new(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static, lo: f64, hi: f64, hs: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            f: Arc::new(f),
            lo,
            hi,
            hs,
            offsets: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            window: 200,
        }
    }

    /// `sin x` on `[-1, 1]`, `h = 1/8 .. 1/64`.
    pub fn sine() -> Self {
        Self::new("sin", f64::sin, -1.0, 1.0, geometric_ladder(0.125, 2.0, 4))
    }

    pub fn validate(&self) -> Result<()> {
        if self.hs.len() < 4 {
            return Err(Error::Config(format!("h-ladder needs at least 4 levels, got {}", self.hs.len())));
        }
        if !(self.hi > self.lo) || self.offsets.is_empty() || self.window == 0 {
            return Err(Error::Config("empty experiment".into()));
        }
        let r0 = self.hs[0] / self.hs[1];
        for w in self.hs.windows(2) {
            let r = w[0] / w[1];
            if !(w[1] > 0.0 && r > 1.0 && (r - r0).abs() <= 1e-9 * r0) {
                return Err(Error::Config("h-ladder must be strictly decreasing and geometric".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderRow {
    pub h: f64,
    pub sup_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceResult {
    pub ladder: Vec<LadderRow>,
    /// Log-log slope; `None` when the scheme is exact on `f`.
    pub slope: Option<f64>,
    pub half_width: f64,
    pub exact: bool,
}

impl ConvergenceResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,sup_error\n");
        for r in &self.ladder {
            out.push_str(&format!("{},{}\n", r.h, r.sup_error));
        }
        out
    }
}

/// Errors at or below this level on every rung mean the scheme is exact on `f`.
pub const EXACT_TOL: f64 = 1e-6;
const WINDOW_SENSITIVITY: f64 = 0.1;

/// Sup-norm error of `Q_h f` over the middle half of the interval.
pub fn measure_convergence(q: &QuasiLagrange, exp: &GridExperiment) -> Result<ConvergenceResult> {
    exp.validate()?;
    let w = exp.window as i64;
    let big = 2 * w;
    // psi(f + n), |n| <= 2W, for each offset f
    let ts: Vec<f64> = exp
        .offsets
        .iter()
        .flat_map(|&f| (-big..=big).map(move |n| f + n as f64))
        .collect();
    let table = q.eval_psi_many(&ts)?;
    let row = (2 * big + 1) as usize;
    let mid = 0.5 * (exp.lo + exp.hi);
    let half = 0.25 * (exp.hi - exp.lo);
    let noise = 1e3 * q.noise_floor();

    let mut ladder = Vec::with_capacity(exp.hs.len());
    for &h in &exp.hs {
        let mut err_w = 0.0f64;
        let mut err_2w = 0.0f64;
        for (oi, &f) in exp.offsets.iter().enumerate() {
            let psi = &table[oi * row..(oi + 1) * row];
            let i_lo = ((mid - half) / h - f).ceil() as i64;
            let i_hi = ((mid + half) / h - f).floor() as i64;
            for i in i_lo..=i_hi {
                let x = h * (i as f64 + f);
                let mut acc = KahanSum::new();
                let term = |n: i64| (exp.f)(h * (i - n) as f64) * psi[(n + big) as usize];
                acc.add(term(0));
                for n in 1..=w {
                    acc.add(term(n));
                    acc.add(term(-n));
                }
                let inner = acc.value();
                for n in w + 1..=big {
                    acc.add(term(n));
                    acc.add(term(-n));
                }
                let fx = (exp.f)(x);
                err_w = err_w.max((inner - fx).abs());
                err_2w = err_2w.max((acc.value() - fx).abs());
            }
        }
        let exact_level = err_2w <= EXACT_TOL;
        if !exact_level && err_2w > noise && (err_w - err_2w).abs() > WINDOW_SENSITIVITY * err_2w {
            return Err(Error::WindowTooSmall(format!(
                "h = {h}: error {err_w:e} with W = {w} against {err_2w:e} with 2W"
            )));
        }
        ladder.push(LadderRow { h, sup_error: err_2w });
    }
    let exact = ladder.iter().all(|r| r.sup_error <= EXACT_TOL);
    if exact {
        return Ok(ConvergenceResult { ladder, slope: None, half_width: 0.0, exact });
    }
    let pts: Vec<(f64, f64)> = ladder.iter().map(|r| (r.h.ln(), r.sup_error.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx;
    let rss: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    let half_width = 2.0 * (rss / (n - 2.0) / sxx).sqrt();
    Ok(ConvergenceResult { ladder, slope: Some(slope), half_width, exact })
}
