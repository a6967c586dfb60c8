use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quasilagrange::QuasiLagrange;

/// Least-squares fit of `log|psi|` against `log(1 + x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub exponent: f64,
    /// Half-width of the 95% interval on `exponent`.
    pub half_width: f64,
    /// `|psi(x)| ~ constant (1 + x)^exponent` along the envelope.
    pub constant: f64,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    /// Whether the fit ran on local maxima of `|psi|` rather than raw samples.
    pub envelope: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Decay {
    Algebraic(DecayFit),
    CompactSupport { radius: f64 },
}

impl Decay {
    /// Positive decay rate; `None` for compact support.
    pub fn rate(&self) -> Option<f64> {
        match self {
            Decay::Algebraic(f) => Some(-f.exponent),
            Decay::CompactSupport { .. } => None,
        }
    }
}

const MIN_PEAKS: usize = 8;
const FLOOR_MARGIN: f64 = 100.0;

fn regress(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - icept - slope * p.0).powi(2)).sum();
    let se = if pts.len() > 2 { (rss / (n - 2.0) / sxx).sqrt() } else { f64::INFINITY };
    (slope, icept, 2.0 * se)
}

/// Decay exponent of `psi` on `[lo, hi]` from `samples` equispaced values.
pub fn fit_decay(q: &QuasiLagrange, lo: f64, hi: f64, samples: usize) -> Result<Decay> {
    if !(lo > 0.0 && hi >= 8.0 * lo) {
        return Err(Error::Domain(format!("decay range [{lo}, {hi}] needs hi/lo >= 8")));
    }
    if samples < 3 * MIN_PEAKS {
        return Err(Error::Domain(format!("{samples} samples are too few")));
    }
    if let Some(r) = q.support_radius() {
        if r <= lo {
            return Ok(Decay::CompactSupport { radius: r });
        }
    }
    let step = (hi - lo) / (samples - 1) as f64;
    let xs: Vec<f64> = (0..samples).map(|i| lo + i as f64 * step).collect();
    let vals: Vec<f64> = q.eval_psi_many(&xs)?.into_iter().map(f64::abs).collect();
    let peaks: Vec<usize> = (1..samples - 1)
        .filter(|&i| vals[i] > vals[i - 1] && vals[i] >= vals[i + 1])
        .collect();
    let envelope = peaks.len() >= MIN_PEAKS;
    let idx: Vec<usize> = if envelope { peaks } else { (0..samples).collect() };
    let floor = FLOOR_MARGIN * q.noise_floor();
    let kept: Vec<usize> = idx.iter().copied().filter(|&i| vals[i] > floor).collect();
    if kept.len() < MIN_PEAKS.max(idx.len() / 2) {
        return Err(Error::BelowNoiseFloor(format!(
            "{} of {} points on [{lo}, {hi}] exceed {floor:e}",
            kept.len(),
            idx.len()
        )));
    }
    let pts: Vec<(f64, f64)> = kept.iter().map(|&i| ((1.0 + xs[i]).ln(), vals[i].ln())).collect();
    let (exponent, icept, half_width) = regress(&pts);
    Ok(Decay::Algebraic(DecayFit {
        exponent,
        half_width,
        constant: icept.exp(),
        lo: xs[kept[0]],
        hi: xs[*kept.last().unwrap()],
        points: kept.len(),
        envelope,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{build_scheme, SchemeId};

    #[test]
    fn multiquadric_decays_like_fifth_power() {
        let q = build_scheme(SchemeId::GmqBasic).unwrap();
        let Decay::Algebraic(f) = fit_decay(&q, 20.0, 200.0, 721).unwrap() else { panic!() };
        assert!((f.exponent + 5.0).abs() < 0.5, "{f:?}");
    }

    #[test]
    fn bspline_has_compact_support() {
        let q = build_scheme(SchemeId::BsplineBasic).unwrap();
        assert_eq!(fit_decay(&q, 3.0, 30.0, 100).unwrap(), Decay::CompactSupport { radius: 2.0 });
    }

    #[test]
    fn regression_recovers_power() {
        let pts: Vec<(f64, f64)> = (1..20).map(|i| ((i as f64).ln(), 2.0 - 3.0 * (i as f64).ln())).collect();
        let (s, c, w) = regress(&pts);
        assert!((s + 3.0).abs() < 1e-12 && (c - 2.0).abs() < 1e-12 && w < 1e-10);
    }
}
