use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quasilagrange::QuasiLagrange;
use crate::specfun::KahanSum;

/// Points `lo + i / subdivisions` in `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproductionGrid {
    pub lo: f64,
    pub hi: f64,
    pub subdivisions: usize,
}

impl Default for ReproductionGrid {
    fn default() -> Self {
        Self { lo: -2.0, hi: 2.0, subdivisions: 8 }
    }
}

impl ReproductionGrid {
    fn len(&self) -> usize {
        ((self.hi - self.lo) * self.subdivisions as f64).round() as usize + 1
    }
}

/// Worst residual `|sum_{|k| <= K} k^n psi(x - k) - x^n|` over `n <= degree`
/// and the grid. `decay` is the positive rate of `psi`, `None` for compact
/// support.
pub fn test_reproduction(
    q: &QuasiLagrange,
    degree: usize,
    window: usize,
    grid: ReproductionGrid,
    decay: Option<f64>,
) -> Result<f64> {
    if let Some(rate) = decay {
        let needed = degree as f64 + 1.0;
        if rate <= needed {
            return Err(Error::SummabilityViolation { degree, needed, decay: rate });
        }
    }
    if grid.subdivisions == 0 || !(grid.hi > grid.lo) {
        return Err(Error::Domain("empty reproduction grid".into()));
    }
    // x - k lies on lo + (i - s k) / s, so psi is tabulated once on that lattice
    let s = grid.subdivisions as i64;
    let k = window as i64;
    let n = grid.len() as i64;
    let offsets: Vec<i64> = (-s * k..n + s * k).collect();
    let ts: Vec<f64> = offsets.iter().map(|&m| grid.lo + m as f64 / s as f64).collect();
    let table = q.eval_psi_many(&ts)?;
    let psi = |m: i64| table[(m + s * k) as usize];
    let mut worst = 0.0f64;
    for i in 0..n {
        let x = grid.lo + i as f64 / s as f64;
        for p in 0..=degree as i32 {
            let mut acc = KahanSum::new();
            acc.add(psi(i));
            for j in 1..=k {
                let jf = j as f64;
                acc.add(jf.powi(p) * psi(i - s * j));
                acc.add((-jf).powi(p) * psi(i + s * j));
            }
            let mut total = acc.value();
            if p > 0 {
                // k = 0 contributes 0^p
                total -= psi(i);
            }
            worst = worst.max((total - x.powi(p)).abs());
        }
    }
    Ok(worst)
}
