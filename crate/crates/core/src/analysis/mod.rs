//! Numerical certification of quasi-interpolation schemes.

mod convergence;
mod decay;
mod report;
mod reproduction;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use convergence::{geometric_ladder, measure_convergence, ConvergenceResult, GridExperiment, LadderRow, EXACT_TOL};
pub use decay::{fit_decay, Decay, DecayFit};
pub use report::{certify, tables, CertifyOptions, ReproductionCheck, SchemeReport, Table, TableId, TableRow};
pub use reproduction::{test_reproduction, ReproductionGrid};

use crate::error::{Error, Result};
use crate::quasilagrange::{FourierProfile, QuasiLagrange};

pub const SF_TOL: f64 = 1e-7;
pub const SF_LATTICE: usize = 3;
pub const SF_MAX_M: usize = 4;

fn vanishes(q: &QuasiLagrange, xi: f64, d: usize, target: f64) -> bool {
    match q.eval_psi_hat(xi, d) {
        Ok(v) => v.is_finite() && (v - target).abs() <= SF_TOL,
        Err(Error::NonDifferentiablePoint { left, right, .. }) => {
            (left - target).abs() <= SF_TOL && (right - target).abs() <= SF_TOL
        }
        Err(_) => false,
    }
}

/// Largest `m <= max_m` such that `psi^(0) = 1`, `psi^(d)(0) = 0` for
/// `1 <= d <= m` and `psi^(d)(2 pi j) = 0` for `d <= m`, `1 <= |j| <= lattice`.
/// Returns -1 when `psi^(0) != 1`.
pub fn check_strang_fix(q: &QuasiLagrange, max_m: usize, lattice: usize) -> i32 {
    if !vanishes(q, 0.0, 0, 1.0) {
        return -1;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    for d in 0..=max_m {
        let at_zero = d == 0 || vanishes(q, 0.0, d, 0.0);
        let on_lattice = (1..=lattice as i64)
            .flat_map(|j| [j, -j])
            .all(|j| vanishes(q, two_pi * j as f64, d, 0.0));
        if !(at_zero && on_lattice) {
            return d as i32 - 1;
        }
    }
    max_m as i32
}

/// Approximation order `O(h^k)` up to the logarithmic factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderTag {
    /// `h^{m + l}`, `0 < l < 1`.
    Fractional { exponent: f64 },
    /// `h^{m + 1} log(1/h)`.
    Log { power: u32 },
    /// `h^{m + 1}`.
    Power { power: u32 },
}

impl OrderTag {
    pub fn slope(&self) -> f64 {
        match *self {
            OrderTag::Fractional { exponent } => exponent,
            OrderTag::Log { power } | OrderTag::Power { power } => power as f64,
        }
    }

    pub fn has_log(&self) -> bool {
        matches!(self, OrderTag::Log { .. })
    }
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTag::Fractional { exponent } => write!(f, "h^{exponent:.3}"),
            OrderTag::Log { power: 1 } => write!(f, "h log(1/h)"),
            OrderTag::Log { power } => write!(f, "h^{power} log(1/h)"),
            OrderTag::Power { power: 1 } => write!(f, "h"),
            OrderTag::Power { power } => write!(f, "h^{power}"),
        }
    }
}

/// Case split of the approximation order in terms of `m` and the decay gap `l`.
pub fn predict_order(m: u32, ell: f64, n: u32) -> Result<OrderTag> {
    let _ = n;
    if !(ell > 0.0) {
        return Err(Error::Domain(format!("decay gap {ell} must be positive")));
    }
    Ok(if ell < 1.0 {
        OrderTag::Fractional { exponent: m as f64 + ell }
    } else if ell == 1.0 {
        OrderTag::Log { power: m + 1 }
    } else {
        OrderTag::Power { power: m + 1 }
    })
}

/// Exponents within this distance of an integer are taken to be that integer.
pub const DECAY_SNAP: f64 = 0.25;

pub fn snap_decay(exponent: f64) -> f64 {
    let r = exponent.round();
    if (exponent - r).abs() <= DECAY_SNAP {
        r
    } else {
        exponent
    }
}

/// Effective `(m, l)` for a scheme: the largest `m' <= m` whose gap
/// `l = decay - n - m'` is positive. `decay` is the positive rate
/// `|psi(x)| ~ |x|^-decay`; `None` means compact support.
pub fn effective_order(m: i32, decay: Option<f64>, n: u32) -> Option<(u32, f64)> {
    if m < 0 {
        return None;
    }
    let Some(decay) = decay else {
        return Some((m as u32, f64::INFINITY));
    };
    let decay = snap_decay(decay);
    (0..=m as u32).rev().map(|mm| (mm, decay - n as f64 - mm as f64)).find(|(_, l)| *l > 0.0)
}

/// Decay predicted from the smoothness of a Fourier profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayPrediction {
    /// `psi(x) = o((1 + |x|)^exponent)`.
    pub exponent: f64,
    pub little_o: bool,
}

/// A profile with `|sin|^{m+1}` is `C^m` with an `(m+1)`-st derivative of
/// bounded variation, so `psi = o(|x|^{-(m+2)})`.
pub fn predict_profile_decay(profile: &FourierProfile) -> DecayPrediction {
    DecayPrediction { exponent: -(profile.m as f64 + 2.0), little_o: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{build_scheme, SchemeId};

    #[test]
    fn order_case_split() {
        assert_eq!(predict_order(2, 1.0, 1).unwrap(), OrderTag::Log { power: 3 });
        assert_eq!(predict_order(1, 2.0, 1).unwrap(), OrderTag::Power { power: 2 });
        assert_eq!(predict_order(3, 1.0, 1).unwrap(), OrderTag::Log { power: 4 });
        assert_eq!(predict_order(1, 0.5, 1).unwrap(), OrderTag::Fractional { exponent: 1.5 });
        assert!(predict_order(1, 0.0, 1).is_err());
        assert_eq!(OrderTag::Log { power: 4 }.to_string(), "h^4 log(1/h)");
    }

    #[test]
    fn effective_orders() {
        assert_eq!(effective_order(2, Some(4.03), 1), Some((2, 1.0)));
        assert_eq!(effective_order(2, Some(2.0), 1), Some((0, 1.0)));
        assert_eq!(effective_order(3, None, 1), Some((3, f64::INFINITY)));
        assert_eq!(effective_order(1, Some(5.0), 1), Some((1, 3.0)));
    }

    #[test]
    fn strang_fix_orders() {
        let cases = [
            (SchemeId::TpsCardinal, 2),
            (SchemeId::TpsInfinite, 1),
            (SchemeId::TpsIntermediate, 2),
            (SchemeId::GmqBasic, 1),
            (SchemeId::GmqImproved, 3),
            (SchemeId::BsplineBasic, 1),
            (SchemeId::BsplineImproved, 3),
            (SchemeId::FourierProfile, 2),
        ];
        for (id, m) in cases {
            let q = build_scheme(id).unwrap();
            assert_eq!(check_strang_fix(&q, SF_MAX_M, SF_LATTICE), m, "{id}");
        }
    }

    #[test]
    fn profile_decay_prediction() {
        let p = FourierProfile::quartic(1.0).unwrap();
        assert_eq!(predict_profile_decay(&p).exponent, -4.0);
        let p0 = FourierProfile::new(vec![0.0, 0.0, -1.0], 0).unwrap();
        assert_eq!(predict_profile_decay(&p0).exponent, -2.0);
    }
}
