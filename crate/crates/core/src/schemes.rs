//! The catalogue of quasi-interpolation schemes.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{laurent_series, RadialKernel};
use crate::quasilagrange::{FourierProfile, QuasiLagrange};
use crate::symbols::{
    build_tps_intermediate_symbol, fourier_coefficients, fractional_power_fn, reciprocal_symbol_coefficients,
    solve_moment_system, MomentSystem, PeriodicSymbol, TrigPolynomial, DEFAULT_QUAD_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeId {
    TpsCardinal,
    TpsInfinite,
    /// Same transform as `TpsInfinite` written as `|sin|^3` with unit period scaling.
    TpsInfiniteSin3,
    TpsIntermediate,
    GmqBasic,
    GmqImproved,
    BsplineBasic,
    BsplineImproved,
    FourierProfile,
}

impl SchemeId {
    pub const PRIMARY: [SchemeId; 8] = [
        SchemeId::TpsCardinal,
        SchemeId::TpsInfinite,
        SchemeId::TpsIntermediate,
        SchemeId::GmqBasic,
        SchemeId::GmqImproved,
        SchemeId::BsplineBasic,
        SchemeId::BsplineImproved,
        SchemeId::FourierProfile,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeId::TpsCardinal => "tps-cardinal",
            SchemeId::TpsInfinite => "tps-infinite",
            SchemeId::TpsInfiniteSin3 => "tps-infinite-sin3",
            SchemeId::TpsIntermediate => "tps-intermediate",
            SchemeId::GmqBasic => "gmq-basic",
            SchemeId::GmqImproved => "gmq-improved",
            SchemeId::BsplineBasic => "bspline-basic",
            SchemeId::BsplineImproved => "bspline-improved",
            SchemeId::FourierProfile => "fourier-profile",
        }
    }

    pub fn needs_c(&self) -> bool {
        matches!(self, SchemeId::GmqBasic | SchemeId::GmqImproved)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [SchemeId::TpsInfiniteSin3]
            .into_iter()
            .chain(SchemeId::PRIMARY)
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown scheme '{s}'")))
    }
}

/// Parameters needed to build one scheme.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub id: SchemeId,
    /// Multiquadric shape parameter.
    pub c: Option<f64>,
    /// Quartic coefficient of the Fourier profile.
    pub a: f64,
    /// Truncation of infinite coefficient sequences.
    pub j: usize,
}

pub const DEFAULT_PROFILE_A: f64 = 0.01;

impl SchemeParams {
    pub fn new(id: SchemeId) -> Self {
        let c = if id.needs_c() { Some(1.0) } else { None };
        Self { id, c, a: DEFAULT_PROFILE_A, j: 64 }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = Some(c);
        self
    }

    fn c(&self) -> Result<f64> {
        let c = self.c.ok_or_else(|| Error::Config(format!("scheme {} requires c", self.id)))?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Config(format!("c = {c} must be positive")));
        }
        Ok(c)
    }

    pub fn kernel(&self) -> Result<Option<RadialKernel>> {
        Ok(Some(match self.id {
            SchemeId::TpsCardinal
            | SchemeId::TpsInfinite
            | SchemeId::TpsInfiniteSin3
            | SchemeId::TpsIntermediate => RadialKernel::thin_plate(),
            SchemeId::GmqBasic | SchemeId::GmqImproved => RadialKernel::multiquadric(self.c()?)?,
            SchemeId::BsplineBasic | SchemeId::BsplineImproved => RadialKernel::cubic_bspline(),
            SchemeId::FourierProfile => return Ok(None),
        }))
    }

    /// The symbol and the normalization applied to it.
    pub fn symbol(&self) -> Result<Option<(PeriodicSymbol, f64)>> {
        let inv_2pi = 1.0 / (2.0 * PI);
        Ok(Some(match self.id {
            SchemeId::TpsCardinal => (reciprocal_symbol_coefficients(&RadialKernel::thin_plate(), self.j)?, 1.0),
            SchemeId::TpsInfinite => (fourier_coefficients(&fractional_power_fn(), self.j, DEFAULT_QUAD_TOL)?, inv_2pi),
            SchemeId::TpsInfiniteSin3 => {
                let p = TrigPolynomial::symmetric(&[0.5, 0.0, -0.25]);
                (PeriodicSymbol::sine_product(p, self.j), inv_2pi)
            }
            SchemeId::TpsIntermediate => (build_tps_intermediate_symbol()?, 1.0),
            SchemeId::GmqBasic => (PeriodicSymbol::closed_form(TrigPolynomial::multiquadric_basic()), 1.0),
            SchemeId::GmqImproved => {
                let c = self.c()?;
                let series = laurent_series(&RadialKernel::multiquadric(c)?, 12)?;
                let p = solve_moment_system(&MomentSystem::contact(&series, 4)?, c.ln())?;
                (PeriodicSymbol::closed_form(p), 1.0)
            }
            SchemeId::BsplineBasic => (PeriodicSymbol::closed_form(TrigPolynomial::constant(1.0)), 1.0),
            SchemeId::BsplineImproved => {
                let series = laurent_series(&RadialKernel::cubic_bspline(), 6)?;
                let p = solve_moment_system(&MomentSystem::contact(&series, 1)?, 0.0)?;
                (PeriodicSymbol::closed_form(p), 1.0)
            }
            SchemeId::FourierProfile => return Ok(None),
        }))
    }

    pub fn profile(&self) -> Result<FourierProfile> {
        FourierProfile::quartic(self.a)
    }

    pub fn build(&self) -> Result<QuasiLagrange> {
        match (self.kernel()?, self.symbol()?) {
            (Some(k), Some((s, norm))) => QuasiLagrange::real_space(k, s, norm),
            _ => QuasiLagrange::profile(self.profile()?),
        }
    }
}

pub fn build_scheme(id: SchemeId) -> Result<QuasiLagrange> {
    SchemeParams::new(id).build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in SchemeId::PRIMARY.into_iter().chain([SchemeId::TpsInfiniteSin3]) {
            assert_eq!(id.as_str().parse::<SchemeId>().unwrap(), id);
        }
        assert!("tps".parse::<SchemeId>().is_err());
    }

    #[test]
    fn every_scheme_builds_with_unit_mass() {
        for id in SchemeId::PRIMARY.into_iter().chain([SchemeId::TpsInfiniteSin3]) {
            let q = build_scheme(id).unwrap();
            assert!((q.eval_psi_hat(0.0, 0).unwrap() - 1.0).abs() < 1e-10, "{id}");
        }
    }

    #[test]
    fn sin3_variant_matches_fractional_power() {
        let a = build_scheme(SchemeId::TpsInfinite).unwrap();
        let b = build_scheme(SchemeId::TpsInfiniteSin3).unwrap();
        // |2 sin(xi/2)|^3 / |xi|^3 and |sin xi|^3 / |xi|^3 agree after xi -> 2 xi
        for &xi in &[0.3f64, 1.7, 4.0] {
            let lhs = a.hat_value(2.0 * xi).unwrap();
            let rhs = b.hat_value(xi).unwrap();
            assert!((lhs - rhs).abs() < 1e-13, "{lhs} {rhs}");
        }
    }

    #[test]
    fn missing_c_is_config_error() {
        let mut p = SchemeParams::new(SchemeId::GmqBasic);
        p.c = None;
        assert!(matches!(p.build(), Err(Error::Config(_))));
    }
}
