//! Moment conditions `sum_k k^p mu_k = m_p` for symmetric trigonometric
//! polynomials, solved exactly over the rationals extended by
//! `(pi, gamma, log 2, log c)`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::trig::TrigPolynomial;
use crate::error::{Error, Result};
use crate::exact::{rat, Symbolic};
use crate::kernels::LaurentSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct MomentEquation {
    pub power: u32,
    pub rhs: Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SolvePolicy {
    /// Symmetric coefficients; underdetermined systems are an error.
    Symmetric,
    /// Symmetric, then the minimum of `sum_k mu_k^2` if still free.
    #[default]
    SymmetricMinNorm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentSystem {
    pub equations: Vec<MomentEquation>,
    pub bandwidth: usize,
    pub policy: SolvePolicy,
}

impl MomentSystem {
    pub fn new(equations: Vec<MomentEquation>, bandwidth: usize) -> Self {
        Self { equations, bandwidth, policy: SolvePolicy::default() }
    }

    pub fn with_policy(mut self, policy: SolvePolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Moments that make `P(xi) * series(xi) = 1 + O(xi^{2N + e0 + 1})`,
    /// where `e0` is the leading exponent of `series`. Logarithmic terms of
    /// the series do not enter.
    pub fn contact(series: &LaurentSeries, bandwidth: usize) -> Result<Self> {
        let e0 = series
            .terms
            .iter()
            .filter(|t| t.log_power == 0)
            .map(|t| t.exponent)
            .min()
            .ok_or_else(|| Error::Domain("empty kernel series".into()))?;
        if e0 > 0 {
            return Err(Error::Domain(format!("series vanishes at 0 (leading exponent {e0})")));
        }
        let a = |s: u32| series.coefficient(e0 + s as i32);
        let a0 = a(0);
        // p_n = (-1)^{n/2} M_n / n!, the Taylor coefficients of P at 0
        let mut taylor: Vec<Symbolic> = Vec::new();
        let mut equations = Vec::new();
        let mut fact = BigRational::one();
        for t in 0..=2 * bandwidth as u32 {
            if t > 0 {
                fact *= rat(t as i64, 1);
            }
            if t % 2 == 1 {
                taylor.push(Symbolic::zero());
                equations.push(MomentEquation { power: t, rhs: Symbolic::zero() });
                continue;
            }
            let mut rhs = if t as i32 + e0 == 0 { Symbolic::one() } else { Symbolic::zero() };
            for (n, p) in taylor.iter().enumerate() {
                rhs = &rhs - &(p * &a(t - n as u32));
            }
            let p_t = rhs.checked_div(&a0)?;
            let sign = if (t / 2) % 2 == 0 { 1 } else { -1 };
            let moment = p_t.scale(&(&fact * rat(sign, 1)));
            taylor.push(p_t);
            equations.push(MomentEquation { power: t, rhs: moment });
        }
        Ok(Self::new(equations, bandwidth))
    }
}

/// Reduced row echelon form of `[a | b]`; returns pivot columns.
fn rref(a: &mut [Vec<BigRational>], b: &mut [Symbolic]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        b[r] = b[r].scale(&inv);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let row_r = a[r].clone();
                for (v, w) in a[i].iter_mut().zip(&row_r) {
                    *v -= &f * w;
                }
                b[i] = &b[i] - &b[r].scale(&f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact symmetric solution `mu_0 .. mu_N` of a moment system.
pub fn solve_moment_half(sys: &MomentSystem) -> Result<Vec<Symbolic>> {
    let n = sys.bandwidth + 1;
    let mut a: Vec<Vec<BigRational>> = sys
        .equations
        .iter()
        .map(|eq| {
            (0..n)
                .map(|k| {
                    if eq.power % 2 == 1 {
                        BigRational::zero()
                    } else if k == 0 {
                        if eq.power == 0 { BigRational::one() } else { BigRational::zero() }
                    } else {
                        num_traits::pow::pow(rat(k as i64, 1), eq.power as usize) * rat(2, 1)
                    }
                })
                .collect()
        })
        .collect();
    let mut b: Vec<Symbolic> = sys.equations.iter().map(|e| e.rhs.clone()).collect();
    let pivots = rref(&mut a, &mut b);
    let rank = pivots.len();
    if let Some(bad) = b.iter().skip(rank).find(|v| !v.is_zero()) {
        return Err(Error::InconsistentSystem(format!("residual {bad} after elimination")));
    }
    if rank == n {
        let mut x = vec![Symbolic::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = b[r].clone();
        }
        return Ok(x);
    }
    if sys.policy == SolvePolicy::Symmetric {
        return Err(Error::UnderdeterminedSystem(format!(
            "rank {rank} for {n} symmetric unknowns"
        )));
    }
    // minimise mu_0^2 + 2 sum mu_k^2: x = W^-1 A^T (A W^-1 A^T)^-1 b
    let winv: Vec<BigRational> = (0..n)
        .map(|k| if k == 0 { BigRational::one() } else { rat(1, 2) })
        .collect();
    let ar = &a[..rank];
    let mut g: Vec<Vec<BigRational>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    (0..n).fold(BigRational::zero(), |acc, k| acc + &ar[i][k] * &winv[k] * &ar[j][k])
                })
                .collect()
        })
        .collect();
    let mut y: Vec<Symbolic> = b[..rank].to_vec();
    let gp = rref(&mut g, &mut y);
    debug_assert_eq!(gp.len(), rank);
    Ok((0..n)
        .map(|k| {
            let mut acc = Symbolic::zero();
            for (i, yi) in y.iter().enumerate() {
                acc = &acc + &yi.scale(&(&ar[i][k] * &winv[k]));
            }
            acc
        })
        .collect())
}

/// Solve and evaluate at `log c`.
pub fn solve_moment_system(sys: &MomentSystem, log_c: f64) -> Result<TrigPolynomial> {
    Ok(TrigPolynomial::symmetric_exact(solve_moment_half(sys)?, log_c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::EULER_GAMMA;
    use crate::kernels::{laurent_series, series_mul, sinc_series, RadialKernel};
    use std::f64::consts::{LN_2, PI};

    fn eq(power: u32, rhs: Symbolic) -> MomentEquation {
        MomentEquation { power, rhs }
    }

    fn inv_pi(n: i64) -> Symbolic {
        Symbolic::monomial([-1, 0, 0, 0], rat(n, 1))
    }

    #[test]
    fn thin_plate_system_from_listed_moments() {
        let sys = MomentSystem::new(
            vec![
                eq(0, Symbolic::zero()),
                eq(1, Symbolic::zero()),
                eq(2, inv_pi(-1)),
                eq(3, Symbolic::zero()),
                eq(4, inv_pi(2)),
            ],
            2,
        );
        let half = solve_moment_half(&sys).unwrap();
        let want = [
            Symbolic::monomial([-1, 0, 0, 0], rat(7, 4)),
            inv_pi(-1),
            Symbolic::monomial([-1, 0, 0, 0], rat(1, 8)),
        ];
        assert_eq!(half, want);
    }

    #[test]
    fn thin_plate_system_from_contact() {
        // 2 pi sin(xi) / xi^3
        let k = laurent_series(&RadialKernel::thin_plate(), 8).unwrap();
        let mut sin = sinc_series(12);
        sin.insert(0, BigRational::zero());
        let series = k.times_power_series(&sin, 8);
        let sys = MomentSystem::contact(&series, 2).unwrap();
        assert_eq!(sys.equations[2].rhs, inv_pi(-1));
        assert_eq!(sys.equations[4].rhs, inv_pi(2));
        let p = solve_moment_system(&sys, 0.0).unwrap();
        assert!((p.coeff(0) - 7.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((p.coeff(-2) - 1.0 / (8.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn trivial_system() {
        let sys = MomentSystem::new(vec![eq(0, Symbolic::one())], 0);
        assert_eq!(solve_moment_half(&sys).unwrap(), vec![Symbolic::one()]);
    }

    /// The published `mu_k(c)`, written out independently.
    fn published(c: f64) -> [f64; 5] {
        let (c2, c4, g, l2, lc) = (c * c, c.powi(4), EULER_GAMMA, LN_2, c.ln());
        let t = |a: f64| a * c4 * (g - l2 + lc);
        [
            (364.0 + 300.0 * c2 + 35.0 * c4 + t(140.0)) / 384.0,
            (-976.0 - 870.0 * c2 - 105.0 * c4 - t(420.0)) / 1440.0,
            (676.0 + 780.0 * c2 + 105.0 * c4 + t(420.0)) / 2880.0,
            (-16.0 - 30.0 * c2 - 5.0 * c4 - t(20.0)) / 480.0,
            (28.0 + 60.0 * c2 + 15.0 * c4 + t(60.0)) / 11520.0,
        ]
    }

    #[test]
    fn multiquadric_system_matches_published_solution() {
        for c in [1.0, 0.5, 2.0, 0.3] {
            let k = RadialKernel::multiquadric(c).unwrap();
            let series = laurent_series(&k, 12).unwrap();
            let sys = MomentSystem::contact(&series, 4).unwrap();
            let p = solve_moment_system(&sys, c.ln()).unwrap();
            for (j, want) in published(c).iter().enumerate() {
                let got = p.coeff(j as i64);
                assert!((got - want).abs() < 1e-13 * want.abs().max(1.0), "c={c} j={j}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn multiquadric_moments_at_unit_c() {
        let series = laurent_series(&RadialKernel::multiquadric(1.0).unwrap(), 12).unwrap();
        let sys = MomentSystem::contact(&series, 4).unwrap();
        assert!(sys.equations[0].rhs.is_zero());
        assert!(sys.equations[2].rhs.is_zero());
        assert_eq!(sys.equations[4].rhs, Symbolic::from_int(2));
        assert_eq!(sys.equations[6].rhs, Symbolic::from_int(-15));
        // (105/2)(1 + 4 gamma - 4 log 2) at c = 1
        let m8 = sys.equations[8].rhs.eval(0.0);
        let want = 52.5 * (1.0 + 4.0 * EULER_GAMMA - 4.0 * LN_2);
        assert!((m8 - want).abs() < 1e-12);
    }

    #[test]
    fn bspline_improved_weights() {
        let series = laurent_series(&RadialKernel::cubic_bspline(), 6).unwrap();
        let half = solve_moment_half(&MomentSystem::contact(&series, 1).unwrap()).unwrap();
        assert_eq!(half, vec![Symbolic::frac(4, 3), Symbolic::frac(-1, 6)]);
        // contact order: (4/3 - 1/3 cos) sinc^4(xi/2) = 1 + O(xi^4)
        let p = [rat(1, 1), rat(0, 1), rat(1, 6)];
        let mut s4 = sinc_series(4);
        for (n, v) in s4.iter_mut().enumerate() {
            *v /= num_traits::pow::pow(rat(2, 1), n);
        }
        let sq = series_mul(&s4, &s4, 4);
        let prod = series_mul(&p, &series_mul(&sq, &sq, 4), 2);
        assert_eq!(prod, vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let bad = MomentSystem::new(vec![eq(0, Symbolic::one()), eq(1, Symbolic::one())], 2);
        assert!(matches!(solve_moment_half(&bad), Err(Error::InconsistentSystem(_))));
        let clash = MomentSystem::new(vec![eq(0, Symbolic::one()), eq(0, Symbolic::zero())], 1);
        assert!(matches!(solve_moment_half(&clash), Err(Error::InconsistentSystem(_))));
        let under = MomentSystem::new(vec![eq(0, Symbolic::one())], 2);
        assert!(matches!(
            solve_moment_half(&under.clone().with_policy(SolvePolicy::Symmetric)),
            Err(Error::UnderdeterminedSystem(_))
        ));
        // min norm: mu_0 + 2 mu_1 + 2 mu_2 = 1 with weights (1, 2, 2) gives all equal
        let half = solve_moment_half(&under).unwrap();
        assert_eq!(half, vec![Symbolic::frac(1, 5); 3]);
    }
}
