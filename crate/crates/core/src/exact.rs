//! Exact arithmetic over the rationals extended by a handful of transcendental
//! constants: `pi`, Euler's `gamma`, `log 2` and `log c` (the logarithm of the
//! multiquadric shape parameter).
//!
//! Elements are Laurent polynomials in those four symbols with rational
//! coefficients. Moment systems only ever divide by single-term elements
//! (leading transform coefficients such as `2 pi` or `12`), so general
//! division is not needed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponents of `(pi, gamma, log 2, log c)`.
pub type Monomial = [i32; 4];

const ONE_MONO: Monomial = [0, 0, 0, 0];
const SYMBOL_NAMES: [&str; 4] = ["pi", "gamma", "log2", "logc"];

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational value of a finite float.
pub fn rat_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

/// Rational value of the shortest decimal string that round-trips to `x`,
/// so `0.3` maps to `3/10` rather than its binary expansion.
pub fn rat_from_decimal_f64(x: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite value {x}")));
    }
    let s = format!("{x:e}");
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i64 = exp.parse().expect("integer exponent");
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let shift = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    Ok(if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    })
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // very large numerators: divide in floating point after scaling
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Symbolic {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Symbolic {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(BigRational::one())
    }

    pub fn from_rat(r: BigRational) -> Self {
        Self::monomial(ONE_MONO, r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n, 1))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rat(rat(n, d))
    }

    pub fn monomial(m: Monomial, coef: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(m, coef);
        }
        Self { terms }
    }

    pub fn pi() -> Self {
        Self::monomial([1, 0, 0, 0], BigRational::one())
    }

    pub fn euler_gamma() -> Self {
        Self::monomial([0, 1, 0, 0], BigRational::one())
    }

    pub fn log2() -> Self {
        Self::monomial([0, 0, 1, 0], BigRational::one())
    }

    pub fn logc() -> Self {
        Self::monomial([0, 0, 0, 1], BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of a given monomial (zero when absent).
    pub fn coefficient(&self, m: Monomial) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The rational value if the element carries no transcendental symbol.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&ONE_MONO).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    /// Division by a single-term element.
    pub fn checked_div(&self, rhs: &Symbolic) -> Result<Self> {
        if rhs.terms.len() != 1 {
            return Err(Error::UnsupportedSymbol(format!(
                "division by multi-term element {rhs}"
            )));
        }
        let (m, c) = rhs.terms.iter().next().expect("one term");
        let inv = c.recip();
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| {
                    let mut e = *mm;
                    for i in 0..4 {
                        e[i] -= m[i];
                    }
                    (e, cc * &inv)
                })
                .collect(),
        })
    }

    /// Evaluate with `log c` supplied by the caller.
    pub fn eval(&self, log_c: f64) -> f64 {
        let vals = [std::f64::consts::PI, EULER_GAMMA, std::f64::consts::LN_2, log_c];
        let mut sum = crate::specfun::KahanSum::new();
        for (m, c) in &self.terms {
            let mut v = rat_to_f64(c);
            for i in 0..4 {
                v *= vals[i].powi(m[i]);
            }
            sum.add(v);
        }
        sum.value()
    }

    fn insert_add(&mut self, m: Monomial, c: BigRational) {
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }
}

impl Add for &Symbolic {
    type Output = Symbolic;
    fn add(self, rhs: &Symbolic) -> Symbolic {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }
}

impl Sub for &Symbolic {
    type Output = Symbolic;
    fn sub(self, rhs: &Symbolic) -> Symbolic {
        self + &(-rhs)
    }
}

impl Neg for &Symbolic {
    type Output = Symbolic;
    fn neg(self) -> Symbolic {
        Symbolic {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Symbolic {
    type Output = Symbolic;
    fn mul(self, rhs: &Symbolic) -> Symbolic {
        let mut out = Symbolic::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = *ma;
                for i in 0..4 {
                    m[i] += mb[i];
                }
                out.insert_add(m, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            let mut factors = Vec::new();
            if !a.is_one() || *m == ONE_MONO {
                factors.push(format!("{a}"));
            }
            for i in 0..4 {
                match m[i] {
                    0 => {}
                    1 => factors.push(SYMBOL_NAMES[i].to_string()),
                    e => factors.push(format!("{}^{}", SYMBOL_NAMES[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Serialized form: the display string plus the numeric value at `log c`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SymbolicRecord {
    pub exact: String,
    pub value: f64,
}

impl Symbolic {
    pub fn record(&self, log_c: f64) -> SymbolicRecord {
        SymbolicRecord {
            exact: self.to_string(),
            value: self.eval(log_c),
        }
    }
}
