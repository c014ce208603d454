//! Scalar abstraction for the real-valued parts of the analysis, and an exact
//! rational type for expansion bases.
//!
//! Landmark steps are defined by integer costs, so every comparison that
//! decides a landmark is done exactly: expansion ratios through integer
//! cross-multiplication against a rational [`Base`], budget thresholds in the
//! log domain. Everything downstream of the landmarks (ratios, thresholds,
//! exponents, bounds) is generic over [`Scalar`].

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Floating point type used for derived quantities: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync + Serialize + 'static
{
    /// Relative slack for budget comparisons `c <= m^alpha` in the log domain.
    fn budget_slack() -> Self {
        let eps = Self::epsilon() * Self::from_f64(16.0).unwrap();
        eps.max(Self::from_f64(1e-12).unwrap())
    }

    fn of(x: f64) -> Self {
        Self::from_f64(x).unwrap()
    }

    fn of_u64(x: u64) -> Self {
        Self::from_u64(x).unwrap()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// An exact non-negative rational, used for the expansion base `b` and the
/// highest expansion `b⁺` (a ratio of two integer step costs).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(Ratio<u64>);

impl Base {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParameter(format!("base {numer}/0 has a zero denominator")));
        }
        Ok(Base(Ratio::new(numer, denom)))
    }

    pub fn integer(b: u64) -> Self {
        Base(Ratio::from_integer(b))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    /// `true` iff `next >= self * prev`, decided exactly.
    pub fn grows(&self, prev: u64, next: u64) -> bool {
        (next as u128) * (self.denom() as u128) >= (self.numer() as u128) * (prev as u128)
    }

    pub fn is_above_one(&self) -> bool {
        self.numer() > self.denom()
    }

    pub fn to_scalar<F: Scalar>(&self) -> F {
        F::of_u64(self.numer()) / F::of_u64(self.denom())
    }

    pub fn to_f64(&self) -> f64 {
        self.to_scalar::<f64>()
    }
}

impl Default for Base {
    fn default() -> Self {
        Base::integer(2)
    }
}

impl fmt::Debug for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Base({})", self)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Accepts `"2"`, `"3/2"` and finite decimals such as `"1.5"` or `"1.25"`.
impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse expansion base '{s}'"));
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return Base::new(n, d);
        }
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if frac.len() > 9 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let scale = 10u64.pow(frac.len() as u32);
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let numer = int.checked_mul(scale).and_then(|x| x.checked_add(frac_val)).ok_or_else(bad)?;
        Base::new(numer, scale)
    }
}

impl Serialize for Base {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.to_f64())
    }
}

/// Accepts a JSON number (`2`, `1.5`) or a string in any [`FromStr`] form.
impl<'de> Deserialize<'de> for Base {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        let text = match Repr::deserialize(deserializer)? {
            Repr::Num(x) => format!("{x}"),
            Repr::Text(t) => t,
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `log_base(x)` for real arguments.
pub fn log_base<F: Scalar>(x: F, base: F) -> F {
    x.ln() / base.ln()
}

/// Exact test of `cost <= m^alpha`, done as `ln(cost) <= alpha * ln(m) * (1 + slack)`.
pub fn within_budget<F: Scalar>(cost: u64, m: u64, alpha: F) -> bool {
    if cost == 0 {
        return true;
    }
    let lhs = F::of_u64(cost).ln();
    let rhs = alpha * F::of_u64(m).ln() * (F::one() + F::budget_slack());
    lhs <= rhs
}
