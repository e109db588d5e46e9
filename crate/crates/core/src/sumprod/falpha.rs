//! The extremal constant `f(alpha) = min_l max(2 l alpha, 1/l)`, capped at 1,
//! in exact rational arithmetic.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer types usable for the exact evaluator (`i64`, `i128`, `BigInt`, ...).
pub trait ExactInt: Integer + Signed + Clone + FromPrimitive + ToPrimitive + fmt::Display {}
impl<I: Integer + Signed + Clone + FromPrimitive + ToPrimitive + fmt::Display> ExactInt for I {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `f = 1/l` on `[1/(2l(l+1)), 1/(2l^2)]`.
    Flat,
    /// `f = 2 l alpha` on `[1/(2l^2), 1/(2(l-1)l)]`, with `l` the optimal index.
    Linear,
    /// `f = 1` for `alpha >= 1/2`.
    Saturated,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Flat => "flat",
            Branch::Linear => "linear",
            Branch::Saturated => "saturated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdProfile<I: ExactInt> {
    pub alpha: Ratio<I>,
    pub value: Ratio<I>,
    pub optimal_ell: u64,
    pub branch: Branch,
}

fn int<I: ExactInt>(n: u64) -> I {
    I::from_u64(n).expect("small integers are representable")
}

/// `max(2 l alpha, 1/l)`
pub fn ell_value<I: ExactInt>(alpha: &Ratio<I>, ell: u64) -> Ratio<I> {
    let l = Ratio::from_integer(int::<I>(ell));
    let two = Ratio::from_integer(int::<I>(2));
    let a = two * l.clone() * alpha.clone();
    let b = l.recip();
    if a > b {
        a
    } else {
        b
    }
}

fn check_alpha<I: ExactInt>(alpha: &Ratio<I>) -> Result<()> {
    if alpha.is_positive() && *alpha < Ratio::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

/// Largest `m >= 0` with `2 m^2 alpha <= 1`.
fn crossing_floor<I: ExactInt>(alpha: &Ratio<I>) -> u64 {
    let ok = |m: u64| {
        let m = Ratio::from_integer(int::<I>(m));
        Ratio::from_integer(int::<I>(2)) * m.clone() * m * alpha.clone() <= Ratio::one()
    };
    let approx = (0.5 / ratio_to_f64(alpha)).sqrt();
    let mut m = if approx.is_finite() { approx.floor() as u64 } else { 1 };
    while m > 0 && !ok(m) {
        m -= 1;
    }
    while ok(m + 1) {
        m += 1;
    }
    m
}

/// Smallest `c >= 1` with `2 c^2 alpha >= 1`, i.e. `ceil((2 alpha)^(-1/2))`.
pub fn crossing_ceil<I: ExactInt>(alpha: &Ratio<I>) -> u64 {
    let m = crossing_floor(alpha);
    let exact = Ratio::from_integer(int::<I>(2 * m * m)) * alpha.clone() == Ratio::one();
    if exact { m.max(1) } else { m + 1 }
}

/// Exact `f(alpha)` with the minimizing `l` (smallest on ties) and its branch.
pub fn f_alpha<I: ExactInt>(alpha: &Ratio<I>) -> Result<ThresholdProfile<I>> {
    check_alpha(alpha)?;
    let half = Ratio::new(int::<I>(1), int::<I>(2));
    if *alpha >= half {
        return Ok(ThresholdProfile {
            alpha: alpha.clone(),
            value: Ratio::one(),
            optimal_ell: 1,
            branch: Branch::Saturated,
        });
    }
    // 2 m^2 alpha <= 1 < 2 (m+1)^2 alpha, and m >= 1 since alpha < 1/2.
    let m = crossing_floor(alpha);
    let flat = Ratio::from_integer(int::<I>(m)).recip();
    let linear = Ratio::from_integer(int::<I>(2 * (m + 1))) * alpha.clone();
    let (value, optimal_ell, branch) = if flat <= linear {
        (flat, m, Branch::Flat)
    } else {
        (linear, m + 1, Branch::Linear)
    };
    Ok(ThresholdProfile { alpha: alpha.clone(), value, optimal_ell, branch })
}

/// Direct minimum of `max(2 l alpha, 1/l)` over `1 <= l <= max_ell`, capped at 1.
///
/// `max_ell` must reach past the crossing point `(2 alpha)^(-1/2)`.
pub fn f_alpha_bruteforce<I: ExactInt>(alpha: &Ratio<I>, max_ell: u64) -> Result<Ratio<I>> {
    check_alpha(alpha)?;
    let need = crossing_ceil(alpha) + 1;
    if max_ell < need {
        return Err(Error::InvalidParameter(format!(
            "max_ell = {max_ell} is below ceil((2 alpha)^(-1/2)) + 1 = {need}"
        )));
    }
    let best = (1..=max_ell)
        .map(|l| ell_value(alpha, l))
        .min()
        .expect("range is nonempty");
    Ok(if best > Ratio::one() { Ratio::one() } else { best })
}

/// `(2 alpha)^(1/2)`, the small-alpha asymptote.
pub fn small_alpha_asymptote(alpha: f64) -> f64 {
    (2.0 * alpha).sqrt()
}

/// Parses `a/b`, an integer, or a decimal such as `0.05` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad rational {s:?}: {e}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|e| bad(&e))?;
        let b: i64 = b.trim().parse().map_err(|e| bad(&e))?;
        if b == 0 {
            return Err(bad(&"zero denominator"));
        }
        return Ok(Ratio::new(a, b));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad(&"malformed decimal"));
        }
        let neg = whole.starts_with('-');
        let w: i64 = if whole.is_empty() || whole == "-" { 0 } else { whole.parse().map_err(|e| bad(&e))? };
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|e| bad(&e))?;
        let num = w.abs().checked_mul(den).and_then(|x| x.checked_add(f)).ok_or_else(|| bad(&"overflow"))?;
        return Ok(Ratio::new(if neg { -num } else { num }, den));
    }
    let n: i64 = s.parse().map_err(|e| bad(&e))?;
    Ok(Ratio::from_integer(n))
}

pub fn ratio_to_f64<I: ExactInt>(r: &Ratio<I>) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
