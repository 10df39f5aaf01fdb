//! Exact arithmetic support: arbitrary-precision rationals, quadratic surds
//! with exact sign-test comparisons, and high-precision decimal evaluation.
//!
//! Every size, value and capacity in this crate is a [`Rat`]. Regime
//! thresholds such as `r`, `r²` or `2r−1` are quadratic irrationals and are
//! represented symbolically by [`Surd`]; comparing a rational against them
//! never rounds.

mod ln;
mod surd;

pub use ln::ln_rational;
pub use surd::{golden_threshold, sixteen_threshold, Surd};

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Signed, Zero};
use std::str::FromStr;

/// Exact rational number; the base scalar of the whole crate.
pub type Rat = BigRational;

/// Builds a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parses `"p/q"`, `"p"` or a decimal literal like `"0.25"` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int_part = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|e| format!("bad decimal {s:?}: {e}"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let frac_num = BigInt::from_str(frac).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let negative = s.starts_with('-');
        let abs = int_part.magnitude() * scale.magnitude() + frac_num.magnitude();
        let num = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, abs);
        return Ok(Rat::new(num, scale));
    }
    let p = BigInt::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))?;
    Ok(Rat::from_integer(p))
}

/// Formats a rational as `"p/q"` (or `"p"` when integral).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats a rational as a decimal string with `digits` fractional digits,
/// truncated towards zero.
pub fn to_decimal(r: &Rat, digits: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut out = String::new();
    if neg && !scaled.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        let frac = frac_part.to_string();
        for _ in frac.len()..digits {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

/// Floor of the square root of a non-negative integer (Newton iteration).
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut x: BigInt = BigInt::one() << (n.bits() / 2 + 1);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `10^-digits`, the unit in the last place of a decimal evaluation.
pub fn pow10_inv(digits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}
