//! High-precision natural logarithm of a positive rational.
//!
//! Used by the ε-solver checks: `ln` is evaluated in fixed-point arithmetic
//! (integer mantissa scaled by `10^digits`) so the result carries an explicit,
//! reproducible precision instead of float noise.

use super::Rat;
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Natural log of `x > 0`, correct to roughly `digits` decimal places.
///
/// Returns a rational with denominator `10^digits`. Argument reduction writes
/// `x = 2^k · y` with `y ∈ [1, 2)`; `ln y` comes from the atanh series
/// `ln y = 2·atanh(t)` with `t = (y−1)/(y+1) ≤ 1/3`, which gains about one
/// decimal digit per term.
pub fn ln_rational(x: &Rat, digits: u32) -> Rat {
    assert!(x.is_positive(), "ln of non-positive rational");
    let guard = 12;
    let scale = BigInt::from(10u32).pow(digits + guard);

    // reduce x into [1, 2)
    let mut y = x.clone();
    let two = Rat::from_integer(BigInt::from(2));
    let one = Rat::one();
    let mut k: i64 = 0;
    while y >= two {
        y /= &two;
        k += 1;
    }
    while y < one {
        y *= &two;
        k -= 1;
    }

    let ln_y = atanh_series(&y, &scale);
    let ln_2 = atanh_series(&two, &scale);
    let total = ln_y + BigInt::from(k) * ln_2;

    // round the guard digits away
    let down = BigInt::from(10u32).pow(guard);
    let half = &down / BigInt::from(2);
    let rounded = if total.is_negative() {
        (total - half) / &down
    } else {
        (total + half) / &down
    };
    Rat::new(rounded, BigInt::from(10u32).pow(digits))
}

/// `ln(y)` as a fixed-point mantissa at `scale`, via `2·atanh((y−1)/(y+1))`.
fn atanh_series(y: &Rat, scale: &BigInt) -> BigInt {
    let t = (y - Rat::one()) / (y + Rat::one());
    // fixed-point t
    let t_fp = (t.numer() * scale) / t.denom();
    let t2_fp = (&t_fp * &t_fp) / scale;
    let mut term = t_fp.clone(); // t^(2j+1) in fixed point
    let mut sum = BigInt::zero();
    let mut j: u32 = 0;
    loop {
        let contrib = &term / BigInt::from(2 * j + 1);
        if contrib.is_zero() {
            break;
        }
        sum += contrib;
        term = (&term * &t2_fp) / scale;
        j += 1;
        assert!(j < 10_000, "atanh series failed to converge");
    }
    sum * BigInt::from(2)
}
