//! Quadratic surds `a + b·√d` with exact ordering against rationals.
//!
//! All regime thresholds in this crate have this shape: the positive root of
//! `r² + r = R` is `(√(4R+1) − 1)/2`, the root of `(8r−1)² = 16R+1` is
//! `(√(16R+1) + 1)/8`, and derived cuts like `r²`, `2r−1`, `1−r`, `r/2` or
//! `R−r` stay inside the family because it is closed under rational affine
//! maps and squaring.

use super::{isqrt, Rat};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact value `a + b·√d` with rational `a`, `b` and non-negative rational `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    a: Rat,
    b: Rat,
    d: Rat,
}

impl Surd {
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        assert!(!d.is_negative(), "surd discriminant must be non-negative");
        if b.is_zero() || d.is_zero() {
            return Self { a, b: Rat::zero(), d: Rat::zero() };
        }
        Self { a, b, d }
    }

    pub fn from_rat(a: Rat) -> Self {
        Self { a, b: Rat::zero(), d: Rat::zero() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational part; equals the value when `is_rational`.
    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    /// `self + t` for rational `t`.
    pub fn add_rat(&self, t: &Rat) -> Self {
        Self::new(&self.a + t, self.b.clone(), self.d.clone())
    }

    /// `c·self` for rational `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(&self.a * c, &self.b * c, self.d.clone())
    }

    /// `self²` (stays in the same √d family).
    pub fn square(&self) -> Self {
        let a = &self.a * &self.a + &self.b * &self.b * &self.d;
        let b = Rat::from_integer(BigInt::from(2)) * &self.a * &self.b;
        Self::new(a, b, self.d.clone())
    }

    /// Exact comparison of a rational `t` against this value.
    ///
    /// `t cmp (a + b√d)` reduces to the sign of `t − a` against `b√d`, decided
    /// by comparing squares on the correct sign branch; nothing is rounded.
    pub fn cmp_rat(&self, t: &Rat) -> Ordering {
        let lhs = t - &self.a; // compare lhs vs b*sqrt(d)
        if self.b.is_zero() {
            return lhs.cmp(&Rat::zero());
        }
        let b_pos = self.b.is_positive();
        match (lhs.is_positive(), lhs.is_zero(), b_pos) {
            (_, true, true) => Ordering::Less,     // 0 < b√d  (d>0 here)
            (_, true, false) => Ordering::Greater, // 0 > b√d
            (true, _, false) => Ordering::Greater,
            (false, _, true) => Ordering::Less,
            (true, _, true) | (false, _, false) => {
                // same sign on both sides: compare squares, flip for negatives
                let l2 = &lhs * &lhs;
                let r2 = &self.b * &self.b * &self.d;
                let sq = l2.cmp(&r2);
                if lhs.is_positive() {
                    sq
                } else {
                    sq.reverse()
                }
            }
        }
    }

    /// True when the rational `t` is ≥ this value.
    pub fn le_rat(&self, t: &Rat) -> bool {
        self.cmp_rat(t) != Ordering::Less
    }

    /// True when the rational `t` is ≤ this value.
    pub fn ge_rat(&self, t: &Rat) -> bool {
        self.cmp_rat(t) != Ordering::Greater
    }

    /// Exact comparison of two surds over the same √d.
    pub fn cmp_same_d(&self, other: &Surd) -> Ordering {
        assert!(
            self.b.is_zero() || other.b.is_zero() || self.d == other.d,
            "cmp_same_d requires a common discriminant"
        );
        let a = &self.a - &other.a;
        let b = &self.b - &other.b;
        let d = if self.b.is_zero() { other.d.clone() } else { self.d.clone() };
        let diff = Surd::new(a, b, d); // self - other
        // cmp_rat(0) is `0 cmp diff`; the sign of diff is its reverse.
        diff.cmp_rat(&Rat::zero()).reverse()
    }

    /// Largest multiple of `10^-digits` that is ≤ the value.
    pub fn lower_rat(&self, digits: u32) -> Rat {
        self.decimal_bound(digits, false)
    }

    /// Smallest multiple of `10^-digits` that is ≥ the value.
    pub fn upper_rat(&self, digits: u32) -> Rat {
        self.decimal_bound(digits, true)
    }

    fn decimal_bound(&self, digits: u32, upper: bool) -> Rat {
        let scale = BigInt::from(10u32).pow(digits);
        let c = if upper { self.ceil_times(&scale) } else { self.floor_times(&scale) };
        Rat::new(c, scale)
    }

    /// Exact `⌊value · scale⌋` for a positive integer `scale`.
    ///
    /// `value·scale = a·scale + (b·scale)·√d`; the irrational part is
    /// bracketed by an integer square root and the bracket is tightened with
    /// exact comparisons, so the result is the true floor.
    pub fn floor_times(&self, scale: &BigInt) -> BigInt {
        self.int_bound(scale, false)
    }

    /// Exact `⌈value · scale⌉` for a positive integer `scale`.
    pub fn ceil_times(&self, scale: &BigInt) -> BigInt {
        self.int_bound(scale, true)
    }

    fn int_bound(&self, scale: &BigInt, upper: bool) -> BigInt {
        assert!(scale.is_positive(), "scale must be positive");
        let a_scaled = &self.a * Rat::from_integer(scale.clone());
        if self.b.is_zero() {
            return if upper { a_scaled.ceil() } else { a_scaled.floor() }
                .numer()
                .clone();
        }
        let bs = &self.b * Rat::from_integer(scale.clone());
        let sq = &bs * &bs * &self.d; // (b*scale)^2 * d, non-negative rational
        let root_floor = isqrt(&(sq.numer() / sq.denom()));
        let (lo_irr, hi_irr) = if self.b.is_positive() {
            (root_floor.clone(), &root_floor + BigInt::one())
        } else {
            (-(&root_floor + BigInt::one()), -root_floor)
        };
        let lo = &a_scaled + Rat::from_integer(lo_irr);
        let hi = &a_scaled + Rat::from_integer(hi_irr);
        if upper {
            // smallest integer c with c/scale >= value
            let mut c = hi.ceil().numer().clone();
            while self.cmp_rat(&Rat::new(&c - BigInt::one(), scale.clone())) != Ordering::Less {
                c -= BigInt::one();
            }
            c
        } else {
            // largest integer c with c/scale <= value
            let mut c = lo.floor().numer().clone();
            while self.cmp_rat(&Rat::new(&c + BigInt::one(), scale.clone())) != Ordering::Greater {
                c += BigInt::one();
            }
            c
        }
    }

    /// Decimal string truncated to `digits` fractional digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        super::to_decimal(&self.lower_rat(digits), digits as usize)
    }

    /// Approximate value as f64 (display / initial guesses only).
    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rat| -> f64 {
            let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        };
        f(&self.a) + f(&self.b) * f(&self.d).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// The positive root of `r² + r = R`, i.e. `(√(4R+1) − 1)/2`.
pub fn golden_threshold(cap: &Rat) -> Surd {
    let d = Rat::from_integer(BigInt::from(4)) * cap + Rat::one();
    Surd::new(super::rat(-1, 2), super::rat(1, 2), d)
}

/// The root of `(8r − 1)² = 16R + 1` used by the mid-range class algorithm,
/// i.e. `(√(16R+1) + 1)/8`.
pub fn sixteen_threshold(cap: &Rat) -> Surd {
    let d = Rat::from_integer(BigInt::from(16)) * cap + Rat::one();
    Surd::new(super::rat(1, 8), super::rat(1, 8), d)
}
