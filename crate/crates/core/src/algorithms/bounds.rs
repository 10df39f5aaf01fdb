//! Closed-form competitive-ratio bounds per regime (the summary-table and
//! ratio-curve formulas), evaluated exactly as quadratic surds.

use super::selector::{
    case3_band_start, golden_clamp_point, grouping_for, r_alg2_min, sixteen_band_start,
    sixteen_clamp_point,
};
use super::AlgorithmId;
use crate::exact::{rat, rat_int, Rat, Surd};
use crate::model::{Mode, Removability};
use num::One;

/// A competitive-ratio bound: a finite algebraic value or unbounded.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    Finite(Surd),
    Infinite,
}

impl Bound {
    pub fn finite_rat(r: Rat) -> Self {
        Bound::Finite(Surd::from_rat(r))
    }

    /// True when `ratio ≤ bound + margin` (exact comparison).
    pub fn admits(&self, ratio: &Rat, margin: &Rat) -> bool {
        match self {
            Bound::Infinite => true,
            Bound::Finite(s) => s.add_rat(margin).ge_rat(ratio),
        }
    }

    /// True when `value ≥ bound − slack` (exact; used by duel checks).
    pub fn reached_within(&self, value: &Rat, slack: &Rat) -> bool {
        match self {
            Bound::Infinite => false,
            Bound::Finite(s) => s.add_rat(&-slack.clone()).le_rat(value),
        }
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        match self {
            Bound::Infinite => "inf".into(),
            Bound::Finite(s) => s.to_decimal(digits),
        }
    }

    pub fn as_finite(&self) -> Option<&Surd> {
        match self {
            Bound::Finite(s) => Some(s),
            Bound::Infinite => None,
        }
    }
}

/// `(1 + √(4R+1)) / (2R)`, the low-range tight ratio (equals `1/r` for
/// `r² + r = R`).
fn golden_ratio_bound(r: &Rat) -> Surd {
    let half_inv = (r * rat(2, 1)).recip();
    let d = r * rat(4, 1) + Rat::one();
    Surd::new(half_inv.clone(), half_inv, d)
}

/// `(√(16R+1) − 1) / (2R)`, the mid-range tight ratio.
fn sixteen_ratio_bound(r: &Rat) -> Surd {
    let half_inv = (r * rat(2, 1)).recip();
    let d = r * rat(16, 1) + Rat::one();
    Surd::new(-half_inv.clone(), half_inv, d)
}

/// `max{1/(R−1), 2}` for `R > 1`.
fn greedy_bound(r: &Rat) -> Bound {
    if *r <= Rat::one() {
        return Bound::Infinite;
    }
    let inv = (r - Rat::one()).recip();
    let two = rat(2, 1);
    Bound::finite_rat(if inv > two { inv } else { two })
}

/// `1 + 6ε` for the grouped-threshold regime.
fn grouped_bound(r: &Rat) -> Bound {
    match grouping_for(r) {
        Ok(params) => Bound::finite_rat(params.eps * rat(6, 1) + Rat::one()),
        Err(_) => Bound::Infinite,
    }
}

/// The bound the named algorithm's own theorem promises at an effective
/// capacity, independent of how the capacity was reached. `Infinite` where
/// no theorem applies.
pub fn algorithm_bound(id: AlgorithmId, effective: &super::EffectiveR) -> Bound {
    use super::EffectiveR::*;
    match (id, effective) {
        (AlgorithmId::Alg1, Rational(r)) => greedy_bound(r),
        (AlgorithmId::Alg4, Rational(r)) => {
            if *r < rat(2, 1) {
                greedy_bound(r)
            } else {
                Bound::Infinite
            }
        }
        (AlgorithmId::Alg2, Rational(r)) => grouped_bound(r),
        (AlgorithmId::Alg5, Rational(r)) | (AlgorithmId::Alg6, Rational(r)) => {
            Bound::Finite(golden_ratio_bound(r))
        }
        (AlgorithmId::Alg6, GoldenClamp) => {
            Bound::Finite(Surd::new(rat_int(0), rat_int(1), rat_int(2))) // √2
        }
        (AlgorithmId::Alg7, Rational(r)) => Bound::Finite(sixteen_ratio_bound(r)),
        (AlgorithmId::Alg7, SixteenClamp) => {
            Bound::Finite(Surd::new(rat(1, 2), rat(1, 2), rat_int(3))) // (1+√3)/2
        }
        (AlgorithmId::Alg8, Rational(r)) => Bound::finite_rat(rat(2, 1) / r),
        _ => Bound::Infinite,
    }
}

/// The variant's tight upper-bound curve at capacity `r` (the value the
/// selector's algorithm certifies there).
pub fn theoretical_bound(mode: Mode, removability: Removability, r: &Rat) -> Bound {
    match (mode, removability) {
        (Mode::General, Removability::NonRemovable) => Bound::Infinite,
        (Mode::Proportional, Removability::NonRemovable) => greedy_bound(r),
        (Mode::General, Removability::Removable) => {
            if *r >= *r_alg2_min() {
                grouped_bound(r)
            } else if *r < rat(2, 1) {
                greedy_bound(r)
            } else {
                Bound::Infinite
            }
        }
        (Mode::Proportional, Removability::Removable) => prop_removable_upper(r),
    }
}

fn prop_removable_upper(r: &Rat) -> Bound {
    if golden_clamp_point().ge_rat(r) {
        return Bound::Finite(golden_ratio_bound(r));
    }
    if sixteen_band_start().ge_rat(r) {
        return Bound::Finite(Surd::new(rat_int(0), rat_int(1), rat_int(2)));
    }
    if sixteen_clamp_point().ge_rat(r) {
        return Bound::Finite(sixteen_ratio_bound(r));
    }
    if case3_band_start().ge_rat(r) {
        return Bound::Finite(Surd::new(rat(1, 2), rat(1, 2), rat_int(3)));
    }
    if *r <= rat(3, 2) {
        return Bound::finite_rat(rat(2, 1) / r);
    }
    if *r >= *r_alg2_min() {
        return grouped_bound(r);
    }
    if *r < rat(2, 1) {
        return greedy_bound(r); // density greedy covers the gap below 2
    }
    Bound::Infinite
}

/// The matching lower-bound curve (what adversaries realize).
pub fn lower_bound_formula(mode: Mode, removability: Removability, r: &Rat) -> Bound {
    match (mode, removability) {
        (Mode::General, Removability::NonRemovable) => Bound::Infinite,
        (Mode::Proportional, Removability::NonRemovable) => greedy_bound(r),
        (Mode::General, Removability::Removable) => {
            if *r == Rat::one() {
                Bound::Infinite
            } else if *r < rat(2, 1) {
                greedy_bound(r)
            } else {
                // 1 + 1/(R+1)
                Bound::finite_rat(Rat::one() + (r + Rat::one()).recip())
            }
        }
        (Mode::Proportional, Removability::Removable) => {
            if *r <= rat(3, 2) {
                // tight with the upper curve on the whole class range
                prop_removable_upper(r)
            } else {
                // 1 + 1/(⌈2R⌉ + 1)
                let n = (r * rat(2, 1)).ceil() + Rat::one();
                Bound::finite_rat(Rat::one() + n.recip())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::EffectiveR;
    use std::cmp::Ordering;

    #[test]
    fn named_bound_values() {
        // (prop, removable, 1) -> (1+√5)/2 ≈ 1.6180339887
        let b = theoretical_bound(Mode::Proportional, Removability::Removable, &rat_int(1));
        assert_eq!(b.to_decimal(10), "1.6180339887");

        // (prop, removable, 3/2) -> 4/3
        let b = theoretical_bound(Mode::Proportional, Removability::Removable, &rat(3, 2));
        assert_eq!(b.as_finite().unwrap().cmp_rat(&rat(4, 3)), Ordering::Equal);

        // (prop, non-removable, 5/4) -> 4
        let b = theoretical_bound(Mode::Proportional, Removability::NonRemovable, &rat(5, 4));
        assert_eq!(b.as_finite().unwrap().cmp_rat(&rat_int(4)), Ordering::Equal);

        // (gen, non-removable, anything) -> ∞
        let b = theoretical_bound(Mode::General, Removability::NonRemovable, &rat_int(2));
        assert_eq!(b, Bound::Infinite);

        // flat bands
        let b = theoretical_bound(Mode::Proportional, Removability::Removable, &rat(5, 4));
        assert_eq!(b.to_decimal(10), "1.4142135623");
        let b = theoretical_bound(Mode::Proportional, Removability::Removable, &rat(29, 20));
        assert_eq!(b.to_decimal(10), "1.3660254037");
    }

    #[test]
    fn admits_is_exact_at_the_edge() {
        let b = theoretical_bound(Mode::Proportional, Removability::NonRemovable, &rat(3, 2));
        let margin = rat(1, 1_000_000_000);
        assert!(b.admits(&rat(2, 1), &margin));
        assert!(b.admits(&(rat(2, 1) + &margin), &margin));
        assert!(!b.admits(&(rat(2, 1) + rat(2, 1_000_000_000)), &margin));
    }

    #[test]
    fn upper_curve_dominates_lower_curve() {
        for num in 100..=300 {
            let r = rat(num, 100);
            for (m, rem) in [
                (Mode::Proportional, Removability::Removable),
                (Mode::General, Removability::Removable),
                (Mode::Proportional, Removability::NonRemovable),
            ] {
                let up = theoretical_bound(m, rem, &r);
                let low = lower_bound_formula(m, rem, &r);
                match (up, low) {
                    (Bound::Finite(u), Bound::Finite(l)) => {
                        // compare via tight decimal brackets
                        assert!(
                            u.upper_rat(30) >= l.lower_rat(30),
                            "upper < lower at R = {r}"
                        );
                    }
                    (Bound::Infinite, _) => {}
                    (Bound::Finite(_), Bound::Infinite) => {
                        panic!("finite upper with infinite lower at R = {r}")
                    }
                }
            }
        }
    }

    #[test]
    fn alg2_bound_value_at_25() {
        // m = 11, ε ≈ 0.1718, bound ≈ 2.03
        let b = algorithm_bound(AlgorithmId::Alg2, &EffectiveR::Rational(rat_int(25)));
        let s = b.as_finite().unwrap();
        assert!(s.ge_rat(&rat(2, 1)) && s.le_rat(&rat(21, 10)));
    }
}
