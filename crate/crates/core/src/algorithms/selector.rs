//! Maps a variant and a buffer capacity to the algorithm that owns the
//! regime, with the clamping rules for the flat bound bands.

use super::{AlgoError, AlgorithmId, GroupingParams};
use crate::exact::{rat, rat_int, Rat, Surd};
use crate::model::{Mode, Removability};
use num::One;
use std::sync::OnceLock;

/// Effective buffer capacity an algorithm run enforces. Clamp points are the
/// two irrational band anchors; everything else is the instance capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EffectiveR {
    Rational(Rat),
    /// `(1+√2)/2`, the flat-√2 band anchor.
    GoldenClamp,
    /// `17−9√3`, the flat-`(1+√3)/2` band anchor.
    SixteenClamp,
}

impl EffectiveR {
    pub fn as_surd(&self) -> Surd {
        match self {
            EffectiveR::Rational(r) => Surd::from_rat(r.clone()),
            EffectiveR::GoldenClamp => golden_clamp_point().clone(),
            EffectiveR::SixteenClamp => sixteen_clamp_point().clone(),
        }
    }

    /// The rational capacity; only meaningful off the clamp bands.
    pub(crate) fn rational(&self) -> &Rat {
        match self {
            EffectiveR::Rational(r) => r,
            _ => unreachable!("clamped capacities only occur for the class algorithms"),
        }
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        match self {
            EffectiveR::Rational(r) => crate::exact::to_decimal(r, digits as usize),
            other => other.as_surd().to_decimal(digits),
        }
    }
}

/// `(1+√2)/2 ≈ 1.2071`.
pub(crate) fn golden_clamp_point() -> &'static Surd {
    static P: OnceLock<Surd> = OnceLock::new();
    P.get_or_init(|| Surd::new(rat(1, 2), rat(1, 2), rat_int(2)))
}

/// `2−√2/2 ≈ 1.2929`.
pub(crate) fn sixteen_band_start() -> &'static Surd {
    static P: OnceLock<Surd> = OnceLock::new();
    P.get_or_init(|| Surd::new(rat_int(2), rat(-1, 2), rat_int(2)))
}

/// `17−9√3 ≈ 1.4115`.
pub(crate) fn sixteen_clamp_point() -> &'static Surd {
    static P: OnceLock<Surd> = OnceLock::new();
    P.get_or_init(|| Surd::new(rat_int(17), rat_int(-9), rat_int(3)))
}

/// `2√3−2 ≈ 1.4641`.
pub(crate) fn case3_band_start() -> &'static Surd {
    static P: OnceLock<Surd> = OnceLock::new();
    P.get_or_init(|| Surd::new(rat_int(-2), rat_int(2), rat_int(3)))
}

/// Smallest capacity whose grouped-threshold ε drops below 1/12, the point
/// where the `1+6ε` analysis applies. Found once by scanning m upward.
pub fn r_alg2_min() -> &'static Rat {
    static R: OnceLock<Rat> = OnceLock::new();
    R.get_or_init(|| {
        let cutoff = rat(1, 12);
        let mut m = 1u32;
        loop {
            let eps = super::solve_epsilon(m).expect("m >= 1");
            if eps < cutoff {
                // m = ⌊(R−3)/2⌋ first reaches this m at R = 2m + 3
                return rat_int(2 * m as i64 + 3);
            }
            m += 1;
            assert!(m < 10_000, "epsilon never dropped below 1/12");
        }
    })
}

/// The selector's verdict: which algorithm owns `(mode, removability, R)`,
/// at which effective capacity, and whether a proven bound covers it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub algorithm: AlgorithmId,
    pub effective_r: EffectiveR,
    pub guaranteed: bool,
}

/// Regime table from the bound summary; errors only for the variant with no
/// bounded-ratio algorithm at all.
pub fn select_algorithm(
    mode: Mode,
    removability: Removability,
    r: &Rat,
) -> Result<Selection, AlgoError> {
    assert!(*r >= Rat::one(), "buffer capacity must be at least 1");
    match (mode, removability) {
        (Mode::General, Removability::NonRemovable) => Err(AlgoError::Unsupported),
        (Mode::Proportional, Removability::NonRemovable) => Ok(Selection {
            algorithm: AlgorithmId::Alg1,
            effective_r: EffectiveR::Rational(r.clone()),
            guaranteed: *r > Rat::one(),
        }),
        (Mode::General, Removability::Removable) => Ok(select_general_removable(r)),
        (Mode::Proportional, Removability::Removable) => Ok(select_proportional_removable(r)),
    }
}

fn select_general_removable(r: &Rat) -> Selection {
    let two = rat(2, 1);
    if *r >= *r_alg2_min() {
        return Selection {
            algorithm: AlgorithmId::Alg2,
            effective_r: EffectiveR::Rational(r.clone()),
            guaranteed: true,
        };
    }
    // density greedy owns (1, 2); past 2 it runs clamped with no guarantee
    let guaranteed = *r > Rat::one() && *r < two;
    Selection {
        algorithm: AlgorithmId::Alg4,
        effective_r: EffectiveR::Rational(if *r > two { two } else { r.clone() }),
        guaranteed,
    }
}

fn select_proportional_removable(r: &Rat) -> Selection {
    let rational = |alg, guaranteed| Selection {
        algorithm: alg,
        effective_r: EffectiveR::Rational(r.clone()),
        guaranteed,
    };
    if *r <= rat(10, 9) {
        return rational(AlgorithmId::Alg5, true);
    }
    if golden_clamp_point().ge_rat(r) {
        return rational(AlgorithmId::Alg6, true);
    }
    if sixteen_band_start().ge_rat(r) {
        return Selection {
            algorithm: AlgorithmId::Alg6,
            effective_r: EffectiveR::GoldenClamp,
            guaranteed: true,
        };
    }
    if sixteen_clamp_point().ge_rat(r) {
        return rational(AlgorithmId::Alg7, true);
    }
    if case3_band_start().ge_rat(r) {
        return Selection {
            algorithm: AlgorithmId::Alg7,
            effective_r: EffectiveR::SixteenClamp,
            guaranteed: true,
        };
    }
    if *r <= rat(3, 2) {
        return rational(AlgorithmId::Alg8, true);
    }
    if *r >= *r_alg2_min() {
        return Selection {
            algorithm: AlgorithmId::Alg2,
            effective_r: EffectiveR::Rational(r.clone()),
            guaranteed: true,
        };
    }
    // gap between 3/2 and the grouped-threshold regime: density greedy,
    // proven 2-competitive only below capacity 2
    let two = rat(2, 1);
    let guaranteed = *r < two;
    Selection {
        algorithm: AlgorithmId::Alg4,
        effective_r: EffectiveR::Rational(if *r > two { two } else { r.clone() }),
        guaranteed,
    }
}

/// `m = ⌊(R−3)/2⌋` and its solved ε for capacity `r`; convenience used by
/// bound evaluation.
pub(crate) fn grouping_for(r: &Rat) -> Result<GroupingParams, AlgoError> {
    GroupingParams::for_capacity(r)
}
