//! The online algorithms, their regime selector, and the bound formulas.

mod bounds;
mod classed;
mod greedy;
mod grouped;
mod selector;

pub use bounds::{algorithm_bound, lower_bound_formula, theoretical_bound, Bound};
pub use classed::RegimeParams;
pub use grouped::{build_feasible_witness, solve_epsilon, GroupingParams};
pub use selector::{r_alg2_min, select_algorithm, EffectiveR, Selection};

use crate::exact::{format_rat, rat, Rat, Surd};
use crate::model::{Instance, Mode, Removability};
use crate::oracle::SearchCapExceeded;
use crate::trace::BufferTrace;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The deterministic online algorithms implemented here, numbered as in the
/// bound tables: 1 = non-removable greedy, 2 = grouped threshold,
/// 4 = density greedy, 5–8 = the proportional size-class algorithms in
/// increasing buffer range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmId {
    Alg1,
    Alg2,
    Alg4,
    Alg5,
    Alg6,
    Alg7,
    Alg8,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 7] = [
        AlgorithmId::Alg1,
        AlgorithmId::Alg2,
        AlgorithmId::Alg4,
        AlgorithmId::Alg5,
        AlgorithmId::Alg6,
        AlgorithmId::Alg7,
        AlgorithmId::Alg8,
    ];
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgorithmId::Alg1 => "alg1",
            AlgorithmId::Alg2 => "alg2",
            AlgorithmId::Alg4 => "alg4",
            AlgorithmId::Alg5 => "alg5",
            AlgorithmId::Alg6 => "alg6",
            AlgorithmId::Alg7 => "alg7",
            AlgorithmId::Alg8 => "alg8",
        };
        write!(f, "{s}")
    }
}

impl FromStr for AlgorithmId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alg1" | "1" => Ok(AlgorithmId::Alg1),
            "alg2" | "2" => Ok(AlgorithmId::Alg2),
            "alg4" | "4" => Ok(AlgorithmId::Alg4),
            "alg5" | "5" => Ok(AlgorithmId::Alg5),
            "alg6" | "6" => Ok(AlgorithmId::Alg6),
            "alg7" | "7" => Ok(AlgorithmId::Alg7),
            "alg8" | "8" => Ok(AlgorithmId::Alg8),
            other => Err(format!("unknown algorithm id {other:?}")),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum AlgoError {
    #[error("{algorithm} requires {expected}")]
    VariantMismatch { algorithm: AlgorithmId, expected: &'static str },
    #[error("{algorithm} is outside its regime at R = {r} (valid: {valid})")]
    RegimeViolation { algorithm: AlgorithmId, r: String, valid: &'static str },
    #[error("buffer capacity R = {r} leaves no group budget (needs ⌊(R−3)/2⌋ ≥ 1)")]
    RTooSmall { r: String },
    #[error("the ε solver needs m ≥ 1")]
    InvalidM,
    #[error("no algorithm with a bounded ratio exists for general & non-removable inputs")]
    Unsupported,
    #[error(transparent)]
    SearchCap(#[from] SearchCapExceeded),
}

/// Runs one algorithm on one instance at its default effective capacity
/// (the instance's R, clamped per the algorithm's regime rules).
pub fn run_algorithm(id: AlgorithmId, instance: &Instance) -> Result<BufferTrace, AlgoError> {
    let effective = resolve_effective_r(id, &instance.capacity_r)?;
    run_with_effective_r(id, instance, &effective)
}

/// Runs one algorithm with an explicit effective capacity (already resolved).
pub fn run_with_effective_r(
    id: AlgorithmId,
    instance: &Instance,
    effective: &EffectiveR,
) -> Result<BufferTrace, AlgoError> {
    check_variant(id, instance.mode, instance.removability)?;
    let mut machine = make_machine(id, effective, instance.len())?;
    let mut trace = crate::trace::TraceBuilder::new(instance.capacity_r.clone(), instance.len());
    for item in &instance.items {
        machine.step(item);
        trace.push_round(machine.buffer().into());
    }
    Ok(trace.finish())
}

/// One running online algorithm: consumes an item per round and exposes the
/// buffer as sorted arrival indices. Adversary duels drive this directly.
pub(crate) enum Machine {
    NonRemovableGreedy(greedy::NonRemovableGreedy),
    DensityGreedy(greedy::DensityGreedy),
    Grouped(grouped::GroupedMachine),
    Classed(classed::ClassMachine),
}

impl Machine {
    pub fn step(&mut self, item: &crate::model::Item) {
        match self {
            Machine::NonRemovableGreedy(m) => m.step(item),
            Machine::DensityGreedy(m) => m.step(item),
            Machine::Grouped(m) => m.step(item),
            Machine::Classed(m) => m.step(item),
        }
    }

    pub fn buffer(&self) -> &[u32] {
        match self {
            Machine::NonRemovableGreedy(m) => m.buffer(),
            Machine::DensityGreedy(m) => m.buffer(),
            Machine::Grouped(m) => m.buffer(),
            Machine::Classed(m) => m.buffer(),
        }
    }
}

/// Builds the state machine for an algorithm at a resolved capacity.
/// `n_hint` guards the class machines' subset searches against oversized
/// inputs (they enumerate buffer subsets each round).
pub(crate) fn make_machine(
    id: AlgorithmId,
    effective: &EffectiveR,
    n_hint: usize,
) -> Result<Machine, AlgoError> {
    use classed::{ClassKind, ClassMachine};
    let class_guard = || -> Result<(), AlgoError> {
        if n_hint + 1 > crate::oracle::DEFAULT_SEARCH_CAP {
            return Err(AlgoError::SearchCap(SearchCapExceeded {
                items: n_hint,
                cap: crate::oracle::DEFAULT_SEARCH_CAP - 1,
            }));
        }
        Ok(())
    };
    Ok(match (id, effective) {
        (AlgorithmId::Alg1, _) => {
            Machine::NonRemovableGreedy(greedy::NonRemovableGreedy::new(
                effective.rational().clone(),
            ))
        }
        (AlgorithmId::Alg4, _) => {
            Machine::DensityGreedy(greedy::DensityGreedy::new(effective.rational().clone()))
        }
        (AlgorithmId::Alg2, _) => {
            let params = GroupingParams::for_capacity(effective.rational())?;
            Machine::Grouped(grouped::GroupedMachine::new(params))
        }
        (AlgorithmId::Alg5, EffectiveR::Rational(r)) => {
            class_guard()?;
            Machine::Classed(ClassMachine::new(ClassKind::LowRange, RegimeParams::golden(r)))
        }
        (AlgorithmId::Alg6, EffectiveR::Rational(r)) => {
            class_guard()?;
            Machine::Classed(ClassMachine::new(ClassKind::MidRange, RegimeParams::golden(r)))
        }
        (AlgorithmId::Alg6, EffectiveR::GoldenClamp) => {
            class_guard()?;
            Machine::Classed(ClassMachine::new(
                ClassKind::MidRange,
                RegimeParams::golden_clamped(),
            ))
        }
        (AlgorithmId::Alg7, EffectiveR::Rational(r)) => {
            class_guard()?;
            Machine::Classed(ClassMachine::new(
                ClassKind::SixteenRange,
                RegimeParams::sixteen(r),
            ))
        }
        (AlgorithmId::Alg7, EffectiveR::SixteenClamp) => {
            class_guard()?;
            Machine::Classed(ClassMachine::new(
                ClassKind::SixteenRange,
                RegimeParams::sixteen_clamped(),
            ))
        }
        (AlgorithmId::Alg8, EffectiveR::Rational(r)) => {
            class_guard()?;
            Machine::Classed(ClassMachine::new(ClassKind::Case3, RegimeParams::case3(r)))
        }
        _ => unreachable!("clamp points are algorithm-specific"),
    })
}

pub(crate) fn check_variant(
    id: AlgorithmId,
    mode: Mode,
    removability: Removability,
) -> Result<(), AlgoError> {
    match id {
        AlgorithmId::Alg1 => {
            if removability != Removability::NonRemovable {
                return Err(AlgoError::VariantMismatch {
                    algorithm: id,
                    expected: "a non-removable instance",
                });
            }
        }
        AlgorithmId::Alg2 | AlgorithmId::Alg4 => {
            if removability != Removability::Removable {
                return Err(AlgoError::VariantMismatch {
                    algorithm: id,
                    expected: "a removable instance",
                });
            }
        }
        AlgorithmId::Alg5 | AlgorithmId::Alg6 | AlgorithmId::Alg7 | AlgorithmId::Alg8 => {
            if removability != Removability::Removable || mode != Mode::Proportional {
                return Err(AlgoError::VariantMismatch {
                    algorithm: id,
                    expected: "a proportional & removable instance",
                });
            }
        }
    }
    Ok(())
}

/// Clamps/validates an instance capacity into the algorithm's operating
/// range. This is the explicit-algorithm entry path; the variant selector
/// performs the same resolution through its own regime table.
pub fn resolve_effective_r(id: AlgorithmId, r: &Rat) -> Result<EffectiveR, AlgoError> {
    let violation = |valid: &'static str| AlgoError::RegimeViolation {
        algorithm: id,
        r: format_rat(r),
        valid,
    };
    match id {
        AlgorithmId::Alg1 => Ok(EffectiveR::Rational(r.clone())),
        AlgorithmId::Alg4 => {
            // the density-greedy analysis needs R < 2; larger buffers are
            // clamped (no guarantee is claimed there either way)
            let two = rat(2, 1);
            Ok(EffectiveR::Rational(if *r > two { two } else { r.clone() }))
        }
        AlgorithmId::Alg2 => Ok(EffectiveR::Rational(r.clone())),
        AlgorithmId::Alg5 => {
            if *r < rat(1, 1) || *r > rat(10, 9) {
                return Err(violation("1 ≤ R ≤ 10/9"));
            }
            Ok(EffectiveR::Rational(r.clone()))
        }
        AlgorithmId::Alg6 => {
            let upper = selector::golden_clamp_point(); // (1+√2)/2
            let band_end = selector::sixteen_band_start(); // 2−√2/2
            if *r < rat(10, 9) || !band_end.ge_rat(r) {
                return Err(violation("10/9 ≤ R ≤ 2−√2/2"));
            }
            if upper.ge_rat(r) {
                Ok(EffectiveR::Rational(r.clone()))
            } else {
                Ok(EffectiveR::GoldenClamp)
            }
        }
        AlgorithmId::Alg7 => {
            let lower = selector::sixteen_band_start(); // 2−√2/2
            let upper = selector::sixteen_clamp_point(); // 17−9√3
            let band_end = selector::case3_band_start(); // 2√3−2
            if !lower.le_rat(r) || !band_end.ge_rat(r) {
                return Err(violation("2−√2/2 ≤ R ≤ 2√3−2"));
            }
            if upper.ge_rat(r) {
                Ok(EffectiveR::Rational(r.clone()))
            } else {
                Ok(EffectiveR::SixteenClamp)
            }
        }
        AlgorithmId::Alg8 => {
            // class layout needs R ≥ √2 (so that 1/2 ≤ R²/4); the proven
            // band starts at 2√3−2 but the 2/R bound is exercised from √2 up
            let sqrt2 = Surd::new(rat(0, 1), rat(1, 1), rat(2, 1));
            if !sqrt2.le_rat(r) || *r > rat(3, 2) {
                return Err(violation("√2 ≤ R ≤ 3/2"));
            }
            Ok(EffectiveR::Rational(r.clone()))
        }
    }
}

// ---------------------------------------------------------------------------
// named entry points (one per algorithm, over the shared dispatcher)
// ---------------------------------------------------------------------------

/// Take-if-it-fits greedy for non-removable inputs.
pub fn nonremovable_greedy(instance: &Instance) -> Result<BufferTrace, AlgoError> {
    run_algorithm(AlgorithmId::Alg1, instance)
}

/// Density-ordered rebuild for removable inputs.
pub fn density_greedy(instance: &Instance) -> Result<BufferTrace, AlgoError> {
    run_algorithm(AlgorithmId::Alg4, instance)
}

/// Grouped-threshold machine for large buffers (`⌊(R−3)/2⌋ ≥ 1`).
pub fn grouped_threshold(instance: &Instance) -> Result<BufferTrace, AlgoError> {
    run_algorithm(AlgorithmId::Alg2, instance)
}

/// Witness-window class machine for `1 ≤ R ≤ 10/9`.
pub fn prop_small_r(instance: &Instance) -> Result<BufferTrace, AlgoError> {
    run_algorithm(AlgorithmId::Alg5, instance)
}

/// Two-space class machine for `10/9 ≤ R ≤ 2−√2/2`.
pub fn prop_mid_r(instance: &Instance) -> Result<BufferTrace, AlgoError> {
    run_algorithm(AlgorithmId::Alg6, instance)
}

/// Four-medium-class machine for `2−√2/2 ≤ R ≤ 2√3−2`.
pub fn prop_case2(instance: &Instance) -> Result<BufferTrace, AlgoError> {
    run_algorithm(AlgorithmId::Alg7, instance)
}

/// Rational-cut class machine for `√2 ≤ R ≤ 3/2`.
pub fn prop_case3(instance: &Instance) -> Result<BufferTrace, AlgoError> {
    run_algorithm(AlgorithmId::Alg8, instance)
}
