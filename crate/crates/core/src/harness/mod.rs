//! Experiment driver: single runs, bound-certification fuzzing, the ratio
//! table, and the report schema shared by the CLI and the demo.

mod fuzz;
mod rng;
mod table;

pub use fuzz::{fuzz_upper_bound, FuzzConfig, FuzzOutcome, SizeDistribution, Violation};
pub use rng::Xorshift64Star;
pub use table::{ratio_table, table_csv, TableRow};

use crate::algorithms::{
    algorithm_bound, run_with_effective_r, select_algorithm, AlgoError, AlgorithmId, Bound,
    EffectiveR, Selection,
};
use crate::exact::{format_rat, to_decimal, Rat};
use crate::model::{Instance, Mode, Removability};
use crate::oracle::{best_packable_subset, offline_optimum, SearchCapExceeded};
use crate::trace::{validate_trace, BufferTrace, TraceViolation};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Decimal digits used when rendering exact values; override with the
/// `BUFFERKNAP_PRECISION` environment variable.
pub fn report_precision() -> u32 {
    std::env::var("BUFFERKNAP_PRECISION")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(40)
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Algorithm(#[from] AlgoError),
    #[error(transparent)]
    SearchCap(#[from] SearchCapExceeded),
    #[error("algorithm produced an illegal trace: {0} (this is a defect)")]
    TraceInvalid(TraceViolation),
}

/// One simulation's accounting, serialized exactly as typed: rationals as
/// `p/q` strings, high-precision values as fixed-digit decimals.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub instance_digest: String,
    pub algorithm_id: AlgorithmId,
    #[serde(rename = "effective_R")]
    pub effective_r: String,
    pub alg_value: String,
    pub opt_value: String,
    pub ratio: String,
    pub theoretical_bound: String,
    pub within_bound: bool,
    pub guaranteed_regime: bool,
}

/// The exact quantities behind a [`RunReport`].
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    pub trace: BufferTrace,
    pub alg_value: Rat,
    pub opt_value: Rat,
    /// `None` encodes an unbounded ratio.
    pub ratio: Option<Rat>,
    pub bound: Bound,
}

fn digest_instance(instance: &Instance) -> String {
    let mut hasher = Sha256::new();
    hasher.update(instance.to_json().as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Tolerance for bound comparisons in reports: `10⁻⁹`.
pub(crate) fn bound_margin() -> Rat {
    crate::exact::pow10_inv(9)
}

/// Whether a proven competitive bound covers the algorithm at this capacity.
pub fn guaranteed_regime(algorithm: AlgorithmId, r: &Rat) -> bool {
    use crate::exact::{rat, rat_int, Surd};
    match algorithm {
        AlgorithmId::Alg1 => *r > Rat::one(),
        AlgorithmId::Alg4 => *r > Rat::one() && *r < rat(2, 1),
        AlgorithmId::Alg2 => r >= crate::algorithms::r_alg2_min(),
        AlgorithmId::Alg5 | AlgorithmId::Alg6 | AlgorithmId::Alg7 => true,
        AlgorithmId::Alg8 => {
            let band_start = Surd::new(rat_int(-2), rat_int(2), rat_int(3)); // 2√3−2
            band_start.le_rat(r)
        }
    }
}

/// Runs one algorithm on one instance: trace, validation, extraction, and
/// the filled report.
pub fn run_simulation(
    algorithm: AlgorithmId,
    instance: &Instance,
) -> Result<RunOutcome, HarnessError> {
    let effective = crate::algorithms::resolve_effective_r(algorithm, &instance.capacity_r)?;
    run_simulation_with(algorithm, &effective, instance)
}

/// Runs the variant selector's algorithm.
pub fn run_selected(instance: &Instance) -> Result<RunOutcome, HarnessError> {
    let selection = select_algorithm(instance.mode, instance.removability, &instance.capacity_r)?;
    run_selection(&selection, instance)
}

pub fn run_selection(
    selection: &Selection,
    instance: &Instance,
) -> Result<RunOutcome, HarnessError> {
    let outcome = run_simulation_with(selection.algorithm, &selection.effective_r, instance)?;
    Ok(outcome)
}

fn run_simulation_with(
    algorithm: AlgorithmId,
    effective: &EffectiveR,
    instance: &Instance,
) -> Result<RunOutcome, HarnessError> {
    let trace = run_with_effective_r(algorithm, instance, effective)?;
    if let Err(violation) = validate_trace(instance, &trace) {
        return Err(HarnessError::TraceInvalid(violation));
    }
    let final_items: Vec<_> = trace
        .final_buffer()
        .iter()
        .map(|&i| instance.items[i as usize - 1].clone())
        .collect();
    let alg_value = best_packable_subset(&final_items, &Rat::one())?.total_value;
    let opt_value = offline_optimum(&instance.items, &Rat::one())?.total_value;
    let ratio = if alg_value.is_positive() {
        Some(&opt_value / &alg_value)
    } else if opt_value.is_zero() {
        Some(Rat::one()) // empty outcome against empty optimum
    } else {
        None
    };
    let bound = algorithm_bound(algorithm, effective);
    let within_bound = match &ratio {
        Some(q) => bound.admits(q, &bound_margin()),
        None => matches!(bound, Bound::Infinite),
    };
    let digits = report_precision();
    let report = RunReport {
        instance_digest: digest_instance(instance),
        algorithm_id: algorithm,
        effective_r: effective.to_decimal(digits),
        alg_value: format_rat(&alg_value),
        opt_value: format_rat(&opt_value),
        ratio: match &ratio {
            Some(q) => to_decimal(q, digits as usize),
            None => "inf".into(),
        },
        theoretical_bound: bound.to_decimal(digits),
        within_bound,
        guaranteed_regime: guaranteed_regime(algorithm, &instance.capacity_r),
    };
    Ok(RunOutcome { report, trace, alg_value, opt_value, ratio, bound })
}

/// Report wrapper for a duel, sharing the report schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DuelReport {
    pub kind: String,
    pub algorithm_id: AlgorithmId,
    #[serde(rename = "R")]
    pub r: String,
    pub eps: String,
    pub items: usize,
    pub alg_value: String,
    pub opt_value: String,
    pub ratio: String,
    pub theorem_bound: String,
    pub achieved: bool,
    pub instance: serde_json::Value,
}

pub fn duel_report(result: &crate::adversary::DuelResult) -> DuelReport {
    let digits = report_precision();
    DuelReport {
        kind: result.kind.to_string(),
        algorithm_id: result.algorithm,
        r: format_rat(&result.r),
        eps: format_rat(&result.eps),
        items: result.instance.len(),
        alg_value: format_rat(&result.alg_value),
        opt_value: format_rat(&result.opt_value),
        ratio: match &result.ratio {
            Some(q) => to_decimal(q, digits as usize),
            None => "inf".into(),
        },
        theorem_bound: result.theorem_bound.to_decimal(digits),
        achieved: result.achieved,
        instance: serde_json::from_str(&result.instance.to_json())
            .expect("instance JSON is valid"),
    }
}

/// Variant pair used across the CLI surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variant {
    pub mode: Mode,
    pub removability: Removability,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (mode, removability) = match s.to_ascii_lowercase().as_str() {
            "prop-removable" => (Mode::Proportional, Removability::Removable),
            "prop-nonremovable" | "prop-non-removable" => {
                (Mode::Proportional, Removability::NonRemovable)
            }
            "gen-removable" => (Mode::General, Removability::Removable),
            "gen-nonremovable" | "gen-non-removable" => {
                (Mode::General, Removability::NonRemovable)
            }
            other => return Err(format!("unknown variant {other:?}")),
        };
        Ok(Variant { mode, removability })
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m = match self.mode {
            Mode::Proportional => "prop",
            Mode::General => "gen",
        };
        let r = match self.removability {
            Removability::Removable => "removable",
            Removability::NonRemovable => "nonremovable",
        };
        write!(f, "{m}-{r}")
    }
}
