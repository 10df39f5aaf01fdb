//! Buffer traces and the feasibility validator.
//!
//! A trace records the buffer contents `B_0..B_n` after every round as sorted
//! arrival-index lists. The validator mechanizes the feasibility constraints:
//! capacity, the insertion rule `B_i ⊆ B_{i−1} ∪ {e_i}`, irrevocable removal,
//! and (for the non-removable variant) `B_{i−1} ⊆ B_i`.

use crate::exact::{format_rat, Rat};
use crate::model::{Instance, Removability};
use num::Zero;
use std::fmt;

/// Per-round buffer contents emitted by one algorithm run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BufferTrace {
    /// Capacity the algorithm enforced (the effective R, ≤ the instance R
    /// when a regime clamp is active).
    pub capacity_r: Rat,
    /// `rounds[i]` is `B_i` as a sorted list of arrival indices; `rounds[0]`
    /// is empty.
    pub rounds: Vec<Box<[u32]>>,
}

impl BufferTrace {
    pub fn final_buffer(&self) -> &[u32] {
        self.rounds.last().map(|b| &**b).unwrap_or(&[])
    }
}

/// First violated invariant, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceViolation {
    RoundCountMismatch { expected: usize, actual: usize },
    CapacityBreach { round: usize, total_size: String },
    IllegalInsertion { round: usize, index: u32 },
    IllegalReinsertion { round: usize, index: u32 },
    NonRemovableDeletion { round: usize, index: u32 },
    InitialBufferNotEmpty,
    UnknownIndex { round: usize, index: u32 },
}

impl fmt::Display for TraceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceViolation::RoundCountMismatch { expected, actual } => {
                write!(f, "trace has {actual} rounds, expected {expected}")
            }
            TraceViolation::CapacityBreach { round, total_size } => {
                write!(f, "capacity breach at round {round}: s(B) = {total_size}")
            }
            TraceViolation::IllegalInsertion { round, index } => {
                write!(f, "illegal insertion of item {index} at round {round}")
            }
            TraceViolation::IllegalReinsertion { round, index } => {
                write!(f, "illegal re-insertion of item {index} at round {round}")
            }
            TraceViolation::NonRemovableDeletion { round, index } => {
                write!(f, "non-removable deletion of item {index} at round {round}")
            }
            TraceViolation::InitialBufferNotEmpty => write!(f, "B_0 is not empty"),
            TraceViolation::UnknownIndex { round, index } => {
                write!(f, "round {round} references unknown item {index}")
            }
        }
    }
}

/// Checks every feasibility invariant; `Ok(())` means the trace is legal.
///
/// Violations are results, not errors: the first offending round (smallest
/// round index, checks ordered as listed in `TraceViolation`) is reported.
pub fn validate_trace(instance: &Instance, trace: &BufferTrace) -> Result<(), TraceViolation> {
    let n = instance.len();
    if trace.rounds.len() != n + 1 {
        return Err(TraceViolation::RoundCountMismatch {
            expected: n + 1,
            actual: trace.rounds.len(),
        });
    }
    if !trace.rounds[0].is_empty() {
        return Err(TraceViolation::InitialBufferNotEmpty);
    }
    let mut ever_removed = vec![false; n + 1];
    for i in 1..=n {
        let prev = &trace.rounds[i - 1];
        let cur = &trace.rounds[i];
        for &idx in cur.iter() {
            if idx == 0 || idx as usize > n {
                return Err(TraceViolation::UnknownIndex { round: i, index: idx });
            }
            let in_prev = prev.binary_search(&idx).is_ok();
            if ever_removed[idx as usize] && !in_prev {
                return Err(TraceViolation::IllegalReinsertion { round: i, index: idx });
            }
            if !in_prev && idx as usize != i {
                return Err(TraceViolation::IllegalInsertion { round: i, index: idx });
            }
        }
        for &idx in prev.iter() {
            if cur.binary_search(&idx).is_err() {
                if instance.removability == Removability::NonRemovable {
                    return Err(TraceViolation::NonRemovableDeletion { round: i, index: idx });
                }
                ever_removed[idx as usize] = true;
            }
        }
        // an item rejected on arrival is removed for re-insertion purposes
        if cur.binary_search(&(i as u32)).is_err() {
            ever_removed[i] = true;
        }
        let total: Rat = cur
            .iter()
            .fold(Rat::zero(), |acc, &idx| acc + &instance.items[idx as usize - 1].size);
        if total > trace.capacity_r {
            return Err(TraceViolation::CapacityBreach { round: i, total_size: format_rat(&total) });
        }
    }
    Ok(())
}

/// Builder used by the algorithm state machines.
#[derive(Debug)]
pub struct TraceBuilder {
    capacity_r: Rat,
    rounds: Vec<Box<[u32]>>,
}

impl TraceBuilder {
    pub fn new(capacity_r: Rat, n_hint: usize) -> Self {
        let mut rounds = Vec::with_capacity(n_hint + 1);
        rounds.push(Box::from([] as [u32; 0]));
        Self { capacity_r, rounds }
    }

    /// Records `B_i` from a sorted index list.
    pub fn push_round(&mut self, sorted_indices: Box<[u32]>) {
        debug_assert!(sorted_indices.windows(2).all(|w| w[0] < w[1]), "round must be sorted");
        self.rounds.push(sorted_indices);
    }

    pub fn finish(self) -> BufferTrace {
        BufferTrace { capacity_r: self.capacity_r, rounds: self.rounds }
    }
}
