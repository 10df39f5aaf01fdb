//! Exact subset-search oracles: offline optimum, final knapsack extraction,
//! and range-constrained subset search.
//!
//! All three use meet-in-the-middle enumeration over at most
//! [`DEFAULT_SEARCH_CAP`] items. Sums are computed over a common denominator
//! so the inner loops run on `i128` whenever the scaled numerators fit, with
//! a `BigInt` fallback that is bit-for-bit equivalent. Range endpoints may be
//! quadratic surds; they are converted once per query into exact integer
//! thresholds, so no comparison ever rounds.
//!
//! Tie-breaking is deterministic everywhere: maximum value, then minimum
//! total size, then lexicographically smallest sorted arrival-index set.

use crate::exact::{Rat, Surd};
use crate::model::Item;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::cmp::Ordering;

/// Hard cap on oracle instance size; beyond it the caller must shrink the
/// instance (the oracles never approximate).
pub const DEFAULT_SEARCH_CAP: usize = 24;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("search cap exceeded: {items} items over cap {cap}")]
pub struct SearchCapExceeded {
    pub items: usize,
    pub cap: usize,
}

/// A chosen subset with its exact totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingResult {
    /// Sorted arrival indices of the chosen items.
    pub subset: Vec<u32>,
    pub total_size: Rat,
    pub total_value: Rat,
}

impl PackingResult {
    fn from_indices(items: &[Item], mut subset: Vec<u32>) -> Self {
        subset.sort_unstable();
        let mut total_size = Rat::zero();
        let mut total_value = Rat::zero();
        for &idx in &subset {
            let item = items.iter().find(|e| e.arrival_index == idx).expect("index in slice");
            total_size += &item.size;
            total_value += &item.value;
        }
        Self { subset, total_size, total_value }
    }
}

/// Maximum-value subset of `items` with total size ≤ `capacity`.
pub fn offline_optimum(items: &[Item], capacity: &Rat) -> Result<PackingResult, SearchCapExceeded> {
    offline_optimum_with_cap(items, capacity, DEFAULT_SEARCH_CAP)
}

pub fn offline_optimum_with_cap(
    items: &[Item],
    capacity: &Rat,
    cap: usize,
) -> Result<PackingResult, SearchCapExceeded> {
    assert!(!capacity.is_negative(), "capacity must be non-negative");
    if items.len() > cap {
        return Err(SearchCapExceeded { items: items.len(), cap });
    }
    debug_assert!(items.windows(2).all(|w| w[0].arrival_index < w[1].arrival_index));
    let scale = SizeScale::for_items(items);
    let choice = match &scale.kind {
        ScaleKind::Small(sizes, values) => {
            let cap_int = floor_rat_times(capacity, &scale.size_lcm);
            let cap_int: i128 = match int_to_i128(&cap_int) {
                Some(c) => c,
                None => i128::MAX, // capacity beyond any reachable sum
            };
            knapsack_mitm(sizes, values, cap_int)
        }
        ScaleKind::Big(sizes, values) => {
            let cap_int = floor_rat_times(capacity, &scale.size_lcm);
            knapsack_mitm(sizes, values, cap_int)
        }
    };
    Ok(PackingResult::from_indices(items, choice.iter().map(|&p| items[p].arrival_index).collect()))
}

/// Identical contract to [`offline_optimum`], restricted to a buffer; this is
/// the final knapsack-extraction step of every algorithm run.
pub fn best_packable_subset(
    buffer: &[Item],
    capacity: &Rat,
) -> Result<PackingResult, SearchCapExceeded> {
    offline_optimum(buffer, capacity)
}

pub fn best_packable_subset_with_cap(
    buffer: &[Item],
    capacity: &Rat,
    cap: usize,
) -> Result<PackingResult, SearchCapExceeded> {
    offline_optimum_with_cap(buffer, capacity, cap)
}

/// Some subset `B'` of `buffer` with `lo ≤ s(B') ≤ hi`, if one exists.
///
/// Deterministic: among witnesses, smallest total size wins, then the
/// lexicographically smallest index set. Endpoints may be irrational.
pub fn find_subset_in_range(
    buffer: &[Item],
    lo: &Surd,
    hi: &Surd,
) -> Result<Option<PackingResult>, SearchCapExceeded> {
    find_subset_in_range_with_cap(buffer, lo, hi, DEFAULT_SEARCH_CAP)
}

pub fn find_subset_in_range_with_cap(
    buffer: &[Item],
    lo: &Surd,
    hi: &Surd,
    cap: usize,
) -> Result<Option<PackingResult>, SearchCapExceeded> {
    if buffer.len() > cap {
        return Err(SearchCapExceeded { items: buffer.len(), cap });
    }
    debug_assert!(buffer.windows(2).all(|w| w[0].arrival_index < w[1].arrival_index));
    let scale = SizeScale::for_items(buffer);
    // inclusive integer thresholds: sum/L in [lo, hi]  <=>  sum in [ceil(lo*L), floor(hi*L)]
    let lo_int = lo.ceil_times(&scale.size_lcm);
    let hi_int = hi.floor_times(&scale.size_lcm);
    let choice = match &scale.kind {
        ScaleKind::Small(sizes, _) => {
            let lo_i = int_to_i128(&lo_int);
            let hi_i = int_to_i128(&hi_int);
            match (lo_i, hi_i) {
                (Some(l), Some(h)) => range_mitm(sizes, l, h),
                // thresholds beyond i128 cannot bracket any reachable i128 sum
                (None, _) if lo_int.is_positive() => None,
                (_, None) if hi_int.is_negative() => None,
                _ => {
                    let big: Vec<BigInt> = sizes.iter().map(|&s| BigInt::from(s)).collect();
                    range_mitm(&big, lo_int, hi_int)
                }
            }
        }
        ScaleKind::Big(sizes, _) => range_mitm(sizes, lo_int, hi_int),
    };
    Ok(choice.map(|positions| {
        PackingResult::from_indices(
            buffer,
            positions.iter().map(|&p| buffer[p].arrival_index).collect(),
        )
    }))
}

// ---------------------------------------------------------------------------
// scaled representation
// ---------------------------------------------------------------------------

struct SizeScale {
    size_lcm: BigInt,
    kind: ScaleKind,
}

enum ScaleKind {
    /// scaled sizes and values fit comfortably in i128 sums
    Small(Vec<i128>, Vec<i128>),
    Big(Vec<BigInt>, Vec<BigInt>),
}

fn int_to_i128(n: &BigInt) -> Option<i128> {
    i128::try_from(n).ok()
}

fn floor_rat_times(r: &Rat, scale: &BigInt) -> BigInt {
    (r.numer() * scale).div_floor(r.denom())
}

impl SizeScale {
    fn for_items(items: &[Item]) -> Self {
        let mut size_lcm = BigInt::one();
        let mut value_lcm = BigInt::one();
        for item in items {
            size_lcm = size_lcm.lcm(item.size.denom());
            value_lcm = value_lcm.lcm(item.value.denom());
        }
        let scaled_sizes: Vec<BigInt> =
            items.iter().map(|e| e.size.numer() * (&size_lcm / e.size.denom())).collect();
        let scaled_values: Vec<BigInt> =
            items.iter().map(|e| e.value.numer() * (&value_lcm / e.value.denom())).collect();
        let fits = |v: &[BigInt]| v.iter().all(|x| x.bits() <= 100);
        // sums of <= 24 terms stay below 2^105, safely inside i128
        if size_lcm.bits() <= 100 && fits(&scaled_sizes) && fits(&scaled_values) {
            let sizes = scaled_sizes.iter().map(|x| int_to_i128(x).unwrap()).collect();
            let values = scaled_values.iter().map(|x| int_to_i128(x).unwrap()).collect();
            SizeScale { size_lcm, kind: ScaleKind::Small(sizes, values) }
        } else {
            SizeScale { size_lcm, kind: ScaleKind::Big(scaled_sizes, scaled_values) }
        }
    }
}

// ---------------------------------------------------------------------------
// generic meet-in-the-middle core
// ---------------------------------------------------------------------------

trait Scalar: Clone + Ord {
    fn zero() -> Self;
    fn add_ref(&self, other: &Self) -> Self;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
}

/// All subset sums of one half; `mask` indexes into the half's positions.
fn enumerate_half<T: Scalar>(weights: &[T]) -> Vec<(T, u32)> {
    let mut out = Vec::with_capacity(1 << weights.len());
    out.push((T::zero(), 0u32));
    for (i, w) in weights.iter().enumerate() {
        for j in 0..(1usize << i) {
            let s = out[j].0.add_ref(w);
            out.push((s, out[j].1 | (1 << i)));
        }
    }
    out
}

fn enumerate_half_with_values<T: Scalar>(sizes: &[T], values: &[T]) -> Vec<(T, T, u32)> {
    let mut out = Vec::with_capacity(1 << sizes.len());
    out.push((T::zero(), T::zero(), 0u32));
    for i in 0..sizes.len() {
        for j in 0..(1usize << i) {
            let s = out[j].0.add_ref(&sizes[i]);
            let v = out[j].1.add_ref(&values[i]);
            out.push((s, v, out[j].2 | (1 << i)));
        }
    }
    out
}

/// Lexicographic order on the ascending index sequences encoded by two masks.
/// A strict prefix sorts before its extensions.
fn lex_cmp_masks(mut a: u32, mut b: u32) -> Ordering {
    loop {
        if a == b {
            return Ordering::Equal;
        }
        if a == 0 {
            return Ordering::Less;
        }
        if b == 0 {
            return Ordering::Greater;
        }
        let ta = a.trailing_zeros();
        let tb = b.trailing_zeros();
        match ta.cmp(&tb) {
            Ordering::Equal => {
                a &= a - 1;
                b &= b - 1;
            }
            other => return other,
        }
    }
}

/// Lexicographic order of combined (low-half ++ high-half) index sequences.
fn lex_cmp_combined(a: (u32, u32), b: (u32, u32)) -> Ordering {
    let seq = |(lo, hi): (u32, u32)| {
        let mut v = Vec::with_capacity((lo.count_ones() + hi.count_ones()) as usize);
        let mut m = lo;
        while m != 0 {
            v.push(m.trailing_zeros());
            m &= m - 1;
        }
        let mut m = hi;
        while m != 0 {
            v.push(100 + m.trailing_zeros());
            m &= m - 1;
        }
        v
    };
    seq(a).cmp(&seq(b))
}

fn masks_to_positions(a_mask: u32, b_mask: u32, split: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = a_mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    let mut m = b_mask;
    while m != 0 {
        out.push(split + m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Exact 0/1 knapsack over scaled integers.
/// Returns positions (into the item slice) of the winning subset.
fn knapsack_mitm<T: Scalar>(sizes: &[T], values: &[T], capacity: T) -> Vec<usize> {
    if capacity < T::zero() {
        return Vec::new();
    }
    let split = sizes.len() / 2;
    let a_half = enumerate_half_with_values(&sizes[..split], &values[..split]);
    let mut b_half = enumerate_half_with_values(&sizes[split..], &values[split..]);
    b_half.sort_unstable_by(|x, y| x.0.cmp(&y.0));

    // prefix-best over b_half by (value desc, size asc, lex asc)
    let mut best_upto: Vec<usize> = Vec::with_capacity(b_half.len());
    let mut best = 0usize;
    for (i, entry) in b_half.iter().enumerate() {
        if i > 0 {
            let cur = &b_half[best];
            let better = match entry.1.cmp(&cur.1) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => match entry.0.cmp(&cur.0) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => lex_cmp_masks(entry.2, cur.2) == Ordering::Less,
                },
            };
            if better {
                best = i;
            }
        }
        best_upto.push(best);
    }

    let mut winner: Option<(T, T, u32, u32)> = None; // (value, size, a_mask, b_mask)
    for (a_size, a_value, a_mask) in &a_half {
        if *a_size > capacity {
            continue;
        }
        // remaining capacity is capacity - a_size; largest b size allowed
        let mut lo = 0usize;
        let mut hi = b_half.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if b_half[mid].0.add_ref(a_size) <= capacity {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if lo == 0 {
            continue; // even the empty b subset... (sum 0 always fits; lo>=1 always)
        }
        let b = &b_half[best_upto[lo - 1]];
        let cand_value = a_value.add_ref(&b.1);
        let cand_size = a_size.add_ref(&b.0);
        let cand = (cand_value, cand_size, *a_mask, b.2);
        let take = match &winner {
            None => true,
            Some(w) => match cand.0.cmp(&w.0) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => match cand.1.cmp(&w.1) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        lex_cmp_combined((cand.2, cand.3), (w.2, w.3)) == Ordering::Less
                    }
                },
            },
        };
        if take {
            winner = Some(cand);
        }
    }
    match winner {
        Some((_, _, a_mask, b_mask)) => masks_to_positions(a_mask, b_mask, split),
        None => Vec::new(),
    }
}

/// Smallest-size subset with scaled sum in `[lo, hi]` (inclusive), lex-min on
/// ties; `None` when no subset qualifies.
fn range_mitm<T: Scalar>(sizes: &[T], lo: T, hi: T) -> Option<Vec<usize>> {
    if hi < lo {
        return None;
    }
    let split = sizes.len() / 2;
    let a_half = enumerate_half(&sizes[..split]);
    let mut b_half = enumerate_half(&sizes[split..]);
    b_half.sort_unstable_by(|x, y| x.0.cmp(&y.0).then_with(|| lex_cmp_masks(x.1, y.1)));

    let mut winner: Option<(T, u32, u32)> = None; // (total, a_mask, b_mask)
    for (a_size, a_mask) in &a_half {
        // first b with a_size + b_size >= lo
        let mut l = 0usize;
        let mut r = b_half.len();
        while l < r {
            let mid = (l + r) / 2;
            if b_half[mid].0.add_ref(a_size) < lo {
                l = mid + 1;
            } else {
                r = mid;
            }
        }
        if l == b_half.len() {
            continue;
        }
        let b = &b_half[l];
        let total = a_size.add_ref(&b.0);
        if total > hi {
            continue;
        }
        // all b entries of this exact size share it; the sort already put the
        // lex-min mask first within the equal-size run
        let cand = (total, *a_mask, b.1);
        let take = match &winner {
            None => true,
            Some(w) => match cand.0.cmp(&w.0) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => lex_cmp_combined((cand.1, cand.2), (w.1, w.2)) == Ordering::Less,
            },
        };
        if take {
            winner = Some(cand);
        }
    }
    winner.map(|(_, a_mask, b_mask)| masks_to_positions(a_mask, b_mask, split))
}
