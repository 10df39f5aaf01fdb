//! The grouped-threshold algorithm for large buffers, its ε solver, and the
//! feasible-witness construction used to audit its guarantee.
//!
//! For buffer capacity `R`, let `m = ⌊(R−3)/2⌋` and let `ε` solve
//! `log_{1+ε}(1/ε) = m`. Items of size ≤ ε are "small" and are taken by
//! density; the rest are grouped by value into geometric bands
//! `(1+ε)^j ≤ v < (1+ε)^{j+1}`, and each active band keeps a size-greedy
//! selection of total size ≤ 1. The active band window has fixed width
//! `2m + 1`, so the buffer never exceeds `2m + 2 + ε ≤ R`.
//!
//! ε is transcendental; the solver returns a dyadic rational within `10⁻⁴⁰`
//! relative error, and the run uses that rational exactly everywhere, so
//! group membership and the small/medium split are exact, reproducible
//! decisions.

use super::AlgoError;
use crate::exact::{rat, Rat};
use crate::model::Item;
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Solves `(1+ε)^m = 1/ε` for `ε ∈ (0, 1]` by dyadic bisection.
///
/// The returned rational satisfies `|(1+ε)^m · ε − 1| ≤ 10⁻⁴⁰`, which is the
/// relative error of `(1+ε)^m` against `1/ε`.
pub fn solve_epsilon(m: u32) -> Result<Rat, AlgoError> {
    if m == 0 {
        return Err(AlgoError::InvalidM);
    }
    // sign of f(eps) = (1+eps)^m * eps - 1 at a dyadic eps = p / 2^k,
    // and |f| <= tol test, both exact
    let tol_num = BigInt::one();
    let tol_den = BigInt::from(10u32).pow(40);
    let f_parts = |p: &BigInt, k: u32| -> (BigInt, BigInt) {
        let two_k = BigInt::one() << k;
        let lhs = (&two_k + p).pow(m) * p;
        let rhs = BigInt::one() << (k as u64 * (m as u64 + 1));
        (lhs, rhs)
    };
    let mut k: u32 = 1;
    let mut lo = BigInt::zero(); // f(lo/2^k) < 0
    let mut hi = BigInt::one() << k; // eps = 1, where f > 0 for m >= 1
    for _ in 0..400 {
        let mid = (&lo + &hi) >> 1;
        let (lhs, rhs) = f_parts(&mid, k);
        // |lhs - rhs| / rhs <= tol ?
        let diff = if lhs >= rhs { &lhs - &rhs } else { &rhs - &lhs };
        if &diff * &tol_den <= &rhs * &tol_num {
            return Ok(Rat::new(mid, BigInt::one() << k));
        }
        if lhs < rhs {
            lo = mid;
        } else {
            hi = mid;
        }
        // refine the grid: double the denominator each step
        lo <<= 1;
        hi <<= 1;
        k += 1;
    }
    unreachable!("epsilon bisection did not converge in 400 steps");
}

/// `m`, the solved ε, and the derived grouping operations for one capacity.
#[derive(Clone, Debug)]
pub struct GroupingParams {
    pub m: u32,
    pub eps: Rat,
    one_plus_eps: Rat,
}

impl GroupingParams {
    pub fn new(m: u32) -> Result<Self, AlgoError> {
        let eps = solve_epsilon(m)?;
        let one_plus_eps = &eps + Rat::one();
        Ok(Self { m, eps, one_plus_eps })
    }

    /// `m = ⌊(R−3)/2⌋`; fails when the capacity leaves no group budget.
    pub fn for_capacity(cap: &Rat) -> Result<Self, AlgoError> {
        let m_rat = (cap - rat(3, 1)) / rat(2, 1);
        let m_floor = m_rat.floor();
        if m_floor < Rat::one() {
            return Err(AlgoError::RTooSmall { r: crate::exact::format_rat(cap) });
        }
        let m: u32 = m_floor
            .numer()
            .try_into()
            .map_err(|_| AlgoError::RTooSmall { r: crate::exact::format_rat(cap) })?;
        Self::new(m)
    }

    pub fn is_small(&self, size: &Rat) -> bool {
        *size <= self.eps
    }

    /// `(1+ε)^j`, exact.
    pub fn power(&self, j: i64) -> Rat {
        let base = if j >= 0 { self.one_plus_eps.clone() } else { self.one_plus_eps.recip() };
        let mut exp = j.unsigned_abs();
        let mut acc = Rat::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// The group index `j` with `(1+ε)^j ≤ v < (1+ε)^{j+1}`; requires `v > 0`.
    pub fn group_index(&self, v: &Rat) -> i64 {
        assert!(v.is_positive(), "group index needs a positive value");
        // float estimate, then exact adjustment
        let log2_v = (v.numer().bits() as f64) - (v.denom().bits() as f64);
        let eps_f = {
            let scaled = (self.eps.numer() << 30u32) / self.eps.denom();
            let s: i64 = (&scaled).try_into().unwrap_or(1 << 30);
            s as f64 / (1u64 << 30) as f64
        };
        let mut j = (log2_v * std::f64::consts::LN_2 / (1.0 + eps_f).ln()).round() as i64;
        while self.power(j + 1) <= *v {
            j += 1;
        }
        while self.power(j) > *v {
            j -= 1;
        }
        j
    }
}

/// Per-item classification for one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Small,
    /// value band of a medium item; `None` when the value is 0 (no band)
    Group(i64),
    Worthless,
}

fn classify(params: &GroupingParams, item: &Item) -> Slot {
    if params.is_small(&item.size) {
        Slot::Small
    } else if item.value.is_positive() {
        Slot::Group(params.group_index(&item.value))
    } else {
        Slot::Worthless
    }
}

/// The grouped-threshold state machine.
pub(crate) struct GroupedMachine {
    params: GroupingParams,
    items: Vec<Item>,
    slots: Vec<Slot>,
    densities: Vec<Rat>,
    buffer: Vec<usize>,
    round: Vec<u32>,
}

impl GroupedMachine {
    pub fn new(params: GroupingParams) -> Self {
        Self {
            params,
            items: Vec::new(),
            slots: Vec::new(),
            densities: Vec::new(),
            buffer: Vec::new(),
            round: Vec::new(),
        }
    }

    pub fn step(&mut self, item: &Item) {
        let pos = self.items.len();
        self.slots.push(classify(&self.params, item));
        self.densities.push(item.density());
        self.items.push(item.clone());
        let mut cands = self.buffer.clone();
        cands.push(pos);

        let two = rat(2, 1);
        let window = 2 * self.params.m as i64;
        let mut next: Vec<usize> = Vec::new();
        // small phase: density-greedy with one allowed overshoot past 2
        let mut smalls: Vec<usize> =
            cands.iter().copied().filter(|&p| self.slots[p] == Slot::Small).collect();
        smalls.sort_by(|&a, &b| self.densities[b].cmp(&self.densities[a]).then(a.cmp(&b)));
        let mut s_total = Rat::zero();
        for p in smalls {
            next.push(p);
            s_total += &self.items[p].size;
            if s_total > two {
                break;
            }
        }
        // medium phase: active band window anchored at the best value seen
        let best = cands
            .iter()
            .copied()
            .max_by(|&a, &b| {
                self.items[a]
                    .value
                    .cmp(&self.items[b].value)
                    .then(b.cmp(&a)) // earliest arrival wins ties
            })
            .expect("candidates are never empty");
        if self.items[best].value.is_positive() {
            let mu = self.params.group_index(&self.items[best].value);
            let nu = mu - window;
            for j in nu..=mu {
                let mut members: Vec<usize> = cands
                    .iter()
                    .copied()
                    .filter(|&p| self.slots[p] == Slot::Group(j))
                    .collect();
                members.sort_by(|&a, &b| {
                    self.items[a].size.cmp(&self.items[b].size).then(a.cmp(&b))
                });
                let mut g_total = Rat::zero();
                for p in members {
                    let with = &g_total + &self.items[p].size;
                    if with <= Rat::one() {
                        next.push(p);
                        g_total = with;
                    }
                }
            }
        }
        next.sort_unstable();
        self.buffer = next;
        self.round = self.buffer.iter().map(|&p| p as u32 + 1).collect();
    }

    pub fn buffer(&self) -> &[u32] {
        &self.round
    }
}

/// Rebuilds the feasible comparison solution used by the grouped-threshold
/// analysis from a final buffer and an offline optimum: common items, then
/// per-band count-matched smallest-size substitutes, then density-greedy
/// smalls under size 1.
pub fn build_feasible_witness(
    final_buffer: &[Item],
    opt_subset: &[Item],
    params: &GroupingParams,
) -> Vec<u32> {
    let mut b_star: Vec<&Item> = Vec::new();
    let in_opt =
        |idx: u32| -> bool { opt_subset.iter().any(|e| e.arrival_index == idx) };
    for item in final_buffer {
        if in_opt(item.arrival_index) {
            b_star.push(item);
        }
    }
    let chosen = |b_star: &Vec<&Item>, idx: u32| b_star.iter().any(|e| e.arrival_index == idx);

    // value bands present in the final buffer anchor the window
    let best_value = final_buffer
        .iter()
        .map(|e| &e.value)
        .max()
        .cloned()
        .unwrap_or_else(Rat::zero);
    if best_value.is_positive() {
        let mu = params.group_index(&best_value);
        let nu = mu - 2 * params.m as i64;
        for band in nu..=mu {
            let in_band = |e: &Item| {
                !params.is_small(&e.size)
                    && e.value.is_positive()
                    && params.group_index(&e.value) == band
            };
            let missing = opt_subset
                .iter()
                .filter(|e| in_band(e) && !chosen(&b_star, e.arrival_index))
                .count();
            let mut pool: Vec<&Item> = final_buffer
                .iter()
                .filter(|e| in_band(e) && !chosen(&b_star, e.arrival_index))
                .collect();
            pool.sort_by(|a, b| a.size.cmp(&b.size).then(a.arrival_index.cmp(&b.arrival_index)));
            for item in pool.into_iter().take(missing) {
                b_star.push(item);
            }
        }
    }

    // small phase: density-greedy under the knapsack budget
    let mut pool: Vec<&Item> = final_buffer
        .iter()
        .filter(|e| params.is_small(&e.size) && !chosen(&b_star, e.arrival_index))
        .collect();
    pool.sort_by(|a, b| {
        b.density().cmp(&a.density()).then(a.arrival_index.cmp(&b.arrival_index))
    });
    let mut total: Rat = b_star.iter().map(|e| e.size.clone()).sum();
    for item in pool {
        let with = &total + &item.size;
        if with <= Rat::one() {
            b_star.push(item);
            total = with;
        } else {
            break;
        }
    }

    let mut indices: Vec<u32> = b_star.iter().map(|e| e.arrival_index).collect();
    indices.sort_unstable();
    indices
}

#[cfg(test)]
mod tests {
    use super::super::{run_algorithm, AlgorithmId};
    use super::*;
    use crate::exact::{golden_threshold, pow10_inv, rat_int};
    use crate::model::Instance;
    use crate::model::Removability::Removable;
    use crate::oracle::best_packable_subset;
    use crate::trace::validate_trace;
    use std::cmp::Ordering;

    #[test]
    fn epsilon_m1_is_inverse_golden_ratio() {
        // 1 + eps = 1/eps  <=>  eps = (sqrt 5 - 1)/2
        let eps = solve_epsilon(1).unwrap();
        let phi_inv = golden_threshold(&rat_int(1));
        let delta = pow10_inv(30);
        assert!(phi_inv.cmp_rat(&(&eps + &delta)) == Ordering::Greater);
        assert!(phi_inv.cmp_rat(&(&eps - &delta)) == Ordering::Less);
    }

    #[test]
    fn epsilon_m2_matches_reference_digits() {
        // root of ε(1+ε)² = 1: ε ≈ 0.465571231876768 (cross-checked by an
        // independent bisection over Fractions)
        let eps = solve_epsilon(2).unwrap();
        assert!(eps > rat(465571231876, 10i64.pow(12)) && eps < rat(465571231877, 10i64.pow(12)));
        let residual = (&eps + Rat::one()).pow(2) * &eps - Rat::one();
        assert!(residual.abs() <= pow10_inv(40));
    }

    #[test]
    fn zero_m_is_rejected() {
        assert!(matches!(solve_epsilon(0), Err(AlgoError::InvalidM)));
    }

    #[test]
    fn group_index_brackets_value() {
        let params = GroupingParams::new(3).unwrap();
        for v in [rat(1, 7), rat(1, 1), rat(13, 2), rat(1000, 1), rat(1, 1000)] {
            let j = params.group_index(&v);
            assert!(params.power(j) <= v && v < params.power(j + 1), "v={v}");
        }
    }

    #[test]
    fn single_item_is_always_kept() {
        // R = 9 (m = 3): a lone valuable item survives every round
        let inst =
            Instance::general(vec![(rat(1, 2), rat(7, 1))], rat_int(9), Removable).unwrap();
        let trace = run_algorithm(AlgorithmId::Alg2, &inst).unwrap();
        assert_eq!(trace.rounds[1].as_ref(), &[1]);
        let buf: Vec<Item> = vec![inst.items[0].clone()];
        assert_eq!(best_packable_subset(&buf, &rat_int(1)).unwrap().total_value, rat(7, 1));
    }

    #[test]
    fn small_flood_stops_just_past_two() {
        // many equal smalls: the small space keeps ~2+eps worth, never more
        let params = GroupingParams::for_capacity(&rat_int(9)).unwrap();
        let half_eps = &params.eps / rat(2, 1);
        let count: BigInt = 6 * params.eps.recip().ceil().numer();
        let count: i64 = (&count).try_into().unwrap();
        let sizes: Vec<Rat> = (0..count).map(|_| half_eps.clone()).collect();
        let pairs: Vec<(Rat, Rat)> = sizes.iter().map(|s| (s.clone(), s.clone())).collect();
        let inst = Instance::general(pairs, rat_int(9), Removable).unwrap();
        let trace = run_algorithm(AlgorithmId::Alg2, &inst).unwrap();
        assert_eq!(validate_trace(&inst, &trace), Ok(()));
        let final_size: Rat = trace
            .final_buffer()
            .iter()
            .map(|&i| inst.items[i as usize - 1].size.clone())
            .sum();
        let two = rat(2, 1);
        assert!(final_size <= &two + &params.eps);
        assert!(final_size > &two - &params.eps);
    }

    #[test]
    fn same_band_items_respect_group_budget() {
        // two items of size 1 in one value band: only one can stay
        let params = GroupingParams::for_capacity(&rat_int(9)).unwrap();
        let inst = Instance::general(
            vec![(rat_int(1), rat(100, 1)), (rat_int(1), rat(101, 1))],
            rat_int(9),
            Removable,
        )
        .unwrap();
        assert_eq!(
            params.group_index(&rat(100, 1)),
            params.group_index(&rat(101, 1)),
            "test premise: both land in one band"
        );
        let trace = run_algorithm(AlgorithmId::Alg2, &inst).unwrap();
        // non-decreasing size scan with arrival tie-break keeps the first
        assert_eq!(trace.rounds[2].as_ref(), &[1]);
    }

    #[test]
    fn witness_equals_opt_when_buffer_holds_it() {
        let params = GroupingParams::for_capacity(&rat_int(9)).unwrap();
        let items = vec![
            Item { size: rat(1, 2), value: rat(5, 1), arrival_index: 1 },
            Item { size: rat(1, 3), value: rat(3, 1), arrival_index: 2 },
        ];
        let b_star = build_feasible_witness(&items, &items, &params);
        assert_eq!(b_star, vec![1, 2]);
    }

    #[test]
    fn witness_takes_smallest_substitutes_per_band() {
        let params = GroupingParams::new(3).unwrap();
        // buffer holds three same-band items; opt holds one different item of
        // that band: the witness picks the smallest-size substitute
        let band_anchor = rat(10, 1);
        let j = params.group_index(&band_anchor);
        let v = params.power(j) * rat(102, 100); // safely inside band j
        assert_eq!(params.group_index(&v), j);
        let buffer = vec![
            Item { size: rat(9, 10), value: v.clone(), arrival_index: 1 },
            Item { size: rat(1, 2), value: v.clone(), arrival_index: 2 },
            Item { size: rat(7, 10), value: v.clone(), arrival_index: 3 },
        ];
        let opt = vec![Item { size: rat(6, 10), value: v.clone(), arrival_index: 9 }];
        let b_star = build_feasible_witness(&buffer, &opt, &params);
        assert_eq!(b_star, vec![2]);
    }
}
