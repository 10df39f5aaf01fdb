//! The size-class algorithms for the proportional & removable variant.
//!
//! Four regimes, one state machine each. Every round first looks for a
//! buffer subset whose size lands in the winning window (`[r, 1]`, or
//! `[R/2, 1]` for the last regime); once such a witness is held it is kept
//! verbatim to the end. Otherwise the round rebuilds the buffer from the
//! current candidates according to the regime's medium-item case analysis.
//!
//! Thresholds are quadratic surds and all class membership tests are exact
//! sign tests; boundary strictness follows the regime figures verbatim.

use crate::exact::{golden_threshold, rat, rat_int, sixteen_threshold, Rat, Surd};
use crate::model::Item;
use crate::oracle::find_subset_in_range;
use num::{One, Zero};
use std::cmp::Ordering;

/// Which of the four class machines is running.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ClassKind {
    /// `1 ≤ R ≤ 10/9`: small/medium/large with single-medium replacement.
    LowRange,
    /// `10/9 ≤ R ≤ (1+√2)/2` (or its clamp): two-space medium cover.
    MidRange,
    /// `2−√2/2 ≤ R ≤ 17−9√3` (or its clamp): four medium classes.
    SixteenRange,
    /// `2√3−2 ≤ R ≤ 3/2`: four medium classes, all cuts rational.
    Case3,
}

/// Buffer capacity and derived class boundaries for one run.
#[derive(Clone, Debug)]
pub struct RegimeParams {
    pub cap: Surd,
    pub win_lo: Surd,
    pub r: Surd,
    pub r_squared: Surd,
}

impl RegimeParams {
    /// Regime of `r² + r = R` (both low-range class algorithms).
    pub fn golden(cap_rational: &Rat) -> Self {
        let r = golden_threshold(cap_rational);
        // r² = R − r by the defining polynomial
        let r_squared = r.scale(&rat(-1, 1)).add_rat(cap_rational);
        Self { cap: Surd::from_rat(cap_rational.clone()), win_lo: r.clone(), r, r_squared }
    }

    /// The same regime clamped at `R = (1+√2)/2`, where `r = √2/2`.
    pub fn golden_clamped() -> Self {
        let r = Surd::new(rat_int(0), rat(1, 2), rat_int(2));
        Self {
            cap: Surd::new(rat(1, 2), rat(1, 2), rat_int(2)),
            win_lo: r.clone(),
            r,
            r_squared: Surd::from_rat(rat(1, 2)),
        }
    }

    /// Regime of `(8r−1)² = 16R+1` (the `2−√2/2 ≤ R ≤ 17−9√3` algorithm).
    pub fn sixteen(cap_rational: &Rat) -> Self {
        let r = sixteen_threshold(cap_rational);
        // r² = (R + r)/4 by the defining polynomial
        let r_squared = r.scale(&rat(1, 4)).add_rat(&(cap_rational * rat(1, 4)));
        Self { cap: Surd::from_rat(cap_rational.clone()), win_lo: r.clone(), r, r_squared }
    }

    /// The sixteen regime clamped at `R = 17−9√3`, where `r = √3−1`.
    pub fn sixteen_clamped() -> Self {
        let r = Surd::new(rat_int(-1), rat_int(1), rat_int(3));
        Self {
            cap: Surd::new(rat_int(17), rat_int(-9), rat_int(3)),
            win_lo: r.clone(),
            r,
            r_squared: Surd::new(rat_int(4), rat_int(-2), rat_int(3)),
        }
    }

    /// Rational-cut regime for `R ≤ 3/2`; the winning window starts at `R/2`.
    pub fn case3(cap_rational: &Rat) -> Self {
        let half = Surd::from_rat(cap_rational * rat(1, 2));
        Self {
            cap: Surd::from_rat(cap_rational.clone()),
            win_lo: half.clone(),
            r: half.clone(),
            r_squared: Surd::from_rat(cap_rational * cap_rational * rat(1, 4)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Small,
    M1,
    M2,
    M3,
    M4,
    Large,
}

impl Class {
    fn is_medium(self) -> bool {
        !matches!(self, Class::Small | Class::Large)
    }
}

/// `t cmp cut` conveniences; `cmp_rat` is `t cmp value`.
fn lt(t: &Rat, cut: &Surd) -> bool {
    cut.cmp_rat(t) == Ordering::Less
}
fn le(t: &Rat, cut: &Surd) -> bool {
    cut.cmp_rat(t) != Ordering::Greater
}

/// The shared machine for the four class algorithms.
pub(crate) struct ClassMachine {
    kind: ClassKind,
    params: RegimeParams,
    /// `R − r`, the second-bin budget of the sixteen-range machine.
    cap_minus_r: Surd,
    items: Vec<Item>,
    classes: Vec<Class>,
    buffer: Vec<usize>, // positions, ascending (= arrival order)
    locked: bool,
    round: Vec<u32>,
}

impl ClassMachine {
    pub fn new(kind: ClassKind, params: RegimeParams) -> Self {
        let cap_minus_r = if params.cap.is_rational() {
            params.r.scale(&rat(-1, 1)).add_rat(params.cap.rational_part())
        } else {
            // only the 17−9√3 clamp reaches here: R − r = 18 − 10√3
            Surd::new(rat_int(18), rat_int(-10), rat_int(3))
        };
        Self {
            kind,
            params,
            cap_minus_r,
            items: Vec::new(),
            classes: Vec::new(),
            buffer: Vec::new(),
            locked: false,
            round: Vec::new(),
        }
    }

    fn classify(&self, size: &Rat) -> Class {
        let p = &self.params;
        match self.kind {
            // small `s ≤ r²`, medium `r² < s < r`, large `r ≤ s`
            ClassKind::LowRange => {
                if le(size, &p.r_squared) {
                    Class::Small
                } else if lt(size, &p.r) {
                    Class::M1
                } else {
                    Class::Large
                }
            }
            // small `s ≤ 1−r`; M1 `(1−r, r/2]`, M2 `(r/2, r²)`, M3 `[r², r)`
            ClassKind::MidRange => {
                let one_minus_r = p.r.scale(&rat(-1, 1)).add_rat(&Rat::one());
                let half_r = p.r.scale(&rat(1, 2));
                if le(size, &one_minus_r) {
                    Class::Small
                } else if le(size, &half_r) {
                    Class::M1
                } else if lt(size, &p.r_squared) {
                    Class::M2
                } else if lt(size, &p.r) {
                    Class::M3
                } else {
                    Class::Large
                }
            }
            // small `s ≤ 1−r`; M1 `(1−r, 2r−1)`, M2 `[2r−1, 1/2)`,
            // M3 `[1/2, r²)`, M4 `[r², r)`
            ClassKind::SixteenRange => {
                let one_minus_r = p.r.scale(&rat(-1, 1)).add_rat(&Rat::one());
                let two_r_minus_1 = p.r.scale(&rat(2, 1)).add_rat(&rat(-1, 1));
                if le(size, &one_minus_r) {
                    Class::Small
                } else if lt(size, &two_r_minus_1) {
                    Class::M1
                } else if *size < rat(1, 2) {
                    Class::M2
                } else if lt(size, &p.r_squared) {
                    Class::M3
                } else if lt(size, &p.r) {
                    Class::M4
                } else {
                    Class::Large
                }
            }
            // small `s ≤ 1−R/2`; M1 `(1−R/2, R/4)`, M2 `[R/4, 1/2)`,
            // M3 `[1/2, R²/4)`, M4 `[R²/4, R/2)`; large `R/2 ≤ s`
            ClassKind::Case3 => {
                let cap = self.params.cap.rational_part();
                let half_cap = cap * rat(1, 2);
                if *size <= Rat::one() - &half_cap {
                    Class::Small
                } else if *size < cap * rat(1, 4) {
                    Class::M1
                } else if *size < rat(1, 2) {
                    Class::M2
                } else if lt(size, &p.r_squared) {
                    Class::M3
                } else if *size < half_cap {
                    Class::M4
                } else {
                    Class::Large
                }
            }
        }
    }

    fn size(&self, pos: usize) -> &Rat {
        &self.items[pos].size
    }

    fn sum(&self, positions: &[usize]) -> Rat {
        positions.iter().fold(Rat::zero(), |acc, &p| acc + self.size(p))
    }

    fn items_at(&self, positions: &[usize]) -> Vec<Item> {
        positions.iter().map(|&p| self.items[p].clone()).collect()
    }

    /// Smallest-size position (earliest arrival on ties) matching a filter.
    fn argmin_size(&self, positions: &[usize], pred: impl Fn(usize) -> bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &p in positions {
            if !pred(p) {
                continue;
            }
            best = match best {
                None => Some(p),
                Some(b) if self.size(p) < self.size(b) => Some(p),
                keep => keep,
            };
        }
        best
    }

    fn set_buffer(&mut self, mut positions: Vec<usize>) {
        positions.sort_unstable();
        debug_assert!(
            self.params.cap.ge_rat(&self.sum(&positions)),
            "class machine exceeded its buffer capacity"
        );
        self.buffer = positions;
        self.round = self.buffer.iter().map(|&p| p as u32 + 1).collect();
    }

    /// Incumbent-first winning check; true when the round is settled.
    fn try_witness(&mut self, cands: &[usize]) -> bool {
        if self.locked {
            return true; // incumbent witness still qualifies; kept verbatim
        }
        let cand_items = self.items_at(cands);
        let witness =
            find_subset_in_range(&cand_items, &self.params.win_lo, &Surd::from_rat(Rat::one()))
                .expect("class machines stay under the search cap");
        if let Some(found) = witness {
            let positions =
                found.subset.iter().map(|&idx| idx as usize - 1).collect::<Vec<_>>();
            self.locked = true;
            self.set_buffer(positions);
            true
        } else {
            false
        }
    }

    pub fn step(&mut self, item: &Item) {
        let pos = self.items.len();
        self.classes.push(self.classify(&item.size));
        self.items.push(item.clone());
        let mut cands = self.buffer.clone();
        cands.push(pos);
        if self.try_witness(&cands) {
            return;
        }
        match self.kind {
            ClassKind::LowRange => self.step_low(pos, &cands),
            ClassKind::MidRange => self.step_mid(&cands),
            ClassKind::SixteenRange => self.step_sixteen(&cands),
            ClassKind::Case3 => self.step_case3(&cands),
        }
    }

    pub fn buffer(&self) -> &[u32] {
        &self.round
    }

    /// Single-medium replacement, else greedy-by-size rebuild.
    fn step_low(&mut self, pos: usize, cands: &[usize]) {
        let new_is_medium = self.classes[pos].is_medium();
        let buffered_mediums: Vec<usize> =
            self.buffer.iter().copied().filter(|&p| self.classes[p].is_medium()).collect();
        if new_is_medium && buffered_mediums.len() == 1 {
            let incumbent = buffered_mediums[0];
            if self.size(pos) < self.size(incumbent) {
                let next: Vec<usize> =
                    cands.iter().copied().filter(|&p| p != incumbent).collect();
                self.set_buffer(next);
            }
            // else keep the buffer as is (reject e_i)
        } else {
            let mut order = cands.to_vec();
            order.sort_by(|&a, &b| self.size(b).cmp(self.size(a)).then(a.cmp(&b)));
            let mut kept = Vec::new();
            let mut total = Rat::zero();
            for p in order {
                let with = &total + self.size(p);
                if self.params.cap.ge_rat(&with) {
                    kept.push(p);
                    total = with;
                }
            }
            self.set_buffer(kept);
        }
    }

    /// Two-space partition: minimum medium cover `T_i` plus all smalls, and a
    /// spare slot for the smallest `M1 ∪ M2` leftover.
    fn step_mid(&mut self, cands: &[usize]) {
        let mediums: Vec<usize> =
            cands.iter().copied().filter(|&p| self.classes[p].is_medium()).collect();
        let medium_total = self.sum(&mediums);
        if self.params.r_squared.le_rat(&medium_total) {
            let medium_items = self.items_at(&mediums);
            let hi = Surd::from_rat(&medium_total + Rat::one());
            let t_i = find_subset_in_range(&medium_items, &self.params.r_squared, &hi)
                .expect("under search cap")
                .expect("the whole medium set qualifies");
            let chosen: Vec<usize> = t_i.subset.iter().map(|&idx| idx as usize - 1).collect();
            let mut next: Vec<usize> = chosen.clone();
            next.extend(cands.iter().copied().filter(|&p| self.classes[p] == Class::Small));
            let leftover: Vec<usize> =
                mediums.iter().copied().filter(|&p| !chosen.contains(&p)).collect();
            if let Some(spare) = self.argmin_size(&leftover, |_| true) {
                if matches!(self.classes[spare], Class::M1 | Class::M2) {
                    next.push(spare);
                }
            }
            self.set_buffer(next);
        } else {
            self.set_buffer(cands.to_vec());
        }
    }

    /// Smallest medium first, then a second `M1` or the smallest `M4`, one
    /// optional extra medium under the two-bin budget, then all smalls.
    fn step_sixteen(&mut self, cands: &[usize]) {
        let of_class = |c: Class| -> Vec<usize> {
            cands.iter().copied().filter(|&p| self.classes[p] == c).collect()
        };
        let a1 = of_class(Class::M1);
        let a4 = of_class(Class::M4);
        let mut picked: Vec<usize> = Vec::new();

        if let Some(first) = self.argmin_size(cands, |p| {
            matches!(self.classes[p], Class::M1 | Class::M2 | Class::M3)
        }) {
            picked.push(first);
        }
        if a1.len() >= 2 {
            if let Some(b) = self.argmin_size(&a1, |p| !picked.contains(&p)) {
                let with = self.sum(&picked) + self.size(b);
                let below_min_a4 = match self.argmin_size(&a4, |_| true) {
                    Some(m) => with <= *self.size(m),
                    None => true, // min over an empty class is +∞
                };
                if below_min_a4 {
                    picked.push(b);
                }
            }
        }
        let m1_count = picked.iter().filter(|&&p| self.classes[p] == Class::M1).count();
        if !a4.is_empty() && m1_count <= 1 {
            if let Some(a) = self.argmin_size(&a4, |p| !picked.contains(&p)) {
                picked.push(a);
            }
        }
        let m1_in: Vec<usize> =
            picked.iter().copied().filter(|&p| self.classes[p] == Class::M1).collect();
        let m4_in: Vec<usize> =
            picked.iter().copied().filter(|&p| self.classes[p] == Class::M4).collect();
        let extra_allowed = (m1_in.len() == 2 && self.cap_minus_r.ge_rat(&self.sum(&m1_in)))
            || (m4_in.len() == 1 && self.cap_minus_r.ge_rat(&self.sum(&m4_in)));
        if extra_allowed {
            if let Some(a) = self
                .argmin_size(cands, |p| self.classes[p].is_medium() && !picked.contains(&p))
            {
                let with = self.sum(&picked) + self.size(a);
                if self.params.cap.ge_rat(&with) {
                    picked.push(a);
                }
            }
        }
        picked.extend(cands.iter().copied().filter(|&p| self.classes[p] == Class::Small));
        self.set_buffer(picked);
    }

    /// The rational-cut machine: one or two smallest `M1`, smallest `M2`,
    /// conditional smallest `M3`, capped `M4`, then all smalls.
    fn step_case3(&mut self, cands: &[usize]) {
        let of_class = |c: Class| -> Vec<usize> {
            cands.iter().copied().filter(|&p| self.classes[p] == c).collect()
        };
        let (a1, a2, a3, a4) =
            (of_class(Class::M1), of_class(Class::M2), of_class(Class::M3), of_class(Class::M4));
        let mut picked: Vec<usize> = Vec::new();

        if let Some(a) = self.argmin_size(&a1, |_| true) {
            picked.push(a);
            if a1.len() >= 2 {
                if let Some(b) = self.argmin_size(&a1, |p| p != a) {
                    let pair = self.size(a) + self.size(b);
                    let ok = a2.is_empty()
                        || match self.argmin_size(&a4, |_| true) {
                            Some(m) => pair <= *self.size(m),
                            None => true,
                        };
                    if ok {
                        picked.push(b);
                    }
                }
            }
        }
        if let Some(a) = self.argmin_size(&a2, |_| true) {
            picked.push(a);
        }
        if !a3.is_empty() && ((a1.is_empty() && a2.is_empty()) || a4.is_empty()) {
            if let Some(a) = self.argmin_size(&a3, |_| true) {
                picked.push(a);
            }
        }
        let m12_count = picked
            .iter()
            .filter(|&&p| matches!(self.classes[p], Class::M1 | Class::M2))
            .count();
        if !a4.is_empty() && m12_count <= 2 {
            if let Some(a) = self.argmin_size(&a4, |_| true) {
                picked.push(a);
            }
        }
        picked.extend(cands.iter().copied().filter(|&p| self.classes[p] == Class::Small));
        self.set_buffer(picked);
    }
}

#[cfg(test)]
mod tests {
    use super::super::{run_algorithm, AlgorithmId};
    use super::*;
    use crate::model::Instance;
    use crate::model::Removability::Removable;
    use crate::oracle::best_packable_subset;
    use crate::trace::{validate_trace, BufferTrace};

    fn prop(sizes: Vec<Rat>, cap: Rat) -> Instance {
        Instance::proportional(sizes, cap, Removable).unwrap()
    }

    fn alg_value(instance: &Instance, trace: &BufferTrace) -> Rat {
        let buf: Vec<_> = trace
            .final_buffer()
            .iter()
            .map(|&i| instance.items[i as usize - 1].clone())
            .collect();
        best_packable_subset(&buf, &rat_int(1)).unwrap().total_value
    }

    #[test]
    fn small_r_pairs_two_halves_into_witness() {
        // R = 1: two items of 0.5 combine into s = 1 ∈ [r, 1]
        let inst = prop(vec![rat(1, 2), rat(1, 2)], rat_int(1));
        let trace = run_algorithm(AlgorithmId::Alg5, &inst).unwrap();
        assert_eq!(trace.rounds[2].as_ref(), &[1, 2]);
        assert_eq!(alg_value(&inst, &trace), rat_int(1));
        assert_eq!(validate_trace(&inst, &trace), Ok(()));
    }

    #[test]
    fn small_r_large_item_is_a_witness() {
        // 0.7 ≥ r at R = 1 (0.7² + 0.7 = 1.19 ≥ 1)
        let inst = prop(vec![rat(7, 10)], rat_int(1));
        let trace = run_algorithm(AlgorithmId::Alg5, &inst).unwrap();
        assert_eq!(alg_value(&inst, &trace), rat(7, 10));
    }

    #[test]
    fn small_r_medium_replacement_takes_strictly_smaller() {
        // R = 1, two mediums that cannot combine: sizes 0.55, 0.5
        let inst = prop(vec![rat(11, 20), rat(1, 2)], rat_int(1));
        let trace = run_algorithm(AlgorithmId::Alg5, &inst).unwrap();
        assert_eq!(trace.rounds[1].as_ref(), &[1]);
        assert_eq!(trace.rounds[2].as_ref(), &[2]); // smaller medium replaces
        // equal sizes keep the incumbent
        let inst2 = prop(vec![rat(11, 20), rat(11, 20)], rat_int(1));
        let trace2 = run_algorithm(AlgorithmId::Alg5, &inst2).unwrap();
        assert_eq!(trace2.rounds[2].as_ref(), &[1]);
        assert_eq!(validate_trace(&inst2, &trace2), Ok(()));
    }

    #[test]
    fn mid_r_single_m3_item_becomes_first_space() {
        // R = 1.15: r ≈ 0.6832, r² ≈ 0.4668; item 0.47 is M3
        let inst = prop(vec![rat(47, 100)], rat(23, 20));
        let trace = run_algorithm(AlgorithmId::Alg6, &inst).unwrap();
        assert_eq!(trace.rounds[1].as_ref(), &[1]);
        assert_eq!(alg_value(&inst, &trace), rat(47, 100));
    }

    #[test]
    fn mid_r_keeps_leftover_m1_in_second_space() {
        // R = 1.15: 0.33 ∈ M1, 0.68 ∈ M3; no witness (1.01 > 1);
        // T_i = {0.68}, leftover 0.33 ∈ M1 kept in the spare slot
        let inst = prop(vec![rat(33, 100), rat(68, 100)], rat(23, 20));
        let trace = run_algorithm(AlgorithmId::Alg6, &inst).unwrap();
        assert_eq!(trace.rounds[2].as_ref(), &[1, 2]);
        assert_eq!(validate_trace(&inst, &trace), Ok(()));
    }

    #[test]
    fn mid_r_witness_kept_verbatim_after_lock() {
        let cap = rat(23, 20);
        let params = RegimeParams::golden(&cap);
        // 0.45 + 0.25 = 0.70 ∈ [r, 1] at round 2
        let inst = prop(vec![rat(45, 100), rat(25, 100), rat(9, 10)], cap.clone());
        let trace = run_algorithm(AlgorithmId::Alg6, &inst).unwrap();
        let s2 = rat(45, 100) + rat(25, 100);
        assert!(params.r.le_rat(&s2));
        assert_eq!(trace.rounds[2].as_ref(), &[1, 2]);
        assert_eq!(trace.rounds[3].as_ref(), &[1, 2]);
    }

    #[test]
    fn case2_large_item_short_circuits() {
        // R = 1.35, r ≈ 0.71924: the first item ~0.72 is large
        let inst = prop(vec![rat(72, 100), rat(285, 1000)], rat(27, 20));
        let trace = run_algorithm(AlgorithmId::Alg7, &inst).unwrap();
        assert_eq!(trace.rounds[1].as_ref(), &[1]);
        assert_eq!(trace.rounds[2].as_ref(), &[1]);
        let params = RegimeParams::sixteen(&rat(27, 20));
        assert!(params.r.le_rat(&alg_value(&inst, &trace)));
    }

    #[test]
    fn case2_single_m4_item_is_kept() {
        // R = 1.35: r² ≈ 0.51731 ≤ 0.6 < r ≈ 0.71924, so 0.6 ∈ M4
        let inst = prop(vec![rat(3, 5)], rat(27, 20));
        let params = RegimeParams::sixteen(&rat(27, 20));
        assert!(params.r_squared.le_rat(&rat(3, 5)) && !params.r.le_rat(&rat(3, 5)));
        let trace = run_algorithm(AlgorithmId::Alg7, &inst).unwrap();
        assert_eq!(alg_value(&inst, &trace), rat(3, 5));
    }

    #[test]
    fn case3_large_item_short_circuits() {
        // R = 1.5: 0.75 ≥ R/2
        let inst = prop(vec![rat(3, 4), rat(1, 4)], rat(3, 2));
        let trace = run_algorithm(AlgorithmId::Alg8, &inst).unwrap();
        assert!(alg_value(&inst, &trace) >= rat(3, 4));
    }

    #[test]
    fn case3_two_m2_items_pair_into_window() {
        // R = 1.5: 0.4 and 0.45 are both M2 (R/4 = 0.375 ≤ s < 0.5);
        // the pair has size 0.85 ∈ [0.75, 1]
        let inst = prop(vec![rat(2, 5), rat(9, 20)], rat(3, 2));
        let trace = run_algorithm(AlgorithmId::Alg8, &inst).unwrap();
        assert_eq!(trace.rounds[2].as_ref(), &[1, 2]);
        assert_eq!(alg_value(&inst, &trace), rat(17, 20));
    }

    #[test]
    fn case3_single_m3_kept_when_no_competition() {
        // R = 1.5: 0.55 ∈ M3 ([0.5, 0.5625)); A1∪A2 and A4 empty
        let inst = prop(vec![rat(11, 20)], rat(3, 2));
        let trace = run_algorithm(AlgorithmId::Alg8, &inst).unwrap();
        assert_eq!(alg_value(&inst, &trace), rat(11, 20));
    }

    #[test]
    fn clamped_params_match_closed_forms() {
        // r = √2/2 at the golden clamp: r² = 1/2
        let p = RegimeParams::golden_clamped();
        assert_eq!(p.r_squared.cmp_rat(&rat(1, 2)), Ordering::Equal);
        assert_eq!(p.r.cmp_rat(&rat(7071, 10000)), Ordering::Less);
        assert_eq!(p.r.cmp_rat(&rat(7072, 10000)), Ordering::Greater);
        // r = √3−1 at the sixteen clamp: 1/r = (1+√3)/2
        let p = RegimeParams::sixteen_clamped();
        assert_eq!(p.r.cmp_rat(&rat(73205, 100000)), Ordering::Less);
        assert_eq!(p.r.cmp_rat(&rat(73206, 100000)), Ordering::Greater);
    }
}
