//! The ten adversary constructions.
//!
//! Every opponent is a single-use state machine: `next_item` sees the
//! algorithm's buffer after the previous round and either emits the next
//! `(size, value)` or stops. Where a construction references an irrational
//! threshold `r`, the emitted sizes use a rational stand-in within `10⁻¹²`
//! above it, rounded towards the side that preserves the construction's
//! class memberships; the paired "completion" items are derived from the
//! same stand-in so the packed optimum stays exactly 1.

use super::{largest_half_power, param_err, require, AdversaryConfig, AdversaryError, AdversaryKind};
use crate::exact::{golden_threshold, rat, Rat, Surd};
use crate::model::Item;
use num::{One, Signed, Zero};
use std::cmp::Ordering;

pub(super) trait Opponent {
    /// Next item, or `None` to stop. `buffer` is the algorithm's buffer after
    /// the last round (sorted arrival indices); `emitted` the items so far.
    fn next_item(&mut self, buffer: &[u32], emitted: &[Item]) -> Option<(Rat, Rat)>;

    /// Hard termination bound; exceeding it is a construction error.
    fn max_items(&self) -> usize;

    /// Exact optimum for a realized instance too large for the oracle.
    fn certified_opt(&self, _items: &[Item]) -> Option<Rat> {
        None
    }

    /// Exact final extraction for a buffer too large for the oracle.
    fn certified_extraction(&self, _buffer: &[Item]) -> Option<Rat> {
        None
    }
}

pub(super) fn build(config: &AdversaryConfig) -> Result<Box<dyn Opponent>, AdversaryError> {
    let kind = config.kind;
    let r = &config.r;
    let eps = &config.eps;
    require(eps.is_positive(), kind, "ε must be positive")?;
    require(*r >= Rat::one(), kind, "R must be at least 1")?;
    match kind {
        AdversaryKind::GenNonRem => {
            require(config.growth_c > Rat::one(), kind, "growth factor c must exceed 1")?;
            Ok(Box::new(GenNonRem { c: config.growth_c.clone(), done: false }))
        }
        AdversaryKind::PropNonRemSmall => {
            require(*r > Rat::one() && *r <= rat(3, 2), kind, "needs 1 < R ≤ 3/2")?;
            let inv = (r - Rat::one()).recip();
            let target = &inv - eps;
            // 1/(R−1+ε′) ≥ 1/(R−1) − ε, and the first item must stay ≤ 1
            let eps_prime = largest_half_power(|c| {
                let first = r - Rat::one() + c;
                (target.is_positive() == false || first.recip() >= target) && first <= Rat::one()
            })
            .ok_or_else(|| param_err(kind, "no ε′ satisfies the squeeze condition"))?;
            Ok(Box::new(TwoItemSqueeze {
                first: r - Rat::one() + &eps_prime,
                second: Rat::one(),
                sent: 0,
            }))
        }
        AdversaryKind::PropNonRemLarge => {
            require(*r > rat(3, 2), kind, "needs R > 3/2")?;
            // 2/(1+2ε′) ≥ 2 − ε
            let two = rat(2, 1);
            let target = &two - eps;
            let eps_prime = largest_half_power(|c| {
                &two / (Rat::one() + c * &two) >= target
            })
            .ok_or_else(|| param_err(kind, "no ε′ satisfies the halving condition"))?;
            let max_items = {
                let bound = (r * &two).ceil();
                let b: i64 = bound.numer().try_into().unwrap_or(i64::MAX);
                b as usize + 3
            };
            Ok(Box::new(HalvingSequence {
                eps_prime,
                k: 0,
                rejected_at: None,
                finished: false,
                max_items,
            }))
        }
        AdversaryKind::GenRemGeneral => {
            // 0 < ε̂ < min{2/(R(R+1)), ⌊R⌋+1−R, 1}
            let gap = Rat::one() + r.floor() - r; // ⌊R⌋+1−R ∈ (0, 1]
            let lim = rat(2, 1) / (r * (r + Rat::one()));
            let eps_hat = largest_half_power(|c| *c < gap && *c < lim && *c < Rat::one())
                .ok_or_else(|| param_err(kind, "no ε̂ below the overflow threshold"))?;
            let n_rat = (r + &eps_hat).ceil();
            let n: i64 = n_rat.numer().try_into().map_err(|_| param_err(kind, "R too large"))?;
            Ok(Box::new(DiscardProbe { n: n as usize, eps_hat, phase: ProbePhase::Feeding }))
        }
        AdversaryKind::GenRemSmall => {
            require(*r > Rat::one() && *r <= rat(3, 2), kind, "needs 1 < R ≤ 3/2")?;
            // 1/ε̂ integral and min{1/((R−1+ε̂)(1+ε̂)), (1−ε̂²)/(R−1)} ≥ 1/(R−1) − ε
            let inv = (r - Rat::one()).recip();
            let target = &inv - eps;
            let cond = |c: &Rat| {
                let left = ((r - Rat::one() + c) * (Rat::one() + c)).recip();
                let right = (Rat::one() - c * c) / (r - Rat::one());
                left >= target && right >= target
            };
            // largest 1/integer satisfying the condition
            let mut denom: i64 = 2;
            let eps_hat = loop {
                let c = rat(1, denom);
                if cond(&c) {
                    break c;
                }
                denom += 1;
                if denom > 1_000_000 {
                    return Err(param_err(kind, "no 1/integer ε̂ meets the ratio condition"));
                }
            };
            let m = eps_hat.recip();
            let m: i64 = m.numer().try_into().expect("integral by construction");
            let m = m as usize;
            Ok(Box::new(DripFeed {
                eps_hat,
                m,
                n: m.saturating_mul(m).saturating_mul(m),
                sent_smalls: 0,
                stopped: false,
            }))
        }
        AdversaryKind::GenRemMid => {
            require(*r >= rat(3, 2) && *r < rat(2, 1), kind, "needs 3/2 ≤ R < 2")?;
            // k > max{1/(2−R), 1/ε}
            let lim1 = (rat(2, 1) - r).recip();
            let lim2 = eps.recip();
            let lim = if lim1 > lim2 { lim1 } else { lim2 };
            let k: i64 = (lim.floor().numer() + 1u32).try_into().map_err(|_| {
                param_err(kind, "ε too small: the staircase would be gigantic")
            })?;
            Ok(Box::new(SinkingValues { k: k as usize, sent: 0, finished: false }))
        }
        AdversaryKind::PropRemI => {
            require(*r < rat(2, 1), kind, "needs 1 ≤ R < 2")?;
            let r_thresh = golden_threshold(r);
            let r_tilde = r_thresh.upper_rat(12);
            // ε′ ≤ εr³/(1−εr) ⇔ (ε′+εR)/(ε(R+1)+εε′) ≤ r, and ε′ < 2r − R,
            // and the second item stays inside (0, 1]
            let eps_prime = largest_half_power(|c| {
                let lhs = (c + eps * r) / (eps * (r + Rat::one()) + eps * c);
                let first_ok = r_thresh.cmp_rat(&lhs) != Ordering::Greater; // lhs ≤ r
                let half = (c + r) / rat(2, 1);
                let strict_ok = r_thresh.cmp_rat(&half) == Ordering::Less; // (ε′+R)/2 < r
                let second = r - &r_tilde + c;
                first_ok && strict_ok && second.is_positive() && second <= Rat::one()
            })
            .ok_or_else(|| param_err(kind, "no ε′ fits the squeeze inequalities"))?;
            Ok(Box::new(GoldenSqueeze {
                r_tilde: r_tilde.clone(),
                second: r - &r_tilde + &eps_prime,
                sent: 0,
            }))
        }
        AdversaryKind::PropRemII => {
            let lower = Surd::new(rat(2, 1), rat(-1, 2), rat(2, 1)); // 2−√2/2
            let upper = Surd::new(rat(17, 1), rat(-9, 1), rat(3, 1)); // 17−9√3
            require(
                lower.le_rat(r) && upper.cmp_rat(r) == Ordering::Less,
                kind,
                "needs 2−√2/2 ≤ R < 17−9√3",
            )?;
            let r_thresh = crate::exact::sixteen_threshold(r);
            let r_tilde = r_thresh.upper_rat(12);
            // sanity margins for the class memberships used by the tree
            let quarter_eps = eps / rat(4, 1);
            require(
                r_tilde <= Rat::one() && quarter_eps > rat(1, 1_000_000_000),
                kind,
                "ε too small for the 10⁻¹² stand-in",
            )?;
            Ok(Box::new(SixteenTree {
                r_tilde,
                cap: r.clone(),
                eps: eps.clone(),
                stage: TreeStage::FeedBase(0),
            }))
        }
        AdversaryKind::PropRemIII => {
            let lower = Surd::new(rat(-2, 1), rat(2, 1), rat(3, 1)); // 2√3−2
            require(lower.cmp_rat(r) == Ordering::Greater, kind, "needs R > 2√3−2")?;
            require(*r < rat(2, 1), kind, "needs R < 2")?;
            require(eps < &(rat(2, 1) * r - r * r), kind, "ε must keep (R²+ε)/4 below R/2")?;
            Ok(Box::new(RationalTree {
                cap: r.clone(),
                eps: eps.clone(),
                stage: TreeStage::FeedBase(0),
            }))
        }
        AdversaryKind::PropRemGeneral => {
            require(eps < &Rat::one(), kind, "needs ε < 1")?;
            let n_rat = (r * rat(2, 1)).ceil() + Rat::one();
            let n: i64 =
                n_rat.numer().try_into().map_err(|_| param_err(kind, "R too large"))?;
            Ok(Box::new(Staircase { n: n as usize, eps: eps.clone(), sent: 0, finished: false }))
        }
    }
}

// ---------------------------------------------------------------------------

/// `(1, c), (1, c²), …` until the algorithm rejects one.
struct GenNonRem {
    c: Rat,
    done: bool,
}

impl Opponent for GenNonRem {
    fn next_item(&mut self, buffer: &[u32], emitted: &[Item]) -> Option<(Rat, Rat)> {
        if self.done {
            return None;
        }
        if let Some(last) = emitted.last() {
            if !buffer.contains(&last.arrival_index) {
                self.done = true; // first rejection ends the escalation
                return None;
            }
        }
        let k = emitted.len() as i32 + 1;
        Some((Rat::one(), self.c.pow(k)))
    }

    fn max_items(&self) -> usize {
        // the buffer holds at most ⌊R⌋ unit items, so rejection comes long
        // before this; the certified oracle paths keep large R workable
        4096
    }

    fn certified_opt(&self, items: &[Item]) -> Option<Rat> {
        items.iter().map(|e| e.value.clone()).max()
    }

    fn certified_extraction(&self, buffer: &[Item]) -> Option<Rat> {
        buffer.iter().map(|e| e.value.clone()).max().or_else(|| Some(Rat::zero()))
    }
}

/// Two fixed proportional items; the second never fits next to the first.
struct TwoItemSqueeze {
    first: Rat,
    second: Rat,
    sent: usize,
}

impl Opponent for TwoItemSqueeze {
    fn next_item(&mut self, _buffer: &[u32], _emitted: &[Item]) -> Option<(Rat, Rat)> {
        self.sent += 1;
        match self.sent {
            1 => Some((self.first.clone(), self.first.clone())),
            2 => Some((self.second.clone(), self.second.clone())),
            _ => None,
        }
    }

    fn max_items(&self) -> usize {
        2
    }
}

/// `1/2 + ε′/k` until the first rejection, then the matching `1/2 − ε′/k`.
struct HalvingSequence {
    eps_prime: Rat,
    k: usize,
    rejected_at: Option<usize>,
    finished: bool,
    max_items: usize,
}

impl Opponent for HalvingSequence {
    fn next_item(&mut self, buffer: &[u32], emitted: &[Item]) -> Option<(Rat, Rat)> {
        if self.finished {
            return None;
        }
        if let Some(k) = self.rejected_at {
            self.finished = true;
            let s = rat(1, 2) - &self.eps_prime / rat(k as i64, 1);
            return Some((s.clone(), s));
        }
        if let Some(last) = emitted.last() {
            if !buffer.contains(&last.arrival_index) {
                self.rejected_at = Some(self.k);
                let k = self.k;
                self.finished = true;
                let s = rat(1, 2) - &self.eps_prime / rat(k as i64, 1);
                return Some((s.clone(), s));
            }
        }
        self.k += 1;
        let s = rat(1, 2) + &self.eps_prime / rat(self.k as i64, 1);
        Some((s.clone(), s))
    }

    fn max_items(&self) -> usize {
        self.max_items
    }
}

enum ProbePhase {
    Feeding,
    Done,
}

/// `(1,1), (1−iε̂², 1−i/n), …`; after the batch, one completion aimed at the
/// first discarded item.
struct DiscardProbe {
    n: usize,
    eps_hat: Rat,
    phase: ProbePhase,
}

impl Opponent for DiscardProbe {
    fn next_item(&mut self, buffer: &[u32], emitted: &[Item]) -> Option<(Rat, Rat)> {
        match self.phase {
            ProbePhase::Done => None,
            ProbePhase::Feeding => {
                let sent = emitted.len();
                if sent < self.n {
                    let i = sent as i64; // item #sent+1 carries index i = sent
                    if i == 0 {
                        return Some((Rat::one(), Rat::one()));
                    }
                    let size = Rat::one() - rat(i, 1) * &self.eps_hat * &self.eps_hat;
                    let value = Rat::one() - rat(i, self.n as i64);
                    return Some((size, value));
                }
                self.phase = ProbePhase::Done;
                // smallest discarded arrival index; its proof index is arrival−1
                let discarded = (1..=self.n as u32).find(|idx| !buffer.contains(idx))?;
                let i = discarded as i64 - 1;
                if i == 0 {
                    return None; // the unit item itself: its loss already costs the ratio
                }
                let size = rat(i, 1) * &self.eps_hat * &self.eps_hat;
                let value = rat(i + 1, self.n as i64);
                Some((size, value))
            }
        }
    }

    fn max_items(&self) -> usize {
        self.n + 1
    }
}

/// `(1,1)` then `(ε̂, iε̂³)` with rising density until the unit item is
/// evicted (or the full drip of `1/ε̂³` items runs dry).
struct DripFeed {
    eps_hat: Rat,
    m: usize,
    n: usize,
    sent_smalls: usize,
    stopped: bool,
}

impl Opponent for DripFeed {
    fn next_item(&mut self, buffer: &[u32], emitted: &[Item]) -> Option<(Rat, Rat)> {
        if self.stopped {
            return None;
        }
        if emitted.is_empty() {
            return Some((Rat::one(), Rat::one()));
        }
        if !buffer.contains(&1) {
            self.stopped = true; // the unit item is gone: case 1 of the proof
            return None;
        }
        if self.sent_smalls >= self.n {
            self.stopped = true; // case 2: it never let go
            return None;
        }
        self.sent_smalls += 1;
        let i = rat(self.sent_smalls as i64, 1);
        let e3 = &self.eps_hat * &self.eps_hat * &self.eps_hat;
        Some((self.eps_hat.clone(), i * e3))
    }

    fn max_items(&self) -> usize {
        1_000_000
    }

    fn certified_opt(&self, items: &[Item]) -> Option<Rat> {
        // the unit item alone, or the top-m smalls (m·ε̂ fills the knapsack
        // exactly); small values rise with arrival order
        let smalls = items.len().saturating_sub(1);
        let take = smalls.min(self.m);
        let mut best_smalls = Rat::zero();
        for idx in 0..take {
            best_smalls += &items[items.len() - 1 - idx].value;
        }
        Some(if best_smalls > Rat::one() { best_smalls } else { Rat::one() })
    }

    fn certified_extraction(&self, buffer: &[Item]) -> Option<Rat> {
        let unit = buffer.iter().any(|e| e.size == Rat::one());
        let mut small_values: Vec<&Rat> =
            buffer.iter().filter(|e| e.size != Rat::one()).map(|e| &e.value).collect();
        small_values.sort_by(|a, b| b.cmp(a));
        let total: Rat = small_values.into_iter().take(self.m).cloned().sum();
        Some(if unit && total < Rat::one() { Rat::one() } else { total })
    }
}

/// `(1 − i/(2k²), 1 − i/(2k))` for i = 1..k, then one completion pairing
/// with the single item the algorithm held on to.
struct SinkingValues {
    k: usize,
    sent: usize,
    finished: bool,
}

impl Opponent for SinkingValues {
    fn next_item(&mut self, buffer: &[u32], _emitted: &[Item]) -> Option<(Rat, Rat)> {
        if self.finished {
            return None;
        }
        if self.sent < self.k {
            self.sent += 1;
            let i = self.sent as i64;
            let k = self.k as i64;
            let size = Rat::one() - rat(i, 2 * k * k);
            let value = Rat::one() - rat(i, 2 * k);
            return Some((size, value));
        }
        self.finished = true;
        // pairwise the sizes overflow the buffer, so at most one item is held
        let held = buffer.first().copied()? as i64;
        if held == self.k as i64 {
            return None; // keeping the last item already costs 2 − 1/k
        }
        let k = self.k as i64;
        let size = rat(held + 1, 2 * k * k);
        let value = Rat::one() - rat(held, 2 * k);
        Some((size, value))
    }

    fn max_items(&self) -> usize {
        self.k + 1
    }

    fn certified_opt(&self, items: &[Item]) -> Option<Rat> {
        // singles: the first item has the top value; pairs: only the final
        // completion fits with a big item of arrival index > held
        let mut best = items.first().map(|e| e.value.clone())?;
        if items.len() == self.k + 1 {
            let completion = &items[self.k];
            // best partner: smallest arrival j with s_j + s_completion ≤ 1
            for big in &items[..self.k] {
                if &big.size + &completion.size <= Rat::one() {
                    let pair = &big.value + &completion.value;
                    if pair > best {
                        best = pair;
                    }
                    break; // values sink with arrival; the first fit is the best
                }
            }
        }
        Some(best)
    }
}

/// The `r, r²+ε′` squeeze (sizes via the 10⁻¹² stand-in for `r`).
struct GoldenSqueeze {
    r_tilde: Rat,
    second: Rat,
    sent: usize,
}

impl Opponent for GoldenSqueeze {
    fn next_item(&mut self, buffer: &[u32], _emitted: &[Item]) -> Option<(Rat, Rat)> {
        self.sent += 1;
        match self.sent {
            1 => Some((self.r_tilde.clone(), self.r_tilde.clone())),
            2 => Some((self.second.clone(), self.second.clone())),
            3 => {
                if !buffer.contains(&1) {
                    return None; // it dropped the big item: ratio ~ r/(r²+ε′)
                }
                if buffer.contains(&2) {
                    return None; // held both: capacity was violated upstream
                }
                let s = Rat::one() - &self.second;
                Some((s.clone(), s))
            }
            _ => None,
        }
    }

    fn max_items(&self) -> usize {
        3
    }
}

/// Stages shared by the two decision-tree constructions.
enum TreeStage {
    FeedBase(usize),
    AfterBase,
    AfterFourth,
    AfterFifth,
    Done,
}

/// The `r, 1−r+ε/4, 2r−1` tree for the sixteen-threshold band.
struct SixteenTree {
    r_tilde: Rat,
    cap: Rat,
    eps: Rat,
    stage: TreeStage,
}

impl SixteenTree {
    fn base_item(&self, i: usize) -> Rat {
        match i {
            0 => self.r_tilde.clone(),
            1 => Rat::one() - &self.r_tilde + &self.eps / rat(4, 1),
            _ => rat(2, 1) * &self.r_tilde - Rat::one(),
        }
    }
}

impl Opponent for SixteenTree {
    fn next_item(&mut self, buffer: &[u32], _emitted: &[Item]) -> Option<(Rat, Rat)> {
        let quarter = &self.eps / rat(4, 1);
        loop {
            match self.stage {
                TreeStage::FeedBase(i) => {
                    self.stage =
                        if i == 2 { TreeStage::AfterBase } else { TreeStage::FeedBase(i + 1) };
                    let s = self.base_item(i);
                    return Some((s.clone(), s));
                }
                TreeStage::AfterBase => {
                    if !buffer.contains(&1) {
                        // lost the large item: complete it to exactly 1
                        self.stage = TreeStage::Done;
                        let s = Rat::one() - &self.r_tilde;
                        return Some((s.clone(), s));
                    }
                    if !buffer.contains(&2) {
                        self.stage = TreeStage::Done;
                        let s = &self.r_tilde - quarter;
                        return Some((s.clone(), s));
                    }
                    if !buffer.contains(&3) {
                        // re-send the 2r−1 probe as the fourth item
                        self.stage = TreeStage::AfterFourth;
                        let s = rat(2, 1) * &self.r_tilde - Rat::one();
                        return Some((s.clone(), s));
                    }
                    self.stage = TreeStage::Done;
                    return None;
                }
                TreeStage::AfterFourth => {
                    if !buffer.contains(&1) {
                        self.stage = TreeStage::Done;
                        let s = Rat::one() - &self.r_tilde;
                        return Some((s.clone(), s));
                    }
                    if !buffer.contains(&2) {
                        self.stage = TreeStage::Done;
                        let s = &self.r_tilde - quarter;
                        return Some((s.clone(), s));
                    }
                    if !buffer.contains(&4) {
                        // it keeps rejecting the 2r−1 probes: escalate
                        self.stage = TreeStage::AfterFifth;
                        let s = &self.cap - Rat::one() + &self.eps / rat(2, 1);
                        return Some((s.clone(), s));
                    }
                    self.stage = TreeStage::Done;
                    return None;
                }
                TreeStage::AfterFifth => {
                    self.stage = TreeStage::Done;
                    if !buffer.contains(&1) {
                        // the two 2r−1 probes now beat its r−side holdings
                        return None;
                    }
                    if !buffer.contains(&2) {
                        let s = &self.r_tilde - quarter;
                        return Some((s.clone(), s));
                    }
                    if !buffer.contains(&5) {
                        let s = Rat::one() + &self.r_tilde
                            - &self.cap
                            - rat(3, 1) * &self.eps / rat(4, 1);
                        return Some((s.clone(), s));
                    }
                    return None;
                }
                TreeStage::Done => return None,
            }
        }
    }

    fn max_items(&self) -> usize {
        6
    }
}

/// The `R/2, (R²+ε)/4, R−1` tree (all sizes rational in R).
struct RationalTree {
    cap: Rat,
    eps: Rat,
    stage: TreeStage,
}

impl RationalTree {
    fn base_item(&self, i: usize) -> Rat {
        match i {
            0 => &self.cap / rat(2, 1),
            1 => (&self.cap * &self.cap + &self.eps) / rat(4, 1),
            _ => &self.cap - Rat::one(),
        }
    }
}

impl Opponent for RationalTree {
    fn next_item(&mut self, buffer: &[u32], _emitted: &[Item]) -> Option<(Rat, Rat)> {
        let quarter = &self.eps / rat(4, 1);
        match self.stage {
            TreeStage::FeedBase(i) => {
                self.stage =
                    if i == 2 { TreeStage::AfterBase } else { TreeStage::FeedBase(i + 1) };
                let s = self.base_item(i);
                Some((s.clone(), s))
            }
            TreeStage::AfterBase => {
                if !buffer.contains(&1) {
                    self.stage = TreeStage::Done;
                    return None; // it dropped R/2: the held rest caps at (R²+ε)/4
                }
                if !buffer.contains(&3) {
                    self.stage = TreeStage::Done;
                    let s = rat(2, 1) - &self.cap;
                    return Some((s.clone(), s));
                }
                if !buffer.contains(&2) {
                    self.stage = TreeStage::AfterFourth;
                    let s = Rat::one() - &self.cap / rat(2, 1) + quarter;
                    return Some((s.clone(), s));
                }
                self.stage = TreeStage::Done;
                None
            }
            TreeStage::AfterFourth => {
                self.stage = TreeStage::Done;
                if !buffer.contains(&1) {
                    let s = Rat::one() - &self.cap / rat(2, 1);
                    return Some((s.clone(), s));
                }
                if !buffer.contains(&3) {
                    let s = Rat::one() - (&self.cap * &self.cap + &self.eps) / rat(4, 1);
                    return Some((s.clone(), s));
                }
                if !buffer.contains(&4) {
                    let s = &self.cap / rat(2, 1) - quarter;
                    return Some((s.clone(), s));
                }
                None
            }
            _ => {
                self.stage = TreeStage::Done;
                None
            }
        }
    }

    fn max_items(&self) -> usize {
        5
    }
}

/// `i/n + ε/n²` staircase, then the exact complement of the first discard.
struct Staircase {
    n: usize,
    eps: Rat,
    sent: usize,
    finished: bool,
}

impl Opponent for Staircase {
    fn next_item(&mut self, buffer: &[u32], emitted: &[Item]) -> Option<(Rat, Rat)> {
        if self.finished {
            return None;
        }
        if self.sent < self.n - 1 {
            self.sent += 1;
            let n = self.n as i64;
            let s = rat(self.sent as i64, n) + &self.eps / rat(n * n, 1);
            return Some((s.clone(), s));
        }
        self.finished = true;
        let first_discarded = (1..self.n as u32).find(|idx| !buffer.contains(idx))?;
        let s = Rat::one() - &emitted[first_discarded as usize - 1].size;
        if !s.is_positive() {
            return None;
        }
        Some((s.clone(), s))
    }

    fn max_items(&self) -> usize {
        self.n
    }
}
