//! The two greedy state machines: take-if-it-fits for the non-removable
//! variant and the density-ordered rebuild for the removable variant.

use crate::exact::Rat;
use crate::model::Item;
use num::Zero;
use std::cmp::Ordering;

/// Non-removable greedy: `B_i = B_{i−1} ∪ {e_i}` iff the union fits in the
/// buffer, else `B_i = B_{i−1}`.
pub(crate) struct NonRemovableGreedy {
    cap: Rat,
    kept: Vec<u32>,
    total: Rat,
}

impl NonRemovableGreedy {
    pub fn new(cap: Rat) -> Self {
        Self { cap, kept: Vec::new(), total: Rat::zero() }
    }

    pub fn step(&mut self, item: &Item) {
        let with = &self.total + &item.size;
        if with <= self.cap {
            self.kept.push(item.arrival_index);
            self.total = with;
        }
    }

    pub fn buffer(&self) -> &[u32] {
        &self.kept
    }
}

/// Removable density greedy: every round rescans `B_{i−1} ∪ {e_i}` in
/// non-increasing density order (ties: smaller size first, then arrival) and
/// keeps each item that still fits.
pub(crate) struct DensityGreedy {
    cap: Rat,
    items: Vec<Item>,
    densities: Vec<Rat>,
    /// surviving positions in scan order (density desc, size asc, arrival asc)
    order: Vec<usize>,
    round: Vec<u32>,
}

impl DensityGreedy {
    pub fn new(cap: Rat) -> Self {
        Self { cap, items: Vec::new(), densities: Vec::new(), order: Vec::new(), round: Vec::new() }
    }

    fn scan_cmp(&self, a: usize, b: usize) -> Ordering {
        self.densities[b]
            .cmp(&self.densities[a])
            .then_with(|| self.items[a].size.cmp(&self.items[b].size))
            .then_with(|| a.cmp(&b))
    }

    pub fn step(&mut self, item: &Item) {
        let pos = self.items.len();
        self.densities.push(item.density());
        self.items.push(item.clone());
        let at = self.order.partition_point(|&p| self.scan_cmp(p, pos) == Ordering::Less);
        self.order.insert(at, pos);
        let mut kept: Vec<usize> = Vec::with_capacity(self.order.len());
        let mut total = Rat::zero();
        for &p in &self.order {
            let with = &total + &self.items[p].size;
            if with <= self.cap {
                kept.push(p);
                total = with;
            }
        }
        self.order = kept;
        self.round = self.order.iter().map(|&p| p as u32 + 1).collect();
        self.round.sort(); // nearly sorted already; adaptive merge is linear here
    }

    pub fn buffer(&self) -> &[u32] {
        &self.round
    }
}
