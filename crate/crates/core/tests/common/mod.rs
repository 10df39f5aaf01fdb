//! Test-side reference implementations, kept independent of the library's
//! oracle code paths: plain 2^n enumeration with the same deterministic
//! tie-breaking contract.

use bufferknap::exact::{Rat, Surd};
use bufferknap::harness::Xorshift64Star;
use bufferknap::model::{Instance, Item, Mode, Removability};
use num::Zero;
use std::cmp::Ordering;

/// Exhaustive 0/1 knapsack: maximize value, then minimize size, then the
/// lexicographically smallest sorted index set.
pub fn brute_knapsack(items: &[Item], capacity: &Rat) -> (Vec<u32>, Rat, Rat) {
    let n = items.len();
    assert!(n <= 20, "brute force is for small instances");
    let mut best: Option<(Vec<u32>, Rat, Rat)> = None;
    for mask in 0..(1u32 << n) {
        let mut size = Rat::zero();
        let mut value = Rat::zero();
        let mut subset = Vec::new();
        for (i, item) in items.iter().enumerate() {
            if mask & (1 << i) != 0 {
                size += &item.size;
                value += &item.value;
                subset.push(item.arrival_index);
            }
        }
        if size > *capacity {
            continue;
        }
        let replace = match &best {
            None => true,
            Some((bs, bsize, bvalue)) => match value.cmp(bvalue) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => match size.cmp(bsize) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => lex_less(&subset, bs),
                },
            },
        };
        if replace {
            best = Some((subset, size, value));
        }
    }
    best.expect("the empty subset always qualifies")
}

/// Exhaustive subset-in-range: smallest total size in `[lo, hi]`, lex-min on
/// ties; `None` when nothing qualifies.
pub fn brute_range(items: &[Item], lo: &Surd, hi: &Surd) -> Option<(Vec<u32>, Rat)> {
    let n = items.len();
    assert!(n <= 20);
    let mut best: Option<(Vec<u32>, Rat)> = None;
    for mask in 0..(1u32 << n) {
        let mut size = Rat::zero();
        let mut subset = Vec::new();
        for (i, item) in items.iter().enumerate() {
            if mask & (1 << i) != 0 {
                size += &item.size;
                subset.push(item.arrival_index);
            }
        }
        // in range: lo ≤ size ≤ hi (cmp_rat(t) is `t cmp value`)
        if lo.cmp_rat(&size) == Ordering::Less {
            continue; // size < lo
        }
        if hi.cmp_rat(&size) == Ordering::Greater {
            continue; // size > hi
        }
        let replace = match &best {
            None => true,
            Some((bs, bsize)) => match size.cmp(bsize) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => lex_less(&subset, bs),
            },
        };
        if replace {
            best = Some((subset, size));
        }
    }
    best
}

fn lex_less(a: &[u32], b: &[u32]) -> bool {
    a.cmp(b) == Ordering::Less
}

/// Random instance with the harness RNG: sizes `k/denom`, values either
/// proportional or `k/256`.
pub fn random_instance(
    rng: &mut Xorshift64Star,
    n_max: u32,
    denom: i64,
    mode: Mode,
    removability: Removability,
    r: &Rat,
) -> Instance {
    use bufferknap::exact::rat;
    let n = rng.range_inclusive(1, n_max as i64);
    let mut sizes = Vec::new();
    let mut pairs = Vec::new();
    for _ in 0..n {
        let size = rat(rng.range_inclusive(1, denom), denom);
        match mode {
            Mode::Proportional => sizes.push(size),
            Mode::General => {
                let value = rat(rng.range_inclusive(0, 1024), 256);
                pairs.push((size, value));
            }
        }
    }
    match mode {
        Mode::Proportional => Instance::proportional(sizes, r.clone(), removability).unwrap(),
        Mode::General => Instance::general(pairs, r.clone(), removability).unwrap(),
    }
}
