//! Randomized certification of the upper-bound theorems.
//!
//! Each trial draws an instance from a seeded per-trial stream, runs the
//! algorithm, and compares the exact ratio against the bound plus `10⁻⁹`.
//! On a regime with a proven bound, any violation is an implementation bug.
//! Knife-edge sampling draws sizes from `±10⁻³` bands around the regime's
//! class boundaries, where the case analyses actually switch.

use super::rng::Xorshift64Star;
use super::{run_simulation, RunReport};
use crate::algorithms::{algorithm_bound, resolve_effective_r, AlgorithmId, Bound, EffectiveR};
use crate::exact::{rat, Rat, Surd};
use crate::model::{Instance, Mode, Removability};
use num::{One, Signed};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeDistribution {
    /// sizes `k / denominator_bound`, `k` uniform in `1..=denominator_bound`
    UniformRational { denominator_bound: u32 },
    /// half uniform, half within ±10⁻³ of a regime class boundary
    KnifeEdge { denominator_bound: u32 },
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub trials: u64,
    pub n_max: u32,
    pub seed: u64,
    pub distribution: SizeDistribution,
    pub mode: Mode,
    pub removability: Removability,
    pub r: Rat,
    /// explicit algorithm; `None` lets the variant selector choose
    pub algorithm: Option<AlgorithmId>,
}

impl FuzzConfig {
    fn validate(&self) {
        assert!(self.n_max >= 1 && self.n_max <= 16, "n_max must be in 1..=16");
        let bound = match self.distribution {
            SizeDistribution::UniformRational { denominator_bound }
            | SizeDistribution::KnifeEdge { denominator_bound } => denominator_bound,
        };
        assert!(bound >= 2 && bound <= 10_000, "denominator bound must be in 2..=10⁴");
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub trial: u64,
    pub report: RunReport,
    pub instance: Instance,
}

#[derive(Clone, Debug)]
pub struct FuzzOutcome {
    pub algorithm: AlgorithmId,
    pub bound: Bound,
    pub trials: u64,
    /// report of the maximum-ratio trial (smallest index on ties)
    pub worst: Option<(u64, RunReport)>,
    pub violations: Vec<Violation>,
}

/// The class boundaries whose neighbourhoods the knife-edge sampler probes.
fn knife_points(algorithm: AlgorithmId, effective: &EffectiveR, r: &Rat) -> Vec<Rat> {
    use crate::algorithms::{GroupingParams, RegimeParams};
    let mut cuts: Vec<Surd> = Vec::new();
    let one = Surd::from_rat(Rat::one());
    match algorithm {
        AlgorithmId::Alg1 | AlgorithmId::Alg4 => {
            cuts.push(Surd::from_rat(r - Rat::one()));
            cuts.push(Surd::from_rat(rat(1, 2)));
            cuts.push(one.clone());
        }
        AlgorithmId::Alg2 => {
            if let Ok(params) = GroupingParams::for_capacity(r) {
                cuts.push(Surd::from_rat(params.eps.clone()));
                cuts.push(Surd::from_rat(&params.eps * rat(2, 1)));
            }
            cuts.push(Surd::from_rat(rat(1, 2)));
            cuts.push(one.clone());
        }
        AlgorithmId::Alg5 | AlgorithmId::Alg6 => {
            let params = match effective {
                EffectiveR::Rational(er) => RegimeParams::golden(er),
                _ => RegimeParams::golden_clamped(),
            };
            let r_cut = params.r.clone();
            cuts.push(params.r_squared.clone());
            cuts.push(r_cut.scale(&rat(1, 2)));
            cuts.push(r_cut.scale(&rat(-1, 1)).add_rat(&Rat::one())); // 1−r
            cuts.push(r_cut);
            cuts.push(Surd::from_rat(rat(1, 2)));
        }
        AlgorithmId::Alg7 => {
            let params = match effective {
                EffectiveR::Rational(er) => RegimeParams::sixteen(er),
                _ => RegimeParams::sixteen_clamped(),
            };
            let r_cut = params.r.clone();
            cuts.push(r_cut.scale(&rat(-1, 1)).add_rat(&Rat::one())); // 1−r
            cuts.push(r_cut.scale(&rat(2, 1)).add_rat(&rat(-1, 1))); // 2r−1
            cuts.push(Surd::from_rat(rat(1, 2)));
            cuts.push(params.r_squared.clone());
            cuts.push(r_cut);
        }
        AlgorithmId::Alg8 => {
            let er = match effective {
                EffectiveR::Rational(er) => er.clone(),
                _ => unreachable!("the rational-cut machine is never clamped"),
            };
            cuts.push(Surd::from_rat(Rat::one() - &er * rat(1, 2)));
            cuts.push(Surd::from_rat(&er * rat(1, 4)));
            cuts.push(Surd::from_rat(rat(1, 2)));
            cuts.push(Surd::from_rat(&er * &er * rat(1, 4)));
            cuts.push(Surd::from_rat(&er * rat(1, 2)));
        }
    }
    // rational anchors at 10⁻⁶ precision, clamped into (0, 1]
    cuts.iter()
        .map(|c| c.lower_rat(6))
        .filter(|c| c.is_positive() && *c <= Rat::one())
        .collect()
}

struct Sampler {
    distribution: SizeDistribution,
    knife_anchors: Vec<Rat>,
    mode: Mode,
}

impl Sampler {
    fn size(&self, rng: &mut Xorshift64Star) -> Rat {
        match self.distribution {
            SizeDistribution::UniformRational { denominator_bound } => {
                uniform_size(rng, denominator_bound)
            }
            SizeDistribution::KnifeEdge { denominator_bound } => {
                if self.knife_anchors.is_empty() || rng.coin() {
                    uniform_size(rng, denominator_bound)
                } else {
                    let anchor =
                        &self.knife_anchors[rng.below(self.knife_anchors.len() as u64) as usize];
                    // offset within ±10⁻³ on the 10⁻⁶ grid
                    let offset = rat(rng.range_inclusive(-1000, 1000), 1_000_000);
                    let candidate = anchor + offset;
                    let one = Rat::one();
                    if !candidate.is_positive() {
                        rat(1, 1_000_000)
                    } else if candidate > one {
                        one
                    } else {
                        candidate
                    }
                }
            }
        }
    }

    fn item(&self, rng: &mut Xorshift64Star) -> (Rat, Rat) {
        let size = self.size(rng);
        match self.mode {
            Mode::Proportional => (size.clone(), size),
            Mode::General => {
                // values k/256 with k in 0..=1024: densities up to ~4000
                let value = rat(rng.range_inclusive(0, 1024), 256);
                (size, value)
            }
        }
    }
}

fn uniform_size(rng: &mut Xorshift64Star, denominator_bound: u32) -> Rat {
    rat(rng.range_inclusive(1, denominator_bound as i64), denominator_bound as i64)
}

/// Generates `trials` instances, runs each, and collects the worst report
/// plus every bound violation. Trials execute in parallel; the aggregation
/// is order-independent, so results are identical at any worker count.
pub fn fuzz_upper_bound(config: &FuzzConfig) -> Result<FuzzOutcome, super::HarnessError> {
    config.validate();
    let algorithm = match config.algorithm {
        Some(a) => a,
        None => {
            crate::algorithms::select_algorithm(config.mode, config.removability, &config.r)?
                .algorithm
        }
    };
    let effective = resolve_effective_r(algorithm, &config.r)?;
    let bound = algorithm_bound(algorithm, &effective);
    let sampler = Sampler {
        distribution: config.distribution,
        knife_anchors: match config.distribution {
            SizeDistribution::KnifeEdge { .. } => knife_points(algorithm, &effective, &config.r),
            _ => Vec::new(),
        },
        mode: config.mode,
    };

    let results: Vec<(u64, Option<Rat>, RunReport, Option<Instance>)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = Xorshift64Star::for_trial(config.seed, trial);
            let n = rng.range_inclusive(1, config.n_max as i64) as usize;
            let mut items = Vec::with_capacity(n);
            for _ in 0..n {
                items.push(sampler.item(&mut rng));
            }
            let instance = match config.mode {
                Mode::Proportional => Instance::proportional(
                    items.into_iter().map(|(s, _)| s).collect(),
                    config.r.clone(),
                    config.removability,
                ),
                Mode::General => {
                    Instance::general(items, config.r.clone(), config.removability)
                }
            }
            .expect("sampled items are legal");
            let outcome = run_simulation(algorithm, &instance)
                .expect("fuzz instances stay inside algorithm preconditions");
            let keep_instance =
                if outcome.report.within_bound { None } else { Some(instance) };
            (trial, outcome.ratio, outcome.report, keep_instance)
        })
        .collect();

    let mut worst: Option<(u64, Option<Rat>, RunReport)> = None;
    let mut violations = Vec::new();
    for (trial, ratio, report, instance) in results {
        if let Some(inst) = instance {
            violations.push(Violation { trial, report: report.clone(), instance: inst });
        }
        let better = match &worst {
            None => true,
            Some((_, incumbent, _)) => match (&ratio, incumbent) {
                (None, Some(_)) => true,
                (Some(_), None) | (None, None) => false,
                (Some(a), Some(b)) => a > b,
            },
        };
        if better {
            worst = Some((trial, ratio, report));
        }
    }

    Ok(FuzzOutcome {
        algorithm,
        bound,
        trials: config.trials,
        worst: worst.map(|(t, _, r)| (t, r)),
        violations,
    })
}
