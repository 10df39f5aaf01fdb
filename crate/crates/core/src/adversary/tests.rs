use super::*;
use crate::algorithms::run_algorithm;
use crate::exact::rat_int;
use crate::trace::validate_trace;

fn cfg(kind: AdversaryKind, r: Rat, eps: Rat) -> AdversaryConfig {
    AdversaryConfig::new(kind, r, eps)
}

fn assert_replay_matches(result: &DuelResult) {
    let replay = run_algorithm(result.algorithm, &result.instance).unwrap();
    assert_eq!(replay.rounds, result.trace.rounds, "adaptive duel must be replayable");
    assert_eq!(validate_trace(&result.instance, &result.trace), Ok(()));
}

#[test]
fn gen_nonrem_realizes_growth_factor() {
    // R = 2, c = 10: the greedy holds two unit items, rejects the third
    let config = cfg(AdversaryKind::GenNonRem, rat_int(2), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg1).unwrap();
    assert_eq!(result.instance.len(), 3);
    assert_eq!(result.opt_value, rat_int(1000));
    assert_eq!(result.alg_value, rat_int(100));
    assert_eq!(result.ratio, Some(rat_int(10)));
    assert!(result.achieved);
    assert_replay_matches(&result);
}

#[test]
fn prop_nonrem_small_squeeze() {
    // R = 5/4, ε = 1/100: ratio ≥ 1/(R−1) − ε = 3.99
    let config = cfg(AdversaryKind::PropNonRemSmall, rat(5, 4), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg1).unwrap();
    let ratio = result.ratio.clone().unwrap();
    assert!(ratio >= rat(399, 100), "ratio {ratio} too small");
    assert!(ratio <= rat_int(4));
    assert!(result.achieved);
    assert_replay_matches(&result);
}

#[test]
fn prop_nonrem_large_halving() {
    let config = cfg(AdversaryKind::PropNonRemLarge, rat_int(2), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg1).unwrap();
    let ratio = result.ratio.clone().unwrap();
    assert!(ratio >= rat(198, 100), "ratio {ratio} below 2 − 2ε");
    assert!(result.achieved);
    assert_replay_matches(&result);
}

#[test]
fn gen_rem_general_probe() {
    // R = 3/2: bound 1 + 1/(R+1) = 1.4; the probe forces 1.5 on the greedy
    let config = cfg(AdversaryKind::GenRemGeneral, rat(3, 2), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg4).unwrap();
    assert!(result.achieved);
    let ratio = result.ratio.clone().unwrap();
    assert!(ratio >= rat(138, 100));
    assert_replay_matches(&result);
}

#[test]
fn gen_rem_small_drip_with_loose_eps() {
    // ε = 3/10 keeps ε̂ = 1/18 and the duel at a few hundred rounds
    let config = cfg(AdversaryKind::GenRemSmall, rat(3, 2), rat(3, 10));
    let result = duel(&config, AlgorithmId::Alg4).unwrap();
    assert!(result.achieved, "ratio {:?} vs bound 2 − 2·(3/10)", result.ratio);
    assert!(result.instance.len() < 1000);
    assert_replay_matches(&result);
}

#[test]
fn gen_rem_mid_staircase() {
    let config = cfg(AdversaryKind::GenRemMid, rat(3, 2), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg4).unwrap();
    let ratio = result.ratio.clone().unwrap();
    // k = 101: the greedy keeps the first item, ratio 401/201
    assert_eq!(ratio, rat(401, 201));
    assert!(result.achieved);
    assert_replay_matches(&result);
}

#[test]
fn prop_rem_i_tightness_at_r_one() {
    // bound (1+√5)/2; the witness-locking algorithm lands within 2ε of it
    let config = cfg(AdversaryKind::PropRemI, rat_int(1), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg5).unwrap();
    assert!(result.achieved);
    let ratio = result.ratio.clone().unwrap();
    let bound = result.theorem_bound.as_finite().unwrap();
    assert!(bound.ge_rat(&ratio), "lower-bound duel cannot exceed the tight bound");
    assert!(bound.add_rat(&rat(-2, 100)).le_rat(&ratio));
    assert_replay_matches(&result);
}

#[test]
fn prop_rem_ii_tree_vs_witness_locker() {
    let config = cfg(AdversaryKind::PropRemII, rat(27, 20), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg7).unwrap();
    assert!(result.achieved, "ratio {:?}", result.ratio);
    assert_replay_matches(&result);
}

#[test]
fn prop_rem_iii_hits_four_thirds_exactly() {
    let config = cfg(AdversaryKind::PropRemIII, rat(3, 2), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg8).unwrap();
    assert_eq!(result.ratio, Some(rat(4, 3)));
    assert!(result.achieved);
    assert_replay_matches(&result);
}

#[test]
fn prop_rem_general_staircase() {
    // R = 6/5 → n = 4; bound 1 + 1/4
    let config = cfg(AdversaryKind::PropRemGeneral, rat(6, 5), rat(1, 100));
    let result = duel(&config, AlgorithmId::Alg6).unwrap();
    assert_eq!(result.instance.len(), 4);
    assert!(result.achieved);
    let ratio = result.ratio.clone().unwrap();
    assert!(ratio >= rat(123, 100));
    assert_replay_matches(&result);
}

#[test]
fn variant_mismatch_is_rejected() {
    let config = cfg(AdversaryKind::PropRemI, rat_int(1), rat(1, 100));
    assert!(matches!(
        duel(&config, AlgorithmId::Alg1),
        Err(AdversaryError::VariantMismatch { .. })
    ));
}

#[test]
fn param_ranges_are_validated() {
    // growth factor must exceed 1
    let mut config = cfg(AdversaryKind::GenNonRem, rat_int(2), rat(1, 100));
    config.growth_c = rat(1, 1);
    assert!(matches!(
        duel(&config, AlgorithmId::Alg1),
        Err(AdversaryError::ParamOutOfRange { .. })
    ));
    // prop-nonrem-small needs R ≤ 3/2
    let config = cfg(AdversaryKind::PropNonRemSmall, rat_int(2), rat(1, 100));
    assert!(matches!(
        duel(&config, AlgorithmId::Alg1),
        Err(AdversaryError::ParamOutOfRange { .. })
    ));
    // prop-rem-iii needs R above 2√3−2
    let config = cfg(AdversaryKind::PropRemIII, rat(14, 10), rat(1, 100));
    assert!(matches!(
        duel(&config, AlgorithmId::Alg8),
        Err(AdversaryError::ParamOutOfRange { .. })
    ));
}

#[test]
fn emitted_items_are_always_legal() {
    // every kind at a representative (R, ε): sizes in (0,1], values ≥ 0
    let cases: Vec<(AdversaryKind, Rat, AlgorithmId)> = vec![
        (AdversaryKind::GenNonRem, rat_int(2), AlgorithmId::Alg1),
        (AdversaryKind::PropNonRemSmall, rat(5, 4), AlgorithmId::Alg1),
        (AdversaryKind::PropNonRemLarge, rat_int(3), AlgorithmId::Alg1),
        (AdversaryKind::GenRemGeneral, rat(3, 2), AlgorithmId::Alg4),
        (AdversaryKind::GenRemMid, rat(8, 5), AlgorithmId::Alg4),
        (AdversaryKind::PropRemI, rat(21, 20), AlgorithmId::Alg5),
        (AdversaryKind::PropRemII, rat(13, 10), AlgorithmId::Alg7),
        (AdversaryKind::PropRemIII, rat(37, 25), AlgorithmId::Alg8),
        (AdversaryKind::PropRemGeneral, rat(10, 9), AlgorithmId::Alg5),
    ];
    for (kind, r, alg) in cases {
        let config = cfg(kind, r.clone(), rat(1, 100));
        let result = duel(&config, alg)
            .unwrap_or_else(|e| panic!("{kind} at R = {r} failed: {e}"));
        // Item::new re-validates on construction; also check the variant flag
        assert_eq!(result.instance.mode, kind.mode());
        assert_eq!(result.instance.removability, kind.removability());
        assert!(result.achieved, "{kind} at R = {r}: ratio {:?}", result.ratio);
    }
}

#[test]
fn certified_oracles_match_generic_on_small_instances() {
    use crate::model::Item;
    use crate::oracle::{best_packable_subset, offline_optimum};

    // gen-nonrem: all sizes are 1, optimum is the best single value
    let config = cfg(AdversaryKind::GenNonRem, rat_int(2), rat(1, 100));
    let opp = opponents::build(&config).unwrap();
    let items: Vec<Item> = (1..=3)
        .map(|i| Item::new(rat_int(1), rat_int(10_i64.pow(i)), i).unwrap())
        .collect();
    assert_eq!(
        opp.certified_opt(&items).unwrap(),
        offline_optimum(&items, &rat_int(1)).unwrap().total_value
    );
    assert_eq!(
        opp.certified_extraction(&items[..2]).unwrap(),
        best_packable_subset(&items[..2], &rat_int(1)).unwrap().total_value
    );

    // gen-rem-small: unit item vs the top-m drip items (m = 1/ε̂)
    let config = cfg(AdversaryKind::GenRemSmall, rat(3, 2), rat(3, 10));
    let opp = opponents::build(&config).unwrap();
    let eps_hat = rat(1, 18);
    let mut items = vec![Item::new(rat_int(1), rat_int(1), 1).unwrap()];
    for i in 1..=20 {
        let e3 = &eps_hat * &eps_hat * &eps_hat;
        items.push(Item::new(eps_hat.clone(), rat(i, 1) * e3, i as u32 + 1).unwrap());
    }
    assert_eq!(
        opp.certified_opt(&items).unwrap(),
        offline_optimum(&items, &rat_int(1)).unwrap().total_value
    );
    // a buffer holding the unit item plus a strided selection of smalls
    let buffer: Vec<Item> = items
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 3 == 0)
        .map(|(_, e)| e.clone())
        .collect();
    assert_eq!(
        opp.certified_extraction(&buffer).unwrap(),
        best_packable_subset(&buffer, &rat_int(1)).unwrap().total_value
    );

    // gen-rem-mid: best single vs the unique fitting completion pair
    let config = cfg(AdversaryKind::GenRemMid, rat(8, 5), rat(1, 3));
    let result = duel(&config, AlgorithmId::Alg4).unwrap();
    let opp = opponents::build(&config).unwrap();
    assert_eq!(
        opp.certified_opt(&result.instance.items).unwrap(),
        offline_optimum(&result.instance.items, &rat_int(1)).unwrap().total_value
    );
}
