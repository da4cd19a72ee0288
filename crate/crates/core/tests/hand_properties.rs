mod common;

use common::{hand, random_hand, random_winning_hand};
use mahjong_core::hand_eval::{
    all_decompositions, exact_shangting_oracle, is_winning, score_hand, ScoreRules,
};
use mahjong_core::rng::GameRng;
use mahjong_core::shaping::{shangting, unscented_bonus};
use proptest::prelude::*;

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[test]
fn winning_iff_oracle_reaches_zero() {
    let mut rng = GameRng::from_seed(31);
    for _ in 0..2000 {
        let h = random_hand(&mut rng);
        assert_eq!(
            is_winning(&h).unwrap(),
            exact_shangting_oracle(&h).unwrap() == 0,
            "{h}"
        );
    }
    for _ in 0..500 {
        let h = random_winning_hand(&mut rng);
        assert!(is_winning(&h).unwrap(), "{h}");
        assert_eq!(exact_shangting_oracle(&h).unwrap(), 0);
    }
}

#[test]
fn every_decomposition_rebuilds_the_hand() {
    let mut rng = GameRng::from_seed(32);
    for _ in 0..300 {
        let h = random_winning_hand(&mut rng);
        let ds = all_decompositions(&h).unwrap();
        assert!(!ds.is_empty());
        for d in ds {
            assert_eq!(d.tiles(), h);
        }
    }
}

#[test]
fn gap_hand() {
    let h = hand("1m 1m 1m 2m 2m 2m 3m 3m 3m 3m 4m 4m 4m 5m");
    assert_eq!(shangting(&h).unwrap(), -2);
    assert!(is_winning(&h).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn greedy_never_exceeds_oracle(seed in any::<u64>()) {
        let h = random_hand(&mut GameRng::from_seed(seed));
        prop_assert!(shangting(&h).unwrap() <= exact_shangting_oracle(&h).unwrap());
    }

    #[test]
    fn suit_relabeling_preserves_evaluation(seed in any::<u64>(), p in 0usize..6) {
        let mut rng = GameRng::from_seed(seed);
        let h = random_winning_hand(&mut rng);
        let g = h.permute_suits(PERMS[p]);
        let rules = ScoreRules::default();
        prop_assert!(is_winning(&g).unwrap());
        prop_assert_eq!(
            score_hand(&h, 2.0, &rules).unwrap().multiplier,
            score_hand(&g, 2.0, &rules).unwrap().multiplier
        );
        let r = random_hand(&mut rng);
        let s = r.permute_suits(PERMS[p]);
        prop_assert_eq!(exact_shangting_oracle(&r).unwrap(), exact_shangting_oracle(&s).unwrap());
        prop_assert!((unscented_bonus(&r).unwrap() - unscented_bonus(&s).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn multiplier_is_at_least_base(seed in any::<u64>()) {
        let h = random_winning_hand(&mut GameRng::from_seed(seed));
        let s = score_hand(&h, 2.0, &ScoreRules::default()).unwrap();
        let sum: u32 = s.items.iter().map(|(_, v)| v).sum();
        prop_assert_eq!(s.multiplier, 1 + sum);
        prop_assert_eq!(s.total_payoff, 3.0 * s.individual_payoff);
    }
}
