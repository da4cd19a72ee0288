mod common;

use common::pascal;
use mahjong_core::planner::{leaf_node_count, leaf_node_count_nested_product, state_space_size};
use mahjong_core::tileset::NUM_KINDS;
use mahjong_core::GameState;
use num_bigint::BigUint;
use num_traits::One;

#[test]
fn dealt_kinds_are_uniform() {
    // Each kind's dealt count over 10,000 deals is a sum of hypergeometric
    // draws: mean 14·4/136 per deal, variance 14·(4/136)(132/136)(122/135).
    let deals = 10_000u64;
    let mut totals = [0u64; NUM_KINDS];
    for seed in 0..deals {
        let s = GameState::deal(seed);
        for (t, c) in totals.iter_mut().zip(s.hand().as_array()) {
            *t += *c as u64;
        }
    }
    let p = 4.0 / 136.0;
    let mean = deals as f64 * 14.0 * p;
    let sigma = (deals as f64 * 14.0 * p * (1.0 - p) * (122.0 / 135.0)).sqrt();
    for (k, &t) in totals.iter().enumerate() {
        assert!(
            (t as f64 - mean).abs() < 5.0 * sigma,
            "kind {k}: {t} vs {mean:.1} ± {sigma:.1}"
        );
    }
}

#[test]
fn leaf_counts_match_direct_products() {
    for n in 1..=6u32 {
        let mut expected = BigUint::one();
        for i in 0..n {
            expected *= 14u32 * (122 - i);
        }
        assert_eq!(leaf_node_count(n).unwrap(), expected);
    }
    assert!(leaf_node_count(0).is_err());
    assert!(leaf_node_count(123).is_err());
    assert!(leaf_node_count_nested_product(2).unwrap() > leaf_node_count(2).unwrap());
}

#[test]
fn state_space_matches_pascal() {
    let expected = BigUint::from(pascal(136, 14)) << 122;
    assert_eq!(state_space_size(), expected);
}
