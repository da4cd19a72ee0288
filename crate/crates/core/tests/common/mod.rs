#![allow(dead_code)]

use mahjong_core::engine::Game;
use mahjong_core::hand_eval::{is_winning, score_hand};
use mahjong_core::rng::GameRng;
use mahjong_core::shaping::shaped_value;
use mahjong_core::tileset::{TileCounts, TileKind, NUM_KINDS};
use mahjong_core::{GameState, ShapingParams};

pub fn hand(text: &str) -> TileCounts {
    TileCounts::parse(text).unwrap()
}

/// Reward for moving from `hand` to `next`, straight from the definition.
pub fn reward(hand: &TileCounts, next: &TileCounts, params: &ShapingParams) -> f64 {
    if is_winning(next).unwrap() {
        score_hand(next, params.base_payoff, &params.rules)
            .unwrap()
            .total_payoff
    } else {
        shaped_value(next, params).unwrap().combined - shaped_value(hand, params).unwrap().combined
    }
}

/// Q for one discard by enumerating every physical wall copy as its own
/// equally likely outcome.
pub fn brute_q(state: &GameState, discard: TileKind, params: &ShapingParams) -> f64 {
    let copies: Vec<TileKind> = state.wall().tiles().collect();
    let mut after = *state.hand();
    assert!(after.remove(discard));
    let mut sum = 0.0;
    for &c in &copies {
        let mut next = after;
        next.add(c);
        sum += reward(state.hand(), &next, params);
    }
    sum / copies.len() as f64
}

/// `E[value(next)]` without subtracting the current shaped value.
pub fn raw_next_value(state: &GameState, discard: TileKind, params: &ShapingParams) -> f64 {
    let copies: Vec<TileKind> = state.wall().tiles().collect();
    let mut after = *state.hand();
    after.remove(discard);
    copies
        .iter()
        .map(|&c| {
            let mut next = after;
            next.add(c);
            if is_winning(&next).unwrap() {
                score_hand(&next, params.base_payoff, &params.rules)
                    .unwrap()
                    .total_payoff
            } else {
                shaped_value(&next, params).unwrap().combined
            }
        })
        .sum::<f64>()
        / copies.len() as f64
}

/// Binomial coefficients from Pascal's triangle, keeping only columns 0..=k
/// so every entry fits in u128.
pub fn pascal(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for i in (1..=k).rev() {
            row[i] += row[i - 1];
        }
    }
    row[k]
}

/// Uniformly random 14 tiles from the full set.
pub fn random_hand(rng: &mut GameRng) -> TileCounts {
    let mut pool: Vec<usize> = (0..NUM_KINDS).flat_map(|k| [k; 4]).collect();
    let mut h = TileCounts::empty();
    for _ in 0..14 {
        let i = rng.below(pool.len() as u32) as usize;
        h.add(TileKind::new(pool.swap_remove(i)).unwrap());
    }
    h
}

/// A random winning hand: four sets and a pair, respecting copy limits.
pub fn random_winning_hand(rng: &mut GameRng) -> TileCounts {
    'retry: loop {
        let mut h = TileCounts::empty();
        for _ in 0..4 {
            let kind = TileKind::new(rng.below(NUM_KINDS as u32) as usize).unwrap();
            let run = !kind.is_honor() && kind.rank() <= 7 && rng.below(2) == 0;
            let tiles: Vec<TileKind> = if run {
                (0..3)
                    .map(|d| TileKind::new(kind.index() + d).unwrap())
                    .collect()
            } else {
                vec![kind; 3]
            };
            for t in tiles {
                if h.get(t) == 4 {
                    continue 'retry;
                }
                h.add(t);
            }
        }
        let pair = TileKind::new(rng.below(NUM_KINDS as u32) as usize).unwrap();
        if h.get(pair) > 2 {
            continue;
        }
        h.add(pair);
        h.add(pair);
        return h;
    }
}

/// A non-terminal state reached by playing the greedy policy for a random
/// number of turns.
pub fn mid_game_state(seed: u64, params: &ShapingParams) -> Option<GameState> {
    let mut game = Game::new(seed, params, false).ok()?;
    let turns = GameRng::from_seed(seed ^ 0x5eed).below(40);
    for _ in 0..turns {
        if game.step().is_some() {
            return None;
        }
    }
    game.outcome().is_none().then(|| *game.state())
}
