//! Exact depth-1 forward search.
//!
//! For each kind in hand the planner discards one copy, then averages the
//! shaping reward over every kind that can be drawn next, weighted by the
//! number of undrawn copies. There is no sampling: each Q-value is the exact
//! expectation under the known transition model.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::shaping::{self, ShapingParams};
use crate::tileset::{GameState, TileKind, HAND_SIZE, TOTAL_TILES, WALL_AFTER_DEAL};

/// Q-value of every candidate discard and the chosen one.
#[derive(Debug, Clone, PartialEq)]
pub struct QReport {
    /// One entry per kind present in hand, in index order.
    pub actions: Vec<(TileKind, f64)>,
    /// Highest Q; ties go to the lowest tile index.
    pub best: TileKind,
}

impl QReport {
    pub fn q(&self, kind: TileKind) -> Option<f64> {
        self.actions
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|&(_, q)| q)
    }
}

/// Index of the maximal value, first one on ties.
pub(crate) fn argmax_first(values: impl IntoIterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

/// Exact `Q(s, a)` for every discard `a` available in `state`.
pub fn q_values(state: &GameState, params: &ShapingParams) -> Result<QReport> {
    let hand = state.hand();
    if hand.total() != HAND_SIZE {
        return Err(Error::HandSize {
            expected: HAND_SIZE,
            found: hand.total(),
        });
    }
    let wall = state.wall();
    let wall_total = wall.total();
    if wall_total == 0 {
        return Err(Error::WallExhausted);
    }
    let current = shaping::combined_unchecked(hand, params);
    // The wall is the same for every discard: the discarded copy goes to the
    // discard pile, never back into the draw pool.
    let draws: Vec<(TileKind, f64)> = wall.kinds().map(|k| (k, wall.get(k) as f64)).collect();

    let actions: Vec<(TileKind, f64)> = hand
        .kinds()
        .map(|discard| {
            let mut after = *hand;
            after.remove(discard);
            // Weight by copy count and divide once, so hands with integer
            // rewards produce exactly tied Q-values and the lowest-index
            // tie-break holds.
            let weighted: f64 = draws
                .iter()
                .map(|&(drawn, copies)| {
                    let mut next = after;
                    next.add(drawn);
                    copies * shaping::reward_from(current, &next, params)
                })
                .sum();
            let q = weighted / wall_total as f64;
            (discard, q)
        })
        .collect();

    let best = actions[argmax_first(actions.iter().map(|&(_, q)| q)).expect("hand is nonempty")].0;
    Ok(QReport { actions, best })
}

/// The greedy policy: the discard with the highest Q-value.
pub fn best_action(state: &GameState, params: &ShapingParams) -> Result<TileKind> {
    Ok(q_values(state, params)?.best)
}

const MAX_DEPTH: u32 = WALL_AFTER_DEAL as u32;

fn check_depth(depth: u32) -> Result<()> {
    if !(1..=MAX_DEPTH).contains(&depth) {
        return Err(Error::InvalidParameter(format!(
            "search depth must be in 1..={MAX_DEPTH}, got {depth}"
        )));
    }
    Ok(())
}

/// Leaves of a full forward search of the given depth from a fresh deal:
/// `14^n · 122 · 121 · … · (122 − n + 1)`.
///
/// Depth 1 is 1708 and depth 2 is 2,893,352, which is why the planner stops
/// at depth 1.
pub fn leaf_node_count(depth: u32) -> Result<BigUint> {
    check_depth(depth)?;
    let actions = BigUint::from(HAND_SIZE).pow(depth);
    let draws: BigUint = (0..depth)
        .map(|i| BigUint::from(WALL_AFTER_DEAL - i as usize))
        .product();
    Ok(actions * draws)
}

/// The nested-product reading `14^n · Π_{i=1..n} 122!/(122 − i)!`, which
/// multiplies every partial falling factorial. Agrees with
/// [`leaf_node_count`] only at depth 1.
pub fn leaf_node_count_nested_product(depth: u32) -> Result<BigUint> {
    check_depth(depth)?;
    let actions = BigUint::from(HAND_SIZE).pow(depth);
    let mut product = BigUint::from(1u32);
    for i in 1..=depth as usize {
        let falling: BigUint = (0..i).map(|j| BigUint::from(WALL_AFTER_DEAL - j)).product();
        product *= falling;
    }
    Ok(actions * product)
}

/// `C(136, 14) · 2^122`: choose the hand, then mark every other tile as
/// wall or discard.
pub fn state_space_size() -> BigUint {
    binomial(TOTAL_TILES as u64, HAND_SIZE as u64) << WALL_AFTER_DEAL
}

fn binomial(n: u64, k: u64) -> BigUint {
    // Multiplicative formula; every prefix is itself a binomial coefficient,
    // so each division is exact.
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tileset::{hand, parse_tile, TileCounts};

    #[test]
    fn leaf_counts() {
        assert_eq!(leaf_node_count(1).unwrap(), BigUint::from(1708u32));
        assert_eq!(leaf_node_count(2).unwrap(), BigUint::from(2_893_352u32));
        assert!(leaf_node_count(0).is_err());
        assert!(leaf_node_count(123).is_err());
        assert!(leaf_node_count(122).is_ok());
        assert_eq!(
            leaf_node_count_nested_product(1).unwrap(),
            BigUint::from(1708u32)
        );
        // 14² · 122 · (122 · 121)
        assert_eq!(
            leaf_node_count_nested_product(2).unwrap(),
            BigUint::from(196u64 * 122 * 122 * 121)
        );
    }

    #[test]
    fn argmax_ties_go_first() {
        assert_eq!(argmax_first([1.0, 3.0, 3.0, 2.0]), Some(1));
        assert_eq!(argmax_first([0.0; 4]), Some(0));
        assert_eq!(argmax_first(std::iter::empty()), None);
    }

    #[test]
    fn symmetric_hand_picks_lowest_index() {
        // Fourteen distinct kinds, none of which can interact, and a wall
        // holding only kinds that connect with nothing in hand.
        let h = hand("1m 4m 7m 1p 4p 7p 1s 4s 7s E S W N RD");
        let mut wall = TileCounts::empty();
        let gd = parse_tile("GD").unwrap();
        for _ in 0..4 {
            wall.add(gd);
        }
        let mut discard = TileCounts::full_set();
        for k in h.tiles().chain(wall.tiles()) {
            discard.remove(k);
        }
        let s = GameState::from_zones(wall, h, discard).unwrap();
        let report = q_values(&s, &ShapingParams::default()).unwrap();
        assert!(report.actions.iter().all(|&(_, q)| q == 0.0));
        assert_eq!(report.best, parse_tile("1m").unwrap());
    }

    #[test]
    fn errors() {
        let s = GameState::deal(1);
        let post = s.discard_tile(s.hand().kinds().next().unwrap()).unwrap();
        assert!(matches!(
            q_values(&post, &ShapingParams::default()),
            Err(Error::HandSize { .. })
        ));

        let h = hand("1m 4m 7m 1p 4p 7p 1s 4s 7s E S W N RD");
        let mut discard = TileCounts::full_set();
        for k in h.tiles() {
            discard.remove(k);
        }
        let s = GameState::from_zones(TileCounts::empty(), h, discard).unwrap();
        assert_eq!(
            q_values(&s, &ShapingParams::default()),
            Err(Error::WallExhausted)
        );
    }

    #[test]
    fn deterministic() {
        let s = GameState::deal(77);
        let p = ShapingParams::with_weight(1.2);
        assert_eq!(q_values(&s, &p).unwrap(), q_values(&s, &p).unwrap());
        assert_eq!(best_action(&s, &p).unwrap(), best_action(&s, &p).unwrap());
    }
}
