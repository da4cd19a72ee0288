//! Reward shaping: the greedy ShangTing distance, the unscented bonus and
//! the difference-form shaping reward.

use crate::error::{Error, Result};
use crate::hand_eval::{self, check_size, Money, ScoreRules};
use crate::tileset::{GameState, HandCounts, Suit, HAND_SIZE, NUM_KINDS};

/// Parameters of the shaped reward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapingParams {
    /// Weight on the unscented bonus. Zero means ShangTing only.
    pub weight: f64,
    /// Base payoff `b` used for the official score of a winning hand.
    pub base_payoff: Money,
    pub rules: ScoreRules,
}

impl Default for ShapingParams {
    fn default() -> Self {
        Self {
            weight: 0.0,
            base_payoff: 2.0,
            rules: ScoreRules::default(),
        }
    }
}

impl ShapingParams {
    pub fn with_weight(weight: f64) -> Self {
        Self {
            weight,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.weight.is_finite() && self.weight >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weight must be finite and non-negative, got {}",
                self.weight
            )));
        }
        if !(self.base_payoff.is_finite() && self.base_payoff > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "base payoff must be positive, got {}",
                self.base_payoff
            )));
        }
        Ok(())
    }
}

/// Shaping potential of one 14-tile hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapedValue {
    pub shangting: i32,
    pub bonus: f64,
    /// `shangting + weight · bonus`.
    pub combined: f64,
}

/// Greedy ShangTing distance of a 14-tile hand, in `[-14, 0]`.
///
/// Starting from -14: every kind with three or more copies gives one
/// triplet (+3), scanning kinds in index order; then each numbered suit is
/// scanned by rank, repeatedly removing the lowest-starting run (+3); then
/// the lowest remaining pair, if any, adds 2.
pub fn shangting(hand: &HandCounts) -> Result<i32> {
    check_size(hand)?;
    Ok(shangting_unchecked(hand))
}

pub(crate) fn shangting_unchecked(hand: &HandCounts) -> i32 {
    let mut c = *hand.as_array();
    let mut score = -(HAND_SIZE as i32);

    for n in c.iter_mut() {
        if *n >= 3 {
            *n -= 3;
            score += 3;
        }
    }

    for suit in Suit::NUMBERED {
        let o = suit.offset();
        for i in o..o + 7 {
            while c[i] > 0 && c[i + 1] > 0 && c[i + 2] > 0 {
                c[i] -= 1;
                c[i + 1] -= 1;
                c[i + 2] -= 1;
                score += 3;
            }
        }
    }

    if c.iter().any(|&n| n >= 2) {
        score += 2;
    }
    score
}

/// Bonus rewarding honor triplets, an honor pair and single-suit dominance.
///
/// * 3 per wind or dragon kind held three or more times;
/// * 1 if some other honor kind is held exactly twice (only the first counts);
/// * `3 · (largest numbered-suit count) / (numbered tiles held)`, or 3 when
///   the hand holds no numbered tiles.
///
/// The result is unweighted.
pub fn unscented_bonus(hand: &HandCounts) -> Result<f64> {
    check_size(hand)?;
    Ok(unscented_bonus_unchecked(hand))
}

pub(crate) fn unscented_bonus_unchecked(hand: &HandCounts) -> f64 {
    let c = hand.as_array();
    let honors = &c[Suit::Wind.offset()..NUM_KINDS];

    let triplets = honors.iter().filter(|&&n| n >= 3).count() as f64;
    // Honor kinds used as a triplet are not eligible as the pair.
    let pair = if honors.contains(&2) { 1.0 } else { 0.0 };

    let per_suit = Suit::NUMBERED.map(|s| {
        let o = s.offset();
        c[o..o + 9].iter().map(|&n| n as u32).sum::<u32>()
    });
    let suited: u32 = per_suit.iter().sum();
    let flush = if suited == 0 {
        3.0
    } else {
        3.0 * (*per_suit.iter().max().unwrap() as f64) / suited as f64
    };

    3.0 * triplets + pair + flush
}

pub fn shaped_value(hand: &HandCounts, params: &ShapingParams) -> Result<ShapedValue> {
    check_size(hand)?;
    Ok(shaped_value_unchecked(hand, params))
}

pub(crate) fn shaped_value_unchecked(hand: &HandCounts, params: &ShapingParams) -> ShapedValue {
    let shangting = shangting_unchecked(hand);
    let bonus = unscented_bonus_unchecked(hand);
    ShapedValue {
        shangting,
        bonus,
        combined: shangting as f64 + params.weight * bonus,
    }
}

/// `shaped_value(..).combined` without computing an unused bonus.
#[inline]
pub(crate) fn combined_unchecked(hand: &HandCounts, params: &ShapingParams) -> f64 {
    let shangting = shangting_unchecked(hand) as f64;
    if params.weight == 0.0 {
        shangting
    } else {
        shangting + params.weight * unscented_bonus_unchecked(hand)
    }
}

/// Reward for moving from `s` to `s_next`: the official payoff if the new
/// hand wins, otherwise the change in shaped value.
pub fn shaping_reward(s: &GameState, s_next: &GameState, params: &ShapingParams) -> Result<f64> {
    check_size(s.hand())?;
    check_size(s_next.hand())?;
    let current = combined_unchecked(s.hand(), params);
    Ok(reward_from(current, s_next.hand(), params))
}

/// Reward of reaching `next` given the shaped value of the current hand.
pub(crate) fn reward_from(current: f64, next: &HandCounts, params: &ShapingParams) -> f64 {
    if hand_eval::is_winning_unchecked(next) {
        hand_eval::score_hand(next, params.base_payoff, &params.rules)
            .expect("winning hand scores")
            .total_payoff
    } else {
        combined_unchecked(next, params) - current
    }
}
