//! Batch statistics, tandem 1-v-1 duels and weight sweeps.
//!
//! All work items get their seeds from [`split_seed`] on their own index, and
//! results are gathered in index order, so the output does not depend on the
//! number of worker threads.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::engine::{play_game, Game, Outcome};
use crate::error::{Error, Result};
use crate::hand_eval::{payoff, Money};
use crate::rng::{split_seed, streams};
use crate::shaping::ShapingParams;
use crate::stats::{summarize, Summary};

/// Money at stake in a duel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stakes {
    pub base_payoff: Money,
    /// How many `2^m · b` shares the loser pays: 3 stands in for the three
    /// losers of a full table, 1 for a single opponent.
    pub transfer_factor: u32,
}

impl Default for Stakes {
    fn default() -> Self {
        Self {
            base_payoff: 2.0,
            transfer_factor: 3,
        }
    }
}

impl Stakes {
    pub fn validate(&self) -> Result<()> {
        if !matches!(self.transfer_factor, 1 | 3) {
            return Err(Error::InvalidParameter(format!(
                "transfer factor must be 1 or 3, got {}",
                self.transfer_factor
            )));
        }
        payoff(1, self.base_payoff).map(|_| ())
    }

    /// Amount the loser pays for a win with multiplier `m`.
    pub fn transfer(&self, multiplier: u32) -> Result<Money> {
        Ok(self.transfer_factor as f64 * payoff(multiplier, self.base_payoff)?.individual)
    }
}

/// Result of one game inside a batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameSummary {
    pub index: u64,
    pub seed: u64,
    pub won: bool,
    pub discards: u32,
    pub multiplier: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchStats {
    pub games: usize,
    pub completed: usize,
    pub completion_rate: f64,
    /// Discards to win over completed games; `None` if nothing completed.
    pub discards: Option<Summary>,
    pub discard_histogram: BTreeMap<u32, u64>,
    pub score_histogram: BTreeMap<u32, u64>,
}

impl BatchStats {
    pub fn from_games(games: &[GameSummary]) -> Self {
        let wins: Vec<&GameSummary> = games.iter().filter(|g| g.won).collect();
        let mut discard_histogram = BTreeMap::new();
        let mut score_histogram = BTreeMap::new();
        for g in &wins {
            *discard_histogram.entry(g.discards).or_insert(0) += 1;
            *score_histogram
                .entry(g.multiplier.expect("wins have a multiplier"))
                .or_insert(0) += 1;
        }
        let samples: Vec<f64> = wins.iter().map(|g| g.discards as f64).collect();
        Self {
            games: games.len(),
            completed: wins.len(),
            completion_rate: if games.is_empty() {
                0.0
            } else {
                wins.len() as f64 / games.len() as f64
            },
            discards: summarize(&samples).ok(),
            discard_histogram,
            score_histogram,
        }
    }

    /// Fraction of completed games won at multiplier `m`.
    pub fn score_share(&self, m: u32) -> f64 {
        if self.completed == 0 {
            return 0.0;
        }
        *self.score_histogram.get(&m).unwrap_or(&0) as f64 / self.completed as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchRun {
    pub stats: BatchStats,
    pub games: Vec<GameSummary>,
}

/// Plays `n` independent games with seeds split from `master_seed`.
pub fn run_batch(n: usize, params: &ShapingParams, master_seed: u64) -> Result<BatchRun> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "batch needs at least one game".into(),
        ));
    }
    params.validate()?;
    let games = (0..n as u64)
        .into_par_iter()
        .map(|index| {
            let seed = split_seed(master_seed, streams::BATCH_GAME, index);
            let log = play_game(seed, params)?;
            Ok(GameSummary {
                index,
                seed,
                won: log.outcome.is_win(),
                discards: log.outcome.discards(),
                multiplier: log.outcome.multiplier(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BatchRun {
        stats: BatchStats::from_games(&games),
        games,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Winner {
    Player1,
    Player2,
    Draw,
}

impl Winner {
    pub fn label(self) -> &'static str {
        match self {
            Winner::Player1 => "player1",
            Winner::Player2 => "player2",
            Winner::Draw => "draw",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuelResult {
    pub winner: Winner,
    /// Rounds played when the match ended.
    pub winning_turns: u32,
    /// Winner's multiplier; `None` on a draw.
    pub multiplier: Option<u32>,
    /// Money moved to player 2 (negative when player 1 wins).
    pub transfer: Money,
    pub seeds: (u64, u64),
}

/// Player seeds of a duel played under `master_seed`.
pub fn duel_seeds(master_seed: u64) -> (u64, u64) {
    (
        split_seed(master_seed, streams::MATCH_PLAYER, 1),
        split_seed(master_seed, streams::MATCH_PLAYER, 2),
    )
}

pub fn duel(
    master_seed: u64,
    params1: &ShapingParams,
    params2: &ShapingParams,
    stakes: &Stakes,
) -> Result<DuelResult> {
    let (s1, s2) = duel_seeds(master_seed);
    duel_with_seeds(s1, s2, params1, params2, stakes)
}

/// Races two independent single-player games (separate walls) one action
/// per round. The first to hold a winning hand takes `stakes.transfer(m)`
/// from the other; wins in the same round and double exhaustion are draws.
pub fn duel_with_seeds(
    seed1: u64,
    seed2: u64,
    params1: &ShapingParams,
    params2: &ShapingParams,
    stakes: &Stakes,
) -> Result<DuelResult> {
    stakes.validate()?;
    let mut g1 = Game::new(seed1, params1, false)?;
    let mut g2 = Game::new(seed2, params2, false)?;
    let mut round = 0;
    loop {
        let won = |g: &Game| match g.outcome() {
            Some(Outcome::Won { score, .. }) => Some(score.multiplier),
            _ => None,
        };
        let (w1, w2) = (won(&g1), won(&g2));
        let done = |g: &Game| g.outcome().is_some();
        let (winner, multiplier, transfer) = match (w1, w2) {
            (Some(_), Some(_)) => (Winner::Draw, None, 0.0),
            (Some(m), None) => (Winner::Player1, Some(m), -stakes.transfer(m)?),
            (None, Some(m)) => (Winner::Player2, Some(m), stakes.transfer(m)?),
            (None, None) if done(&g1) && done(&g2) => (Winner::Draw, None, 0.0),
            (None, None) => {
                g1.step();
                g2.step();
                round += 1;
                continue;
            }
        };
        return Ok(DuelResult {
            winner,
            winning_turns: round,
            multiplier,
            transfer,
            seeds: (seed1, seed2),
        });
    }
}

/// How the seeds of consecutive matches relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// Every match draws fresh seeds.
    Independent,
    /// Matches come in pairs; the second of each pair swaps the two players'
    /// seeds, so each player plays both deals.
    Mirrored,
}

/// Player seeds of match `index` in a series.
pub fn match_seeds(master_seed: u64, index: u64, pairing: Pairing) -> (u64, u64) {
    match pairing {
        Pairing::Independent => duel_seeds(split_seed(master_seed, streams::SERIES_MATCH, index)),
        Pairing::Mirrored => {
            let (a, b) = duel_seeds(split_seed(master_seed, streams::SERIES_MATCH, index / 2));
            if index.is_multiple_of(2) {
                (a, b)
            } else {
                (b, a)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchSeries {
    pub per_match: Vec<DuelResult>,
    /// Player 2's running earnings after each match.
    pub cumulative: Vec<Money>,
    /// Player 2's total earnings.
    pub total: Money,
}

impl MatchSeries {
    pub fn player1_total(&self) -> Money {
        -self.total
    }

    /// Player 2's earnings per match, the sample for the one-tailed test.
    pub fn transfers(&self) -> Vec<Money> {
        self.per_match.iter().map(|d| d.transfer).collect()
    }
}

pub fn run_match_series(
    n_matches: usize,
    params1: &ShapingParams,
    params2: &ShapingParams,
    stakes: &Stakes,
    master_seed: u64,
    pairing: Pairing,
) -> Result<MatchSeries> {
    if n_matches == 0 {
        return Err(Error::InvalidParameter(
            "series needs at least one match".into(),
        ));
    }
    stakes.validate()?;
    let per_match = (0..n_matches as u64)
        .into_par_iter()
        .map(|i| {
            let (s1, s2) = match_seeds(master_seed, i, pairing);
            duel_with_seeds(s1, s2, params1, params2, stakes)
        })
        .collect::<Result<Vec<_>>>()?;
    let cumulative: Vec<Money> = per_match
        .iter()
        .scan(0.0, |acc, d| {
            *acc += d.transfer;
            Some(*acc)
        })
        .collect();
    let total = cumulative.last().copied().unwrap_or(0.0);
    Ok(MatchSeries {
        per_match,
        cumulative,
        total,
    })
}

/// Player 2's total earnings for every pair of weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepMatrix {
    /// Row labels.
    pub weights1: Vec<f64>,
    /// Column labels.
    pub weights2: Vec<f64>,
    pub matches_per_cell: usize,
    /// `totals[row][col]`.
    pub totals: Vec<Vec<Money>>,
}

/// Runs a mirrored match series for every `(w1, w2)` cell. Every cell reuses
/// the same match seeds, so cells differ only in the weights. A diagonal
/// cell with an even match count totals exactly zero.
pub fn sweep(
    weights1: &[f64],
    weights2: &[f64],
    matches_per_cell: usize,
    base: &ShapingParams,
    stakes: &Stakes,
    master_seed: u64,
) -> Result<SweepMatrix> {
    if weights1.is_empty() || weights2.is_empty() {
        return Err(Error::InvalidParameter(
            "sweep needs at least one weight per player".into(),
        ));
    }
    let with = |w: f64| {
        let p = ShapingParams { weight: w, ..*base };
        p.validate().map(|_| p)
    };
    let rows = weights1
        .iter()
        .map(|&w| with(w))
        .collect::<Result<Vec<_>>>()?;
    let cols = weights2
        .iter()
        .map(|&w| with(w))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, usize)> = (0..rows.len())
        .flat_map(|r| (0..cols.len()).map(move |c| (r, c)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(r, c)| {
            run_match_series(
                matches_per_cell,
                &rows[r],
                &cols[c],
                stakes,
                master_seed,
                Pairing::Mirrored,
            )
            .map(|s| s.total)
        })
        .collect::<Result<Vec<_>>>()?;
    let totals = results.chunks(cols.len()).map(|row| row.to_vec()).collect();
    Ok(SweepMatrix {
        weights1: weights1.to_vec(),
        weights2: weights2.to_vec(),
        matches_per_cell,
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::play_game;

    #[test]
    fn stakes_transfer() {
        let s = Stakes::default();
        assert_eq!(s.transfer(1).unwrap(), 12.0);
        let single = Stakes {
            transfer_factor: 1,
            ..s
        };
        assert_eq!(single.transfer(1).unwrap(), 4.0);
        assert!(Stakes {
            transfer_factor: 2,
            ..s
        }
        .validate()
        .is_err());
        assert!(Stakes {
            base_payoff: -1.0,
            ..s
        }
        .validate()
        .is_err());
    }

    #[test]
    fn single_game_batch_matches_log() {
        let p = ShapingParams::default();
        let run = run_batch(1, &p, 99).unwrap();
        let log = play_game(run.games[0].seed, &p).unwrap();
        let st = &run.stats;
        assert_eq!(st.games, 1);
        assert_eq!(st.completed, usize::from(log.outcome.is_win()));
        if let Some(m) = log.outcome.multiplier() {
            let d = st.discards.unwrap();
            assert_eq!(d.mean, log.outcome.discards() as f64);
            assert_eq!((d.min, d.max, d.std), (d.mean, d.mean, 0.0));
            assert_eq!(st.discard_histogram.get(&log.outcome.discards()), Some(&1));
            assert_eq!(st.score_histogram.get(&m), Some(&1));
        }
        assert!(run_batch(0, &p, 1).is_err());
    }

    #[test]
    fn histogram_totals_match_completed() {
        let run = run_batch(40, &ShapingParams::default(), 5).unwrap();
        let st = &run.stats;
        assert_eq!(
            st.discard_histogram.values().sum::<u64>() as usize,
            st.completed
        );
        assert_eq!(
            st.score_histogram.values().sum::<u64>() as usize,
            st.completed
        );
        let d = st.discards.unwrap();
        assert!(d.min <= d.mean && d.mean <= d.max);
    }

    #[test]
    fn mirrored_duel_negates() {
        let p1 = ShapingParams::with_weight(0.0);
        let p2 = ShapingParams::with_weight(1.2);
        let stakes = Stakes::default();
        for master in 0..10 {
            let (a, b) = duel_seeds(master);
            let fwd = duel_with_seeds(a, b, &p1, &p2, &stakes).unwrap();
            let rev = duel_with_seeds(b, a, &p2, &p1, &stakes).unwrap();
            assert_eq!(fwd.transfer, -rev.transfer);
            assert_eq!(fwd.winning_turns, rev.winning_turns);
            let mirrored = match fwd.winner {
                Winner::Player1 => Winner::Player2,
                Winner::Player2 => Winner::Player1,
                Winner::Draw => Winner::Draw,
            };
            assert_eq!(rev.winner, mirrored);
        }
    }

    #[test]
    fn duel_matches_standalone_games() {
        // Lockstep result equals comparing two full games' discard counts.
        let p1 = ShapingParams::with_weight(0.0);
        let p2 = ShapingParams::with_weight(1.0);
        for master in 0..8 {
            let (a, b) = duel_seeds(master);
            let d = duel_with_seeds(a, b, &p1, &p2, &Stakes::default()).unwrap();
            let (l1, l2) = (play_game(a, &p1).unwrap(), play_game(b, &p2).unwrap());
            let key = |o: &Outcome| if o.is_win() { o.discards() } else { u32::MAX };
            let (k1, k2) = (key(&l1.outcome), key(&l2.outcome));
            let expected = match k1.cmp(&k2) {
                std::cmp::Ordering::Less => Winner::Player1,
                std::cmp::Ordering::Greater => Winner::Player2,
                std::cmp::Ordering::Equal => Winner::Draw,
            };
            assert_eq!(d.winner, expected);
            if d.winner != Winner::Draw {
                assert_eq!(d.winning_turns, k1.min(k2));
            }
        }
    }

    #[test]
    fn mirrored_seeds_swap() {
        let (a, b) = match_seeds(7, 4, Pairing::Mirrored);
        assert_eq!(match_seeds(7, 5, Pairing::Mirrored), (b, a));
        assert_ne!(match_seeds(7, 6, Pairing::Mirrored), (a, b));
        assert_ne!(
            match_seeds(7, 0, Pairing::Independent),
            match_seeds(7, 1, Pairing::Independent)
        );
    }

    #[test]
    fn sweep_shape_and_validation() {
        let m = sweep(
            &[0.0, 1.0],
            &[1.0, 1.2],
            2,
            &ShapingParams::default(),
            &Stakes::default(),
            3,
        )
        .unwrap();
        assert_eq!(m.totals.len(), 2);
        assert!(m.totals.iter().all(|r| r.len() == 2));
        assert_eq!(m.totals[1][0], 0.0, "diagonal mirrored cell");
        assert!(sweep(
            &[],
            &[1.0],
            2,
            &ShapingParams::default(),
            &Stakes::default(),
            3
        )
        .is_err());
        assert!(sweep(
            &[-1.0],
            &[1.0],
            2,
            &ShapingParams::default(),
            &Stakes::default(),
            3
        )
        .is_err());
    }
}
