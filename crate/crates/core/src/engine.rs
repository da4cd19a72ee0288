//! The single-game loop and its replayable log.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hand_eval::{self, ScoreBreakdown};
use crate::planner::{self, QReport};
use crate::rng::GameRng;
use crate::shaping::ShapingParams;
use crate::tileset::{GameState, HandCounts, TileKind};

/// How a game ended.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Won {
        score: ScoreBreakdown,
        discards: u32,
    },
    Exhausted {
        discards: u32,
    },
}

impl Outcome {
    pub fn discards(&self) -> u32 {
        match self {
            Outcome::Won { discards, .. } | Outcome::Exhausted { discards } => *discards,
        }
    }

    pub fn is_win(&self) -> bool {
        matches!(self, Outcome::Won { .. })
    }

    pub fn multiplier(&self) -> Option<u32> {
        match self {
            Outcome::Won { score, .. } => Some(score.multiplier),
            Outcome::Exhausted { .. } => None,
        }
    }
}

/// One action of a game.
#[derive(Debug, Clone, PartialEq)]
pub struct TurnRecord {
    /// The 14-tile hand the action was chosen from.
    pub hand: HandCounts,
    /// Present only when the game was played with Q recording on.
    pub q_report: Option<QReport>,
    pub discard: TileKind,
    pub drawn: TileKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameLog {
    pub seed: u64,
    pub params: ShapingParams,
    pub turns: Vec<TurnRecord>,
    pub outcome: Outcome,
}

impl GameLog {
    /// Re-applies the recorded actions from a fresh deal and returns every
    /// 14-tile state in order (the deal first). Fails if the log is not
    /// consistent with its seed or its own outcome.
    pub fn replay(&self) -> Result<Vec<GameState>> {
        let mut state = GameState::deal(self.seed);
        let mut states = vec![state];
        for (i, turn) in self.turns.iter().enumerate() {
            let diverged = |message: String| Error::Replay {
                turn: i + 1,
                message,
            };
            if turn.hand != *state.hand() {
                return Err(diverged(format!(
                    "recorded hand {} but state holds {}",
                    turn.hand,
                    state.hand()
                )));
            }
            if hand_eval::is_winning_unchecked(state.hand()) {
                return Err(diverged("action recorded after a winning hand".into()));
            }
            if let Some(q) = &turn.q_report {
                if q.best != turn.discard {
                    return Err(diverged(format!(
                        "discard {} is not the recorded best {}",
                        turn.discard, q.best
                    )));
                }
            }
            state = state
                .apply(turn.discard, turn.drawn)
                .map_err(|e| diverged(e.to_string()))?;
            states.push(state);
        }
        let end = self.turns.len() + 1;
        let check = |ok: bool, message: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Replay {
                    turn: end,
                    message: message.into(),
                })
            }
        };
        check(
            self.outcome.discards() as usize == self.turns.len(),
            "outcome discard count",
        )?;
        match &self.outcome {
            Outcome::Won { score, .. } => {
                let rescored = hand_eval::score_hand(
                    state.hand(),
                    self.params.base_payoff,
                    &self.params.rules,
                )
                .map_err(|e| Error::Replay {
                    turn: end,
                    message: e.to_string(),
                })?;
                check(
                    rescored == *score,
                    "recorded score differs from the final hand",
                )?;
            }
            Outcome::Exhausted { .. } => {
                check(
                    state.wall_size() == 0,
                    "exhausted with tiles left in the wall",
                )?;
                check(
                    !hand_eval::is_winning_unchecked(state.hand()),
                    "exhausted holding a winning hand",
                )?;
            }
        }
        Ok(states)
    }

    /// Replays the log and checks that the policy reproduces it exactly.
    pub fn verify(&self) -> Result<()> {
        self.replay()?;
        let record_q = self.turns.first().is_some_and(|t| t.q_report.is_some());
        let fresh = play_game_with(self.seed, &self.params, record_q)?;
        if fresh != *self {
            let turn = fresh
                .turns
                .iter()
                .zip(&self.turns)
                .position(|(a, b)| a != b)
                .map_or(fresh.turns.len().min(self.turns.len()), |i| i)
                + 1;
            return Err(Error::Replay {
                turn,
                message: "policy chose differently".into(),
            });
        }
        Ok(())
    }
}

/// A game in progress, advanced one action at a time.
#[derive(Debug, Clone)]
pub struct Game {
    seed: u64,
    params: ShapingParams,
    rng: GameRng,
    state: GameState,
    turns: Vec<TurnRecord>,
    record_q: bool,
    outcome: Option<Outcome>,
}

impl Game {
    /// Deals from `seed`. A winning deal ends the game with zero discards.
    pub fn new(seed: u64, params: &ShapingParams, record_q: bool) -> Result<Self> {
        params.validate()?;
        let mut rng = GameRng::from_seed(seed);
        let state = GameState::deal_with(&mut rng);
        let mut game = Self {
            seed,
            params: *params,
            rng,
            state,
            turns: Vec::new(),
            record_q,
            outcome: None,
        };
        game.check_terminal();
        Ok(game)
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn outcome(&self) -> Option<&Outcome> {
        self.outcome.as_ref()
    }

    pub fn discards(&self) -> u32 {
        self.turns.len() as u32
    }

    fn check_terminal(&mut self) {
        let discards = self.discards();
        if hand_eval::is_winning_unchecked(self.state.hand()) {
            let score = hand_eval::score_hand(
                self.state.hand(),
                self.params.base_payoff,
                &self.params.rules,
            )
            .expect("winning hand scores");
            self.outcome = Some(Outcome::Won { score, discards });
        } else if self.state.wall_size() == 0 {
            self.outcome = Some(Outcome::Exhausted { discards });
        }
    }

    /// Plays one discard and draw. Returns the outcome once the game is over;
    /// further calls are no-ops.
    pub fn step(&mut self) -> Option<&Outcome> {
        if self.outcome.is_some() {
            return self.outcome.as_ref();
        }
        let report = planner::q_values(&self.state, &self.params)
            .expect("live game has 14 tiles and a wall");
        let discard = report.best;
        let hand = *self.state.hand();
        let post = self
            .state
            .discard_tile(discard)
            .expect("best action is held");
        let drawn = post.sample_wall(&mut self.rng).expect("wall is nonempty");
        self.state = post.draw_tile(drawn).expect("sampled from the wall");
        self.turns.push(TurnRecord {
            hand,
            q_report: self.record_q.then_some(report),
            discard,
            drawn,
        });
        self.check_terminal();
        self.outcome.as_ref()
    }

    /// Plays to the end.
    pub fn finish(mut self) -> GameLog {
        while self.step().is_none() {}
        GameLog {
            seed: self.seed,
            params: self.params,
            turns: self.turns,
            outcome: self.outcome.expect("finished"),
        }
    }
}

/// Plays one full game without recording Q-values.
pub fn play_game(seed: u64, params: &ShapingParams) -> Result<GameLog> {
    play_game_with(seed, params, false)
}

pub fn play_game_with(seed: u64, params: &ShapingParams, record_q: bool) -> Result<GameLog> {
    Ok(Game::new(seed, params, record_q)?.finish())
}

/// Fixed-width view of a hand with each tile's Q-value beneath it and the
/// recommended discard marked.
pub fn render_snapshot(state: &GameState, report: &QReport) -> Result<String> {
    let kinds: Vec<TileKind> = state.hand().kinds().collect();
    let reported: Vec<TileKind> = report.actions.iter().map(|&(k, _)| k).collect();
    if kinds != reported || !kinds.contains(&report.best) {
        return Err(Error::InvalidState(
            "Q report does not match the hand".into(),
        ));
    }
    let columns: Vec<(String, String, bool)> = state
        .hand()
        .tiles()
        .scan(None, |prev, k| {
            let first = *prev != Some(k);
            *prev = Some(k);
            let q = report.q(k).expect("checked above");
            Some((k.to_string(), format!("{q:.4}"), first && k == report.best))
        })
        .collect();
    let width = columns
        .iter()
        .map(|(t, q, _)| t.len().max(q.len()))
        .max()
        .unwrap_or(0)
        + 2;

    let mut out = String::new();
    let _ = write!(out, "{:<6}", "hand");
    for (t, _, _) in &columns {
        let _ = write!(out, "{t:>width$}");
    }
    let _ = write!(out, "\n{:<6}", "q");
    for (_, q, _) in &columns {
        let _ = write!(out, "{q:>width$}");
    }
    let _ = write!(out, "\n{:<6}", "best");
    for (_, _, best) in &columns {
        let _ = write!(out, "{:>width$}", if *best { "^" } else { "" });
    }
    let line_end = out.trim_end().len();
    out.truncate(line_end);
    let _ = writeln!(out, "  discard {}", report.best);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tileset::{hand, parse_tile};

    #[test]
    fn same_seed_same_log() {
        let p = ShapingParams::with_weight(0.0);
        let a = play_game_with(42, &p, true).unwrap();
        let b = play_game_with(42, &p, true).unwrap();
        assert_eq!(a, b);
        assert!(a.outcome.discards() <= 122);
        a.replay().unwrap();
        a.verify().unwrap();
    }

    #[test]
    fn log_states_satisfy_invariants() {
        let log = play_game(7, &ShapingParams::with_weight(1.2)).unwrap();
        let states = log.replay().unwrap();
        assert_eq!(states.len(), log.turns.len() + 1);
        for (i, s) in states.iter().enumerate() {
            s.validate().unwrap();
            assert_eq!(s.hand().total(), 14);
            assert_eq!(s.discards().total(), i);
        }
        if log.outcome.is_win() {
            assert!(hand_eval::is_winning(states.last().unwrap().hand()).unwrap());
        }
    }

    #[test]
    fn tampered_log_fails_replay() {
        let mut log = play_game(3, &ShapingParams::default()).unwrap();
        assert!(!log.turns.is_empty());
        let other = TileKind::all().find(|&k| k != log.turns[0].drawn).unwrap();
        log.turns[0].drawn = other;
        assert!(log.replay().is_err() || log.verify().is_err());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(play_game(1, &ShapingParams::with_weight(-1.0)).is_err());
    }

    #[test]
    fn snapshot_layout() {
        let state = GameState::from_hand(hand("1m 4m 7m 1p 4p 7p 1s 4s 7s E S W N RD")).unwrap();
        let report = planner::q_values(&state, &ShapingParams::default()).unwrap();
        let text = render_snapshot(&state, &report).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0].split_whitespace().count(), 15);
        assert_eq!(lines[1].split_whitespace().count(), 15);
        assert_eq!(text, render_snapshot(&state, &report).unwrap());

        let wrong = GameState::deal(1);
        assert!(render_snapshot(&wrong, &report).is_err());
    }

    #[test]
    fn snapshot_marks_best() {
        // Four sets, a lone E and junk 9m; the wall holds two E and no 9m.
        let held = hand("1m*3 2m*3 3p 4p 5p 7s 8s 9s E 9m");
        let wall = hand("E*2 5s*3");
        let mut discard = crate::tileset::TileCounts::full_set();
        for k in held.tiles().chain(wall.tiles()) {
            discard.remove(k);
        }
        let state = GameState::from_zones(wall, held, discard).unwrap();
        let report = planner::q_values(&state, &ShapingParams::default()).unwrap();
        assert_eq!(report.best, parse_tile("9m").unwrap());
        let text = render_snapshot(&state, &report).unwrap();
        assert!(text.ends_with("discard 9m\n"), "{text}");
        let marker_col = text.lines().nth(2).unwrap().find('^').unwrap();
        let hand_line = text.lines().next().unwrap();
        assert_eq!(&hand_line[marker_col - 1..=marker_col], "9m");
    }
}
