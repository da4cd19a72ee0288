//! Single-player Mahjong as a Markov decision process.
//!
//! The player holds 14 tiles, discards one and draws a uniformly random tile
//! from the wall until the hand wins or the wall runs out. Decisions come
//! from an exact depth-1 forward search over a shaped reward: the change in
//! a greedy ShangTing distance plus a weighted bonus for high-scoring hand
//! features, or the official payoff when the next hand wins.
//!
//! * [`tileset`]: tiles, count vectors, game state and the draw model
//! * [`hand_eval`]: winning-hand detection, decomposition, scoring
//! * [`shaping`]: ShangTing, the unscented bonus and the shaping reward
//! * [`planner`]: Q-values, the greedy policy, search-size formulas
//! * [`engine`]: the game loop and replayable logs ([`game_log`] for text)
//! * [`arena`]: batches, tandem duels, match series and weight sweeps
//! * [`stats`]: summaries and the one-tailed t-test
//! * [`report`]: CSV and text exports

pub mod arena;
pub mod engine;
pub mod error;
pub mod game_log;
pub mod hand_eval;
pub mod planner;
pub mod report;
pub mod rng;
pub mod shaping;
pub mod stats;
pub mod tileset;

pub use error::{Error, Result};
pub use hand_eval::Money;
pub use shaping::ShapingParams;
pub use tileset::{GameState, HandCounts, TileCounts, TileKind};
