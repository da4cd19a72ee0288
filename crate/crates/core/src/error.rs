use crate::tileset::TileKind;

/// Errors produced by the solver library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid tile token `{0}`")]
    ParseTile(String),

    #[error("expected a hand of {expected} tiles, found {found}")]
    HandSize { expected: usize, found: usize },

    #[error("tile {0} is not in the hand")]
    NotInHand(TileKind),

    #[error("tile {0} is not in the wall")]
    NotInWall(TileKind),

    #[error("the wall is exhausted")]
    WallExhausted,

    #[error("hand is not a winning hand")]
    NotWinning,

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("score table: {0}")]
    ScoreTable(String),

    #[error("game log line {line}: {message}")]
    LogFormat { line: usize, message: String },

    #[error("replay diverged at turn {turn}: {message}")]
    Replay { turn: usize, message: String },

    #[error("{0}")]
    Stats(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
