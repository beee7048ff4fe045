//! Error type shared by the library, the file formats and the command line.

use thiserror::Error;

/// Everything that can go wrong constructing or combining model objects,
/// reading inputs, or interpreting a command line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: left is (M={0}, L={1}, a={2}), right is (M={3}, L={4}, a={5})")]
    GridMismatch(usize, usize, usize, usize, usize, usize),

    #[error("length mismatch: expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("point ({x}, {y}) is not on the phase-space grid (spacings 1/M, 1/L)")]
    OffGrid { x: f64, y: f64 },

    #[error("group scalar must lie on the unit circle, |z| = {0}")]
    ScalarOffCircle(f64),

    #[error("dual window index (k={k}, l={l}) outside 0..{k_max} x 0..{l_max}")]
    WindowIndex {
        k: usize,
        l: usize,
        k_max: usize,
        l_max: usize,
    },

    #[error("operator rank {rank} must be smaller than the lattice parameter a = {a}")]
    RankTooLarge { rank: usize, a: usize },

    #[error("orthocomplement needs fewer fields than the fiber dimension: got {fields}, fiber is {fiber}")]
    TooManyFields { fields: usize, fiber: usize },

    #[error("unknown verification suite {0}")]
    UnknownSuite(String),

    #[error("randomized suite '{0}' needs an explicit seed (--seed or config)")]
    SeedRequired(String),

    #[error("{0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
