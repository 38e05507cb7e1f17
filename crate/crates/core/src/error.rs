use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} channels, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("channel {channel} out of range 1..={channels}")]
    ChannelOutOfRange { channel: usize, channels: usize },

    #[error("comparator ({0},{0}) joins a channel to itself")]
    DegenerateComparator(usize),

    #[error("channel {channel} used twice in layer {layer}")]
    ChannelReused { layer: usize, channel: usize },

    #[error("comparator ({low},{high}) is reversed in a standard network")]
    ReversedComparator { low: usize, high: usize },

    #[error("{what}: n = {n} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("pad {pad} must be smaller than the channel count {n}")]
    PadTooLarge { pad: usize, n: usize },

    #[error("expected a two-layer network, got depth {0}")]
    NotTwoLayer(usize),

    #[error("first layer is not maximal")]
    FirstLayerNotMaximal,

    #[error("network is not connected")]
    Disconnected,

    #[error("malformed word `{word}`: {reason}")]
    MalformedWord { word: String, reason: String },

    #[error("malformed sentence `{0}`")]
    MalformedSentence(String),

    #[error("not a cycle word: `{0}`")]
    NotACycle(String),

    #[error("unsupported n = {n} for {what}")]
    Unsupported { what: &'static str, n: usize },

    #[error("prefix of depth {prefix} does not fit in depth {depth}")]
    PrefixTooDeep { prefix: usize, depth: usize },

    #[error("prefix index {index} out of range 1..={count}")]
    PrefixIndex { index: usize, count: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("failed to parse network JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid report: {0}")]
    InvalidReport(String),

    #[error("failed to launch solver `{path}`: {source}")]
    SolverSpawn {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("no SAT solver found; set SAT_SOLVER or put cadical/kissat on PATH")]
    NoSolver,

    #[error("decoded network failed verification: {0}")]
    WitnessRejected(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
