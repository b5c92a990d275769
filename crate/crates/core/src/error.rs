use thiserror::Error;

/// Every failure the structures in this crate can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("aggregate {0} has no inverse")]
    NotInvertible(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("product inverse is not an integer: {0} / {1}")]
    InexactInverse(i64, i64),
    #[error("unknown aggregate `{0}` (expected SUM, PRODUCT, XOR, MIN or MAX)")]
    UnknownAggregate(String),

    #[error("point set is empty")]
    EmptyPointSet,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no point at the given coordinates")]
    UnknownPoint,
    #[error("range updates with {0} are not supported in {1} dimension(s)")]
    UnsupportedCombination(&'static str, usize),
    #[error("range updates were not enabled when the tree was built")]
    RangeUpdatesDisabled,
    #[error("inverted box in dimension {0}: lower bound exceeds upper bound")]
    InvertedBox(usize),

    #[error("PRODUCT cube contains a zero cell")]
    ZeroInProductCube,
    #[error("PRODUCT batch update with u = 0")]
    ZeroUpdateInProductMode,
    #[error("cell box out of the grid in dimension {0}")]
    BadCellBox(usize),
    #[error("cube shape and cell count disagree: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("tree contains a cycle (vertex {0} unreachable from the root)")]
    CycleDetected(usize),
    #[error("vertex {0} has no parent and is not the root")]
    DisconnectedVertex(usize),
    #[error("vertex {0} has more than one parent")]
    DuplicateParent(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("negative edge length on edge into vertex {0}")]
    NegativeLength(usize),

    #[error("invalid station {0}: need r > s > 0 and c >= 0")]
    InvalidStation(usize),

    #[error("rank {k} out of range 1..={total}")]
    RankOutOfRange { k: usize, total: usize },
    #[error("bad subrange for sequence {0}")]
    BadSubrange(usize),
    #[error("sequence {0} is not strictly increasing or holds a sentinel value")]
    BadSequence(usize),

    #[error("empty input")]
    EmptyInput,
    #[error("total weight is zero")]
    ZeroTotalWeight,
    #[error("weight would become negative")]
    NegativeWeight,
    #[error("box holds zero total weight")]
    EmptyRange,
    #[error("axis {0} coordinates are not sorted")]
    UnsortedAxis(usize),

    #[error("position {pos} out of range (length {len})")]
    PositionOutOfRange { pos: i64, len: usize },
    #[error("paste target {p} invalid for remaining length {len}")]
    BadPasteTarget { p: i64, len: usize },

    #[error("capacity of {0} pushes exceeded")]
    CapacityExceeded(usize),

    #[error("points share an abscissa; no crossover exists")]
    NoCrossover,
    #[error("query {query}: rank {k} exceeds eligible count {eligible}")]
    RankExceedsEligible { query: usize, k: usize, eligible: usize },
    #[error("point {0} has negative y")]
    NegativeY(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
