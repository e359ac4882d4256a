use thiserror::Error;

#[derive(Debug, Error)]
pub enum TropError {
    #[error("graph not connected")]
    NotConnected,
    #[error("edge length must be positive (edge {0})")]
    NonpositiveLength(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("point offset {offset} outside [0, {len}] on edge {edge}")]
    OffsetOutOfRange {
        edge: String,
        offset: String,
        len: String,
    },
    #[error("subdivision too large: {0} unit edges exceeds the scaling budget {1}")]
    ScalingBudget(u64, u64),
    #[error("reduction budget exceeded")]
    ReductionBudget,
    #[error("negative rank divisor has no gap sequence")]
    NegativeRankGaps,
    #[error("breakpoint denominator exceeds Q_max ({qmax}) on edge {edge}; rerun with a larger bound (--qmax/--grid)")]
    SweepResolution { edge: String, qmax: u64 },
    #[error("gap-sequence map violates upper-semicontinuity near {at} on edge {edge}: probe order too coarse; rerun with a larger --grid")]
    SweepInconsistent { edge: String, at: String },
    #[error("hyperelliptic fast path requires v0")]
    MissingV0,
    #[error("empty region")]
    EmptyRegion,
    #[error("oracle instance too large: {0}")]
    OracleTooLarge(String),
    #[error("oracle requires a degree-0 divisor, got degree {0}")]
    OracleDegree(i64),
    #[error("transport path is not exact on this graph (a cycle closes with unequal values)")]
    TransportNotExact,
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, TropError>;
