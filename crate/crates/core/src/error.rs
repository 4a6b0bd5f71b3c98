use thiserror::Error;

use crate::lshape::LShape;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid L-shape L({l},{h},{w},{y}): {reason}")]
    InvalidLShape {
        l: u64,
        h: u64,
        w: u64,
        y: u64,
        reason: &'static str,
    },

    #[error("{0} is not admissible: (l-y)(h-w) must be >= 0 with at least one factor non-zero")]
    NotAdmissible(LShape),

    #[error("{divisor} does not divide {what} = {value}")]
    Divisibility {
        what: &'static str,
        divisor: u64,
        value: u64,
    },

    #[error("scale factor must be at least 1")]
    ZeroScale,

    #[error("singular matrix has no Smith normal form with positive invariant factors")]
    SingularMatrix,

    #[error("degenerate generator set: {0}")]
    DegenerateGenerators(String),

    #[error("invalid group Z_{s1} + Z_{s2}: {reason}")]
    InvalidGroup { s1: u64, s2: u64, reason: &'static str },

    #[error("generators do not generate the group (reached {reached} of {order} elements)")]
    NotGenerating { reached: u64, order: u64 },

    #[error("order {order} exceeds the BFS cap {cap}; use formula-based verification")]
    OrderCapExceeded { order: u64, cap: u64 },

    #[error("extension coefficient is infinite for N = 3*{t}^2")]
    InfiniteCoefficient { t: u64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("no minimum distance diagram found for {0}; this contradicts the L-shape characterization")]
    NoDiagram(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}
