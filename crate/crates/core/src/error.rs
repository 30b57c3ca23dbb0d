use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("label arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("operation `{op}` needs arity {expected}, got {found}")]
    WrongArity {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("labeled nodes are adjacent in {0}; contraction is only defined when they are not")]
    AdjacentLabels(String),

    #[error("corpus too large: about {estimate} candidate graphs exceeds the limit {limit}")]
    CorpusTooLarge { estimate: u128, limit: u128 },

    #[error("invalid weighted graph: {0}")]
    InvalidWeightedGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter `{param}` failed on {graph}: {reason}")]
    Evaluation {
        param: String,
        graph: String,
        reason: String,
    },

    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("no contractor synthesizable: {0}")]
    NoContractor(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    ParseAt {
        line: usize,
        column: usize,
        message: String,
    },
}
