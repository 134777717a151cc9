use std::collections::BTreeSet;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("quadratic extensions with different discriminants: {lhs} vs {rhs}")]
    DiscriminantMismatch { lhs: String, rhs: String },

    #[error("element is not invertible: {0}")]
    NonInvertible(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("recurrence coefficient {0} must be nonzero")]
    ZeroCoefficient(&'static str),

    /// A Binet-style evaluation left an irrational residue where the result must be rational.
    #[error("nonzero surd part in {0}")]
    SurdResidue(String),

    #[error("index {index} is outside the domain of {accessor}")]
    IndexOutOfDomain { accessor: String, index: i64 },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("{0}")]
    Syntax(#[from] SyntaxError),
}

/// Parse failure with a 1-based source position and the set of tokens that would have been
/// accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{column}: found {found}, expected one of {}", fmt_expected(.expected))]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: BTreeSet<String>,
}

fn fmt_expected(expected: &BTreeSet<String>) -> String {
    expected.iter().cloned().collect::<Vec<_>>().join(", ")
}
