//! Crate-wide error type.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Expansion base or power-sum argument is constant.
    InvalidBase(String),
    /// Requested index is outside the well-defined range.
    OutOfRange(String),
    /// Root finding or analytic continuation failed to converge, or a
    /// consistency check on the continuation output failed.
    NumericFailure(String),
    /// Block-system machinery was handed an intransitive action.
    NotTransitive,
    /// Group closure exceeded the element cap.
    CapExceeded { cap: usize },
    /// Numeric margins are too thin to decide a geometric predicate.
    DegenerateGeometry(String),
    /// A composition factor is none of the supported classes.
    UnsupportedFactor(String),
    /// The non-merging hypothesis fails for the decomposition chain.
    HypothesisViolated(String),
    /// A balanced chain of a two-transitive polynomial with non-constant
    /// coefficients: signals an upstream monodromy bug.
    NonConstantBalanced,
    /// The inhomogeneous problem has no solution (the chain is a cycle).
    NoSolution,
    /// Blocks do not fit the chain they are applied to.
    ShapeError(String),
    /// Malformed user input.
    InvalidInput(String),
    /// Recursion exceeded the depth budget.
    DepthExceeded,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBase(s) => write!(f, "invalid base: {s}"),
            Error::OutOfRange(s) => write!(f, "out of range: {s}"),
            Error::NumericFailure(s) => write!(f, "numeric failure: {s}"),
            Error::NotTransitive => write!(f, "group action is not transitive"),
            Error::CapExceeded { cap } => write!(f, "group closure exceeded cap {cap}"),
            Error::DegenerateGeometry(s) => write!(f, "degenerate geometry: {s}"),
            Error::UnsupportedFactor(s) => write!(f, "unsupported factor: {s}"),
            Error::HypothesisViolated(s) => write!(f, "hypothesis violated: {s}"),
            Error::NonConstantBalanced => {
                write!(
                    f,
                    "balanced chain of a two-transitive polynomial is not constant"
                )
            }
            Error::NoSolution => write!(f, "no solution: the chain is a cycle"),
            Error::ShapeError(s) => write!(f, "shape error: {s}"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
            Error::DepthExceeded => write!(f, "recursion depth budget exceeded"),
        }
    }
}

impl std::error::Error for Error {}
