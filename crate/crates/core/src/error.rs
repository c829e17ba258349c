use thiserror::Error;

use crate::greedy::Certificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: i64, b: i64 },

    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),

    #[error("construction not applicable: {0}")]
    NotApplicable(String),

    #[error("empty window: bound {bound} is below the pair cost {lambda}")]
    EmptyWindow { bound: String, lambda: String },

    #[error("alignment point {z} lies outside the window [{lo}, {hi}]")]
    WindowViolation { z: String, lo: String, hi: String },

    /// No alignment point fell in the union of the two windows; `best_effort`
    /// still holds a sound (but weaker) certificate.
    #[error("(a, b, n) = ({a}, {b}, {n}) is outside the asymptotic regime")]
    NotInAsymptoticRegime {
        a: i64,
        b: i64,
        n: i64,
        best_effort: Box<Certificate>,
    },

    #[error("set of size {size} exceeds the enumeration cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
