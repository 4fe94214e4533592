use thiserror::Error;

/// Errors raised by the library. Every guard violation is a structured
/// value rather than a panic so callers (and the CLI) can map them to exit
/// codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size guard: {what} ({size}) exceeds the limit {limit}")]
    SizeGuard {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("element is not a unit")]
    NotInvertible,

    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(u64, u64),

    #[error("no unit root: p divides the trace {0}")]
    NoUnitRoot(i64),

    #[error("singular curve")]
    SingularCurve,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no stabilization of the component group up to degree {0}")]
    NoStabilization(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        Err(Error::SizeGuard { what, size, limit })
    } else {
        Ok(())
    }
}
