use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("matrix is not in the class G_n: {0}")]
    NotInClassGn(String),
    #[error("quotient is not Artinian: no pure power of x_{var} among the generators")]
    NotArtinian { var: usize },
    #[error("{what} is {size}, over the limit of {limit}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no edge between the root and vertex {0}")]
    NoRootEdge(usize),
    #[error("non-integral value where an integer was required: {0}")]
    NonIntegral(String),
    #[error("formula domain error: {0}")]
    Domain(String),
    #[error("value {0} does not fit the exponent range")]
    Overflow(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
