//! Error type shared by every module of the crate.

use std::fmt;

/// All fallible operations return this error.
///
/// Exact arithmetic never approximates: anything that cannot be represented
/// or decided at the requested degree bound is reported as an error instead
/// of being silently truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text (element strings, JSON files).
    Parse(String),
    /// An operation mixed elements of two different rings.
    RingMismatch(String),
    /// A polynomial operation produced a monomial beyond the tracked degree.
    DegreeOverflow { degree: i64, bound: i64 },
    /// Inversion was requested for a non-unit.
    NotInvertible(String),
    /// The ring grammar or an operation outside its supported shape.
    Unsupported(String),
    /// Incompatible matrix or vector dimensions.
    Dimension(String),
    /// A documented precondition of an operation does not hold.
    Precondition(String),
    /// Integer overflow in exact linear algebra.
    Arithmetic(String),
    /// A self-check failed; carries the first failing item.
    Verification(String),
    /// A reproduction script disagreed with its expected table.
    ExampleMismatch(Vec<String>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::RingMismatch(m) => write!(f, "ring mismatch: {m}"),
            Error::DegreeOverflow { degree, bound } => {
                write!(f, "degree {degree} exceeds tracked bound {bound}")
            }
            Error::NotInvertible(m) => write!(f, "not invertible: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Dimension(m) => write!(f, "dimension error: {m}"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::Arithmetic(m) => write!(f, "arithmetic overflow: {m}"),
            Error::Verification(m) => write!(f, "verification failed: {m}"),
            Error::ExampleMismatch(diffs) => {
                writeln!(f, "reproduction mismatch:")?;
                for d in diffs {
                    writeln!(f, "  {d}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
