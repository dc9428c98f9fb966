use std::fmt;

/// Errors surfaced by parsing, construction, and the solver front ends.
///
/// Contract violations that can only arise from caller bugs (index out of
/// range, mismatched dimensions in the linear algebra core) panic instead.
#[derive(Debug)]
pub enum Error {
    /// Malformed textual input (ANF, bit string, map spec, config file).
    Parse(String),
    /// Degree outside `1 <= d <= m`.
    InvalidDegree { d: usize, m: usize },
    /// Sequence shorter than an operation requires.
    SequenceTooShort { len: usize, min: usize },
    /// Exhaustive enumeration refused: `2^m` states above the cap.
    OrderTooLarge { m: usize, cap: usize },
    /// Operation requires an invertible system but none exists.
    NoInverse,
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidDegree { d, m } => {
                write!(f, "degree {d} outside valid range 1..={m}")
            }
            Error::SequenceTooShort { len, min } => {
                write!(f, "sequence of length {len} too short (need at least {min})")
            }
            Error::OrderTooLarge { m, cap } => {
                write!(f, "order {m} exceeds exhaustive-enumeration cap {cap}")
            }
            Error::NoInverse => write!(f, "no invertible associated polynomial exists"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
