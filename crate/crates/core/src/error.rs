//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors produced by exact computations.
///
/// `InexactDivision` and `Unsolvable` deserve a note: the callers that can
/// hit them are encoding identities that are supposed to hold on the nose,
/// so reaching either one means an invariant of the construction failed.
/// They are surfaced as errors rather than panics so verification drivers
/// can report them as named check failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two polynomials (or a derivation and a polynomial) live over
    /// different variable sets; callers must `embed` first.
    VarSetMismatch,
    /// A variable name is not part of the variable set in play.
    UnknownVariable(String),
    /// `divide_exact` found a non-zero remainder.
    InexactDivision,
    /// Text or JSON parsing failed; `pos` is a byte offset where known.
    Parse { pos: usize, msg: String },
    /// An omega-ring operation needed a variable index beyond the
    /// configured truncation bound.
    IndexOutOfRange(String),
    /// A graded operation required a homogeneous derivation and the
    /// generator images do not share a single degree shift.
    InhomogeneousDerivation,
    /// A graded operation required a homogeneous input.
    Inhomogeneous(String),
    /// An iterated application of a derivation did not reach zero within
    /// the caller-supplied bound.
    NilpotencyBoundExceeded,
    /// The element passed to a Dixmier map is not a local slice
    /// (requires D^2 s = 0 and D s != 0).
    NotLocalSlice,
    /// A cable prefix failed its defining laws at the given index.
    CableViolation { index: usize, msg: String },
    /// Matrix/vector dimensions do not line up.
    DimensionMismatch,
    /// A linear solve that the construction guarantees to be solvable had
    /// no solution.
    Unsolvable(String),
    /// A precondition on the arguments was violated.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VarSetMismatch => write!(f, "variable sets do not match"),
            Error::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            Error::InexactDivision => write!(f, "division is not exact"),
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::IndexOutOfRange(msg) => write!(f, "index out of range: {msg}"),
            Error::InhomogeneousDerivation => write!(f, "derivation is not homogeneous"),
            Error::Inhomogeneous(msg) => write!(f, "inhomogeneous input: {msg}"),
            Error::NilpotencyBoundExceeded => write!(f, "nilpotency bound exceeded"),
            Error::NotLocalSlice => write!(f, "not a local slice"),
            Error::CableViolation { index, msg } => {
                write!(f, "cable law violated at index {index}: {msg}")
            }
            Error::DimensionMismatch => write!(f, "dimension mismatch"),
            Error::Unsolvable(msg) => write!(f, "linear solve failed: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
