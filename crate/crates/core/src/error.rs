use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// The variant names double as the stable error names reported by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("pattern parse error: {0}")]
    Parse(String),

    #[error("length {n} exceeds the feasibility bound {max} for exhaustive enumeration")]
    LengthTooLarge { n: usize, max: usize },

    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("denominator vanishes at x = 0; no Taylor expansion")]
    PoleAtOrigin,

    #[error("continued fraction has an identically zero denominator")]
    DegenerateContinuedFraction,

    #[error("index {index} out of range {range}")]
    IndexOutOfRange { index: i64, range: String },

    #[error("word contains duplicate entries")]
    DuplicateEntries,

    #[error("pattern {0} contains 132")]
    Not132Avoiding(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("generating function of state {0} multiplies itself")]
    NonlinearSelfReference(String),

    #[error("state {0} is referenced while still being computed")]
    CyclicStateReference(String),

    #[error("self-referencing equation for state {0} has coefficient 1")]
    SingularSelfReference(String),

    #[error("half-integer power of x survives: x^({0}/2)")]
    UnreducedHalfPower(i64),
}

impl Error {
    /// The variant name, e.g. `"LengthTooLarge"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::Parse(_) => "Parse",
            Error::LengthTooLarge { .. } => "LengthTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::PoleAtOrigin => "PoleAtOrigin",
            Error::DegenerateContinuedFraction => "DegenerateContinuedFraction",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DuplicateEntries => "DuplicateEntries",
            Error::Not132Avoiding(_) => "Not132Avoiding",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NonlinearSelfReference(_) => "NonlinearSelfReference",
            Error::CyclicStateReference(_) => "CyclicStateReference",
            Error::SingularSelfReference(_) => "SingularSelfReference",
            Error::UnreducedHalfPower(_) => "UnreducedHalfPower",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
