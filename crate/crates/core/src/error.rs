use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The class has an uncancelled `(L^i - 1)` pole, so it has no Euler characteristic.
    #[error("class is not regular: {0}")]
    NotRegular(String),

    #[error("quotient leaves the coefficient ring: {0}")]
    QuotientOutsideRing(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: String,
        budget: u64,
    },

    #[error("interpolation mismatch: {0}")]
    InterpolationMismatch(String),

    #[error("not enough interpolation samples: need {needed}, got {got}")]
    NotEnoughSamples { needed: usize, got: usize },

    #[error("dimension vector {0} lies outside the declared window")]
    WindowExceeded(String),

    #[error("predicate is not a submonoid on the window: {0}")]
    SubmonoidViolation(String),

    #[error("mismatched algebras: {0}")]
    MismatchedAlgebras(String),

    /// Indecomposable labels do not transfer between two fields.
    #[error("unstable indecomposable labelling: {0}")]
    UnstableLabels(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
