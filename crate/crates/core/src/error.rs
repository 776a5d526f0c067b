use thiserror::Error;

/// Every failure the library can report.
///
/// Variants group into input errors (bad fixtures, violated preconditions),
/// internal consistency tripwires, and precision limits of the jet machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("degenerate factor (1 - t^m) with m = {0}")]
    DegenerateFactor(String),

    #[error("polynomial is not divisible: remainder {0}")]
    NotDivisible(String),

    #[error("invalid characteristic exponents: {0}")]
    InvalidCharExponents(String),

    #[error("generators {0:?} do not generate a cofinite semigroup")]
    NotCofinite(Vec<u64>),

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("product does not expand to a polynomial: {0}")]
    NonPolynomial(String),

    #[error("graph synthesis failed: {0}")]
    Synthesis(String),

    #[error("invalid curve model: {0}")]
    InvalidCurve(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("window margin too narrow: {0}")]
    Margin(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A stable short name for the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Arity { .. } => "arity",
            Error::DegenerateFactor(_) => "degenerate_factor",
            Error::NotDivisible(_) => "not_divisible",
            Error::InvalidCharExponents(_) => "invalid_char_exponents",
            Error::NotCofinite(_) => "not_cofinite",
            Error::MalformedGraph(_) => "malformed_graph",
            Error::NonPolynomial(_) => "non_polynomial",
            Error::Synthesis(_) => "synthesis",
            Error::InvalidCurve(_) => "invalid_curve",
            Error::Precision(_) => "precision",
            Error::Margin(_) => "margin",
            Error::Inconsistent(_) => "inconsistent",
            Error::Input(_) => "input",
        }
    }
}
