use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text does not conform to the polynomial grammar.
    #[error("syntax error: {0}")]
    Syntax(String),
    /// The monomials of the input do not all have the same total degree.
    #[error("non-homogeneous input: {0}")]
    NonHomogeneous(String),
    /// A variable outside the supported range was used.
    #[error("unknown variable: {0}")]
    UnknownVariable(String),
    /// Matrix/variable-count mismatch in a substitution or solve.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// The operation is undefined for the zero form.
    #[error("the zero form has no rank")]
    ZeroForm,
    /// The input does not have the shape required by the operation.
    #[error("wrong shape: {0}")]
    WrongShape(String),
    /// A catalecticant split with i + j != deg f was requested.
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    /// An internal consistency assertion failed; indicates a bug or an
    /// input violating a documented precondition.
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
    /// The quotient algebra of a conic net has unexpected dimension.
    #[error("degenerate conic net: {0}")]
    DegenerateNet(String),
    /// Independent seeded runs of a randomized check disagreed.
    #[error("seed disagreement: {0}")]
    SeedDisagreement(String),
    /// The requested case is not covered by the implemented theorems.
    #[error("not covered: {0}")]
    NotCovered(String),
    /// Numeric root finding did not reach the requested accuracy.
    #[error("numeric root-finding failed: {0}; retry with higher precision")]
    NumericRoots(String),
    /// A computation exceeded its configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// An operation expecting an exact decomposition received a numeric one.
    #[error("expected an exact-mode decomposition")]
    NumericMode,
}

pub type Result<T> = std::result::Result<T, Error>;
