use thiserror::Error;

/// Errors shared across the kernel, the algebra layer and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("symbol `{0}` declared twice")]
    DuplicateSymbol(String),
    #[error("sign parameter `{0}` has no assignment")]
    UnassignedSign(String),
    #[error("denominator is not recognized as nonzero: {0}")]
    DenominatorNotNonzero(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand `{0}` is negative at the given assignment")]
    NegativeRadicand(String),
    #[error("substitution hits the excluded locus (zero denominator)")]
    ExcludedLocus,
    #[error("expected a univariate polynomial, found symbols {0:?}")]
    NotUnivariate(Vec<String>),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("sign of expression `{0}` is not decidable in this scope")]
    UndecidableSign(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("endomorphism is not a derivation")]
    NotADerivation,
    #[error("Jacobi identity fails: brackets do not define a Lie algebra")]
    JacobiFails,
    #[error("signature varies over the declared parameter region")]
    RegionInstability,
    #[error("invariant undefined: scalar curvature vanishes")]
    UndefinedInvariant,
    #[error("computation budget exceeded")]
    BudgetExceeded,
    #[error("catalog entry `{0}` not found")]
    EntryNotFound(String),
    #[error("case script `{0}` not found")]
    CaseNotFound(String),
    #[error("parameters outside the declared region: {0}")]
    OutOfRegion(String),
    #[error("ansatz vector field is not a gradient: Hessian asymmetric")]
    NotAGradient,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
