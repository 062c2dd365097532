use thiserror::Error;

/// Failures raised by the numerical pipeline.
///
/// Payloads are stored as `f64` regardless of the working precision so the
/// error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("root finding did not converge after {iterations} iterations (worst residual {best_residual:e})")]
    RootFindingFailed { iterations: usize, best_residual: f64 },
    #[error("mate undefined: 1 - BB* vanishes identically on the circle")]
    MateUndefined,
    #[error("defect is not positive semidefinite (minimum {min:e})")]
    NotPositive { min: f64 },
    #[error("unimodular root {root_re}+{root_im}i has odd multiplicity {multiplicity}")]
    OddBoundaryMultiplicity { root_re: f64, root_im: f64, multiplicity: usize },
    #[error("spectral factorization diverged (last residual {:e})", trace.last().copied().unwrap_or(f64::NAN))]
    FactorizationDiverged { trace: Vec<f64> },
    #[error("singular iterate at grid point {index}")]
    SingularIterate { index: usize },
    #[error("degenerate determinant: {excluded} of {total} grid points singular")]
    DegenerateDeterminant { excluded: usize, total: usize },
    #[error("ill-conditioned constant coefficient A(0) (condition number {cond:e})")]
    IllConditionedConstant { cond: f64 },
    #[error("embedding residual {residual:e} exceeds tolerance {tolerance:e}")]
    EmbeddingResidual { residual: f64, tolerance: f64 },
    #[error("boundary point {re}+{im}i is not regular")]
    BoundaryNotRegular { re: f64, im: f64 },
    #[error("Gram residual numerically negative ({value:e})")]
    ConditioningWarning { value: f64 },
    #[error("degenerate symbol: B(z)xi* is identically 1")]
    DegenerateSymbol,
    #[error("unimodular zero of 1 - B xi* at {re}+{im}i has multiplicity {multiplicity}")]
    HigherOrderBoundaryZero { re: f64, im: f64, multiplicity: usize },
    #[error("point mass at {re}+{im}i is not positive ({mass_re}+{mass_im}i)")]
    NonpositiveMass { re: f64, im: f64, mass_re: f64, mass_im: f64 },
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    /// Stable variant name, used when errors are serialized.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DomainError(_) => "DomainError",
            Error::InvalidInput(_) => "InvalidInput",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::RootFindingFailed { .. } => "RootFindingFailed",
            Error::MateUndefined => "MateUndefined",
            Error::NotPositive { .. } => "NotPositive",
            Error::OddBoundaryMultiplicity { .. } => "OddBoundaryMultiplicity",
            Error::FactorizationDiverged { .. } => "FactorizationDiverged",
            Error::SingularIterate { .. } => "SingularIterate",
            Error::DegenerateDeterminant { .. } => "DegenerateDeterminant",
            Error::IllConditionedConstant { .. } => "IllConditionedConstant",
            Error::EmbeddingResidual { .. } => "EmbeddingResidual",
            Error::BoundaryNotRegular { .. } => "BoundaryNotRegular",
            Error::ConditioningWarning { .. } => "ConditioningWarning",
            Error::DegenerateSymbol => "DegenerateSymbol",
            Error::HigherOrderBoundaryZero { .. } => "HigherOrderBoundaryZero",
            Error::NonpositiveMass { .. } => "NonpositiveMass",
            Error::ZeroFunction => "ZeroFunction",
            Error::UnknownFixture(_) => "UnknownFixture",
        }
    }

    /// Input-validation failures, as opposed to numerical breakdowns.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::DimensionMismatch { .. }
                | Error::UnknownFixture(_)
                | Error::DomainError(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
