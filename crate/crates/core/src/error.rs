use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("polynomial is not separable")]
    NotSeparable,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("InvalidGamma: diagonal entries must be nonzero")]
    InvalidGamma,
    #[error("InvalidMu: scalar must be nonzero")]
    InvalidMu,
    #[error("AdmissibilityViolation: {0}")]
    AdmissibilityViolation(String),
    #[error("CompatibilityViolation: {0}")]
    CompatibilityViolation(String),
    #[error("BudgetExceeded: {0}")]
    BudgetExceeded(String),
    #[error("SingularStructure: trace form is degenerate")]
    SingularStructure,
    #[error("AxiomFailure: {0}")]
    AxiomFailure(String),
    #[error("NotAssociative: {0}")]
    NotAssociative(String),
    #[error("FixedSpaceDimensionUnexpected: expected {expected}, found {found}")]
    FixedSpaceDimensionUnexpected { expected: usize, found: usize },
    #[error("DimensionTooLarge: Cayley-Dickson doubling of a dimension-8 algebra")]
    DimensionTooLarge,
    #[error("NotSplit: {0}")]
    NotSplit(String),
    #[error("ProductNotOne: w1*w2*w3 must equal 1")]
    ProductNotOne,
    #[error("ConventionFailure: {0}")]
    ConventionFailure(String),
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error("PsiInvalid: {0}")]
    PsiInvalid(String),
    #[error("PreconditionViolation: {0}")]
    PreconditionViolation(String),
    #[error("NoGenerator: element does not generate a cubic etale algebra")]
    NoGenerator,
    #[error("Exhausted: {0}")]
    Exhausted(String),
    #[error("Unknown: {0}")]
    Unknown(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) | Error::TooLarge(_) => 3,
            Error::Inconsistent(_) | Error::AxiomFailure(_) | Error::ConventionFailure(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "InvalidField",
            Error::NotSeparable => "NotSeparable",
            Error::NotInvertible(_) => "NotInvertible",
            Error::InvalidGamma => "InvalidGamma",
            Error::InvalidMu => "InvalidMu",
            Error::AdmissibilityViolation(_) => "AdmissibilityViolation",
            Error::CompatibilityViolation(_) => "CompatibilityViolation",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::SingularStructure => "SingularStructure",
            Error::AxiomFailure(_) => "AxiomFailure",
            Error::NotAssociative(_) => "NotAssociative",
            Error::FixedSpaceDimensionUnexpected { .. } => "FixedSpaceDimensionUnexpected",
            Error::DimensionTooLarge => "DimensionTooLarge",
            Error::NotSplit(_) => "NotSplit",
            Error::ProductNotOne => "ProductNotOne",
            Error::ConventionFailure(_) => "ConventionFailure",
            Error::TooLarge(_) => "TooLarge",
            Error::PsiInvalid(_) => "PsiInvalid",
            Error::PreconditionViolation(_) => "PreconditionViolation",
            Error::NoGenerator => "NoGenerator",
            Error::Exhausted(_) => "Exhausted",
            Error::Unknown(_) => "Unknown",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Inconsistent(_) => "Inconsistent",
        }
    }
}
