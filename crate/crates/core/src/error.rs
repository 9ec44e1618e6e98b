use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("element is not homogeneous for the {0} grading")]
    NonHomogeneous(&'static str),
    #[error("operation needs {expected}, got {found}")]
    WrongSignature { expected: String, found: String },
    #[error("representation {0} has an infinite-dimensional carrier")]
    InfiniteCarrier(String),
    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("element contains terms with a positive power of the deformation parameter")]
    LambdaTermsPresent,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("values are not proportional: {0}")]
    NoProportionality(String),
}

pub type Result<T> = std::result::Result<T, Error>;
