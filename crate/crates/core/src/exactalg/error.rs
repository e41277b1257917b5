use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("variable table mismatch: {left} vs {right} variables")]
    VarMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unlucky point: {0}")]
    UnluckyPoint(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("duplicate variable name `{0}`")]
    DuplicateVar(String),
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("singular matrix")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}
