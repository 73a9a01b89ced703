use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgeError {
    #[error("operands live over different variable tables")]
    MismatchedVariables,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("constant term is not a unit")]
    NonUnitConstant,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not quasisymmetric: {0}")]
    NotQuasisymmetric(String),
    #[error("series cap exceeded: {0}")]
    CapOverflow(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, ForgeError>;
