use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator `{name}` has a weight of length {got}, expected {expected}")]
    WeightLength { name: String, got: usize, expected: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("chart already carries a distinguished fiber coordinate")]
    AlreadyExtended,
    #[error("chart has no Darboux pairs")]
    NoDarbouxPairs,
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown symbol `{name}` at offset {offset}")]
    UnknownSymbol { offset: usize, name: String },
    #[error("invalid Jacobi triple: {0}")]
    InvalidTriple(String),
    #[error("the one-form is not contact")]
    NotContact,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("subspace is not closed under the differential: {0}")]
    Closure(String),
    #[error("invalid Courant data: {0}")]
    InvalidSpec(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
