use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("coefficient not in field: {0}")]
    CoefficientNotInField(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("degree violation: {0}")]
    Degree(String),
    #[error("lift impossible: column {column} is not in the image")]
    NotInImage { column: usize },
    #[error("invalid matrix factorization: {0}")]
    InvalidFactorization(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("syzygy depth cap {cap} exceeded before reaching a maximal Cohen-Macaulay module")]
    SyzygyCapExceeded { cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("empty degree window [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("not finite-dimensional: {0}")]
    NotFiniteDimensional(String),
}

pub type Result<T> = std::result::Result<T, Error>;
