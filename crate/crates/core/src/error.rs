use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: factor {0} vanishes at the binding")]
    DivisionByZero(String),
    #[error("component index {index} exceeds m = {m}")]
    IndexError { index: usize, m: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("tableaux have different shapes")]
    ShapeMismatch,
    #[error("index {k} out of range 1..={n}")]
    RangeError { k: usize, n: usize },
    #[error("node {0} is not in the diagram")]
    OutOfShape(String),
    #[error("elements belong to different algebras")]
    BindingMismatch,
    #[error("binding is not generic: {factor} vanishes")]
    NonGenericBinding { factor: String },
    #[error("transition matrix is singular")]
    SingularTransition,
    #[error("trace of F_t vanished")]
    ZeroTrace,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
