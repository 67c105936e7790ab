use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid surface: {0}")]
    Surface(String),
    #[error("invalid curve: {0}")]
    Curve(String),
    #[error("path hits a cone vertex at {0}")]
    ConeContact(String),
    #[error("not transverse: {0}")]
    Transversality(String),
    #[error("degenerate scene: {0}")]
    Degenerate(String),
    #[error("bad input: {0}")]
    Input(String),
    #[error("arithmetic: {0}")]
    Arithmetic(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
