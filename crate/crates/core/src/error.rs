use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alphabet error: {0}")]
    Alphabet(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("relator {0} reduces to the empty word")]
    DegenerateRelator(usize),
    #[error("relator {0} duplicates relator {1} up to rotation and inversion")]
    DuplicateRelator(usize, usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("no conjugation rule for ({0}, {1}) in this construction mode")]
    Coverage(String, String),
    #[error("unsupported context: {0}")]
    UnsupportedContext(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("element lies outside the explored ball of radius {cap}")]
    RadiusExceeded { cap: u32 },
    #[error("empty domain")]
    EmptyDomain,
    #[error("arity mismatch: expected {expected} components, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("growth curves are undefined on the trivial conjugacy class")]
    TrivialClass,
    #[error("length function undefined at n = {0}")]
    Domain(i64),
}
