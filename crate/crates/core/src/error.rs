use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q(sqrt({left})) vs Q(sqrt({right}))")]
    FieldMismatch { left: i64, right: i64 },
    #[error("invalid field parameter {0}: must be 0 or a squarefree integer other than 1")]
    InvalidField(i64),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("bidegree violated: {0}")]
    Bidegree(String),
    #[error("weights violated: {0}")]
    Weights(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("curve contains a fiber component")]
    FiberComponent,
    #[error("point is not transversal: {0}")]
    NotTransversal(String),
    #[error("iteration cap of {0} blow-ups exceeded")]
    IterationCap(usize),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("no catalog entry for bidegree ({a},{b})")]
    NotInCatalog { a: u32, b: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
