use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial has a pole at q = 0")]
    PoleAtZero,

    #[error("pole order at q = 1 is {found}, expected {expected}")]
    PoleOrder { expected: i64, found: i64 },

    #[error("cannot strip (1-q)^{requested}: only {present} factors present")]
    StripFactor { requested: i64, present: i64 },

    #[error("zero denominator in continued fraction at vertex {vertex}")]
    ContinuedFraction { vertex: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("group validation failed: {0}")]
    Validation(String),

    #[error("group file schema violation: {0}")]
    Schema(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("enumeration exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("missing representation data: {0}")]
    MissingData(String),

    #[error("action is not free: class {class} fixes a nonzero vector")]
    NotFree { class: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("minor computations disagree at rows {rows:?}, cols {cols:?}")]
    MinorDisagreement { rows: Vec<usize>, cols: Vec<usize> },

    #[error("Cohen-Macaulay data invalid: {0}")]
    CohenMacaulay(String),

    #[error("no homogeneous system of parameters degrees found up to {bound}")]
    HsopNotFound { bound: u64 },

    #[error("root enumeration exceeded height {0}")]
    RootHeight(usize),

    #[error("result is not a polynomial: {0}")]
    NotPolynomial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
