use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scalars belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("reducible modulus detected: {0}")]
    ReducibleModulus(String),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("not a valid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("representation is not flag")]
    NotFlag,
    #[error("representation is not wide")]
    NotWide,
    #[error("representation is not in standard coordinates")]
    NotStandard,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("degenerate constellation: points {0} and {1} coincide")]
    DegenerateConstellation(usize, usize),
    #[error("representations are not overlap-compatible: {0}")]
    NotCompatible(String),
    #[error("the algebra has no generator presentation")]
    NoGenerators,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
