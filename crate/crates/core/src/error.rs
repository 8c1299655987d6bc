//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero in the scalar field")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("containment violation: {0}")]
    ContainmentViolation(String),
    #[error("field order mismatch between complexes: {0} vs {1}")]
    FieldOrderMismatch(u32, u32),
    #[error("blow-up codimension must be at least 2, got {0}")]
    CodimTooSmall(usize),
    #[error("complex fails validation: {0}")]
    InvalidComplex(String),
    #[error("operation needs bidegree ({0},{1}) which is boundary-incomplete in a windowed complex")]
    IncompleteBidegree(i64, i64),
    #[error("zigzag bookkeeping infeasible at ({0},{1}): residual {2}")]
    BookkeepingInfeasible(i64, i64, i64),
    #[error("decomposition oracle inconclusive: pivot budget of {0} exhausted")]
    OracleInconclusive(usize),
    #[error("consistency fault: {0}")]
    ConsistencyFault(String),
    #[error("automorphism does not commute with the differentials: {0}")]
    ActionIncompatible(String),
    #[error("action order {0} does not divide the field order {1}")]
    ActionOrderIncompatible(u32, u32),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown weight `{0}`")]
    UnknownWeight(String),
    #[error("product of weights `{0}` and `{1}` is not declared")]
    WeightProductUndeclared(String, String),
    #[error("structure equations are not bidegree-homogeneous: {0}")]
    InhomogeneousStructure(String),
    #[error("distinguished set is not closed under the differential: {0}")]
    SubcomplexNotClosed(String),
    #[error("spanning set is not closed under the differential: {0}")]
    SpanNotClosed(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid fixture parameters: {0}")]
    BadFixtureParams(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
