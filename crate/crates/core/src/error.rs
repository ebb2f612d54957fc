use thiserror::Error;

use crate::rational::Rational;
use crate::semiring::{Scalar, SemiringKind};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("semiring mismatch: {0} vs {1}")]
    KindMismatch(SemiringKind, SemiringKind),
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("{value} is not an element of the {kind} semiring")]
    ForeignInfinity { kind: SemiringKind, value: Scalar },
    #[error("entry ({row}, {col}) must be finite")]
    NonFinite { row: usize, col: usize },
    #[error("polynomial needs at least one coefficient")]
    EmptyPolynomial,
    #[error("value list must not be empty")]
    EmptyValues,
    #[error("alpha {0} is outside [0, 1]")]
    AlphaOutOfRange(Rational),
    #[error("matrix is not a Jones matrix")]
    NotJones,
    #[error("operation requires a {expected} matrix, got {got}")]
    WrongSemiring { expected: SemiringKind, got: SemiringKind },
    #[error("Linde-de la Puente parameters need r >= 0 and k <= 0 (got r = {r}, k = {k})")]
    InvalidLdp { r: Rational, k: Rational },
    #[error("tuple has {got} matrices but the word has {expected} slots")]
    Arity { expected: usize, got: usize },
    #[error("malformed word template: {0}")]
    Template(String),
    #[error("tuple is not marginal for the word")]
    NotMarginal,
    #[error("matrix is not bounded by the residual X*")]
    BelowResidual,
    #[error("empty sampling range {lo}..{hi}")]
    InvalidRange { lo: i64, hi: i64 },
    #[error("sampler exhausted after {attempts} attempts ({got} of {wanted} tuples)")]
    SamplerExhausted { wanted: usize, got: usize, attempts: usize },
    #[error("constraint system is infeasible")]
    Infeasible,
    #[error("malformed constraint system: {0}")]
    MalformedSystem(String),
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error("transmitted value is not in the span of the attack basis")]
    NoDecomposition,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("encoding error: {0}")]
    Encoding(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
