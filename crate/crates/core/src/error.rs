//! Error type shared by the whole kernel.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not enough elements: requested {requested} distinct scalars, field has {available}")]
    NotEnoughElements { requested: usize, available: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("not multiplicative on basis pair ({i},{j}): f(e{i}*e{j}) = {lhs} but f(e{i})*f(e{j}) = {rhs}")]
    NotMultiplicative {
        i: usize,
        j: usize,
        lhs: String,
        rhs: String,
    },
    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("algebra is not associative: (e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("morphisms not composable at position {0}: target of one differs from source of next")]
    NotComposable(usize),
    #[error("diagram invalid: {0}")]
    DiagramInvalid(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("degree too small: need at least {needed}, got {got}")]
    DegreeTooSmall { needed: usize, got: usize },
    #[error("symbolic identity check is inconclusive over a finite field; run exhaustive mode")]
    ModeUnsound,
    #[error("invalid input: {0}")]
    InputError(String),
}

pub type Result<T> = std::result::Result<T, AlgError>;
