use alloc::string::String;

use crate::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain mismatch: expected {expected} points, found {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("map sends point {point} to {target}, outside a codomain of size {codomain}")]
    MapOutOfRange { point: usize, target: usize, codomain: usize },
    #[error("invalid ordinal sum: {0}")]
    InvalidBlocks(String),
    #[error("value {0} is not in the carrier")]
    NotInCarrier(Rational),
    #[error("malformed quantale: {0}")]
    Structural(String),
    #[error("quantale axioms fail: {0}")]
    Axioms(String),
    #[error("semifilter table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("{what} needs {needed}, over the budget of {budget}")]
    Budget { what: &'static str, needed: u128, budget: u128 },
    #[error("operation requires an integral quantale (unit = top)")]
    NotIntegral,
    #[error("table {index} of the declared family is not {required}")]
    NotAdmissible { index: usize, required: &'static str },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("check mode unavailable: {0}")]
    ModeUnavailable(&'static str),
}
