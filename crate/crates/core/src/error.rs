use thiserror::Error;

use crate::qpoly::IntLaurentPoly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A constructor or builder precondition was violated. The message names it.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,

    /// Reduction modulo the `d`-th cyclotomic polynomial left a non-constant
    /// remainder, so the value depends on the choice of primitive root.
    #[error("value at a primitive {d}-th root of unity is not an integer (remainder {remainder})")]
    NonRational { d: u32, remainder: IntLaurentPoly },

    #[error("permutation is not an automorphism of the graph")]
    NotAutomorphism,

    #[error("cyclic subgroup does not act freely on the vertex set")]
    NotFreeAction,

    #[error("set size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
