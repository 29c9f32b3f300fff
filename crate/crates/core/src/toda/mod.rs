//! Higher Toda brackets (matrix Massey products), their indeterminacy and
//! exhaustive oracle, higher chain complexes and Adams differentials.

mod adams;
mod bracket;
mod chain_complex;
mod indeterminacy;
mod oracle;
mod sequence;
#[cfg(test)]
mod tests;

pub use adams::{adams_d, AdamsResult};
pub use bracket::{toda_bracket, BracketResult, BracketStatus, ChoiceRecord, Tower};
pub use chain_complex::{build_chain_complex, ChainComplexFailure, ChainComplexResult, HigherChainComplex};
pub use indeterminacy::{triple_indeterminacy, Indeterminacy};
pub use oracle::{oracle_bracket_set, OracleSet};
pub use sequence::MorphismSequence;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::oracle::BudgetExceeded;
use crate::track::TrackError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TodaError {
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("the algebra is {found}-truncated but order {expected} was requested")]
    TruncationMismatch { expected: u32, found: u32 },
    #[error("a bracket of order {order} needs {expected} maps, found {found}")]
    SequenceLength { order: usize, expected: usize, found: usize },
    #[error("map {index} is not a map between consecutive modules")]
    NotComposable { index: usize },
    #[error("internal convention violation: {0}")]
    ConventionViolation(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("beta does not extend to the required order: {0}")]
    NotACocycle(String),
}
