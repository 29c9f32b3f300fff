//! File formats and the batch request runner behind the `engine` binary.

mod run;
mod schema;

pub use run::{run, run_documents, Command, Params, Request, RunError};
pub use schema::{
    module_doc, parse_algebra, parse_sequence, AlgebraDoc, BasisDoc, BetaDoc, DifferentialDoc, EntryDoc, MapDoc,
    ParsedSequence, ProductDoc, SequenceDoc, TermDoc, ValueDoc,
};

use thiserror::Error;

use crate::algebra::{AlgebraError, Violation};
use crate::toda::TodaError;
use crate::track::TrackError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the algebra violates {} axiom(s)", .0.len())]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Toda(#[from] TodaError),
}

impl From<TrackError> for IoError {
    fn from(e: TrackError) -> Self {
        match e {
            TrackError::InvalidAlgebra(v) => IoError::Invalid(v),
            other => IoError::Toda(other.into()),
        }
    }
}
