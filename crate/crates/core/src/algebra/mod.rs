//! Truncated bigraded chain algebras, their homology and the natural systems
//! D^k built from it.

mod chain_algebra;
mod homology;
pub mod module;
mod natural;
mod path;
mod truncate;
mod validate;

pub use chain_algebra::{BasisElement, ChainAlgebra, Elem};
pub use homology::{action_constants, homology, ActionConstant, Homology, HomologyGenerator, HomologyGroup};
pub use module::{Block, GradedModule, Generator};
pub use natural::{NatElem, NaturalSystem, Subgroup};
pub use path::{massey_quiver, random_quiver, Arrow, Quiver, RandomQuiverParams, Relation};
pub use truncate::truncate;
pub use validate::{validate, ValidationReport, Violation};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("duplicate basis name {0}")]
    DuplicateName(String),
    #[error("generator {generator} has order {order}, not a power of p dividing m")]
    BadOrder { generator: String, order: u64 },
    #[error("generator {generator} has upper degree {r} above rMax = {r_max}")]
    OutsideWindow { generator: String, r: u32, r_max: u32 },
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unit {0} must have bidegree (0,0) and full order")]
    UnitDegree(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error("level {requested} exceeds the truncation level {available}")]
    TruncationLevel { requested: u32, available: u32 },
    #[error("{element} is not a cycle of bidegree ({r}, {k})")]
    NotACycle { element: String, r: u32, k: u32 },
    #[error("{element} does not have bidegree ({r}, {s})")]
    DegreeMismatch { element: String, r: i64, s: i64 },
    #[error("block shape does not match modules of ranks {expected:?}")]
    ShapeMismatch { expected: (usize, usize) },
    #[error("natural-system level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: u32, found: u32 },
    #[error("source or target modules do not match")]
    ModuleMismatch,
    #[error("the unit does not survive truncation")]
    UnitCollapsed,
    #[error("induced structure violates the axioms: {0:?}")]
    InducedStructure(Vec<Violation>),
}
