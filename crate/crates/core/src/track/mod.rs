//! The track category K^Q: morphisms over cubical cell complexes, their
//! composition and ⊗-products, homotopies over relative cylinders, the
//! extension solver and obstruction classes.

mod extend;
mod homotopy;
mod morphism;
mod obstruction;
mod ops;
mod random;

pub use extend::{extend, extend_chain_map, ExtendOutcome, Extension, Obstacle};
pub use homotopy::{act_class, action, constant, homotopic, homotopy_space, opposite, paste, Homotopy};
pub use morphism::Morphism;
pub use obstruction::{
    cubical_extension, obstruction, obstruction_t, t_chain_value, EPSILON_OR,
};
pub use ops::{compose, glue, glue_all, tensor};
pub use random::{random_extension, random_morphism};

use thiserror::Error;

use crate::algebra::{homology, AlgebraError, ChainAlgebra, Homology, NaturalSystem, Violation};
use crate::cubical::CubicalError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrackError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("the algebra is not valid: {0:?}")]
    InvalidAlgebra(Vec<Violation>),
    #[error("source or target modules do not match")]
    ModuleMismatch,
    #[error("morphisms live over different complexes")]
    ComplexMismatch,
    #[error("chain condition fails at cell {cell}")]
    ChainCondition { cell: String },
    #[error("values disagree on the shared cell {cell}")]
    GlueMismatch { cell: String },
    #[error("morphism is not trivial on the boundary: cell {cell}")]
    NotBoundaryTrivial { cell: String },
    #[error("{0}")]
    Shape(String),
    #[error("no chain map extends the given data")]
    NoChainMap,
    #[error("enumeration needs {needed} states but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

/// A valid chain algebra with its homology at every level, the data needed to
/// work in K^Q.
#[derive(Clone, Debug)]
pub struct Kq {
    q: ChainAlgebra,
    homology: Vec<Homology>,
}

impl Kq {
    pub fn new(q: ChainAlgebra) -> Result<Self, TrackError> {
        let report = crate::algebra::validate(&q);
        if !report.is_valid() {
            return Err(TrackError::InvalidAlgebra(report.violations));
        }
        let homology = (0..=q.truncation())
            .map(|k| homology(&q, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Kq { q, homology })
    }

    pub fn algebra(&self) -> &ChainAlgebra {
        &self.q
    }

    pub fn truncation(&self) -> u32 {
        self.q.truncation()
    }

    /// H_k; `None` above the truncation level.
    pub fn homology(&self, k: u32) -> Option<&Homology> {
        self.homology.get(k as usize)
    }

    pub fn natural(&self, k: u32) -> Option<NaturalSystem<'_>> {
        self.homology(k).map(|h| NaturalSystem::new(&self.q, h))
    }
}
