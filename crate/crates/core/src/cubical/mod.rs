//! Cubes, their face subcomplexes, the Serre diagonal and the chain-level
//! cylinders used to house homotopies.

mod cell;
mod complex;
mod diagonal;
mod orientation;
mod quotient;

pub use cell::{Cell, Coord};
pub use complex::{ChainComplexData, CubicalComplex};
pub use diagonal::{
    check_coalgebra, is_chain_map_on, is_coassociative_on, is_counital_on, restricts_to,
    serre_diagonal, DiagonalData,
};
pub use orientation::{facet_position, facet_sign, orientation_sign, t_fundamental_chain, Orientation};
pub use quotient::{CellComplex, ChainMap, CylinderMaps};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubicalError {
    #[error("invalid cell word {0}")]
    BadCellWord(String),
    #[error("cell {cell} does not have length {expected}")]
    WrongLength { cell: String, expected: usize },
    #[error("cell set is not downward closed: {cell} is missing its face {missing}")]
    NotDownwardClosed { cell: String, missing: String },
    #[error("cell {0} is not in the complex")]
    CellNotInComplex(String),
    #[error("not a facet: {0}")]
    NotAFacet(String),
    #[error("cell set is not a subcomplex")]
    NotASubcomplex,
    #[error("collapse is not a chain map at {0}")]
    BadCollapse(String),
    #[error("coalgebra law fails on cell {0}")]
    LawViolation(String),
}
