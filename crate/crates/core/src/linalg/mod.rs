//! Exact linear algebra over Z/p^k.

mod matrix;
mod modulus;
mod snf;
mod solve;

pub use matrix::SparseMatrix;
pub(crate) use matrix::vec_add_scaled;
pub use modulus::{Modulus, Scalar};
pub use snf::{smith_normal_form, SmithForm};
pub use solve::{
    howell_basis, kernel, quotient_basis, reduce_modulo, solve, solve_with_orders,
    AffineSolutionSet, Certificate, QuotientGenerator, QuotientPresentation, SolveOutcome,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus {0} is not a prime power in [2, 2^31]")]
    InvalidModulus(u64),
    #[error("modulus mismatch: Z/{left} vs Z/{right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
