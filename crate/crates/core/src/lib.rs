//! An exact engine for the track category K^Q of a truncated bigraded chain
//! algebra Q over Z/p^k: higher Toda brackets, matrix Massey products, their
//! obstructions, higher chain complexes and Adams differential representatives.

pub mod algebra;
pub mod cubical;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod toda;
pub mod track;
