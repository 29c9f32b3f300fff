//! Obstruction classes of boundary-trivial morphisms and cubical extensions.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::extend::{extend, zeros_on, ExtendOutcome};
use super::{Kq, Morphism, TrackError};
use crate::algebra::module::{add_blocks, block_is_zero, scale_block, zero_block};
use crate::algebra::{AlgebraError, Block, NatElem};
use crate::cubical::{t_fundamental_chain, CellComplex, Coord, CubicalComplex, Orientation};

/// Orientation normalization: with it, acting on the zero morphism by a class
/// `[z]` produces a morphism with obstruction `[z]`.
pub const EPSILON_OR: i64 = 1;

fn class(kq: &Kq, f: &Morphism, level: usize, block: &Block) -> Result<NatElem, TrackError> {
    let ns = kq.natural(level as u32).ok_or(AlgebraError::TruncationLevel {
        requested: level as u32,
        available: kq.truncation(),
    })?;
    Ok(ns.from_block(f.source(), f.target(), block)?)
}

/// `ob(F) = ε_or · o · [F(top cell)]` for `F` over a cube, trivial on its boundary.
pub fn obstruction(kq: &Kq, f: &Morphism, orientation: Orientation) -> Result<NatElem, TrackError> {
    let x = f.complex();
    let n = x.ambient_dim();
    if !x.is_plain() || *x.ambient() != CubicalComplex::cube(n) {
        return Err(TrackError::Shape("expected a morphism over a full cube".into()));
    }
    let q = kq.algebra();
    let top = x.len() - 1;
    for c in 0..top {
        if !block_is_zero(q, f.value(c)) {
            return Err(TrackError::NotBoundaryTrivial {
                cell: x.cell(c).to_string(),
            });
        }
    }
    let block = scale_block(q, f.value(top), EPSILON_OR * orientation.sign());
    class(kq, f, n, &block)
}

fn t_dim(f: &Morphism) -> Result<usize, TrackError> {
    let x = f.complex();
    let n = x.ambient_dim();
    if n == 0 || !x.is_plain() || *x.ambient() != CubicalComplex::t_complex(n - 1) {
        return Err(TrackError::Shape("expected a morphism over T^k".into()));
    }
    Ok(n - 1)
}

fn check_t_boundary(kq: &Kq, f: &Morphism) -> Result<(), TrackError> {
    let q = kq.algebra();
    for (c, cell) in f.complex().cells().iter().enumerate() {
        if cell.word().contains(&Coord::One) && !block_is_zero(q, f.value(c)) {
            return Err(TrackError::NotBoundaryTrivial { cell: cell.to_string() });
        }
    }
    Ok(())
}

/// `F(z_T)` on the fundamental chain `z_T = Σ_i (−1)^i [x_i = 0]` of T^k.
pub fn t_chain_value(kq: &Kq, f: &Morphism) -> Result<Block, TrackError> {
    let k = t_dim(f)?;
    let q = kq.algebra();
    let mut acc = zero_block(q, f.source(), f.target());
    for (cell, s) in t_fundamental_chain(k) {
        let v = f.value_at(&cell).expect("T^k contains its facets");
        acc = add_blocks(q, &acc, &scale_block(q, v, s));
    }
    Ok(acc)
}

/// `ob(F) = ε_or · o · [F(z_T)]` for `F` over T^k, trivial on `∂T^k`.
pub fn obstruction_t(kq: &Kq, f: &Morphism, orientation: Orientation) -> Result<NatElem, TrackError> {
    let k = t_dim(f)?;
    check_t_boundary(kq, f)?;
    let q = kq.algebra();
    let block = scale_block(q, &t_chain_value(kq, f)?, EPSILON_OR * orientation.sign());
    class(kq, f, k, &block)
}

/// All cubical extensions of `F` over T^k: morphisms over I^{k+1} restricting
/// to `F` on T^k and to zero on T^k_op.
pub fn cubical_extension(kq: &Kq, f: &Morphism) -> Result<ExtendOutcome, TrackError> {
    let k = t_dim(f)?;
    check_t_boundary(kq, f)?;
    let cube = Arc::new(CellComplex::cube(k + 1));
    let t_op = CubicalComplex::t_op(k);
    let mut prescribed: BTreeMap<usize, Block> = zeros_on(kq, cube.indices_in(&t_op), f.source(), f.target());
    for (cell, v) in f.complex().cells().iter().zip(f.values()) {
        let i = cube.index_of(cell).expect("T^k sits in the cube");
        prescribed.insert(i, v.clone());
    }
    extend(kq, cube, f.source(), f.target(), &prescribed)
}
