use std::sync::Arc;

use super::{Kq, Morphism, TrackError};
use crate::algebra::module::{add_blocks, compose_blocks, scale_block, zero_block};
use crate::algebra::Block;
use crate::cubical::{CellComplex, CubicalComplex};

/// `g ∘ f` over a common complex, through the diagonal:
/// `(g∘f)(c) = Σ_{Δc = Σ ±c′⊗c″} ± g(c′)·f(c″)`.
pub fn compose(kq: &Kq, g: &Morphism, f: &Morphism) -> Result<Morphism, TrackError> {
    if f.target() != g.source() {
        return Err(TrackError::ModuleMismatch);
    }
    let x = f.complex();
    if !Arc::ptr_eq(x, g.complex()) && x.cells() != g.complex().cells() {
        return Err(TrackError::ComplexMismatch);
    }
    let q = kq.algebra();
    let values: Vec<Block> = (0..x.len())
        .map(|c| {
            let mut acc = zero_block(q, f.source(), g.target());
            for &(s, l, r) in x.diagonal_of(c) {
                let term = compose_blocks(q, g.value(l), f.value(r));
                acc = add_blocks(q, &acc, &scale_block(q, &term, s));
            }
            acc
        })
        .collect();
    Morphism::from_values(x.clone(), f.source().clone(), g.target().clone(), values)
}

/// `g ⊗ f` over `B′ × B` for `g` over `B′` and `f` over `B`:
/// `(g⊗f)(c′c) = g(c′)·f(c)`.
pub fn tensor(kq: &Kq, g: &Morphism, f: &Morphism) -> Result<Morphism, TrackError> {
    if f.target() != g.source() {
        return Err(TrackError::ModuleMismatch);
    }
    let q = kq.algebra();
    let product = Arc::new(g.complex().product(f.complex())?);
    let split = g.complex().ambient_dim();
    let mut values = Vec::with_capacity(product.len());
    for c in product.cells() {
        let (a, b) = c.split_at(split);
        let (ga, fb) = match (g.value_at(&a), f.value_at(&b)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(TrackError::Shape(format!("product cell {c} does not split"))),
        };
        values.push(compose_blocks(q, ga, fb));
    }
    Morphism::from_values(product, f.source().clone(), g.target().clone(), values)
}

/// Glues two morphisms over plain subcomplexes of one cube along their
/// intersection; values must agree exactly on shared cells.
pub fn glue(kq: &Kq, a: &Morphism, b: &Morphism) -> Result<Morphism, TrackError> {
    glue_all(kq, &[a, b])
}

/// Glues any number of pieces at once.
pub fn glue_all(kq: &Kq, pieces: &[&Morphism]) -> Result<Morphism, TrackError> {
    let first = pieces
        .first()
        .ok_or_else(|| TrackError::Shape("nothing to glue".into()))?;
    let mut union: CubicalComplex = first.complex().ambient().clone();
    for p in pieces {
        if !p.complex().is_plain() {
            return Err(TrackError::Shape("can only glue over plain cubical complexes".into()));
        }
        if p.source() != first.source() || p.target() != first.target() {
            return Err(TrackError::ModuleMismatch);
        }
        union = union.union(p.complex().ambient())?;
    }
    let q = kq.algebra();
    let complex = Arc::new(CellComplex::from_cubical(&union));
    let mut values: Vec<Option<Block>> = vec![None; complex.len()];
    for p in pieces {
        for (c, v) in p.complex().cells().iter().zip(p.values()) {
            let i = complex.index_of(c).expect("union contains every piece");
            match &values[i] {
                None => values[i] = Some(v.clone()),
                Some(w) => {
                    let same = w.iter().flatten().zip(v.iter().flatten()).all(|(x, y)| q.eq(x, y));
                    if !same {
                        return Err(TrackError::GlueMismatch { cell: c.to_string() });
                    }
                }
            }
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.unwrap_or_else(|| zero_block(q, first.source(), first.target())))
        .collect();
    Morphism::from_values(complex, first.source().clone(), first.target().clone(), values)
}
