use super::{Coord, CubicalComplex, CubicalError};

/// Orientation of a cube: the standard one (top cell with its lexicographic
/// frame) or its opposite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Opposite,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Standard => 1,
            Orientation::Opposite => -1,
        }
    }

    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Standard => Orientation::Opposite,
            Orientation::Opposite => Orientation::Standard,
        }
    }
}

/// Identifies `a` as the facet `{x_i = δ}` of the cube `b`; `i` is 1-based.
pub fn facet_position(b: &CubicalComplex, a: &CubicalComplex) -> Result<(usize, bool), CubicalError> {
    let n = b.ambient_dim();
    if *b != CubicalComplex::cube(n) || a.ambient_dim() != n {
        return Err(CubicalError::NotAFacet("ball is not a full cube".into()));
    }
    for i in 1..=n {
        for delta in [false, true] {
            if *a == CubicalComplex::facet(n, i, delta)? {
                return Ok((i, delta));
            }
        }
    }
    Err(CubicalError::NotAFacet(format!("{} cells in I^{n}", a.len())))
}

/// ε(B, A) for the facet `{x_i = δ}` of a standardly oriented cube: (−1)^{i+δ}.
pub fn orientation_sign(b: &CubicalComplex, a: &CubicalComplex) -> Result<i64, CubicalError> {
    let (i, delta) = facet_position(b, a)?;
    Ok(facet_sign(i, delta))
}

pub fn facet_sign(i: usize, delta: bool) -> i64 {
    if (i + delta as usize) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The fundamental chain of T^n ⊂ I^{n+1}: Σ_i (−1)^i [x_i = 0] as
/// (top cell of the facet, coefficient).
pub fn t_fundamental_chain(n: usize) -> Vec<(super::Cell, i64)> {
    (1..=n + 1)
        .map(|i| {
            let cell = super::Cell::top(n + 1).with(i - 1, Coord::Zero);
            (cell, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}
