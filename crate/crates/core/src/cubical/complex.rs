use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Cell, Coord, CubicalError};
use crate::linalg::{Modulus, SparseMatrix};

/// A downward-closed set of cells of I^N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicalComplex {
    ambient_dim: usize,
    cells: BTreeSet<Cell>,
}

/// Bases per degree and boundary matrices `∂_k : C_k → C_{k−1}`.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub basis: Vec<Vec<Cell>>,
    /// `boundaries[k]` is ∂_k; `boundaries[0]` is the zero map to degree −1.
    pub boundaries: Vec<SparseMatrix>,
}

impl CubicalComplex {
    /// Validates lengths and downward closure.
    pub fn new(ambient_dim: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self, CubicalError> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        for c in &cells {
            if c.len() != ambient_dim {
                return Err(CubicalError::WrongLength {
                    cell: c.to_string(),
                    expected: ambient_dim,
                });
            }
            for (f, _) in c.boundary() {
                if !cells.contains(&f) {
                    return Err(CubicalError::NotDownwardClosed {
                        cell: c.to_string(),
                        missing: f.to_string(),
                    });
                }
            }
        }
        Ok(CubicalComplex { ambient_dim, cells })
    }

    /// The smallest subcomplex containing the given cells.
    pub fn closure(ambient_dim: usize, generators: impl IntoIterator<Item = Cell>) -> Result<Self, CubicalError> {
        let mut cells = BTreeSet::new();
        for g in generators {
            if g.len() != ambient_dim {
                return Err(CubicalError::WrongLength {
                    cell: g.to_string(),
                    expected: ambient_dim,
                });
            }
            cells.extend(g.faces());
        }
        Ok(CubicalComplex { ambient_dim, cells })
    }

    fn filtered(n: usize, keep: impl Fn(&Cell) -> bool) -> Self {
        let cells = Cell::top(n).faces().into_iter().filter(|c| keep(c)).collect();
        CubicalComplex {
            ambient_dim: n,
            cells,
        }
    }

    pub fn point() -> Self {
        Self::cube(0)
    }

    pub fn cube(n: usize) -> Self {
        Self::filtered(n, |_| true)
    }

    /// The facet `{x_i = δ}` of I^n, with `i` 1-based.
    pub fn facet(n: usize, i: usize, delta: bool) -> Result<Self, CubicalError> {
        if i == 0 || i > n {
            return Err(CubicalError::NotAFacet(format!("x_{i} in I^{n}")));
        }
        let c = if delta { Coord::One } else { Coord::Zero };
        Ok(Self::filtered(n, |cell| cell.coord(i - 1) == c))
    }

    pub fn cube_boundary(n: usize) -> Self {
        Self::filtered(n, |c| c.dim() < n)
    }

    /// T^n ⊂ I^{n+1}: cells with at least one coordinate 0.
    pub fn t_complex(n: usize) -> Self {
        Self::filtered(n + 1, |c| c.word().contains(&Coord::Zero))
    }

    /// T^n_op ⊂ I^{n+1}: cells with at least one coordinate 1.
    pub fn t_op(n: usize) -> Self {
        Self::filtered(n + 1, |c| c.word().contains(&Coord::One))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.contains(c)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Top dimension (0 for the empty complex).
    pub fn dim(&self) -> usize {
        self.cells.iter().map(Cell::dim).max().unwrap_or(0)
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<Cell> {
        self.cells.iter().filter(|c| c.dim() == k).cloned().collect()
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.cells_of_dim(k).len()).collect()
    }

    pub fn is_subcomplex_of(&self, other: &CubicalComplex) -> bool {
        self.ambient_dim == other.ambient_dim && self.cells.is_subset(&other.cells)
    }

    pub fn union(&self, other: &CubicalComplex) -> Result<Self, CubicalError> {
        self.same_ambient(other)?;
        Ok(CubicalComplex {
            ambient_dim: self.ambient_dim,
            cells: self.cells.union(&other.cells).cloned().collect(),
        })
    }

    pub fn intersection(&self, other: &CubicalComplex) -> Result<Self, CubicalError> {
        self.same_ambient(other)?;
        Ok(CubicalComplex {
            ambient_dim: self.ambient_dim,
            cells: self.cells.intersection(&other.cells).cloned().collect(),
        })
    }

    fn same_ambient(&self, other: &CubicalComplex) -> Result<(), CubicalError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(CubicalError::WrongLength {
                cell: format!("complex in I^{}", other.ambient_dim),
                expected: self.ambient_dim,
            });
        }
        Ok(())
    }

    /// Whether `pieces` form a regular sequence: each piece meets the union of
    /// the earlier ones in a subcomplex of both (always true for subcomplexes of
    /// a common cube) and the running unions stay pure of the top dimension.
    pub fn is_regular_sequence(pieces: &[CubicalComplex]) -> bool {
        let Some(first) = pieces.first() else {
            return true;
        };
        let d = first.dim();
        let mut acc = first.clone();
        for p in &pieces[1..] {
            if p.dim() != d || p.ambient_dim != acc.ambient_dim {
                return false;
            }
            let Ok(meet) = acc.intersection(p) else {
                return false;
            };
            // pieces meet along a nonempty complex of codimension one
            if d > 0 && (meet.is_empty() || meet.dim() + 1 != d) {
                return false;
            }
            acc = acc.union(p).expect("same ambient");
        }
        true
    }

    /// Matrix of ∂_k in canonical cell order (rows: (k−1)-cells, cols: k-cells).
    pub fn boundary_matrix(&self, k: usize, md: Modulus) -> SparseMatrix {
        let cols = self.cells_of_dim(k);
        if k == 0 {
            return SparseMatrix::zeros(0, cols.len(), md);
        }
        let rows = self.cells_of_dim(k - 1);
        let mut trip = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            for (f, s) in c.boundary() {
                let i = rows.binary_search(&f).expect("downward closed");
                trip.push((i, j, s));
            }
        }
        SparseMatrix::from_triplets(rows.len(), cols.len(), md, trip)
    }

    pub fn chain_data(&self, md: Modulus) -> ChainComplexData {
        let top = self.dim();
        ChainComplexData {
            basis: (0..=top).map(|k| self.cells_of_dim(k)).collect(),
            boundaries: (0..=top).map(|k| self.boundary_matrix(k, md)).collect(),
        }
    }

    /// Δ̄ of a cell of this complex.
    pub fn diagonal(&self, c: &Cell) -> Result<Vec<(i64, Cell, Cell)>, CubicalError> {
        if !self.contains(c) {
            return Err(CubicalError::CellNotInComplex(c.to_string()));
        }
        Ok(c.diagonal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn rank_f2(a: &SparseMatrix) -> usize {
        crate::linalg::smith_normal_form(a).rank()
    }

    #[test]
    fn interval_boundary_matrix() {
        let b = CubicalComplex::cube(1).boundary_matrix(1, md(5));
        // columns: "*"; rows: "0", "1"
        assert_eq!(b.to_rows(), vec![vec![4], vec![1]]);
    }

    #[test]
    fn square_boundary_rank() {
        let bd = CubicalComplex::cube_boundary(2);
        assert_eq!(bd.counts(), vec![4, 4]);
        let d1 = bd.boundary_matrix(1, md(2));
        // brute force: rank of the 4x4 incidence matrix over F2 equals 3
        let rows = d1.to_rows();
        let mut best = 0;
        for mask in 0u32..16 {
            // the largest set of columns with no nonzero combination summing to zero
            let cols: Vec<usize> = (0..4).filter(|j| mask >> j & 1 == 1).collect();
            let independent = (1u32..(1 << cols.len())).all(|sub| {
                (0..4).any(|i| {
                    cols.iter()
                        .enumerate()
                        .filter(|(t, _)| sub >> t & 1 == 1)
                        .map(|(_, &j)| rows[i][j])
                        .sum::<u64>()
                        % 2
                        == 1
                })
            });
            if independent {
                best = best.max(cols.len());
            }
        }
        assert_eq!(best, 3);
        assert_eq!(rank_f2(&d1), 3);
    }

    #[test]
    fn t_complexes() {
        let t1 = CubicalComplex::t_complex(1);
        let expected: BTreeSet<Cell> = ["0*", "*0", "00", "01", "10"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(t1.cells(), &expected);
        for n in 0..4 {
            let t = CubicalComplex::t_complex(n);
            let top = t.union(&CubicalComplex::t_op(n)).unwrap();
            assert_eq!(top, CubicalComplex::cube_boundary(n + 1));
        }
        // T² in I³: 3 squares, 9 edges, 7 vertices (enumerated words with a 0)
        let t2 = CubicalComplex::t_complex(2);
        let by_enum = Cell::top(3)
            .faces()
            .into_iter()
            .filter(|c| c.word().contains(&Coord::Zero))
            .count();
        assert_eq!(t2.len(), by_enum);
        assert_eq!(t2.counts(), vec![7, 9, 3]);
    }

    #[test]
    fn rejects_non_closed_sets() {
        let bad = CubicalComplex::new(1, ["*".parse().unwrap()]);
        assert!(matches!(bad, Err(CubicalError::NotDownwardClosed { .. })));
        assert!(CubicalComplex::facet(2, 3, false).is_err());
    }

    #[test]
    fn t_faces_form_regular_sequences() {
        let faces: Vec<_> = (1..=3)
            .map(|i| CubicalComplex::facet(3, i, false).unwrap())
            .collect();
        assert!(CubicalComplex::is_regular_sequence(&faces));
        let opposite = vec![
            CubicalComplex::facet(3, 1, false).unwrap(),
            CubicalComplex::facet(3, 1, true).unwrap(),
        ];
        assert!(!CubicalComplex::is_regular_sequence(&opposite));
    }
}
