//! Quotients of cubical complexes by collapsing cells.
//!
//! A [`CellComplex`] is a downward-closed ambient complex together with a
//! collapse map sending each ambient cell to a representative cell or to zero.
//! The collapse must be a chain map onto the span of the representatives;
//! boundary and diagonal are computed in the ambient complex and projected.
//! Relative cylinders, long cylinders and attached cylinders are all built
//! this way, and nest.

use std::collections::{BTreeMap, BTreeSet};

use super::{Cell, ChainComplexData, Coord, CubicalComplex, CubicalError};
use crate::linalg::{Modulus, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    ambient: CubicalComplex,
    /// Ambient cells that are not representatives.
    collapse: BTreeMap<Cell, Option<Cell>>,
    cells: Vec<Cell>,
    index: BTreeMap<Cell, usize>,
    boundary: Vec<Vec<(usize, i64)>>,
    diagonal: Vec<Vec<(i64, usize, usize)>>,
}

fn push_term(out: &mut Vec<(usize, i64)>, idx: usize, coeff: i64) {
    if let Some(e) = out.iter_mut().find(|e| e.0 == idx) {
        e.1 += coeff;
    } else {
        out.push((idx, coeff));
    }
}

impl CellComplex {
    pub fn from_cubical(x: &CubicalComplex) -> Self {
        Self::quotient(x.clone(), BTreeMap::new()).expect("identity collapse is valid")
    }

    pub fn point() -> Self {
        Self::from_cubical(&CubicalComplex::point())
    }

    pub fn cube(n: usize) -> Self {
        Self::from_cubical(&CubicalComplex::cube(n))
    }

    /// Builds the quotient; `collapse` lists every non-representative cell.
    pub fn quotient(
        ambient: CubicalComplex,
        collapse: BTreeMap<Cell, Option<Cell>>,
    ) -> Result<Self, CubicalError> {
        let mut cells: Vec<Cell> = ambient
            .cells()
            .iter()
            .filter(|c| !collapse.contains_key(*c))
            .cloned()
            .collect();
        for target in collapse.values().flatten() {
            if collapse.contains_key(target) || !ambient.contains(target) {
                return Err(CubicalError::BadCollapse(target.to_string()));
            }
        }
        cells.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
        let index: BTreeMap<Cell, usize> =
            cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let project = |c: &Cell| -> Option<usize> {
            match collapse.get(c) {
                Some(None) => None,
                Some(Some(t)) => Some(index[t]),
                None => Some(index[c]),
            }
        };
        let mut boundary = Vec::with_capacity(cells.len());
        let mut diagonal = Vec::with_capacity(cells.len());
        for c in &cells {
            let mut b = Vec::new();
            for (f, s) in c.boundary() {
                if let Some(i) = project(&f) {
                    push_term(&mut b, i, s);
                }
            }
            b.retain(|e| e.1 != 0);
            b.sort_unstable();
            boundary.push(b);

            let mut d: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for (s, l, r) in c.diagonal() {
                if let (Some(i), Some(j)) = (project(&l), project(&r)) {
                    *d.entry((i, j)).or_default() += s;
                }
            }
            diagonal.push(
                d.into_iter()
                    .filter(|e| e.1 != 0)
                    .map(|((i, j), s)| (s, i, j))
                    .collect(),
            );
        }
        let complex = CellComplex {
            ambient,
            collapse,
            cells,
            index,
            boundary,
            diagonal,
        };
        complex.check_collapse()?;
        Ok(complex)
    }

    /// The collapse must commute with the boundary: cells sent to zero have
    /// boundaries sent to zero, cells sent to a representative have the
    /// representative's boundary.
    fn check_collapse(&self) -> Result<(), CubicalError> {
        for (c, target) in &self.collapse {
            let mut projected = Vec::new();
            for (f, s) in c.boundary() {
                if let Some(i) = self.project_index(&f) {
                    push_term(&mut projected, i, s);
                }
            }
            projected.retain(|e| e.1 != 0);
            projected.sort_unstable();
            let expected = match target {
                None => Vec::new(),
                Some(t) => self.boundary[self.index[t]].clone(),
            };
            if projected != expected {
                return Err(CubicalError::BadCollapse(c.to_string()));
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> &CubicalComplex {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.ambient_dim()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn dim_of(&self, i: usize) -> usize {
        self.cells[i].dim()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(Cell::dim).max().unwrap_or(0)
    }

    pub fn index_of(&self, c: &Cell) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Representative of an ambient cell, or `None` if it is collapsed to zero
    /// (or not in the ambient complex).
    pub fn project(&self, c: &Cell) -> Option<Cell> {
        if !self.ambient.contains(c) {
            return None;
        }
        match self.collapse.get(c) {
            Some(t) => t.clone(),
            None => Some(c.clone()),
        }
    }

    pub fn project_index(&self, c: &Cell) -> Option<usize> {
        self.project(c).map(|t| self.index[&t])
    }

    pub fn boundary_of(&self, i: usize) -> &[(usize, i64)] {
        &self.boundary[i]
    }

    pub fn diagonal_of(&self, i: usize) -> &[(i64, usize, usize)] {
        &self.diagonal[i]
    }

    pub fn indices_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim() == k).collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.indices_of_dim(0)
    }

    pub fn chain_data(&self, md: Modulus) -> ChainComplexData {
        let top = self.dim();
        let basis: Vec<Vec<Cell>> = (0..=top)
            .map(|k| self.indices_of_dim(k).into_iter().map(|i| self.cells[i].clone()).collect())
            .collect();
        let mut boundaries = vec![SparseMatrix::zeros(0, basis[0].len(), md)];
        for k in 1..=top {
            let rows = self.indices_of_dim(k - 1);
            let cols = self.indices_of_dim(k);
            let mut trip = Vec::new();
            for (j, &c) in cols.iter().enumerate() {
                for &(f, s) in &self.boundary[c] {
                    let i = rows.binary_search(&f).expect("boundary drops one dimension");
                    trip.push((i, j, s));
                }
            }
            boundaries.push(SparseMatrix::from_triplets(rows.len(), cols.len(), md, trip));
        }
        ChainComplexData { basis, boundaries }
    }

    /// Whether the representative cells in `cells` are closed under the boundary.
    pub fn is_subcomplex(&self, cells: &BTreeSet<usize>) -> bool {
        cells
            .iter()
            .all(|&c| self.boundary[c].iter().all(|(f, _)| cells.contains(f)))
    }

    /// Indices of the representatives lying in a cubical subcomplex of the ambient.
    pub fn indices_in(&self, sub: &CubicalComplex) -> BTreeSet<usize> {
        sub.cells().iter().filter_map(|c| self.index_of(c)).collect()
    }

    /// Whether nothing is collapsed, so this is a plain cubical complex.
    pub fn is_plain(&self) -> bool {
        self.collapse.is_empty()
    }

    /// The product `self × other`, with cells `c′c` and collapses taken factorwise.
    pub fn product(&self, other: &CellComplex) -> Result<CellComplex, CubicalError> {
        let mut ambient_cells = Vec::new();
        let mut collapse = BTreeMap::new();
        for a in self.ambient.cells() {
            let pa = self.project(a);
            for b in other.ambient.cells() {
                let c = a.product(b);
                let target = match (&pa, other.project(b)) {
                    (Some(x), Some(y)) => Some(x.product(&y)),
                    _ => None,
                };
                if target.as_ref() != Some(&c) {
                    collapse.insert(c.clone(), target);
                }
                ambient_cells.push(c);
            }
        }
        let ambient = CubicalComplex::new(self.ambient_dim() + other.ambient_dim(), ambient_cells)?;
        CellComplex::quotient(ambient, collapse)
    }

    /// The relative cylinder `I × X` with `I × a` collapsed for `a` in `rel`
    /// (given as representative indices). Cells are `t·y` with `t ∈ {0,1,*}`;
    /// `0·a` represents both ends over `rel`.
    pub fn cylinder(&self, rel: &BTreeSet<usize>) -> Result<CellComplex, CubicalError> {
        if !self.is_subcomplex(rel) {
            return Err(CubicalError::NotASubcomplex);
        }
        let rel_cells: BTreeSet<&Cell> = rel.iter().map(|&i| &self.cells[i]).collect();
        let mut ambient_cells = Vec::new();
        let mut collapse = BTreeMap::new();
        for y in self.ambient.cells() {
            let proj = self.project(y);
            for t in [Coord::Zero, Coord::One, Coord::Star] {
                let c = y.prefixed(t);
                ambient_cells.push(c.clone());
                let target = match &proj {
                    None => None,
                    Some(p) if rel_cells.contains(p) => {
                        if t == Coord::Star {
                            None
                        } else {
                            Some(p.prefixed(Coord::Zero))
                        }
                    }
                    Some(p) => Some(p.prefixed(t)),
                };
                if target.as_ref() != Some(&c) {
                    collapse.insert(c, target);
                }
            }
        }
        let ambient = CubicalComplex::new(self.ambient_dim() + 1, ambient_cells)?;
        CellComplex::quotient(ambient, collapse)
    }

    /// Cylinder relative to a cubical subcomplex of the ambient.
    pub fn cylinder_rel(&self, rel: &CubicalComplex) -> Result<CellComplex, CubicalError> {
        self.cylinder(&self.indices_in(rel))
    }

    /// Two cylinders glued end to end: the path `*0`, `1*` in I² times X, with
    /// the path collapsed over `rel`.
    pub fn long_cylinder(&self, rel: &BTreeSet<usize>) -> Result<CellComplex, CubicalError> {
        if !self.is_subcomplex(rel) {
            return Err(CubicalError::NotASubcomplex);
        }
        let rel_cells: BTreeSet<&Cell> = rel.iter().map(|&i| &self.cells[i]).collect();
        let path: Vec<[Coord; 2]> = vec![
            [Coord::Zero, Coord::Zero],
            [Coord::One, Coord::Zero],
            [Coord::One, Coord::One],
            [Coord::Star, Coord::Zero],
            [Coord::One, Coord::Star],
        ];
        let mut ambient_cells = Vec::new();
        let mut collapse = BTreeMap::new();
        for y in self.ambient.cells() {
            let proj = self.project(y);
            for p in &path {
                let c = Cell::new(p.to_vec()).product(y);
                ambient_cells.push(c.clone());
                let is_edge = p.iter().any(|x| x.is_star());
                let target = match &proj {
                    None => None,
                    Some(q) if rel_cells.contains(q) => {
                        if is_edge {
                            None
                        } else {
                            Some(Cell::new(vec![Coord::Zero, Coord::Zero]).product(q))
                        }
                    }
                    Some(q) => Some(Cell::new(p.to_vec()).product(q)),
                };
                if target.as_ref() != Some(&c) {
                    collapse.insert(c, target);
                }
            }
        }
        let ambient = CubicalComplex::new(self.ambient_dim() + 2, ambient_cells)?;
        CellComplex::quotient(ambient, collapse)
    }

    /// `B ∪_A J_{∂A}A` for a cube `B` and a facet `A`: the cylinder on `A` rel
    /// its boundary, glued to `B` along its end `1 × A`.
    pub fn attach_cylinder(b: &CubicalComplex, a: &CubicalComplex) -> Result<CellComplex, CubicalError> {
        if !a.is_subcomplex_of(b) {
            return Err(CubicalError::NotASubcomplex);
        }
        let top_a = a.dim();
        let mut ambient_cells = Vec::new();
        let mut collapse = BTreeMap::new();
        for y in b.cells() {
            ambient_cells.push(y.prefixed(Coord::One));
        }
        for y in a.cells() {
            let interior = y.dim() == top_a;
            ambient_cells.push(y.prefixed(Coord::Zero));
            ambient_cells.push(y.prefixed(Coord::Star));
            if !interior {
                collapse.insert(y.prefixed(Coord::Zero), Some(y.prefixed(Coord::One)));
                collapse.insert(y.prefixed(Coord::Star), None);
            }
        }
        let ambient = CubicalComplex::new(b.ambient_dim() + 1, ambient_cells)?;
        CellComplex::quotient(ambient, collapse)
    }
}

/// A chain map between cell complexes, with integer coefficients reduced at use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source_len: usize,
    pub target_len: usize,
    pub images: Vec<Vec<(usize, i64)>>,
}

impl ChainMap {
    /// Sends each representative of `source` to the representative with the same
    /// word in `target`, after applying `rename` to the word.
    pub fn by_words(
        source: &CellComplex,
        target: &CellComplex,
        rename: impl Fn(&Cell) -> (Option<Cell>, i64),
    ) -> Result<Self, CubicalError> {
        let mut images = Vec::with_capacity(source.len());
        for c in source.cells() {
            let (w, s) = rename(c);
            let img = match w {
                None => Vec::new(),
                Some(w) => {
                    if !target.ambient().contains(&w) {
                        return Err(CubicalError::CellNotInComplex(w.to_string()));
                    }
                    target.project_index(&w).map(|i| vec![(i, s)]).unwrap_or_default()
                }
            };
            images.push(img);
        }
        Ok(ChainMap {
            source_len: source.len(),
            target_len: target.len(),
            images,
        })
    }

    /// Inclusion of a complex whose cells are also cells of `target`.
    pub fn inclusion(source: &CellComplex, target: &CellComplex) -> Result<Self, CubicalError> {
        Self::by_words(source, target, |c| (Some(c.clone()), 1))
    }

    pub fn identity(x: &CellComplex) -> Self {
        ChainMap {
            source_len: x.len(),
            target_len: x.len(),
            images: (0..x.len()).map(|i| vec![(i, 1)]).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> ChainMap {
        let images = first
            .images
            .iter()
            .map(|img| {
                let mut out: BTreeMap<usize, i64> = BTreeMap::new();
                for &(j, a) in img {
                    for &(k, b) in &self.images[j] {
                        *out.entry(k).or_default() += a * b;
                    }
                }
                out.into_iter().filter(|e| e.1 != 0).collect()
            })
            .collect();
        ChainMap {
            source_len: first.source_len,
            target_len: self.target_len,
            images,
        }
    }

    /// Checks `∂φ = φ∂` modulo `md`.
    pub fn is_chain_map(&self, source: &CellComplex, target: &CellComplex, md: Modulus) -> bool {
        for c in 0..source.len() {
            let mut lhs: BTreeMap<usize, i64> = BTreeMap::new();
            for &(y, a) in &self.images[c] {
                for &(f, s) in target.boundary_of(y) {
                    *lhs.entry(f).or_default() += a * s;
                }
            }
            for &(f, s) in source.boundary_of(c) {
                for &(y, a) in &self.images[f] {
                    *lhs.entry(y).or_default() -= a * s;
                }
            }
            if lhs.values().any(|&v| md.from_i64(v) != 0) {
                return false;
            }
        }
        true
    }
}

/// Face inclusions and projection of a cylinder `J` built over `x`.
pub struct CylinderMaps {
    pub i_minus: ChainMap,
    pub i_plus: ChainMap,
    pub epsilon: ChainMap,
    pub opposite: ChainMap,
}

impl CylinderMaps {
    pub fn new(x: &CellComplex, j: &CellComplex) -> Result<Self, CubicalError> {
        let i_minus = ChainMap::by_words(x, j, |c| (Some(c.prefixed(Coord::Zero)), 1))?;
        let i_plus = ChainMap::by_words(x, j, |c| (Some(c.prefixed(Coord::One)), 1))?;
        let epsilon = ChainMap::by_words(j, x, |c| {
            let (t, y) = c.split_at(1);
            if t.coord(0).is_star() {
                (None, 1)
            } else {
                (Some(y), 1)
            }
        })?;
        let opposite = ChainMap::by_words(j, j, |c| {
            let (t, y) = c.split_at(1);
            match t.coord(0) {
                Coord::Zero => (Some(y.prefixed(Coord::One)), 1),
                Coord::One => (Some(y.prefixed(Coord::Zero)), 1),
                Coord::Star => (Some(c.clone()), -1),
            }
        })?;
        Ok(CylinderMaps {
            i_minus,
            i_plus,
            epsilon,
            opposite,
        })
    }
}
