use std::sync::Arc;

use super::{Kq, TrackError};
use crate::algebra::module::{block_is_zero, check_block_degrees, zero_block};
use crate::algebra::{Block, GradedModule};
use crate::cubical::{Cell, CellComplex, ChainMap, CubicalComplex};

/// A morphism `C_*(B) ⊗ L ⊗ Q → L′ ⊗ Q` of K^Q(B), stored by its values on
/// the cells of `B`: `values[c][i][j]` is the coefficient of the target
/// generator `j` in the image of `c ⊗ l_i`.
#[derive(Clone, Debug)]
pub struct Morphism {
    complex: Arc<CellComplex>,
    source: GradedModule,
    target: GradedModule,
    values: Vec<Block>,
}

impl Morphism {
    /// Assembles a morphism without checking the chain condition.
    pub fn from_values(
        complex: Arc<CellComplex>,
        source: GradedModule,
        target: GradedModule,
        values: Vec<Block>,
    ) -> Result<Self, TrackError> {
        if values.len() != complex.len() {
            return Err(TrackError::Shape(format!(
                "{} values for {} cells",
                values.len(),
                complex.len()
            )));
        }
        for v in &values {
            if v.len() != source.rank() || v.iter().any(|row| row.len() != target.rank()) {
                return Err(TrackError::Shape("block shape does not match the modules".into()));
            }
        }
        Ok(Morphism {
            complex,
            source,
            target,
            values,
        })
    }

    pub fn zero(kq: &Kq, complex: Arc<CellComplex>, source: &GradedModule, target: &GradedModule) -> Self {
        let values = vec![zero_block(kq.algebra(), source, target); complex.len()];
        Morphism {
            complex,
            source: source.clone(),
            target: target.clone(),
            values,
        }
    }

    /// The identity of `L` over `B`: the unit on every vertex, zero elsewhere.
    pub fn identity(kq: &Kq, complex: Arc<CellComplex>, module: &GradedModule) -> Self {
        let q = kq.algebra();
        let mut out = Self::zero(kq, complex, module, module);
        for v in out.complex.vertices() {
            for i in 0..module.rank() {
                out.values[v][i][i] = q.one();
            }
        }
        out
    }

    /// A morphism over the point.
    pub fn over_point(source: &GradedModule, target: &GradedModule, block: Block) -> Result<Self, TrackError> {
        Self::from_values(Arc::new(CellComplex::point()), source.clone(), target.clone(), vec![block])
    }

    pub fn complex(&self) -> &Arc<CellComplex> {
        &self.complex
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn values(&self) -> &[Block] {
        &self.values
    }

    pub fn value(&self, cell: usize) -> &Block {
        &self.values[cell]
    }

    pub fn value_at(&self, cell: &Cell) -> Option<&Block> {
        self.complex.index_of(cell).map(|i| &self.values[i])
    }

    pub fn set_value(&mut self, cell: usize, block: Block) {
        self.values[cell] = block;
    }

    pub fn into_values(self) -> Vec<Block> {
        self.values
    }

    /// Checks bidegrees and `d f(c) = f(∂c)` on every cell.
    pub fn check(&self, kq: &Kq) -> Result<(), TrackError> {
        let q = kq.algebra();
        for (c, v) in self.values.iter().enumerate() {
            check_block_degrees(q, &self.source, &self.target, v, self.complex.dim_of(c) as i64)?;
        }
        for c in 0..self.complex.len() {
            if self.complex.dim_of(c) == 0 {
                continue;
            }
            for i in 0..self.source.rank() {
                for j in 0..self.target.rank() {
                    let lhs = q.d(&self.values[c][i][j]);
                    let mut rhs = q.zero();
                    for &(f, s) in self.complex.boundary_of(c) {
                        q.add_assign(&mut rhs, &q.scale_i64(&self.values[f][i][j], s));
                    }
                    if !q.eq(&lhs, &rhs) {
                        return Err(TrackError::ChainCondition {
                            cell: self.complex.cell(c).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self, kq: &Kq) -> bool {
        self.values.iter().all(|v| block_is_zero(kq.algebra(), v))
    }

    /// Exact equality of values, modules and complexes.
    pub fn same_as(&self, kq: &Kq, other: &Morphism) -> bool {
        let q = kq.algebra();
        self.source == other.source
            && self.target == other.target
            && (Arc::ptr_eq(&self.complex, &other.complex) || self.complex.cells() == other.complex.cells())
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| q.eq(x, y)))
    }

    /// `f ∘ φ` for a chain map `φ : C_*(X) → C_*(self.complex)`.
    pub fn pullback(&self, kq: &Kq, phi: &ChainMap, x: Arc<CellComplex>) -> Result<Morphism, TrackError> {
        if phi.target_len != self.complex.len() || phi.source_len != x.len() {
            return Err(TrackError::ComplexMismatch);
        }
        let q = kq.algebra();
        let values = phi
            .images
            .iter()
            .map(|img| {
                let mut block = zero_block(q, &self.source, &self.target);
                for &(y, a) in img {
                    for (i, row) in block.iter_mut().enumerate() {
                        for (j, e) in row.iter_mut().enumerate() {
                            q.add_assign(e, &q.scale_i64(&self.values[y][i][j], a));
                        }
                    }
                }
                block
            })
            .collect();
        Ok(Morphism {
            complex: x,
            source: self.source.clone(),
            target: self.target.clone(),
            values,
        })
    }

    /// Restriction to a complex whose cells are cells of this one.
    pub fn restrict(&self, sub: Arc<CellComplex>) -> Result<Morphism, TrackError> {
        let mut values = Vec::with_capacity(sub.len());
        for c in sub.cells() {
            let i = self
                .complex
                .index_of(c)
                .ok_or_else(|| TrackError::Cubical(crate::cubical::CubicalError::CellNotInComplex(c.to_string())))?;
            values.push(self.values[i].clone());
        }
        Ok(Morphism {
            complex: sub,
            source: self.source.clone(),
            target: self.target.clone(),
            values,
        })
    }

    /// Restriction to a cubical subcomplex of the ambient cube.
    pub fn restrict_to(&self, sub: &CubicalComplex) -> Result<Morphism, TrackError> {
        self.restrict(Arc::new(CellComplex::from_cubical(sub)))
    }

    /// Transports values along a bijection of cell words onto a new complex.
    pub fn relabel(&self, target: Arc<CellComplex>, word: impl Fn(&Cell) -> Cell) -> Result<Morphism, TrackError> {
        let mut values = vec![Vec::new(); target.len()];
        let mut seen = vec![false; target.len()];
        for (c, v) in self.complex.cells().iter().zip(&self.values) {
            let w = word(c);
            let i = target
                .index_of(&w)
                .ok_or_else(|| TrackError::Cubical(crate::cubical::CubicalError::CellNotInComplex(w.to_string())))?;
            values[i] = v.clone();
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(TrackError::Shape("relabelling is not onto".into()));
        }
        Ok(Morphism {
            complex: target,
            source: self.source.clone(),
            target: self.target.clone(),
            values,
        })
    }
}
