//! The extension solver: given values on some cells, find all morphisms (or
//! chain maps of cell complexes) agreeing with them.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{Kq, Morphism, TrackError};
use crate::algebra::module::{check_block_degrees, entry_degree, zero_block};
use crate::algebra::{Block, GradedModule};
use crate::cubical::{CellComplex, ChainMap};
use crate::linalg::{solve_with_orders, AffineSolutionSet, Certificate, Modulus, SolveOutcome, SparseMatrix};
use crate::oracle::{BudgetExceeded, EnumerationBudget, MixedRadix};

#[derive(Clone, Debug)]
struct EntrySpace {
    i: usize,
    j: usize,
    /// Unknown cells with the Q-basis indices of their coordinates.
    layout: Vec<(usize, Vec<usize>)>,
    set: AffineSolutionSet,
}

/// The affine space of all morphisms extending the prescribed values. The
/// distinguished point is the pinned particular solution.
#[derive(Clone, Debug)]
pub struct Extension {
    particular: Morphism,
    entries: Vec<EntrySpace>,
}

/// Why an extension problem has no solution: the entry whose linear system
/// is inconsistent, with a left-annihilator certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstacle {
    pub source_generator: usize,
    pub target_generator: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub enum ExtendOutcome {
    Solved(Extension),
    Unsolvable(Obstacle),
}

impl ExtendOutcome {
    pub fn solved(self) -> Option<Extension> {
        match self {
            ExtendOutcome::Solved(e) => Some(e),
            ExtendOutcome::Unsolvable(_) => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, ExtendOutcome::Solved(_))
    }
}

impl Extension {
    pub fn morphism(&self) -> &Morphism {
        &self.particular
    }

    pub fn into_morphism(self) -> Morphism {
        self.particular
    }

    /// Additive orders of the free parameters, entry by entry.
    pub fn generator_orders(&self) -> Vec<u64> {
        self.entries.iter().flat_map(|e| e.set.generator_orders()).collect()
    }

    pub fn free_parameters(&self) -> usize {
        self.entries.iter().map(|e| e.set.kernel_basis.len()).sum()
    }

    /// Number of extensions (saturating).
    pub fn cardinality(&self) -> u128 {
        MixedRadix::count(&self.generator_orders())
    }

    /// The extension with free parameters `coeffs` (concatenated over entries).
    pub fn point(&self, kq: &Kq, coeffs: &[u64]) -> Morphism {
        let q = kq.algebra();
        let mut out = self.particular.clone();
        let mut pos = 0;
        for e in &self.entries {
            let k = e.set.kernel_basis.len();
            let x = e.set.point(&coeffs[pos..pos + k]);
            pos += k;
            let mut off = 0;
            for (cell, idx) in &e.layout {
                let mut block = out.value(*cell).clone();
                block[e.i][e.j] = q.from_coords(idx, &x[off..off + idx.len()]);
                off += idx.len();
                out.set_value(*cell, block);
            }
        }
        out
    }

    /// Every extension, in a deterministic order.
    pub fn enumerate<'a>(
        &'a self,
        kq: &'a Kq,
        budget: EnumerationBudget,
    ) -> Result<impl Iterator<Item = Morphism> + 'a, BudgetExceeded> {
        let orders = self.generator_orders();
        budget.check(MixedRadix::count(&orders))?;
        Ok(MixedRadix::new(orders).map(move |c| self.point(kq, &c)))
    }
}

/// Solves for all morphisms over `complex` with the `prescribed` values on
/// some cells. Prescribed data must itself satisfy every chain condition that
/// involves no unknown cell.
pub fn extend(
    kq: &Kq,
    complex: Arc<CellComplex>,
    source: &GradedModule,
    target: &GradedModule,
    prescribed: &BTreeMap<usize, Block>,
) -> Result<ExtendOutcome, TrackError> {
    let q = kq.algebra();
    let md = q.modulus();
    for (&c, block) in prescribed {
        if c >= complex.len() {
            return Err(TrackError::Shape(format!("cell index {c} out of range")));
        }
        check_block_degrees(q, source, target, block, complex.dim_of(c) as i64)?;
    }
    let unknown: Vec<usize> = (0..complex.len()).filter(|c| !prescribed.contains_key(c)).collect();
    let mut particular = Morphism::zero(kq, complex.clone(), source, target);
    for (&c, block) in prescribed {
        particular.set_value(c, block.clone());
    }
    let mut entries = Vec::new();
    for i in 0..source.rank() {
        for j in 0..target.rank() {
            let r = entry_degree(source, target, i, j);
            let mut offset = BTreeMap::new();
            let mut layout = Vec::new();
            let mut col_orders = Vec::new();
            for &c in &unknown {
                let idx = q.indices(r, complex.dim_of(c) as i64);
                offset.insert(c, col_orders.len());
                col_orders.extend(q.orders_of(&idx));
                layout.push((c, idx));
            }
            let ncols = col_orders.len();
            let mut trip = Vec::new();
            let mut rhs = Vec::new();
            let mut row_orders = Vec::new();
            for c in 0..complex.len() {
                let dim = complex.dim_of(c);
                if dim == 0 {
                    continue;
                }
                let faces = complex.boundary_of(c);
                let c_unknown = !prescribed.contains_key(&c);
                let involved = c_unknown || faces.iter().any(|(f, _)| !prescribed.contains_key(f));
                let mut known = q.zero();
                if let Some(b) = prescribed.get(&c) {
                    known = q.neg(&q.d(&b[i][j]));
                }
                for &(f, s) in faces {
                    if let Some(b) = prescribed.get(&f) {
                        q.add_assign(&mut known, &q.scale_i64(&b[i][j], s));
                    }
                }
                if !involved {
                    if !q.is_zero(&known) {
                        return Err(TrackError::ChainCondition {
                            cell: complex.cell(c).to_string(),
                        });
                    }
                    continue;
                }
                let rows = q.indices(r, dim as i64 - 1);
                let base = rhs.len();
                if c_unknown {
                    let (_, idx) = &layout[unknown.binary_search(&c).expect("unknown cell")];
                    let off = offset[&c];
                    for (t, &b) in idx.iter().enumerate() {
                        let db = q.d(&q.gen(b));
                        for (k, &rb) in rows.iter().enumerate() {
                            if db[rb] != 0 {
                                trip.push((base + k, off + t, db[rb] as i64));
                            }
                        }
                    }
                }
                for &(f, s) in faces {
                    if let Some(&off) = offset.get(&f) {
                        for k in 0..rows.len() {
                            trip.push((base + k, off + k, -s));
                        }
                    }
                }
                rhs.extend(q.coords(&known, &rows));
                row_orders.extend(q.orders_of(&rows));
            }
            let a = SparseMatrix::from_triplets(rhs.len(), ncols, md, trip);
            match solve_with_orders(&a, &rhs, &row_orders, &col_orders)? {
                SolveOutcome::NoSolution(certificate) => {
                    return Ok(ExtendOutcome::Unsolvable(Obstacle {
                        source_generator: i,
                        target_generator: j,
                        certificate,
                    }))
                }
                SolveOutcome::Solved(set) => {
                    let mut off = 0;
                    for (cell, idx) in &layout {
                        let mut block = particular.value(*cell).clone();
                        block[i][j] = q.from_coords(idx, &set.particular[off..off + idx.len()]);
                        off += idx.len();
                        particular.set_value(*cell, block);
                    }
                    entries.push(EntrySpace { i, j, layout, set });
                }
            }
        }
    }
    Ok(ExtendOutcome::Solved(Extension { particular, entries }))
}

fn symmetric(md: Modulus, x: u64) -> i64 {
    let m = md.value();
    if x > m / 2 {
        x as i64 - m as i64
    } else {
        x as i64
    }
}

/// A chain map `source → target` (over Z/m) extending the `given` images,
/// sending every unknown vertex to a 0-chain of augmentation 1.
pub fn extend_chain_map(
    source: &CellComplex,
    target: &CellComplex,
    given: &BTreeMap<usize, Vec<(usize, i64)>>,
    md: Modulus,
) -> Result<ChainMap, TrackError> {
    let unknown: Vec<usize> = (0..source.len()).filter(|c| !given.contains_key(c)).collect();
    let mut offset = BTreeMap::new();
    let mut layout = Vec::new();
    let mut ncols = 0;
    for &c in &unknown {
        let cells = target.indices_of_dim(source.dim_of(c));
        offset.insert(c, ncols);
        ncols += cells.len();
        layout.push((c, cells));
    }
    let position = |dim: usize| -> BTreeMap<usize, usize> {
        target
            .indices_of_dim(dim)
            .into_iter()
            .enumerate()
            .map(|(k, y)| (y, k))
            .collect()
    };
    let mut trip = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    for c in 0..source.len() {
        let dim = source.dim_of(c);
        if dim == 0 {
            if let Some(&off) = offset.get(&c) {
                let row = rhs.len();
                for k in 0..target.indices_of_dim(0).len() {
                    trip.push((row, off + k, 1));
                }
                rhs.push(1);
            }
            continue;
        }
        let rows = position(dim - 1);
        let base = rhs.len();
        let mut known = vec![0i64; rows.len()];
        // ∂φ(c)
        match given.get(&c) {
            Some(img) => {
                for &(y, a) in img {
                    for &(f, s) in target.boundary_of(y) {
                        known[rows[&f]] -= a * s;
                    }
                }
            }
            None => {
                let off = offset[&c];
                for (t, y) in target.indices_of_dim(dim).into_iter().enumerate() {
                    for &(f, s) in target.boundary_of(y) {
                        trip.push((base + rows[&f], off + t, s));
                    }
                }
            }
        }
        // − φ(∂c)
        for &(f, s) in source.boundary_of(c) {
            match given.get(&f) {
                Some(img) => {
                    for &(y, a) in img {
                        known[rows[&y]] += a * s;
                    }
                }
                None => {
                    let off = offset[&f];
                    for k in 0..rows.len() {
                        trip.push((base + k, off + k, -s));
                    }
                }
            }
        }
        rhs.extend(known);
    }
    let a = SparseMatrix::from_triplets(rhs.len(), ncols, md, trip);
    let b: Vec<u64> = rhs.iter().map(|&x| md.from_i64(x)).collect();
    let set = match solve_with_orders(&a, &b, &vec![md.value(); b.len()], &vec![md.value(); ncols])? {
        SolveOutcome::Solved(s) => s,
        SolveOutcome::NoSolution(_) => return Err(TrackError::NoChainMap),
    };
    let mut images = vec![Vec::new(); source.len()];
    for (c, img) in given {
        images[*c] = img
            .iter()
            .map(|&(y, a)| (y, symmetric(md, md.from_i64(a))))
            .filter(|e| e.1 != 0)
            .collect();
    }
    for (c, cells) in layout {
        let off = offset[&c];
        images[c] = cells
            .iter()
            .enumerate()
            .map(|(t, &y)| (y, symmetric(md, set.particular[off + t])))
            .filter(|e| e.1 != 0)
            .collect();
    }
    Ok(ChainMap {
        source_len: source.len(),
        target_len: target.len(),
        images,
    })
}

/// Zero values on every listed cell, for use as prescribed data.
pub(crate) fn zeros_on(
    kq: &Kq,
    cells: impl IntoIterator<Item = usize>,
    source: &GradedModule,
    target: &GradedModule,
) -> BTreeMap<usize, Block> {
    let z = zero_block(kq.algebra(), source, target);
    cells.into_iter().map(|c| (c, z.clone())).collect()
}
