use std::collections::BTreeMap;

use serde::Serialize;

use super::{AlgebraError, ChainAlgebra, Elem};
use crate::linalg::{
    quotient_basis, solve_with_orders, QuotientPresentation, SolveOutcome, SparseMatrix,
};

/// H_k in one upper degree r, presented as a quotient of the free module on a
/// generating set of cycles.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub r: u32,
    pub k: u32,
    /// Basis indices spanning Q^r_k.
    ambient: Vec<usize>,
    /// Generators of the cycles, as coordinates over `ambient`.
    cycles: Vec<Vec<u64>>,
    presentation: QuotientPresentation,
}

/// One cyclic summand of a homology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGenerator {
    pub order: u64,
    pub representative: String,
}

impl HomologyGroup {
    fn compute(q: &ChainAlgebra, r: u32, k: u32) -> Result<Self, AlgebraError> {
        let md = q.modulus();
        let (ri, ki) = (r as i64, k as i64);
        let ambient = q.indices(ri, ki);
        let below = q.indices(ri, ki - 1);
        let above = q.indices(ri, ki + 1);
        let n = ambient.len();
        let orders = q.orders_of(&ambient);

        // d_k : Q^r_k → Q^r_{k−1}
        let mut trip = Vec::new();
        for (col, &i) in ambient.iter().enumerate() {
            let di = q.d(&q.gen(i));
            for (row, &j) in below.iter().enumerate() {
                if di[j] != 0 {
                    trip.push((row, col, di[j] as i64));
                }
            }
        }
        let dk = SparseMatrix::from_triplets(below.len(), n, md, trip);
        let cycles = match solve_with_orders(&dk, &vec![0; below.len()], &q.orders_of(&below), &orders)? {
            SolveOutcome::Solved(s) => s.kernel_basis,
            SolveOutcome::NoSolution(_) => unreachable!("homogeneous system"),
        };

        // relations: c with Σ c_j K_j ∈ span(boundaries) + torsion
        let mut columns: Vec<Vec<u64>> = cycles.clone();
        for &i in &above {
            let di = q.d(&q.gen(i));
            columns.push(ambient.iter().map(|&j| md.neg(di[j])).collect());
        }
        for (t, &o) in orders.iter().enumerate() {
            if o != md.value() {
                let mut v = vec![0; n];
                v[t] = md.neg(o % md.value());
                columns.push(v);
            }
        }
        let m_rel = SparseMatrix::from_triplets(
            n,
            columns.len(),
            md,
            columns
                .iter()
                .enumerate()
                .flat_map(|(j, col)| col.iter().enumerate().map(move |(i, &v)| (i, j, v as i64))),
        );
        let relations: Vec<Vec<u64>> = crate::linalg::kernel(&m_rel)
            .into_iter()
            .map(|v| v[..cycles.len()].to_vec())
            .collect();
        let presentation = quotient_basis(md, &relations, cycles.len())?;
        Ok(HomologyGroup {
            r,
            k,
            ambient,
            cycles,
            presentation,
        })
    }

    pub fn rank(&self) -> usize {
        self.presentation.generators.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation.is_trivial()
    }

    pub fn cardinality(&self) -> u128 {
        self.presentation.cardinality()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.presentation.generators.iter().map(|g| g.order).collect()
    }

    /// A cycle representing the class with the given coordinates.
    pub fn representative(&self, q: &ChainAlgebra, coords: &[u64]) -> Elem {
        let md = q.modulus();
        let c = self.presentation.lift(coords);
        let mut x = vec![0u64; self.ambient.len()];
        for (k, &ck) in self.cycles.iter().zip(&c) {
            crate::linalg::vec_add_scaled(md, &mut x, k, ck);
        }
        q.from_coords(&self.ambient, &x)
    }

    /// Coordinates of the class of `z`; errors if `z` is not a cycle of this
    /// bidegree.
    pub fn class_of(&self, q: &ChainAlgebra, z: &Elem) -> Result<Vec<u64>, AlgebraError> {
        let not_cycle = || AlgebraError::NotACycle {
            element: q.format(z),
            r: self.r,
            k: self.k,
        };
        if !q.is_homogeneous(z, self.r as i64, self.k as i64) {
            return Err(not_cycle());
        }
        if self.cycles.is_empty() {
            return if q.is_zero(z) { Ok(Vec::new()) } else { Err(not_cycle()) };
        }
        let md = q.modulus();
        let n = self.ambient.len();
        let kmat = SparseMatrix::from_triplets(
            n,
            self.cycles.len(),
            md,
            self.cycles
                .iter()
                .enumerate()
                .flat_map(|(j, col)| col.iter().enumerate().map(move |(i, &v)| (i, j, v as i64))),
        );
        let target = q.coords(z, &self.ambient);
        let col_orders = vec![md.value(); self.cycles.len()];
        match solve_with_orders(&kmat, &target, &q.orders_of(&self.ambient), &col_orders)? {
            SolveOutcome::Solved(s) => Ok(self.presentation.project(&s.particular)),
            SolveOutcome::NoSolution(_) => Err(not_cycle()),
        }
    }

    /// Coordinates scaled into Z/m so that classes embed injectively.
    pub fn embedded(&self, coords: &[u64]) -> Vec<u64> {
        self.presentation.embedded(coords)
    }

    pub fn generators(&self, q: &ChainAlgebra) -> Vec<HomologyGenerator> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                HomologyGenerator {
                    order: self.presentation.generators[i].order,
                    representative: q.format(&self.representative(q, &e)),
                }
            })
            .collect()
    }

    /// Every class, as coordinate vectors, in lexicographic order.
    pub fn all_classes(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for o in self.orders() {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..o).map(move |c| {
                        let mut v = v.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// H_k(Q) in every upper degree of the window.
#[derive(Clone, Debug)]
pub struct Homology {
    pub k: u32,
    groups: BTreeMap<u32, HomologyGroup>,
}

impl Homology {
    pub fn group(&self, r: i64) -> Option<&HomologyGroup> {
        if r < 0 {
            return None;
        }
        self.groups.get(&(r as u32))
    }

    pub fn groups(&self) -> impl Iterator<Item = &HomologyGroup> {
        self.groups.values()
    }
}

/// Computes H_k(Q) for every upper degree 0 ≤ r ≤ rMax.
pub fn homology(q: &ChainAlgebra, k: u32) -> Result<Homology, AlgebraError> {
    if k > q.truncation() {
        return Err(AlgebraError::TruncationLevel {
            requested: k,
            available: q.truncation(),
        });
    }
    let mut groups = BTreeMap::new();
    for r in 0..=q.r_max() {
        groups.insert(r, HomologyGroup::compute(q, r, k)?);
    }
    Ok(Homology { k, groups })
}

/// Structure constant of the H₀-bimodule structure on H_k: the class of
/// `rep(a)·rep(x)` (left) or `rep(x)·rep(a)` (right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionConstant {
    pub h0_degree: u32,
    pub h0_generator: usize,
    pub degree: u32,
    pub generator: usize,
    pub result: Vec<u64>,
}

/// Left and right action constants of H₀ on H_k, for products inside the window.
pub fn action_constants(
    q: &ChainAlgebra,
    h0: &Homology,
    hk: &Homology,
) -> Result<(Vec<ActionConstant>, Vec<ActionConstant>), AlgebraError> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for g0 in h0.groups() {
        for gk in hk.groups() {
            let r = g0.r + gk.r;
            let Some(target) = hk.group(r as i64) else {
                continue;
            };
            for a in 0..g0.rank() {
                let mut ea = vec![0; g0.rank()];
                ea[a] = 1;
                let ra = g0.representative(q, &ea);
                for x in 0..gk.rank() {
                    let mut ex = vec![0; gk.rank()];
                    ex[x] = 1;
                    let rx = gk.representative(q, &ex);
                    let constant = |result| ActionConstant {
                        h0_degree: g0.r,
                        h0_generator: a,
                        degree: gk.r,
                        generator: x,
                        result,
                    };
                    left.push(constant(target.class_of(q, &q.mul(&ra, &rx))?));
                    right.push(constant(target.class_of(q, &q.mul(&rx, &ra))?));
                }
            }
        }
    }
    Ok((left, right))
}
