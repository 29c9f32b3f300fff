//! The natural systems D^k(L, L′): graded matrices over H_k(Q).

use serde::Serialize;

use super::module::{compose_blocks, entry_degree, Block};
use super::{AlgebraError, ChainAlgebra, GradedModule, Homology, HomologyGroup};
use crate::linalg::{howell_basis, reduce_modulo, vec_add_scaled, Modulus};

/// An element of D^k(L, L′): `entries[i][j]` holds the coordinates of a class
/// in H_k of upper degree `deg l_i − deg l′_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NatElem {
    pub source: GradedModule,
    pub target: GradedModule,
    pub level: u32,
    pub entries: Vec<Vec<Vec<u64>>>,
}

impl NatElem {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().flatten().all(|&c| c == 0)
    }
}

/// D^k together with the algebra it lives over.
#[derive(Clone, Copy)]
pub struct NaturalSystem<'a> {
    pub q: &'a ChainAlgebra,
    pub hk: &'a Homology,
}

impl<'a> NaturalSystem<'a> {
    pub fn new(q: &'a ChainAlgebra, hk: &'a Homology) -> Self {
        NaturalSystem { q, hk }
    }

    pub fn level(&self) -> u32 {
        self.hk.k
    }

    fn group(&self, source: &GradedModule, target: &GradedModule, i: usize, j: usize) -> Option<&'a HomologyGroup> {
        self.hk.group(entry_degree(source, target, i, j))
    }

    fn check(&self, e: &NatElem) -> Result<(), AlgebraError> {
        if e.level != self.level() {
            return Err(AlgebraError::LevelMismatch {
                expected: self.level(),
                found: e.level,
            });
        }
        Ok(())
    }

    pub fn zero(&self, source: &GradedModule, target: &GradedModule) -> NatElem {
        let entries = (0..source.rank())
            .map(|i| {
                (0..target.rank())
                    .map(|j| vec![0; self.group(source, target, i, j).map_or(0, HomologyGroup::rank)])
                    .collect()
            })
            .collect();
        NatElem {
            source: source.clone(),
            target: target.clone(),
            level: self.level(),
            entries,
        }
    }

    /// The class of a block of cycles of lower degree k.
    pub fn from_block(&self, source: &GradedModule, target: &GradedModule, block: &Block) -> Result<NatElem, AlgebraError> {
        let mut out = self.zero(source, target);
        for i in 0..source.rank() {
            for j in 0..target.rank() {
                let e = &block[i][j];
                match self.group(source, target, i, j) {
                    Some(g) => out.entries[i][j] = g.class_of(self.q, e)?,
                    None => {
                        if !self.q.is_zero(e) {
                            return Err(AlgebraError::NotACycle {
                                element: self.q.format(e),
                                r: 0,
                                k: self.level(),
                            });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// A block of cycles representing `e`.
    pub fn representative(&self, e: &NatElem) -> Block {
        (0..e.source.rank())
            .map(|i| {
                (0..e.target.rank())
                    .map(|j| match self.group(&e.source, &e.target, i, j) {
                        Some(g) => g.representative(self.q, &e.entries[i][j]),
                        None => self.q.zero(),
                    })
                    .collect()
            })
            .collect()
    }

    fn combine(&self, a: &NatElem, b: &NatElem, sign: i64) -> Result<NatElem, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        if a.source != b.source || a.target != b.target {
            return Err(AlgebraError::ModuleMismatch);
        }
        let ra = self.representative(a);
        let rb = self.representative(b);
        let sum: Block = ra
            .iter()
            .zip(&rb)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| self.q.add(u, &self.q.scale_i64(v, sign))).collect())
            .collect();
        self.from_block(&a.source, &a.target, &sum)
    }

    pub fn add(&self, a: &NatElem, b: &NatElem) -> Result<NatElem, AlgebraError> {
        self.combine(a, b, 1)
    }

    pub fn sub(&self, a: &NatElem, b: &NatElem) -> Result<NatElem, AlgebraError> {
        self.combine(a, b, -1)
    }

    pub fn neg(&self, a: &NatElem) -> Result<NatElem, AlgebraError> {
        let zero = self.zero(&a.source, &a.target);
        self.combine(&zero, a, -1)
    }

    pub fn scale(&self, a: &NatElem, c: i64) -> Result<NatElem, AlgebraError> {
        let rep = self.representative(a);
        let scaled: Block = rep
            .iter()
            .map(|x| x.iter().map(|u| self.q.scale_i64(u, c)).collect())
            .collect();
        self.from_block(&a.source, &a.target, &scaled)
    }

    /// `α_* e`: post-composition with a map `α : L′ → L″` given by degree-0 cycles.
    pub fn post_act(&self, alpha: &Block, alpha_target: &GradedModule, e: &NatElem) -> Result<NatElem, AlgebraError> {
        self.check(e)?;
        if alpha.len() != e.target.rank() {
            return Err(AlgebraError::ModuleMismatch);
        }
        let composite = compose_blocks(self.q, alpha, &self.representative(e));
        self.from_block(&e.source, alpha_target, &composite)
    }

    /// `γ^* e`: pre-composition with `γ : L₀ → L`.
    pub fn pre_act(&self, e: &NatElem, gamma: &Block, gamma_source: &GradedModule) -> Result<NatElem, AlgebraError> {
        self.check(e)?;
        if gamma.len() != gamma_source.rank() || gamma.iter().any(|row| row.len() != e.source.rank()) {
            return Err(AlgebraError::ModuleMismatch);
        }
        let composite = compose_blocks(self.q, &self.representative(e), gamma);
        self.from_block(gamma_source, &e.target, &composite)
    }

    /// One generator per cyclic summand of every entry.
    pub fn generators(&self, source: &GradedModule, target: &GradedModule) -> Vec<NatElem> {
        let mut out = Vec::new();
        for i in 0..source.rank() {
            for j in 0..target.rank() {
                let rank = self.group(source, target, i, j).map_or(0, HomologyGroup::rank);
                for t in 0..rank {
                    let mut e = self.zero(source, target);
                    e.entries[i][j][t] = 1;
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn cardinality(&self, source: &GradedModule, target: &GradedModule) -> u128 {
        let mut total = 1u128;
        for i in 0..source.rank() {
            for j in 0..target.rank() {
                if let Some(g) = self.group(source, target, i, j) {
                    total = total.saturating_mul(g.cardinality());
                }
            }
        }
        total
    }

    /// Injective image of `e` in (Z/m)^N, for subgroup computations.
    pub fn embedded(&self, e: &NatElem) -> Vec<u64> {
        let mut out = Vec::new();
        for i in 0..e.source.rank() {
            for j in 0..e.target.rank() {
                if let Some(g) = self.group(&e.source, &e.target, i, j) {
                    out.extend(g.embedded(&e.entries[i][j]));
                }
            }
        }
        out
    }

    /// Inverse of [`Self::embedded`].
    pub fn from_embedded(&self, source: &GradedModule, target: &GradedModule, v: &[u64]) -> NatElem {
        let m = self.q.modulus().value();
        let mut e = self.zero(source, target);
        let mut pos = 0;
        for i in 0..source.rank() {
            for j in 0..target.rank() {
                if let Some(g) = self.group(source, target, i, j) {
                    for (t, o) in g.orders().into_iter().enumerate() {
                        e.entries[i][j][t] = v[pos] / (m / o);
                        pos += 1;
                    }
                }
            }
        }
        e
    }
}

/// A subgroup of some D^k(L, L′), held in Howell form of the embedded vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    modulus: Modulus,
    dim: usize,
    basis: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn generated_by(ns: &NaturalSystem<'_>, source: &GradedModule, target: &GradedModule, gens: &[NatElem]) -> Self {
        let dim = ns.embedded(&ns.zero(source, target)).len();
        let md = ns.q.modulus();
        let vecs: Vec<Vec<u64>> = gens.iter().map(|g| ns.embedded(g)).collect();
        Subgroup {
            modulus: md,
            dim,
            basis: howell_basis(md, &vecs, dim),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn cardinality(&self) -> u128 {
        self.orders().iter().map(|&o| o as u128).product()
    }

    fn orders(&self) -> Vec<u64> {
        self.basis
            .iter()
            .map(|row| {
                let pivot = row.iter().find(|&&x| x != 0).copied().unwrap_or(0);
                self.modulus.additive_order(pivot)
            })
            .collect()
    }

    /// Canonical representative of the coset of an embedded vector.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        reduce_modulo(self.modulus, &self.basis, v)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// All elements as embedded vectors.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.dim]];
        for (row, o) in self.basis.iter().zip(self.orders()) {
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for v in &out {
                for c in 0..o {
                    let mut w = v.clone();
                    vec_add_scaled(self.modulus, &mut w, row, c);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.basis
    }
}
