use serde::{Deserialize, Serialize};

use super::{AlgebraError, ChainAlgebra, Elem};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub r: u32,
}

/// A finitely generated free graded module L, concentrated in lower degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedModule {
    pub name: String,
    pub generators: Vec<Generator>,
}

impl GradedModule {
    pub fn new(name: impl Into<String>, degrees: &[u32]) -> Self {
        let name = name.into();
        let generators = degrees
            .iter()
            .enumerate()
            .map(|(i, &r)| Generator {
                name: format!("{name}{i}"),
                r,
            })
            .collect();
        GradedModule { name, generators }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.generators[i].r
    }
}

/// Upper degree of the Q-coefficient in entry (source i, target j) of a map
/// `L ⊗ Q → L′ ⊗ Q`.
pub fn entry_degree(source: &GradedModule, target: &GradedModule, i: usize, j: usize) -> i64 {
    source.degree(i) as i64 - target.degree(j) as i64
}

/// The values of a map on one cell: `block[i][j]` is the coefficient of the
/// target generator `j` in the image of the source generator `i`.
pub type Block = Vec<Vec<Elem>>;

pub fn zero_block(q: &ChainAlgebra, source: &GradedModule, target: &GradedModule) -> Block {
    vec![vec![q.zero(); target.rank()]; source.rank()]
}

/// `g ∘ f` on single blocks: entry (i, k) is `Σ_j g[j][k] · f[i][j]`.
pub fn compose_blocks(q: &ChainAlgebra, g: &Block, f: &Block) -> Block {
    let targets = g.first().map_or(0, Vec::len);
    f.iter()
        .map(|fi| {
            (0..targets)
                .map(|k| {
                    let mut acc = q.zero();
                    for (j, fij) in fi.iter().enumerate() {
                        if q.is_zero(fij) {
                            continue;
                        }
                        q.add_assign(&mut acc, &q.mul(&g[j][k], fij));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn add_blocks(q: &ChainAlgebra, a: &Block, b: &Block) -> Block {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| q.add(u, v)).collect())
        .collect()
}

pub fn scale_block(q: &ChainAlgebra, a: &Block, c: i64) -> Block {
    a.iter()
        .map(|x| x.iter().map(|u| q.scale_i64(u, c)).collect())
        .collect()
}

pub fn block_is_zero(q: &ChainAlgebra, a: &Block) -> bool {
    a.iter().flatten().all(|e| q.is_zero(e))
}

/// Checks that every entry of a block has bidegree (entry degree, `s`).
pub fn check_block_degrees(
    q: &ChainAlgebra,
    source: &GradedModule,
    target: &GradedModule,
    block: &Block,
    s: i64,
) -> Result<(), AlgebraError> {
    if block.len() != source.rank() || block.iter().any(|row| row.len() != target.rank()) {
        return Err(AlgebraError::ShapeMismatch {
            expected: (source.rank(), target.rank()),
        });
    }
    for (i, row) in block.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let r = entry_degree(source, target, i, j);
            if !q.is_homogeneous(e, r, s) {
                return Err(AlgebraError::DegreeMismatch {
                    element: q.format(e),
                    r,
                    s,
                });
            }
        }
    }
    Ok(())
}
