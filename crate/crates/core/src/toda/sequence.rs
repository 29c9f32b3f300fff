use serde::Serialize;

use super::TodaError;
use crate::algebra::module::check_block_degrees;
use crate::algebra::{Block, GradedModule};
use crate::track::{Kq, Morphism};

/// `X_0 ←f_1 X_1 ←f_2 ⋯ ←f_L X_L`, each `f_i` given by degree-0 cycles.
/// `maps[i − 1]` is `f_i`, as a block indexed `[generator of X_i][generator of X_{i−1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismSequence {
    modules: Vec<GradedModule>,
    maps: Vec<Block>,
}

impl MorphismSequence {
    pub fn new(kq: &Kq, modules: Vec<GradedModule>, maps: Vec<Block>) -> Result<Self, TodaError> {
        if modules.len() != maps.len() + 1 {
            return Err(TodaError::NotComposable { index: maps.len() });
        }
        for (k, block) in maps.iter().enumerate() {
            check_block_degrees(kq.algebra(), &modules[k + 1], &modules[k], block, 0)
                .map_err(|_| TodaError::NotComposable { index: k + 1 })?;
        }
        Ok(MorphismSequence { modules, maps })
    }

    /// Number of maps.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `X_i`.
    pub fn module(&self, i: usize) -> &GradedModule {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[GradedModule] {
        &self.modules
    }

    /// `f_i`, 1-based.
    pub fn map(&self, i: usize) -> &Block {
        &self.maps[i - 1]
    }

    pub fn maps(&self) -> &[Block] {
        &self.maps
    }

    /// `f_i` as a morphism over the point.
    pub fn morphism(&self, i: usize) -> Morphism {
        Morphism::over_point(&self.modules[i], &self.modules[i - 1], self.maps[i - 1].clone())
            .expect("shapes are checked on construction")
    }

    /// The maps `f_start, …, f_{start+len−1}` with their modules, renumbered from 1.
    pub fn window(&self, start: usize, len: usize) -> MorphismSequence {
        MorphismSequence {
            modules: self.modules[start - 1..start + len].to_vec(),
            maps: self.maps[start - 1..start - 1 + len].to_vec(),
        }
    }

    /// This sequence with one more map `f_{L+1} : extra → X_L` appended.
    pub fn extended(&self, kq: &Kq, extra: GradedModule, map: Block) -> Result<MorphismSequence, TodaError> {
        let mut modules = self.modules.clone();
        let mut maps = self.maps.clone();
        modules.push(extra);
        maps.push(map);
        MorphismSequence::new(kq, modules, maps)
    }
}
