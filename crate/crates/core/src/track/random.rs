//! Uniformly random morphisms, for property tests and benchmarks.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::extend::{extend, ExtendOutcome};
use super::{Kq, Morphism, TrackError};
use crate::algebra::{Block, GradedModule};
use crate::cubical::CellComplex;

/// A uniformly random extension of `prescribed`, or `None` if there is none.
pub fn random_extension<R: Rng>(
    kq: &Kq,
    complex: Arc<CellComplex>,
    source: &GradedModule,
    target: &GradedModule,
    prescribed: &BTreeMap<usize, Block>,
    rng: &mut R,
) -> Result<Option<Morphism>, TrackError> {
    match extend(kq, complex, source, target, prescribed)? {
        ExtendOutcome::Unsolvable(_) => Ok(None),
        ExtendOutcome::Solved(e) => {
            let coeffs: Vec<u64> = e.generator_orders().into_iter().map(|o| rng.gen_range(0..o)).collect();
            Ok(Some(e.point(kq, &coeffs)))
        }
    }
}

/// A uniformly random morphism over `complex`.
pub fn random_morphism<R: Rng>(
    kq: &Kq,
    complex: Arc<CellComplex>,
    source: &GradedModule,
    target: &GradedModule,
    rng: &mut R,
) -> Result<Morphism, TrackError> {
    Ok(random_extension(kq, complex, source, target, &BTreeMap::new(), rng)?
        .expect("the zero morphism always extends nothing"))
}
