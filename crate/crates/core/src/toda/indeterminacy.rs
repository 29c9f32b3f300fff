use serde::Serialize;

use super::{MorphismSequence, TodaError};
use crate::algebra::{AlgebraError, NatElem, NaturalSystem, Subgroup};
use crate::track::Kq;

/// The indeterminacy of a triple bracket `⟨α_1, α_2, α_3⟩`: the subgroup
/// `(α_1)_* D¹(X_3, X_1) + (α_3)^* D¹(X_2, X_0)` of `D¹(X_3, X_0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Indeterminacy {
    pub generators: Vec<NatElem>,
    pub cardinality: u128,
    #[serde(skip)]
    pub subgroup: Subgroup,
}

pub(crate) fn natural<'a>(kq: &'a Kq, n: usize) -> Result<NaturalSystem<'a>, TodaError> {
    kq.natural(n as u32).ok_or_else(|| {
        AlgebraError::TruncationLevel {
            requested: n as u32,
            available: kq.truncation(),
        }
        .into()
    })
}

/// `(f_1)_* D^n(X_L, X_1)` inside `D^n(X_L, X_0)`, as generators.
pub(crate) fn post_image(kq: &Kq, seq: &MorphismSequence, n: usize) -> Result<Vec<NatElem>, TodaError> {
    let ns = natural(kq, n)?;
    let l = seq.len();
    ns.generators(seq.module(l), seq.module(1))
        .iter()
        .map(|e| ns.post_act(seq.map(1), seq.module(0), e).map_err(Into::into))
        .collect()
}

/// `(f_L)^* D^n(X_{L−1}, X_0)` inside `D^n(X_L, X_0)`, as generators.
pub(crate) fn pre_image(kq: &Kq, seq: &MorphismSequence, n: usize) -> Result<Vec<NatElem>, TodaError> {
    let ns = natural(kq, n)?;
    let l = seq.len();
    ns.generators(seq.module(l - 1), seq.module(0))
        .iter()
        .map(|e| ns.pre_act(e, seq.map(l), seq.module(l)).map_err(Into::into))
        .collect()
}

pub fn triple_indeterminacy(kq: &Kq, seq: &MorphismSequence) -> Result<Indeterminacy, TodaError> {
    if seq.len() != 3 {
        return Err(TodaError::SequenceLength {
            order: 1,
            expected: 3,
            found: seq.len(),
        });
    }
    let ns = natural(kq, 1)?;
    let mut generators = post_image(kq, seq, 1)?;
    generators.extend(pre_image(kq, seq, 1)?);
    generators.retain(|g| !g.is_zero());
    let subgroup = Subgroup::generated_by(&ns, seq.module(3), seq.module(0), &generators);
    Ok(Indeterminacy {
        generators,
        cardinality: subgroup.cardinality(),
        subgroup,
    })
}
