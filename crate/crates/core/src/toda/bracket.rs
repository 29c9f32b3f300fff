//! The inductive construction of `f_i^k` and `F_i^k` and the bracket
//! representative `ob(F_1^n)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{MorphismSequence, TodaError};
use crate::algebra::NatElem;
use crate::cubical::{Cell, CellComplex, Coord, CubicalComplex, Orientation};
use crate::track::{cubical_extension, glue_all, obstruction_t, tensor, ExtendOutcome, Kq, Morphism, Obstacle, TrackError};

/// One choice point of the construction: the free parameters of the space of
/// `f_i^k` and the coefficients actually used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoiceRecord {
    pub order: usize,
    pub index: usize,
    pub free_parameters: usize,
    pub generator_orders: Vec<u64>,
    pub chosen: Vec<u64>,
    pub preset: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum BracketStatus {
    Defined {
        representative: NatElem,
    },
    /// The cubical extension for `f_index^step` does not exist.
    NotConstructible {
        step: usize,
        index: usize,
        obstacle: Obstacle,
    },
    /// Some composite has entries of upper degree above rMax, where products
    /// are truncated.
    DegreeWindowUnsound {
        source: usize,
        target: usize,
        degree: i64,
        r_max: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketResult {
    pub status: BracketStatus,
    pub choice_log: Vec<ChoiceRecord>,
}

impl BracketResult {
    pub fn representative(&self) -> Option<&NatElem> {
        match &self.status {
            BracketStatus::Defined { representative } => Some(representative),
            _ => None,
        }
    }
}

/// The data `f_i^k` built so far over a sequence; `f_i^0 = f_i`.
#[derive(Clone, Debug)]
pub struct Tower<'a> {
    kq: &'a Kq,
    seq: &'a MorphismSequence,
    data: BTreeMap<(usize, usize), Morphism>,
}

fn insert_zero(c: &Cell, pos: usize) -> Cell {
    let (u, v) = c.split_at(pos);
    u.product(&Cell::new(vec![Coord::Zero])).product(&v)
}

impl<'a> Tower<'a> {
    pub fn new(kq: &'a Kq, seq: &'a MorphismSequence) -> Self {
        let data = (1..=seq.len()).map(|i| ((i, 0), seq.morphism(i))).collect();
        Tower { kq, seq, data }
    }

    pub fn sequence(&self) -> &MorphismSequence {
        self.seq
    }

    /// `f_i^k`, if chosen.
    pub fn get(&self, i: usize, k: usize) -> Option<&Morphism> {
        self.data.get(&(i, k))
    }

    pub fn insert(&mut self, i: usize, k: usize, f: Morphism) {
        self.data.insert((i, k), f);
    }

    pub fn data(&self) -> &BTreeMap<(usize, usize), Morphism> {
        &self.data
    }

    fn need(&self, i: usize, k: usize) -> Result<&Morphism, TodaError> {
        self.get(i, k)
            .ok_or_else(|| TodaError::ConventionViolation(format!("f_{i}^{k} is required before it is built")))
    }

    /// `F_i^k` over T^k: the face `{x_{r+1} = 0}` carries `f_i^r ⊗ f_{i+r+1}^{k−r}`.
    pub fn assemble(&self, i: usize, k: usize) -> Result<Morphism, TodaError> {
        let kq = self.kq;
        let mut pieces = Vec::with_capacity(k + 1);
        for r in 0..=k {
            let g = self.need(i, r)?;
            let f = self.need(i + r + 1, k - r)?;
            let t = tensor(kq, g, f)?;
            let face = Arc::new(CellComplex::from_cubical(&CubicalComplex::facet(k + 1, r + 1, false).map_err(TrackError::from)?));
            pieces.push(t.relabel(face, |c| insert_zero(c, r))?);
        }
        let refs: Vec<&Morphism> = pieces.iter().collect();
        match glue_all(kq, &refs) {
            Ok(f) => Ok(f),
            Err(TrackError::GlueMismatch { cell }) => Err(TodaError::ConventionViolation(format!(
                "faces of F_{i}^{k} disagree on {cell}"
            ))),
            Err(e) => Err(e.into()),
        }
    }

    /// The space of all `f_i^k`, cubical extensions of `F_i^{k−1}`.
    pub fn extension(&self, i: usize, k: usize) -> Result<ExtendOutcome, TodaError> {
        let f = self.assemble(i, k - 1)?;
        Ok(cubical_extension(self.kq, &f)?)
    }

    /// The bracket representative candidate `ob(F_1^n)`.
    pub fn obstruction(&self, i: usize, n: usize) -> Result<NatElem, TodaError> {
        let f = self.assemble(i, n)?;
        Ok(obstruction_t(self.kq, &f, Orientation::Standard)?)
    }
}

/// Choice points `(index, order)` for a sequence of `len` maps, order by order.
pub(crate) fn steps(len: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 1..=n {
        for i in 1..=len.saturating_sub(k) {
            out.push((i, k));
        }
    }
    out
}

pub(crate) fn check_order(kq: &Kq, seq: &MorphismSequence, n: usize) -> Result<(), TodaError> {
    if n == 0 {
        return Err(TodaError::Unsupported("brackets have order at least 1".into()));
    }
    if kq.truncation() as usize != n {
        return Err(TodaError::TruncationMismatch {
            expected: n as u32,
            found: kq.truncation(),
        });
    }
    if seq.len() != n + 2 {
        return Err(TodaError::SequenceLength {
            order: n,
            expected: n + 2,
            found: seq.len(),
        });
    }
    Ok(())
}

/// The first pair `X_a → X_b` (a > b) with an entry of degree above rMax.
pub(crate) fn window_violation(kq: &Kq, seq: &MorphismSequence) -> Option<BracketStatus> {
    let r_max = kq.algebra().r_max();
    for a in 1..seq.modules().len() {
        for b in 0..a {
            let (xa, xb) = (seq.module(a), seq.module(b));
            for i in 0..xa.rank() {
                for j in 0..xb.rank() {
                    let degree = xa.degree(i) as i64 - xb.degree(j) as i64;
                    if degree > r_max as i64 {
                        return Some(BracketStatus::DegreeWindowUnsound {
                            source: a,
                            target: b,
                            degree,
                            r_max,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Runs the construction with pinned particular choices, except where `preset`
/// supplies `f_i^k`. Returns the tower when every extension exists.
pub(crate) fn run_main_path<'a>(
    kq: &'a Kq,
    seq: &'a MorphismSequence,
    n: usize,
    preset: &BTreeMap<(usize, usize), Morphism>,
    log: &mut Vec<ChoiceRecord>,
) -> Result<Result<Tower<'a>, BracketStatus>, TodaError> {
    let mut tower = Tower::new(kq, seq);
    for (i, k) in steps(seq.len(), n) {
        if let Some(f) = preset.get(&(i, k)) {
            log.push(ChoiceRecord {
                order: k,
                index: i,
                free_parameters: 0,
                generator_orders: Vec::new(),
                chosen: Vec::new(),
                preset: true,
            });
            tower.insert(i, k, f.clone());
            continue;
        }
        match tower.extension(i, k)? {
            ExtendOutcome::Unsolvable(obstacle) => {
                return Ok(Err(BracketStatus::NotConstructible {
                    step: k,
                    index: i,
                    obstacle,
                }))
            }
            ExtendOutcome::Solved(ext) => {
                let orders = ext.generator_orders();
                log.push(ChoiceRecord {
                    order: k,
                    index: i,
                    free_parameters: orders.len(),
                    chosen: vec![0; orders.len()],
                    generator_orders: orders,
                    preset: false,
                });
                tower.insert(i, k, ext.into_morphism());
            }
        }
    }
    Ok(Ok(tower))
}

/// `⟨α_1, …, α_{n+2}⟩`: one representative from the pinned choices.
pub fn toda_bracket(kq: &Kq, seq: &MorphismSequence, n: usize) -> Result<BracketResult, TodaError> {
    check_order(kq, seq, n)?;
    if let Some(status) = window_violation(kq, seq) {
        return Ok(BracketResult {
            status,
            choice_log: Vec::new(),
        });
    }
    let mut log = Vec::new();
    let status = match run_main_path(kq, seq, n, &BTreeMap::new(), &mut log)? {
        Err(status) => status,
        Ok(tower) => BracketStatus::Defined {
            representative: tower.obstruction(1, n)?,
        },
    };
    Ok(BracketResult {
        status,
        choice_log: log,
    })
}
