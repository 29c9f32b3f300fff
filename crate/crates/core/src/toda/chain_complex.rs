//! Higher chain complexes: coherent nullhomotopy data through order n with
//! vanishing top obstructions.

use std::collections::BTreeMap;

use serde::Serialize;

use super::bracket::{steps, ChoiceRecord, Tower};
use super::indeterminacy::natural;
use super::{MorphismSequence, TodaError};
use crate::algebra::NatElem;
use crate::cubical::Orientation;
use crate::linalg::{solve_with_orders, Certificate, SolveOutcome, SparseMatrix};
use crate::track::{obstruction_t, t_chain_value, ExtendOutcome, Extension, Kq, Morphism, Obstacle, TrackError};

/// `(X, f, F)`: the maps `f_i^k` for `0 ≤ k ≤ n`, `i + k ≤ L`, with every
/// `ob(F_i^n)` zero.
#[derive(Clone, Debug)]
pub struct HigherChainComplex {
    sequence: MorphismSequence,
    order: usize,
    data: BTreeMap<(usize, usize), Morphism>,
}

impl HigherChainComplex {
    pub fn sequence(&self) -> &MorphismSequence {
        &self.sequence
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `f_i^k`.
    pub fn map(&self, i: usize, k: usize) -> Option<&Morphism> {
        self.data.get(&(i, k))
    }

    pub fn data(&self) -> &BTreeMap<(usize, usize), Morphism> {
        &self.data
    }

    /// `F_i^k` over T^k.
    pub fn assembled(&self, kq: &Kq, i: usize, k: usize) -> Result<Morphism, TodaError> {
        let mut tower = Tower::new(kq, &self.sequence);
        for (&(a, b), f) in &self.data {
            tower.insert(a, b, f.clone());
        }
        tower.assemble(i, k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure")]
pub enum ChainComplexFailure {
    /// `F_index^{step−1}` has no cubical extension.
    NotConstructible { step: usize, index: usize, obstacle: Obstacle },
    /// No choice of the top-order maps kills every `ob(F_i^n)`. `obstruction`
    /// is the value at `index` for the pinned choices.
    ObstructionNonzero {
        index: usize,
        obstruction: NatElem,
        certificate: Certificate,
    },
}

#[derive(Clone, Debug)]
pub enum ChainComplexResult {
    Built {
        complex: HigherChainComplex,
        choice_log: Vec<ChoiceRecord>,
    },
    Failed {
        failure: ChainComplexFailure,
        choice_log: Vec<ChoiceRecord>,
    },
}

impl ChainComplexResult {
    pub fn complex(&self) -> Option<&HigherChainComplex> {
        match self {
            ChainComplexResult::Built { complex, .. } => Some(complex),
            ChainComplexResult::Failed { .. } => None,
        }
    }

    pub fn failure(&self) -> Option<&ChainComplexFailure> {
        match self {
            ChainComplexResult::Built { .. } => None,
            ChainComplexResult::Failed { failure, .. } => Some(failure),
        }
    }

    pub fn choice_log(&self) -> &[ChoiceRecord] {
        match self {
            ChainComplexResult::Built { choice_log, .. } | ChainComplexResult::Failed { choice_log, .. } => choice_log,
        }
    }
}

fn record(i: usize, k: usize, ext: &Extension, chosen: Vec<u64>) -> ChoiceRecord {
    ChoiceRecord {
        order: k,
        index: i,
        free_parameters: ext.free_parameters(),
        generator_orders: ext.generator_orders(),
        chosen,
        preset: false,
    }
}

/// All `F_i^n(z_T)` for `1 ≤ i ≤ L − n − 1`, flattened to coordinates.
fn top_values(kq: &Kq, tower: &Tower<'_>, n: usize, count: usize) -> Result<Vec<u64>, TodaError> {
    let mut out = Vec::new();
    for i in 1..=count {
        let block = t_chain_value(kq, &tower.assemble(i, n)?)?;
        out.extend(block.into_iter().flatten().flatten());
    }
    Ok(out)
}

/// Runs the inductive construction along the whole sequence. Maps of order
/// below n are the pinned particular solutions; the order-n maps are then
/// solved for jointly so that every top obstruction vanishes. For n = 1 this
/// decides exactly whether a higher chain complex exists; for n ≥ 2 it decides
/// it relative to the pinned lower-order data.
pub fn build_chain_complex(kq: &Kq, seq: &MorphismSequence, n: usize) -> Result<ChainComplexResult, TodaError> {
    if n == 0 || kq.truncation() as usize != n {
        return Err(TodaError::TruncationMismatch {
            expected: n as u32,
            found: kq.truncation(),
        });
    }
    let q = kq.algebra();
    let md = q.modulus();
    let len = seq.len();
    let mut tower = Tower::new(kq, seq);
    let mut log = Vec::new();
    let mut top: Vec<(usize, Extension)> = Vec::new();
    for (i, k) in steps(len, n) {
        let ext = match tower.extension(i, k)? {
            ExtendOutcome::Solved(ext) => ext,
            ExtendOutcome::Unsolvable(obstacle) => {
                return Ok(ChainComplexResult::Failed {
                    failure: ChainComplexFailure::NotConstructible { step: k, index: i, obstacle },
                    choice_log: log,
                })
            }
        };
        tower.insert(i, k, ext.morphism().clone());
        if k < n {
            log.push(record(i, k, &ext, vec![0; ext.free_parameters()]));
        } else {
            top.push((i, ext));
        }
    }

    let count = len.saturating_sub(n + 1);
    let base = top_values(kq, &tower, n, count)?;
    let mut columns: Vec<Vec<u64>> = Vec::new();
    let mut col_orders = Vec::new();
    for (i, ext) in &top {
        let orders = ext.generator_orders();
        for (g, &o) in orders.iter().enumerate() {
            let mut e = vec![0; orders.len()];
            e[g] = 1;
            tower.insert(*i, n, ext.point(kq, &e));
            let v = top_values(kq, &tower, n, count)?;
            columns.push(v.iter().zip(&base).map(|(&a, &b)| md.sub(a, b)).collect());
            col_orders.push(o);
        }
        tower.insert(*i, n, ext.morphism().clone());
    }

    let all: Vec<usize> = (0..q.dim()).collect();
    let per_elem = q.orders_of(&all);
    let row_orders: Vec<u64> = (0..base.len()).map(|r| per_elem[r % q.dim()]).collect();
    let a = SparseMatrix::from_triplets(
        base.len(),
        columns.len(),
        md,
        columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().enumerate().map(move |(r, &v)| (r, c, v as i64))),
    );
    let rhs: Vec<u64> = base.iter().map(|&b| md.neg(b)).collect();
    let choice = match solve_with_orders(&a, &rhs, &row_orders, &col_orders).map_err(TrackError::from)? {
        SolveOutcome::Solved(set) => set.particular,
        SolveOutcome::NoSolution(certificate) => {
            let ns = natural(kq, n)?;
            let mut first = None;
            for i in 1..=count {
                let ob = obstruction_t(kq, &tower.assemble(i, n)?, Orientation::Standard)?;
                if !ob.is_zero() {
                    first = Some((i, ob));
                    break;
                }
            }
            let (index, obstruction) =
                first.unwrap_or_else(|| (1, ns.zero(seq.module(n + 2), seq.module(0))));
            for (i, ext) in &top {
                log.push(record(*i, n, ext, vec![0; ext.free_parameters()]));
            }
            return Ok(ChainComplexResult::Failed {
                failure: ChainComplexFailure::ObstructionNonzero {
                    index,
                    obstruction,
                    certificate,
                },
                choice_log: log,
            });
        }
    };

    let mut pos = 0;
    for (i, ext) in &top {
        let k = ext.free_parameters();
        let coeffs = choice[pos..pos + k].to_vec();
        pos += k;
        tower.insert(*i, n, ext.point(kq, &coeffs));
        log.push(record(*i, n, ext, coeffs));
    }
    for i in 1..=count {
        if !obstruction_t(kq, &tower.assemble(i, n)?, Orientation::Standard)?.is_zero() {
            return Err(TodaError::ConventionViolation(format!(
                "ob(F_{i}^{n}) is nonzero after the joint solve"
            )));
        }
    }
    Ok(ChainComplexResult::Built {
        complex: HigherChainComplex {
            sequence: seq.clone(),
            order: n,
            data: tower.data().clone(),
        },
        choice_log: log,
    })
}
