//! Brute-force bracket sets: depth-first search over every choice point.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::bracket::{check_order, steps, Tower};
use super::indeterminacy::natural;
use super::{MorphismSequence, TodaError};
use crate::algebra::NatElem;
use crate::oracle::{BudgetExceeded, EnumerationBudget};
use crate::track::{ExtendOutcome, Kq, Morphism};

/// Every value of `ob(F_1^n)` over all complete defining systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSet {
    pub classes: Vec<NatElem>,
    /// Partial systems visited, including dead ends.
    pub states: u128,
    /// Complete defining systems reached.
    pub systems: u128,
}

impl OracleSet {
    pub fn is_defined(&self) -> bool {
        self.systems > 0
    }

    pub fn contains(&self, e: &NatElem) -> bool {
        self.classes.contains(e)
    }
}

struct Search<'a> {
    kq: &'a Kq,
    n: usize,
    steps: Vec<(usize, usize)>,
    preset: &'a BTreeMap<(usize, usize), Morphism>,
    budget: EnumerationBudget,
    states: u128,
    systems: u128,
    found: BTreeSet<Vec<u64>>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.states += 1;
        self.budget.check(self.states)
    }

    fn visit(&mut self, tower: &mut Tower<'_>, pos: usize) -> Result<(), TodaError> {
        self.tick()?;
        let Some(&(i, k)) = self.steps.get(pos) else {
            let ob = tower.obstruction(1, self.n)?;
            let ns = natural(self.kq, self.n)?;
            self.systems += 1;
            self.found.insert(ns.embedded(&ob));
            return Ok(());
        };
        if let Some(f) = self.preset.get(&(i, k)) {
            tower.insert(i, k, f.clone());
            return self.visit(tower, pos + 1);
        }
        let ExtendOutcome::Solved(ext) = tower.extension(i, k)? else {
            return Ok(());
        };
        for f in ext.enumerate(self.kq, self.budget)? {
            tower.insert(i, k, f);
            self.visit(tower, pos + 1)?;
        }
        Ok(())
    }
}

pub(crate) fn oracle_with_preset(
    kq: &Kq,
    seq: &MorphismSequence,
    n: usize,
    preset: &BTreeMap<(usize, usize), Morphism>,
    budget: EnumerationBudget,
) -> Result<OracleSet, TodaError> {
    check_order(kq, seq, n)?;
    let mut search = Search {
        kq,
        n,
        steps: steps(seq.len(), n),
        preset,
        budget,
        states: 0,
        systems: 0,
        found: BTreeSet::new(),
    };
    let mut tower = Tower::new(kq, seq);
    search.visit(&mut tower, 0)?;
    let ns = natural(kq, n)?;
    let (src, tgt) = (seq.module(seq.len()), seq.module(0));
    Ok(OracleSet {
        classes: search.found.iter().map(|v| ns.from_embedded(src, tgt, v)).collect(),
        states: search.states,
        systems: search.systems,
    })
}

/// The full bracket set `⟨α_1, …, α_{n+2}⟩` by exhaustive search, failing with
/// [`TodaError::Budget`] once more than `budget` partial systems are visited.
pub fn oracle_bracket_set(
    kq: &Kq,
    seq: &MorphismSequence,
    n: usize,
    budget: EnumerationBudget,
) -> Result<OracleSet, TodaError> {
    oracle_with_preset(kq, seq, n, &BTreeMap::new(), budget)
}
