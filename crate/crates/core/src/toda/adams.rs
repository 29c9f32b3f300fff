//! Representatives of Adams differentials `d_{n+1}{β}` as obstructions of the
//! β-augmented chain complex.

use std::collections::BTreeMap;

use serde::Serialize;

use super::bracket::{run_main_path, window_violation, ChoiceRecord};
use super::indeterminacy::{natural, post_image};
use super::{HigherChainComplex, MorphismSequence, TodaError};
use crate::algebra::{Block, GradedModule, NatElem, Subgroup};
use crate::track::Kq;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdamsResult {
    /// `ob(G)` for the pinned choices of the β-dependent maps.
    pub raw: NatElem,
    /// Canonical representative of `raw` modulo `(f_1)_* D^n(Y, X_1)`, the
    /// change caused by re-choosing the β-dependent maps of top order.
    pub reduced: NatElem,
    /// The β-augmented window, renumbered so that β is its last map.
    pub window: MorphismSequence,
    pub choice_log: Vec<ChoiceRecord>,
}

impl AdamsResult {
    pub fn vanishes(&self) -> bool {
        self.reduced.is_zero()
    }
}

/// `d_{n+1}{β}` for `β : Y → X_j`, where the complex supplies `f_{j−n}, …, f_j`
/// with their higher data and `n` is the order of the complex.
pub fn adams_d(
    kq: &Kq,
    complex: &HigherChainComplex,
    j: usize,
    beta_source: &GradedModule,
    beta: Block,
) -> Result<AdamsResult, TodaError> {
    let n = complex.order();
    let seq = complex.sequence();
    if j < n + 1 || j > seq.len() {
        return Err(TodaError::Unsupported(format!(
            "β must land in X_j with {} ≤ j ≤ {}, got j = {j}",
            n + 1,
            seq.len()
        )));
    }
    let offset = j - n - 1;
    let window = seq.window(offset + 1, n + 1).extended(kq, beta_source.clone(), beta)?;
    if let Some(status) = window_violation(kq, &window) {
        return Err(TodaError::Unsupported(format!("degree window is unsound: {status:?}")));
    }
    let mut preset = BTreeMap::new();
    for k in 1..=n {
        for w in 1..=(n + 1 - k) {
            let f = complex
                .map(w + offset, k)
                .ok_or_else(|| TodaError::ConventionViolation(format!("complex lacks f_{}^{k}", w + offset)))?;
            preset.insert((w, k), f.clone());
        }
    }
    let mut log = Vec::new();
    let tower = match run_main_path(kq, &window, n, &preset, &mut log)? {
        Ok(tower) => tower,
        Err(status) => return Err(TodaError::NotACocycle(format!("{status:?}"))),
    };
    let raw = tower.obstruction(1, n)?;
    let ns = natural(kq, n)?;
    let image = post_image(kq, &window, n)?;
    let (src, tgt) = (window.module(n + 2), window.module(0));
    let sub = Subgroup::generated_by(&ns, src, tgt, &image);
    let reduced = ns.from_embedded(src, tgt, &sub.reduce(&ns.embedded(&raw)));
    Ok(AdamsResult {
        raw,
        reduced,
        window: window.clone(),
        choice_log: log,
    })
}
