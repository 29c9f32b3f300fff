//! Exhaustive enumeration of affine solution sets under a state budget.

use thiserror::Error;

use crate::linalg::AffineSolutionSet;

/// Default cap on enumerated states.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("enumeration needs {needed} states but the budget is {budget}")]
pub struct BudgetExceeded {
    pub needed: u128,
    pub budget: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_points: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_points: DEFAULT_BUDGET,
        }
    }
}

impl EnumerationBudget {
    pub fn new(max_points: u128) -> Self {
        EnumerationBudget { max_points }
    }

    /// The budget from `ENGINE_BUDGET`, or the default.
    pub fn from_env() -> Self {
        std::env::var("ENGINE_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Self::new)
            .unwrap_or_default()
    }

    pub fn check(&self, needed: u128) -> Result<(), BudgetExceeded> {
        if needed > self.max_points {
            Err(BudgetExceeded {
                needed,
                budget: self.max_points,
            })
        } else {
            Ok(())
        }
    }
}

/// All tuples `(c_0, …)` with `0 ≤ c_i < orders[i]`, last index fastest.
#[derive(Clone, Debug)]
pub struct MixedRadix {
    orders: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl MixedRadix {
    pub fn new(orders: Vec<u64>) -> Self {
        let next = if orders.iter().any(|&o| o == 0) {
            None
        } else {
            Some(vec![0; orders.len()])
        };
        MixedRadix { orders, next }
    }

    /// Number of tuples, saturating.
    pub fn count(orders: &[u64]) -> u128 {
        orders
            .iter()
            .fold(1u128, |acc, &o| acc.saturating_mul(o as u128))
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.orders[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// Every point of an affine solution set, in a deterministic order.
pub fn enumerate_affine(
    set: &AffineSolutionSet,
    budget: EnumerationBudget,
) -> Result<impl Iterator<Item = Vec<u64>> + '_, BudgetExceeded> {
    let orders = set.generator_orders();
    budget.check(MixedRadix::count(&orders))?;
    Ok(MixedRadix::new(orders).map(move |c| set.point(&c)))
}
