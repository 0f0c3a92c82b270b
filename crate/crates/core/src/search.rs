//! Shared machinery for the branching solvers: configuration, node budget,
//! the monotone incumbent bound and deterministic best-solution selection.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::solution::Solution;

/// Slack used where an accumulated cost is compared against a derived bound.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// User-facing accuracy parameter of the approximation guarantee.
    pub epsilon: f64,
    /// Hard cap on explored search nodes; exceeding it is an error.
    pub node_budget: u64,
    pub tolerance: f64,
    /// Spread independent subtrees over the current rayon pool.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(epsilon: f64) -> Self {
        Self { epsilon, node_budget: DEFAULT_NODE_BUDGET, tolerance: DEFAULT_TOLERANCE, parallel: true }
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return Err(Error::InvalidArgument("tolerance must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Grid accuracy handed to the radius-profile enumeration so that a solver
/// whose cost is `factor · Σ r̃` stays within `(factor + epsilon) · OPT`.
///
/// A dominating profile satisfies `Σ r̃ ≤ (1 + e)² · OPT` (one `(1 + e)` from
/// rounding up to the grid, one from lifting radii below the grid floor), so
/// `e = sqrt(1 + epsilon / factor) - 1`.
pub fn internal_epsilon(epsilon: f64, factor: f64) -> f64 {
    (1.0 + epsilon / factor).sqrt() - 1.0
}

pub(crate) struct NodeCounter {
    count: AtomicU64,
    budget: u64,
}

impl NodeCounter {
    pub(crate) fn new(budget: u64) -> Self {
        Self { count: AtomicU64::new(0), budget }
    }

    pub(crate) fn tick(&self) -> Result<()> {
        let seen = self.count.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.budget {
            Err(Error::NodeBudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    pub(crate) fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed).min(self.budget)
    }
}

/// Best solution found so far plus a lock-free copy of its cost for pruning.
///
/// Pruning discards a node only when its partial cost exceeds the bound by
/// more than the tolerance, so every candidate tied with the final optimum
/// is always reached and the tie-break makes the answer independent of the
/// exploration order.
pub(crate) struct Incumbent {
    bound: AtomicU64,
    best: Mutex<Option<Solution>>,
    tolerance: f64,
}

impl Incumbent {
    pub(crate) fn new(initial_bound: Option<f64>, tolerance: f64) -> Self {
        let b = initial_bound.unwrap_or(f64::INFINITY);
        Self { bound: AtomicU64::new(b.to_bits()), best: Mutex::new(None), tolerance }
    }

    pub(crate) fn bound(&self) -> f64 {
        f64::from_bits(self.bound.load(Ordering::Acquire))
    }

    pub(crate) fn prunes(&self, partial_cost: f64) -> bool {
        partial_cost > self.bound() + self.tolerance
    }

    pub(crate) fn offer(&self, sol: Solution) {
        if self.prunes(sol.cost) {
            return;
        }
        // Nonnegative f64 bit patterns order like the values themselves.
        self.bound.fetch_min(sol.cost.to_bits(), Ordering::AcqRel);
        let mut best = self.best.lock().expect("incumbent lock poisoned");
        let better = match best.as_ref() {
            None => true,
            Some(cur) => sol.tie_break_cmp(cur).is_lt(),
        };
        if better {
            *best = Some(sol);
        }
    }

    pub(crate) fn into_best(self) -> Option<Solution> {
        self.best.into_inner().expect("incumbent lock poisoned")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::line4;
    use crate::solution::Ball;

    #[test]
    fn internal_epsilon_restores_factor() {
        for &(eps, factor) in &[(0.5, 2.0), (1.0, 2.0), (1.0, 3.0), (0.1, 7.0)] {
            let e = internal_epsilon(eps, factor);
            assert!(e > 0.0);
            assert!((factor * (1.0 + e) * (1.0 + e) - (factor + eps)).abs() < 1e-12);
        }
    }

    #[test]
    fn node_budget_is_hard() {
        let c = NodeCounter::new(2);
        assert!(c.tick().is_ok());
        assert!(c.tick().is_ok());
        assert!(matches!(c.tick(), Err(Error::NodeBudgetExceeded { budget: 2 })));
    }

    #[test]
    fn incumbent_keeps_tie_break_minimum() {
        let inst = line4(2, 0);
        let inc = Incumbent::new(None, DEFAULT_TOLERANCE);
        let a = Solution::canonical(&inst, vec![Ball::cluster(2, 1.0), Ball::cluster(1, 1.0)]);
        let b = Solution::canonical(&inst, vec![Ball::cluster(0, 1.0), Ball::cluster(2, 1.0)]);
        inc.offer(a);
        inc.offer(b.clone());
        inc.offer(Solution::canonical(&inst, vec![Ball::cluster(0, 11.0)]));
        assert_eq!(inc.bound(), 2.0);
        assert!(inc.prunes(2.5));
        assert!(!inc.prunes(2.0));
        assert_eq!(inc.into_best().unwrap(), b);
    }
}
