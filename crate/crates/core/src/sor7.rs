//! Iterative k-center-driven covering: `(2β + 1 + ε) · OPT` for a colorful
//! k-center subroutine with factor `β`, so `3 + ε` with [`ExactKCenter`].
//!
//! Iteration `i` guesses a radius `r̃_i` (the head grid for `i = 1`, then
//! tail values not above the previous guess), solves colorful k-center on
//! what is still uncovered with `k - (i - 1)` centers, and branches over
//! where the center of the `i`-th optimal cluster is "close to": an already
//! placed ball (which grows by `(2β + 1) r̃_i`, plus a zero-radius dummy to
//! keep one ball per iteration), a fresh subroutine center, or a subroutine
//! outlier. Each of the last two places a ball of radius `(2β + 1) r̃_i`.
//! Every branch is explored, which makes the search deterministic.
//!
//! [`ExactKCenter`]: crate::kcenter::ExactKCenter

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{Instance, PointSet};
use crate::kcenter::{ExactKCenter, KCenterSolution, KCenterSolver};
use crate::profiles::ProfileGrid;
use crate::residual::ResidualInstance;
use crate::search::{internal_epsilon, Incumbent, NodeCounter, SearchConfig};
use crate::solution::{counting_set, verify_solution, Ball, ResidualRequirements, Solution};

pub use crate::residual::residual_instance;

/// Where the center of the current optimal cluster is guessed to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuessChoice {
    /// Near the `j`-th ball already chosen.
    Existing(usize),
    /// Near this subroutine center.
    New(usize),
    /// At or near this subroutine outlier.
    Outlier(usize),
}

/// Search state after some iterations.
#[derive(Debug, Clone)]
pub struct SorSearchNode {
    /// Balls in creation order with the guess that created them. A grown
    /// ball keeps its original origin.
    pub chosen: Vec<(Ball, GuessChoice)>,
    pub iteration: usize,
    /// Requirements the chosen balls leave unmet.
    pub residual_rho: ResidualRequirements,
    /// `r̃_1, …, r̃_iteration`.
    pub guesses: Vec<f64>,
    covered: PointSet,
}

impl SorSearchNode {
    pub fn root(inst: &Instance) -> Self {
        Self {
            chosen: Vec::new(),
            iteration: 0,
            residual_rho: ResidualRequirements(inst.requirements()),
            guesses: Vec::new(),
            covered: PointSet::with_capacity(inst.n()),
        }
    }

    pub fn balls(&self) -> Vec<Ball> {
        self.chosen.iter().map(|(b, _)| *b).collect()
    }

    pub fn cost(&self) -> f64 {
        self.chosen.iter().map(|(b, _)| b.radius).sum()
    }

    /// Points inside some chosen ball.
    pub fn covered(&self) -> &PointSet {
        &self.covered
    }

    /// Every remaining point may be dropped as an outlier.
    pub fn is_settled(&self) -> bool {
        self.residual_rho.is_met()
    }

    pub fn residual<'a>(&self, inst: &'a Instance) -> ResidualInstance<'a> {
        ResidualInstance::after_covering(inst, &self.covered)
    }

    /// Balls still to be placed, including the current iteration's.
    pub fn remaining_clusters(&self, k: usize) -> usize {
        k.saturating_sub(self.iteration)
    }

    /// Branches available after the subroutine returned `kc` at this node.
    /// Co-located outliers give identical balls, so only the smallest id of
    /// each group is kept.
    pub fn choices(&self, inst: &Instance, kc: &KCenterSolution) -> Vec<GuessChoice> {
        let mut out: Vec<GuessChoice> = (0..self.chosen.len()).map(GuessChoice::Existing).collect();
        out.extend(kc.centers.iter().map(|&c| GuessChoice::New(c)));
        let mut reps: Vec<usize> = Vec::new();
        for &o in &kc.outliers {
            if reps.iter().all(|&r| inst.d(r, o) > 0.0) {
                reps.push(o);
            }
        }
        out.extend(reps.into_iter().map(GuessChoice::Outlier));
        out
    }
}

/// Applies one guess: `Existing(j)` grows ball `j` by `(2β + 1) r̃` and adds a
/// zero-radius ball at the smallest-id point still uncovered (none if every
/// point is covered); `New(c)` and `Outlier(o)` add `B(c or o, (2β + 1) r̃)`.
pub fn expand_guess(
    inst: &Instance,
    node: &SorSearchNode,
    choice: GuessChoice,
    r_tilde: f64,
    beta: f64,
    kc: &KCenterSolution,
) -> Result<SorSearchNode> {
    if !(r_tilde >= 0.0 && r_tilde.is_finite()) {
        return Err(Error::InvalidArgument(format!("guessed radius must be nonnegative, got {r_tilde}")));
    }
    if !(beta >= 1.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument(format!("beta must be at least 1, got {beta}")));
    }
    if node.iteration >= inst.k() {
        return Err(Error::InvalidArgument(format!("node already used all {} iterations", inst.k())));
    }
    let step = (2.0 * beta + 1.0) * r_tilde;
    let mut child = node.clone();
    match choice {
        GuessChoice::Existing(j) => {
            let (ball, _) = child
                .chosen
                .get_mut(j)
                .ok_or_else(|| Error::InvalidArgument(format!("no chosen ball {j}")))?;
            ball.radius += step;
            child.covered.union_with(&inst.ball_set(ball.center, ball.radius));
            let mut uncovered = inst.full_set();
            uncovered.difference_with(&child.covered);
            if let Some(x) = uncovered.minimum() {
                child.chosen.push((Ball::cluster(x, 0.0), choice));
                child.covered.union_with(&inst.ball_set(x, 0.0));
            }
        }
        GuessChoice::New(c) | GuessChoice::Outlier(c) => {
            let listed = match choice {
                GuessChoice::New(_) => kc.centers.contains(&c),
                _ => kc.outliers.contains(&c),
            };
            if !listed {
                return Err(Error::InvalidArgument(format!("{choice:?} is not offered by the subroutine")));
            }
            child.chosen.push((Ball::cluster(c, step), choice));
            child.covered.union_with(&inst.ball_set(c, step));
        }
    }
    child.iteration += 1;
    child.guesses.push(r_tilde);
    child.residual_rho = counting_set(inst, &child.covered, &ResidualRequirements(inst.requirements()));
    Ok(child)
}

/// Subroutine call at `node`: colorful k-center on the uncovered points with
/// one center per remaining iteration.
pub fn node_kcenter(inst: &Instance, node: &SorSearchNode, solver: &dyn KCenterSolver) -> Result<KCenterSolution> {
    solver.solve(&node.residual(inst), node.remaining_clusters(inst.k()))
}

#[derive(Debug, Clone)]
pub struct Sor7Output {
    pub solution: Solution,
    pub nodes: u64,
    /// Distinct subroutine calls (memoized on the uncovered set).
    pub kcenter_calls: u64,
    /// Subroutine radius on the full instance, anchoring the head grid.
    pub kcenter_value: f64,
    /// `2β + 1 + ε`, or `None` when the subroutine has no guarantee.
    pub guarantee: Option<f64>,
}

pub struct Sor7<'s> {
    pub config: SearchConfig,
    pub solver: &'s dyn KCenterSolver,
}

type MemoKey = (PointSet, usize);

// Everything the subtree below a node depends on: the balls as a multiset,
// the iteration, the last guess and the head grid in use. Different guess
// orders reaching the same key have identical subtrees.
type StateKey = (Vec<(usize, u64)>, usize, u64, usize);

fn state_key(node: &SorSearchNode, head: usize) -> StateKey {
    let mut balls: Vec<(usize, u64)> = node.chosen.iter().map(|(b, _)| (b.center, b.radius.to_bits())).collect();
    balls.sort_unstable();
    let last = node.guesses.last().map_or(0, |g| g.to_bits());
    (balls, node.iteration, last, head)
}

struct Run<'a> {
    inst: &'a Instance,
    solver: &'a dyn KCenterSolver,
    beta: f64,
    prune_by_subroutine: bool,
    grid: ProfileGrid,
    tolerance: f64,
    counter: NodeCounter,
    incumbent: Incumbent,
    memo: Mutex<HashMap<MemoKey, Arc<KCenterSolution>>>,
    visited: Mutex<HashSet<StateKey>>,
}

impl<'s> Sor7<'s> {
    pub fn new(config: SearchConfig, solver: &'s dyn KCenterSolver) -> Self {
        Self { config, solver }
    }

    pub fn solve(&self, inst: &Instance, incumbent_bound: Option<f64>) -> Result<Sor7Output> {
        self.config.validate()?;
        let declared = self.solver.beta();
        // Without a guarantee the grid and inflation still need some factor.
        let beta = declared.unwrap_or(1.0);
        let factor = 2.0 * beta + 1.0;
        let root = SorSearchNode::root(inst);
        let root_kc = node_kcenter(inst, &root, self.solver)?;
        let grid = ProfileGrid::new(inst.k(), root_kc.radius, beta, internal_epsilon(self.config.epsilon, factor))?;
        let run = Run {
            inst,
            solver: self.solver,
            beta,
            prune_by_subroutine: declared.is_some(),
            grid,
            tolerance: self.config.tolerance,
            counter: NodeCounter::new(self.config.node_budget),
            incumbent: Incumbent::new(incumbent_bound, self.config.tolerance),
            memo: Mutex::new(HashMap::new()),
            visited: Mutex::new(HashSet::new()),
        };
        run.memo.lock().expect("memo lock poisoned").insert((root.covered.clone(), inst.k()), Arc::new(root_kc.clone()));

        run.counter.tick()?;
        if root.is_settled() {
            run.incumbent.offer(Solution::canonical(inst, Vec::new()));
        } else {
            let work: Vec<(usize, f64, GuessChoice)> = root
                .choices(inst, &root_kc)
                .into_iter()
                .flat_map(|c| run.grid.heads().iter().enumerate().map(move |(h, &r)| (h, r, c)))
                .collect();
            let step = |&(h, r, c): &(usize, f64, GuessChoice)| -> Result<()> {
                let child = expand_guess(inst, &root, c, r, beta, &root_kc)?;
                run.explore(child, h)
            };
            if self.config.parallel {
                work.par_iter().try_for_each(step)?;
            } else {
                work.iter().try_for_each(step)?;
            }
        }

        let kcenter_calls = run.memo.lock().expect("memo lock poisoned").len() as u64;
        let nodes = run.counter.count();
        let solution = run
            .incumbent
            .into_best()
            .ok_or_else(|| Error::Infeasible("no guess sequence satisfies the outlier budgets".into()))?;
        let report = verify_solution(inst, &solution);
        if !report.feasible {
            return Err(Error::Infeasible(format!("solution failed verification: {:?}", report.violations)));
        }
        Ok(Sor7Output {
            solution,
            nodes,
            kcenter_calls,
            kcenter_value: root_kc.radius,
            guarantee: declared.map(|b| 2.0 * b + 1.0 + self.config.epsilon),
        })
    }
}

impl Run<'_> {
    fn kcenter(&self, node: &SorSearchNode) -> Result<Arc<KCenterSolution>> {
        let key = (node.covered.clone(), node.remaining_clusters(self.inst.k()));
        if let Some(hit) = self.memo.lock().expect("memo lock poisoned").get(&key) {
            return Ok(hit.clone());
        }
        // Computed outside the lock; a concurrent duplicate is harmless
        // because the subroutine is deterministic.
        let kc = Arc::new(node_kcenter(self.inst, node, self.solver)?);
        self.memo.lock().expect("memo lock poisoned").insert(key, kc.clone());
        Ok(kc)
    }

    fn explore(&self, node: SorSearchNode, head: usize) -> Result<()> {
        self.counter.tick()?;
        let cost = node.cost();
        debug_assert!(cost <= (2.0 * self.beta + 1.0) * node.guesses.iter().sum::<f64>() + 1e-6);
        if self.incumbent.prunes(cost) {
            return Ok(());
        }
        if node.is_settled() {
            self.incumbent.offer(Solution::canonical(self.inst, node.balls()));
            return Ok(());
        }
        if node.iteration >= self.inst.k() {
            return Ok(());
        }
        if !self.visited.lock().expect("visited lock poisoned").insert(state_key(&node, head)) {
            return Ok(());
        }
        let kc = self.kcenter(&node)?;
        let prev = *node.guesses.last().expect("explore starts below the root");
        let choices = node.choices(self.inst, &kc);
        for &r in self.grid.tails(head).iter().filter(|&&r| r <= prev) {
            // With a guaranteed subroutine, a guess that dominates the
            // remaining optimal radii has subroutine radius at most 2β r̃.
            if self.prune_by_subroutine && kc.radius > 2.0 * self.beta * r + self.tolerance {
                continue;
            }
            let step = (2.0 * self.beta + 1.0) * r;
            if self.incumbent.prunes(cost + step) {
                continue;
            }
            for &c in &choices {
                self.explore(expand_guess(self.inst, &node, c, r, self.beta, &kc)?, head)?;
            }
        }
        Ok(())
    }
}

/// `(2β + 1 + eps)`-approximate colorful sum of radii driven by `solver`.
pub fn solve_sor7(inst: &Instance, eps: f64, solver: &dyn KCenterSolver) -> Result<Solution> {
    Ok(Sor7::new(SearchConfig::new(eps), solver).solve(inst, None)?.solution)
}

/// [`solve_sor7`] with the exact subroutine.
pub fn solve_sor7_exact(inst: &Instance, eps: f64) -> Result<Solution> {
    solve_sor7(inst, eps, &ExactKCenter::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{color4, line4};
    use crate::kcenter::GreedyKCenter;

    fn kc_of(centers: Vec<usize>, outliers: Vec<usize>) -> KCenterSolution {
        KCenterSolution { centers, radius: 1.0, outliers, beta: Some(1.0) }
    }

    #[test]
    fn expand_existing_grows_and_adds_dummy() {
        let inst = line4(2, 0);
        let kc = kc_of(vec![0], vec![]);
        let node = expand_guess(&inst, &SorSearchNode::root(&inst), GuessChoice::New(0), 1.0, 1.0, &kc).unwrap();
        assert_eq!(node.chosen[0].0, Ball::cluster(0, 3.0));
        let grown = expand_guess(&inst, &node, GuessChoice::Existing(0), 1.0, 1.0, &kc).unwrap();
        assert_eq!(grown.chosen[0].0, Ball::cluster(0, 6.0));
        assert_eq!(grown.chosen[1].0, Ball::cluster(2, 0.0));
        assert_eq!(grown.iteration, 2);
        assert_eq!(grown.chosen.len(), grown.iteration);
    }

    #[test]
    fn expand_new_and_outlier() {
        let inst = line4(2, 1);
        let root = SorSearchNode::root(&inst);
        let kc = kc_of(vec![2], vec![3]);
        let n = expand_guess(&inst, &root, GuessChoice::New(2), 1.0, 1.0, &kc).unwrap();
        assert_eq!(n.balls(), vec![Ball::cluster(2, 3.0)]);
        let o = expand_guess(&inst, &root, GuessChoice::Outlier(3), 0.0, 1.0, &kc).unwrap();
        assert_eq!(o.balls(), vec![Ball::cluster(3, 0.0)]);
    }

    #[test]
    fn expand_rejects_unknown_choices() {
        let inst = line4(2, 0);
        let root = SorSearchNode::root(&inst);
        let kc = kc_of(vec![2], vec![]);
        assert!(expand_guess(&inst, &root, GuessChoice::Existing(0), 1.0, 1.0, &kc).is_err());
        assert!(expand_guess(&inst, &root, GuessChoice::New(1), 1.0, 1.0, &kc).is_err());
        assert!(expand_guess(&inst, &root, GuessChoice::Outlier(2), 1.0, 1.0, &kc).is_err());
    }

    #[test]
    fn existing_without_uncovered_points_adds_no_dummy() {
        let inst = line4(2, 0);
        let kc = kc_of(vec![0], vec![]);
        let node = expand_guess(&inst, &SorSearchNode::root(&inst), GuessChoice::New(0), 4.0, 1.0, &kc).unwrap();
        let grown = expand_guess(&inst, &node, GuessChoice::Existing(0), 1.0, 1.0, &kc).unwrap();
        assert_eq!(grown.chosen.len(), 1);
        assert!(grown.is_settled());
    }

    #[test]
    fn solve_examples() {
        assert!(solve_sor7_exact(&color4(1, [1, 1]), 1.0).unwrap().cost <= 4.0);
        assert!(solve_sor7_exact(&line4(2, 0), 1.0).unwrap().cost <= 8.0);
        assert_eq!(solve_sor7_exact(&color4(2, [2, 2]), 1.0).unwrap().cost, 0.0);
    }

    #[test]
    fn one_center_per_point_is_free() {
        // Every order of placing the zero-radius balls reaches the same state.
        let out = Sor7::new(SearchConfig::new(0.5), &ExactKCenter::default()).solve(&line4(4, 0), None).unwrap();
        assert_eq!(out.solution.cost, 0.0);
        assert!(out.nodes < 100, "{} nodes", out.nodes);
    }

    #[test]
    fn greedy_subroutine_has_no_guarantee() {
        let inst = line4(2, 0);
        let out = Sor7::new(SearchConfig::new(1.0), &GreedyKCenter).solve(&inst, None).unwrap();
        assert!(out.guarantee.is_none());
        assert!(verify_solution(&inst, &out.solution).feasible);
    }

    #[test]
    fn sequential_matches_parallel() {
        let inst = color4(2, [1, 0]);
        let a = Sor7::new(SearchConfig::new(0.5), &ExactKCenter::default()).solve(&inst, None).unwrap();
        let b = Sor7::new(SearchConfig::new(0.5).sequential(), &ExactKCenter::default()).solve(&inst, None).unwrap();
        assert_eq!(a.solution, b.solution);
    }
}
