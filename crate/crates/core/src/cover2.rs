//! Iterative covering: `(2 + ε) · OPT`, exponential in `k + m`.
//!
//! Each radius profile is padded with `m` outlier slots of radius zero. The
//! search repeatedly takes the smallest-id uncovered point `p` and branches
//! over the distinct remaining slots: a cluster slot `r̃` places `B(p, 2r̃)`,
//! an outlier slot drops `p` (and anything co-located with it). Whenever `p`
//! lies in an optimal cluster whose slot is still free, the ball of twice
//! the dominating radius swallows that whole cluster, so some branch of a
//! dominating profile covers every optimal cluster at cost `2 Σ r̃`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{Instance, PointSet};
use crate::kcenter::{ExactKCenter, KCenterSolver};
use crate::profiles::{ProfileGrid, RadiusProfile};
use crate::residual::ResidualInstance;
use crate::search::{internal_epsilon, Incumbent, NodeCounter, SearchConfig};
use crate::solution::{counting_set, verify_solution, Ball, ResidualRequirements, Slot, Solution};

/// Cost multiplier of the covering balls over their profile radii.
pub const INFLATION: f64 = 2.0;

/// A partial covering: the balls placed so far and the slots still unused.
#[derive(Debug, Clone)]
pub struct CoverSearchNode {
    /// Points in no ball yet (cluster or outlier).
    pub uncovered: PointSet,
    /// Unused slots; cluster slots carry their profile radius.
    pub slots: Vec<(Slot, f64)>,
    pub balls: Vec<Ball>,
    pub cost: f64,
    /// Requirements still unmet by the cluster balls.
    pub rho: ResidualRequirements,
    clustered: PointSet,
}

impl CoverSearchNode {
    /// Root node for `profile` padded with `m` outlier slots.
    pub fn root(inst: &Instance, profile: &RadiusProfile) -> Self {
        let mut slots: Vec<(Slot, f64)> = profile.radii().iter().map(|&r| (Slot::Cluster, r)).collect();
        slots.extend(std::iter::repeat_n((Slot::Outlier, 0.0), inst.total_outliers()));
        Self {
            uncovered: inst.full_set(),
            slots,
            balls: Vec::new(),
            cost: 0.0,
            rho: ResidualRequirements(inst.requirements()),
            clustered: PointSet::with_capacity(inst.n()),
        }
    }

    /// All requirements are met; the branch ends here.
    pub fn is_terminal(&self) -> bool {
        self.rho.is_met()
    }

    /// The point the next ball is centered at.
    pub fn pivot(&self) -> Option<usize> {
        self.uncovered.minimum()
    }

    /// Distinct remaining slots, cluster radii largest first, then the
    /// outlier slot.
    pub fn branch_slots(&self) -> Vec<(Slot, f64)> {
        let mut distinct = self.slots.clone();
        distinct.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.total_cmp(&a.1)));
        distinct.dedup();
        distinct
    }

    /// Children of a non-terminal node, one per distinct slot. Terminal
    /// nodes and nodes without an uncovered point have none.
    pub fn children(&self, inst: &Instance) -> Vec<CoverSearchNode> {
        if self.is_terminal() {
            return Vec::new();
        }
        let Some(p) = self.pivot() else {
            return Vec::new();
        };
        self.branch_slots().into_iter().map(|slot| self.place(inst, p, slot)).collect()
    }

    fn place(&self, inst: &Instance, p: usize, (slot, r): (Slot, f64)) -> CoverSearchNode {
        let mut child = self.clone();
        let used = child.slots.iter().position(|&s| s == (slot, r)).expect("slot is available");
        child.slots.swap_remove(used);
        let ball = match slot {
            Slot::Cluster => Ball::cluster(p, INFLATION * r),
            Slot::Outlier => Ball::outlier(p),
        };
        let members = inst.ball_set(p, ball.radius);
        child.uncovered.difference_with(&members);
        if slot == Slot::Cluster {
            child.clustered.union_with(&members);
            child.rho = counting_set(inst, &child.clustered, &ResidualRequirements(inst.requirements()));
            child.cost += ball.radius;
        }
        child.balls.push(ball);
        child
    }
}

/// Outcome of a covering search together with its statistics.
#[derive(Debug, Clone)]
pub struct Cover2Output {
    pub solution: Solution,
    pub nodes: u64,
    pub profiles: u128,
    /// Exact colorful k-center value anchoring the profile grid.
    pub kcenter_value: f64,
}

#[derive(Debug, Clone)]
pub struct Cover2 {
    pub config: SearchConfig,
}

impl Cover2 {
    pub fn new(config: SearchConfig) -> Self {
        Self { config }
    }

    /// Best feasible terminal over every profile and branch. An
    /// `incumbent_bound` discards candidates costlier than it.
    pub fn solve(&self, inst: &Instance, incumbent_bound: Option<f64>) -> Result<Cover2Output> {
        self.config.validate()?;
        let kc = ExactKCenter { node_budget: self.config.node_budget }.solve(&ResidualInstance::full(inst), inst.k())?;
        let grid = ProfileGrid::new(inst.k(), kc.radius, 1.0, internal_epsilon(self.config.epsilon, INFLATION))?;
        let mut profiles: Vec<RadiusProfile> = grid.profiles().collect();
        // Cheap profiles first tighten the incumbent early.
        profiles.sort_by(|a, b| a.sum().total_cmp(&b.sum()));

        let counter = NodeCounter::new(self.config.node_budget);
        let incumbent = Incumbent::new(incumbent_bound, self.config.tolerance);
        let run = |profile: &RadiusProfile| -> Result<()> {
            let bound = INFLATION * profile.sum() + self.config.tolerance;
            explore(inst, CoverSearchNode::root(inst, profile), bound, &incumbent, &counter, &mut |node| {
                incumbent.offer(Solution::canonical(inst, node.balls.clone()));
            })
        };
        if self.config.parallel {
            profiles.par_iter().try_for_each(run)?;
        } else {
            profiles.iter().try_for_each(run)?;
        }

        let solution = incumbent
            .into_best()
            .ok_or_else(|| Error::Infeasible("no covering satisfies the outlier budgets".into()))?;
        let report = verify_solution(inst, &solution);
        if !report.feasible {
            return Err(Error::Infeasible(format!("covering failed verification: {:?}", report.violations)));
        }
        Ok(Cover2Output { solution, nodes: counter.count(), profiles: grid.profile_count(), kcenter_value: kc.radius })
    }
}

/// `(2 + eps)`-approximate colorful sum of radii.
pub fn solve_cover2(inst: &Instance, eps: f64, incumbent_bound: Option<f64>) -> Result<Solution> {
    Ok(Cover2::new(SearchConfig::new(eps)).solve(inst, incumbent_bound)?.solution)
}

/// Every terminal node below `node` that survives pruning: partial cost above
/// `cost_bound`, or above `incumbent` (when given) by more than the default
/// tolerance.
pub fn branch_cover(
    inst: &Instance,
    node: CoverSearchNode,
    cost_bound: f64,
    incumbent: Option<f64>,
) -> Result<Vec<CoverSearchNode>> {
    let inc = Incumbent::new(incumbent, crate::search::DEFAULT_TOLERANCE);
    let counter = NodeCounter::new(u64::MAX);
    let mut out = Vec::new();
    explore(inst, node, cost_bound, &inc, &counter, &mut |n| out.push(n.clone()))?;
    Ok(out)
}

fn explore(
    inst: &Instance,
    node: CoverSearchNode,
    cost_bound: f64,
    incumbent: &Incumbent,
    counter: &NodeCounter,
    on_terminal: &mut dyn FnMut(&CoverSearchNode),
) -> Result<()> {
    counter.tick()?;
    if node.cost > cost_bound || incumbent.prunes(node.cost) {
        return Ok(());
    }
    if node.is_terminal() {
        on_terminal(&node);
        return Ok(());
    }
    for child in node.children(inst) {
        explore(inst, child, cost_bound, incumbent, counter, on_terminal)?;
    }
    Ok(())
}
