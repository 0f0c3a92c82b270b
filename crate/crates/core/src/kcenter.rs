//! Colorful k-center: pick at most `kappa` centers and one common radius so
//! that every class `i` has at least `rho'_i` points within the radius of a
//! center. Two solvers share the [`KCenterSolver`] interface: an exact one
//! (guarantee factor 1) and a greedy heuristic with no guarantee.

use crate::error::{Error, Result};
use crate::instance::PointSet;
use crate::residual::ResidualInstance;
use crate::search::NodeCounter;

pub const DEFAULT_KCENTER_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct KCenterSolution {
    /// Chosen centers, ascending.
    pub centers: Vec<usize>,
    pub radius: f64,
    /// Active points farther than `radius` from every center, ascending.
    pub outliers: Vec<usize>,
    /// Approximation factor of the producing solver; `None` when the solver
    /// carries no guarantee.
    pub beta: Option<f64>,
}

pub trait KCenterSolver: Send + Sync {
    fn name(&self) -> &'static str;

    fn beta(&self) -> Option<f64>;

    fn solve(&self, residual: &ResidualInstance<'_>, kappa: usize) -> Result<KCenterSolution>;
}

/// Exact solver: binary search over candidate radii with a depth-first
/// feasibility search over center sets.
#[derive(Debug, Clone)]
pub struct ExactKCenter {
    pub node_budget: u64,
}

impl Default for ExactKCenter {
    fn default() -> Self {
        Self { node_budget: DEFAULT_KCENTER_NODE_BUDGET }
    }
}

impl KCenterSolver for ExactKCenter {
    fn name(&self) -> &'static str {
        "kcenter-exact"
    }

    fn beta(&self) -> Option<f64> {
        Some(1.0)
    }

    fn solve(&self, residual: &ResidualInstance<'_>, kappa: usize) -> Result<KCenterSolution> {
        let radii = prepare(residual, kappa)?;
        let counter = NodeCounter::new(self.node_budget);
        let Some(radii) = radii else {
            return Ok(settled(residual, Some(1.0)));
        };
        // The largest candidate is the residual diameter, where any single
        // center covers everything, so `hi` starts feasible.
        let (mut lo, mut hi) = (0usize, radii.len() - 1);
        let mut best = feasible_centers(residual, kappa, radii[hi], &counter)?
            .expect("one center at the residual diameter covers every active point");
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match feasible_centers(residual, kappa, radii[mid], &counter)? {
                Some(centers) => {
                    hi = mid;
                    best = centers;
                }
                None => lo = mid + 1,
            }
        }
        Ok(finish(residual, best, radii[hi], Some(1.0)))
    }
}

/// Greedy heuristic: for a trial radius, repeatedly open the center whose
/// ball removes the most outstanding demand; the smallest trial radius that
/// succeeds (by binary search) is returned. The residual diameter always
/// succeeds, so the output is feasible.
#[derive(Debug, Clone, Default)]
pub struct GreedyKCenter;

impl KCenterSolver for GreedyKCenter {
    fn name(&self) -> &'static str {
        "kcenter-greedy"
    }

    fn beta(&self) -> Option<f64> {
        None
    }

    fn solve(&self, residual: &ResidualInstance<'_>, kappa: usize) -> Result<KCenterSolution> {
        let Some(radii) = prepare(residual, kappa)? else {
            return Ok(settled(residual, None));
        };
        let (mut lo, mut hi) = (0usize, radii.len() - 1);
        let mut best = greedy_centers(residual, kappa, radii[hi]).expect("diameter radius always succeeds");
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match greedy_centers(residual, kappa, radii[mid]) {
                Some(centers) => {
                    hi = mid;
                    best = centers;
                }
                None => lo = mid + 1,
            }
        }
        Ok(finish(residual, best, radii[hi], None))
    }
}

/// Exact colorful k-center on a residual instance.
pub fn solve_exact(residual: &ResidualInstance<'_>, kappa: usize) -> Result<KCenterSolution> {
    ExactKCenter::default().solve(residual, kappa)
}

/// Greedy colorful k-center on a residual instance.
pub fn solve_greedy(residual: &ResidualInstance<'_>, kappa: usize) -> Result<KCenterSolution> {
    GreedyKCenter.solve(residual, kappa)
}

/// Decision version: the lexicographically smallest center set of size at
/// most `kappa` meeting every residual requirement at `radius`, if any.
pub fn kcenter_feasible(residual: &ResidualInstance<'_>, kappa: usize, radius: f64) -> Result<Option<Vec<usize>>> {
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::InvalidArgument(format!("radius {radius} is negative")));
    }
    feasible_centers(residual, kappa, radius, &NodeCounter::new(DEFAULT_KCENTER_NODE_BUDGET))
}

// Candidate radii, or `None` when nothing is required.
fn prepare(residual: &ResidualInstance<'_>, kappa: usize) -> Result<Option<Vec<f64>>> {
    if residual.is_settled() {
        return Ok(None);
    }
    if kappa == 0 {
        return Err(Error::Infeasible("coverage required but no centers allowed".into()));
    }
    Ok(Some(residual.candidate_radii()))
}

fn settled(residual: &ResidualInstance<'_>, beta: Option<f64>) -> KCenterSolution {
    KCenterSolution { centers: Vec::new(), radius: 0.0, outliers: residual.points().collect(), beta }
}

fn finish(residual: &ResidualInstance<'_>, centers: Vec<usize>, radius: f64, beta: Option<f64>) -> KCenterSolution {
    let inst = residual.instance();
    let outliers = residual
        .points()
        .filter(|&p| centers.iter().all(|&c| inst.d(p, c) > radius))
        .collect();
    KCenterSolution { centers, radius, outliers, beta }
}

struct Coverage {
    /// Active candidate centers, ascending.
    candidates: Vec<usize>,
    /// Active points within the radius of each candidate.
    balls: Vec<PointSet>,
}

fn coverage(residual: &ResidualInstance<'_>, radius: f64) -> Coverage {
    let inst = residual.instance();
    let candidates: Vec<usize> = residual.points().collect();
    let balls = candidates
        .iter()
        .map(|&c| {
            let mut b = inst.ball_set(c, radius);
            b.intersect_with(residual.active());
            b
        })
        .collect();
    Coverage { candidates, balls }
}

fn feasible_centers(
    residual: &ResidualInstance<'_>,
    kappa: usize,
    radius: f64,
    counter: &NodeCounter,
) -> Result<Option<Vec<usize>>> {
    let deficit = residual.requirements().0.clone();
    if deficit.iter().all(|&d| d == 0) {
        return Ok(Some(Vec::new()));
    }
    if kappa == 0 {
        return Ok(None);
    }
    let inst = residual.instance();
    let cov = coverage(residual, radius);
    let omega = deficit.len();

    // suffix_gain[i][j]: largest class-j count of any ball among candidates i..
    let mut suffix_gain = vec![vec![0usize; omega]; cov.candidates.len() + 1];
    for i in (0..cov.candidates.len()).rev() {
        let mut gain = suffix_gain[i + 1].clone();
        let mut own = vec![0usize; omega];
        for p in cov.balls[i].ones() {
            own[inst.class_of(p)] += 1;
        }
        for j in 0..omega {
            gain[j] = gain[j].max(own[j]);
        }
        suffix_gain[i] = gain;
    }

    let mut search = FeasibilitySearch {
        inst,
        cov: &cov,
        suffix_gain: &suffix_gain,
        kappa,
        counter,
        chosen: Vec::with_capacity(kappa),
    };
    let covered = PointSet::with_capacity(inst.n());
    if search.descend(0, &covered, &deficit)? {
        Ok(Some(search.chosen.iter().map(|&i| cov.candidates[i]).collect()))
    } else {
        Ok(None)
    }
}

struct FeasibilitySearch<'s> {
    inst: &'s crate::instance::Instance,
    cov: &'s Coverage,
    suffix_gain: &'s [Vec<usize>],
    kappa: usize,
    counter: &'s NodeCounter,
    chosen: Vec<usize>,
}

impl FeasibilitySearch<'_> {
    // Preorder over increasing candidate indices, so the first success is
    // the lexicographically smallest center set.
    fn descend(&mut self, start: usize, covered: &PointSet, deficit: &[usize]) -> Result<bool> {
        for i in start..self.cov.candidates.len() {
            self.counter.tick()?;
            let mut next_cov = covered.clone();
            next_cov.union_with(&self.cov.balls[i]);
            let mut next_def = deficit.to_vec();
            for p in self.cov.balls[i].difference(covered) {
                let c = self.inst.class_of(p);
                next_def[c] = next_def[c].saturating_sub(1);
            }
            self.chosen.push(i);
            if next_def.iter().all(|&d| d == 0) {
                return Ok(true);
            }
            let left = self.kappa - self.chosen.len();
            let reachable = left > 0
                && next_def.iter().zip(&self.suffix_gain[i + 1]).all(|(&d, &g)| d <= left * g);
            if reachable && self.descend(i + 1, &next_cov, &next_def)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

fn greedy_centers(residual: &ResidualInstance<'_>, kappa: usize, radius: f64) -> Option<Vec<usize>> {
    let inst = residual.instance();
    let cov = coverage(residual, radius);
    let mut deficit = residual.requirements().0.clone();
    let mut covered = PointSet::with_capacity(inst.n());
    let mut centers = Vec::new();
    let omega = deficit.len();
    while centers.len() < kappa && deficit.iter().any(|&d| d > 0) {
        let mut best: Option<(usize, usize)> = None;
        for (i, ball) in cov.balls.iter().enumerate() {
            let mut fresh = vec![0usize; omega];
            for p in ball.difference(&covered) {
                fresh[inst.class_of(p)] += 1;
            }
            let gain: usize = fresh.iter().zip(&deficit).map(|(f, d)| (*f).min(*d)).sum();
            if gain > 0 && best.is_none_or(|(_, g)| gain > g) {
                best = Some((i, gain));
            }
        }
        let (i, _) = best?;
        for p in cov.balls[i].difference(&covered) {
            let c = inst.class_of(p);
            deficit[c] = deficit[c].saturating_sub(1);
        }
        covered.union_with(&cov.balls[i]);
        centers.push(cov.candidates[i]);
    }
    if deficit.iter().all(|&d| d == 0) {
        centers.sort_unstable();
        Some(centers)
    } else {
        None
    }
}
