//! Balls, solutions, the feasibility verifier and the residual counting step.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, PointSet};

/// Role of a ball in a solution. Only `Cluster` balls cover points; an
/// `Outlier` ball marks its center as deliberately dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    Cluster,
    Outlier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: usize,
    pub radius: f64,
    pub slot: Slot,
}

impl Ball {
    pub fn new(center: usize, radius: f64, slot: Slot) -> Result<Self> {
        if radius.is_nan() || radius < 0.0 {
            return Err(Error::InvalidArgument(format!("ball radius {radius} is negative")));
        }
        if slot == Slot::Outlier && radius != 0.0 {
            return Err(Error::InvalidArgument("outlier balls must have radius 0".into()));
        }
        Ok(Self { center, radius, slot })
    }

    pub fn cluster(center: usize, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Self { center, radius, slot: Slot::Cluster }
    }

    pub fn outlier(center: usize) -> Self {
        Self { center, radius: 0.0, slot: Slot::Outlier }
    }

    pub fn is_cluster(&self) -> bool {
        self.slot == Slot::Cluster
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.slot
            .cmp(&other.slot)
            .then_with(|| other.radius.total_cmp(&self.radius))
            .then_with(|| self.center.cmp(&other.center))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slot {
            Slot::Cluster => write!(f, "B(p{}, {})", self.center, self.radius),
            Slot::Outlier => write!(f, "O(p{})", self.center),
        }
    }
}

/// Per-class counts of points that still have to be covered.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidualRequirements(pub Vec<usize>);

impl ResidualRequirements {
    pub fn is_met(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A set of balls with its derived coverage statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub balls: Vec<Ball>,
    /// Left-to-right sum of the cluster radii, in `balls` order.
    pub cost: f64,
    /// Per-class number of points inside some cluster ball.
    pub covered: Vec<usize>,
    /// Per-class number of points inside no cluster ball.
    pub outliers: Vec<usize>,
}

impl Solution {
    /// Computes the statistics for `balls` as given. Balls whose center is
    /// not a valid id cover nothing; [`verify_solution`] reports them.
    pub fn from_balls(inst: &Instance, balls: Vec<Ball>) -> Self {
        let cost = cluster_cost(&balls);
        let covered_set = covered_by_clusters(inst, &balls);
        let mut covered = vec![0; inst.omega()];
        for p in covered_set.ones() {
            covered[inst.class_of(p)] += 1;
        }
        let outliers = inst.class_sizes().iter().zip(&covered).map(|(n, c)| n - c).collect();
        Self { balls, cost, covered, outliers }
    }

    /// Same balls, sorted cluster-first by radius (descending) then center.
    /// Every solver returns solutions in this form.
    pub fn canonical(inst: &Instance, mut balls: Vec<Ball>) -> Self {
        balls.sort_by(Ball::canonical_cmp);
        Self::from_balls(inst, balls)
    }

    pub fn empty(inst: &Instance) -> Self {
        Self::from_balls(inst, Vec::new())
    }

    pub fn cluster_count(&self) -> usize {
        self.balls.iter().filter(|b| b.is_cluster()).count()
    }

    /// Cluster radii in non-increasing order.
    pub fn sorted_radii(&self) -> Vec<f64> {
        let mut radii: Vec<f64> = self.balls.iter().filter(|b| b.is_cluster()).map(|b| b.radius).collect();
        radii.sort_by(|a, b| b.total_cmp(a));
        radii
    }

    /// Total order used to pick among equally cheap solutions: cost first,
    /// then the ball lists compared element-wise.
    pub fn tie_break_cmp(&self, other: &Self) -> Ordering {
        self.cost.total_cmp(&other.cost).then_with(|| {
            for (a, b) in self.balls.iter().zip(&other.balls) {
                let ord = a.canonical_cmp(b);
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            self.balls.len().cmp(&other.balls.len())
        })
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cost {} [", self.cost)?;
        for (i, b) in self.balls.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn cluster_cost(balls: &[Ball]) -> f64 {
    balls.iter().filter(|b| b.is_cluster()).fold(0.0, |acc, b| acc + b.radius)
}

fn covered_by_clusters(inst: &Instance, balls: &[Ball]) -> PointSet {
    let mut set = PointSet::with_capacity(inst.n());
    for b in balls {
        if b.is_cluster() && b.center < inst.n() && b.radius >= 0.0 {
            set.union_with(&inst.ball_set(b.center, b.radius));
        }
    }
    set
}

/// Outcome of [`verify_solution`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Recomputed left-to-right sum of cluster radii.
    pub cost: f64,
    pub cluster_balls: usize,
    pub covered: Vec<usize>,
    pub outliers: Vec<usize>,
    pub violations: Vec<String>,
}

/// Recomputes coverage and cost from the balls alone and decides
/// feasibility: at most `k` cluster balls and, for every class `i`, at most
/// `m_i` points outside all cluster balls. Malformed balls make the verdict
/// infeasible; nothing here panics.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> FeasibilityReport {
    let mut violations = Vec::new();
    for (i, b) in sol.balls.iter().enumerate() {
        if b.center >= inst.n() {
            violations.push(format!("ball {i}: center {} out of range", b.center));
        }
        if b.radius.is_nan() || b.radius < 0.0 || b.radius.is_infinite() {
            violations.push(format!("ball {i}: invalid radius {}", b.radius));
        }
        if b.slot == Slot::Outlier && b.radius != 0.0 {
            violations.push(format!("ball {i}: outlier ball with nonzero radius"));
        }
    }
    let recomputed = Solution::from_balls(inst, sol.balls.clone());
    let cluster_balls = recomputed.cluster_count();
    if cluster_balls > inst.k() {
        violations.push(format!("{cluster_balls} cluster balls exceed k = {}", inst.k()));
    }
    for (i, (&out, &budget)) in recomputed.outliers.iter().zip(inst.m()).enumerate() {
        if out > budget {
            violations.push(format!("class {i}: {out} uncovered points exceed budget {budget}"));
        }
    }
    FeasibilityReport {
        feasible: violations.is_empty(),
        cost: recomputed.cost,
        cluster_balls,
        covered: recomputed.covered,
        outliers: recomputed.outliers,
        violations,
    }
}

/// Per-class requirements left after removing every point covered by
/// `balls`: `max(0, rho_i - |P_i ∩ ∪ B(c_h, r_h)|)`. Points lying in several
/// balls count once. Every ball is counted regardless of its slot.
pub fn counting(inst: &Instance, balls: &[Ball], rho: &ResidualRequirements) -> ResidualRequirements {
    let mut union = PointSet::with_capacity(inst.n());
    for b in balls {
        union.union_with(&inst.ball_set(b.center, b.radius));
    }
    counting_set(inst, &union, rho)
}

pub(crate) fn counting_set(inst: &Instance, covered: &PointSet, rho: &ResidualRequirements) -> ResidualRequirements {
    let mut counts = vec![0usize; rho.0.len()];
    for p in covered.ones() {
        counts[inst.class_of(p)] += 1;
    }
    ResidualRequirements(rho.0.iter().zip(&counts).map(|(&r, &c)| r.saturating_sub(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{color4, line4};

    #[test]
    fn counting_examples() {
        let c4 = color4(1, [1, 1]);
        let rho = ResidualRequirements(vec![1, 1]);
        assert_eq!(counting(&c4, &[Ball::cluster(0, 1.0)], &rho).0, vec![0, 0]);
        assert_eq!(counting(&c4, &[], &rho), rho);

        let l4 = line4(2, 0);
        assert_eq!(counting(&l4, &[Ball::cluster(0, 1.0)], &ResidualRequirements(vec![4])).0, vec![2]);
    }

    #[test]
    fn overlapping_balls_count_once() {
        let l4 = line4(2, 0);
        let balls = [Ball::cluster(0, 1.0), Ball::cluster(1, 1.0)];
        assert_eq!(counting(&l4, &balls, &ResidualRequirements(vec![4])).0, vec![2]);
    }

    #[test]
    fn verify_examples() {
        let l4 = line4(2, 0);
        let sol = Solution::from_balls(&l4, vec![Ball::cluster(0, 1.0), Ball::cluster(2, 1.0)]);
        let rep = verify_solution(&l4, &sol);
        assert!(rep.feasible);
        assert_eq!(rep.cost, 2.0);

        let c4 = color4(1, [1, 1]);
        let sol = Solution::from_balls(&c4, vec![Ball::cluster(0, 1.0)]);
        let rep = verify_solution(&c4, &sol);
        assert!(rep.feasible);
        assert_eq!(rep.cost, 1.0);
        assert_eq!(rep.outliers, vec![1, 1]);

        let sol = Solution::from_balls(&l4, vec![Ball::cluster(0, 1.0)]);
        let rep = verify_solution(&l4, &sol);
        assert!(!rep.feasible);
        assert_eq!(rep.outliers, vec![2]);
    }

    #[test]
    fn outlier_balls_cover_nothing() {
        let l4 = line4(2, 1);
        let sol = Solution::from_balls(&l4, vec![Ball::cluster(0, 1.0), Ball::outlier(2)]);
        let rep = verify_solution(&l4, &sol);
        assert_eq!(rep.outliers, vec![2]);
        assert!(!rep.feasible);
        assert_eq!(rep.cost, 1.0);
    }

    #[test]
    fn too_many_clusters_is_infeasible() {
        let l4 = line4(1, 0);
        let sol = Solution::from_balls(&l4, vec![Ball::cluster(0, 1.0), Ball::cluster(2, 1.0)]);
        assert!(!verify_solution(&l4, &sol).feasible);
    }

    #[test]
    fn malformed_balls_are_reported() {
        let l4 = line4(2, 0);
        let sol = Solution {
            balls: vec![Ball { center: 9, radius: -1.0, slot: Slot::Cluster }],
            cost: 0.0,
            covered: vec![],
            outliers: vec![],
        };
        let rep = verify_solution(&l4, &sol);
        assert!(!rep.feasible);
        assert_eq!(rep.violations.len(), 3);
    }

    #[test]
    fn ball_constructor_enforces_slot_invariant() {
        assert!(Ball::new(0, 1.0, Slot::Outlier).is_err());
        assert!(Ball::new(0, -0.5, Slot::Cluster).is_err());
        assert!(Ball::new(0, 0.0, Slot::Outlier).is_ok());
    }

    #[test]
    fn canonical_order() {
        let l4 = line4(3, 1);
        let sol = Solution::canonical(&l4, vec![Ball::outlier(3), Ball::cluster(2, 0.5), Ball::cluster(0, 1.0)]);
        assert_eq!(sol.balls, vec![Ball::cluster(0, 1.0), Ball::cluster(2, 0.5), Ball::outlier(3)]);
        assert_eq!(sol.sorted_radii(), vec![1.0, 0.5]);
    }
}
