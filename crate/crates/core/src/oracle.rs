//! Exact colorful sum of radii for small instances.
//!
//! [`solve_exact_sor`] enumerates center sets of size at most `k` and, per
//! set, radius assignments drawn from the distances of each center, with
//! branch-and-bound on the partial sum. [`solve_by_assignment`] is a slower,
//! independent cross-check that enumerates assignments of points to
//! clusters or to the outlier set directly.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::search::DEFAULT_TOLERANCE;
use crate::solution::{verify_solution, Ball, Solution};

#[derive(Debug, Clone, Copy)]
pub struct OracleCaps {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self { max_n: 14, max_k: 4 }
    }
}

impl OracleCaps {
    pub fn check(&self, inst: &Instance) -> Result<()> {
        if inst.n() > self.max_n || inst.k() > self.max_k {
            return Err(Error::OracleCapExceeded(format!(
                "n = {}, k = {} (caps n ≤ {}, k ≤ {})",
                inst.n(),
                inst.k(),
                self.max_n,
                self.max_k
            )));
        }
        Ok(())
    }
}

/// Largest instance the assignment cross-check accepts.
pub const ASSIGNMENT_MAX_N: usize = 8;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub opt_cost: f64,
    /// Canonical optimal solution (cluster balls by non-increasing radius).
    pub solution: Solution,
    /// Optimal radii `r*_1 ≥ … ≥ r*_k`, padded with zeros to length `k`.
    pub sorted_radii: Vec<f64>,
    /// `clusters[j]`: points assigned to the `j`-th ball of `solution`
    /// (nearest containing center, earlier ball on ties).
    pub clusters: Vec<Vec<usize>>,
}

impl OracleResult {
    /// Ball of the `j`-th largest optimal cluster, if it exists.
    pub fn ball(&self, j: usize) -> Option<Ball> {
        self.solution.balls.get(j).copied()
    }
}

/// Exact optimum within the default caps.
pub fn solve_exact_sor(inst: &Instance) -> Result<OracleResult> {
    solve_exact_sor_with(inst, OracleCaps::default())
}

pub fn solve_exact_sor_with(inst: &Instance, caps: OracleCaps) -> Result<OracleResult> {
    caps.check(inst)?;
    let n = inst.n();
    if n > 64 {
        return Err(Error::OracleCapExceeded(format!("n = {n} exceeds the 64-point bitmask limit")));
    }
    let rho = inst.requirements();
    let class_masks: Vec<u64> = (0..inst.omega())
        .map(|c| (0..n).filter(|&p| inst.class_of(p) == c).fold(0u64, |m, p| m | (1 << p)))
        .collect();

    // Per center: distinct radii ascending and the matching ball masks.
    let options: Vec<Vec<(f64, u64)>> = (0..n)
        .map(|c| {
            let mut radii: Vec<f64> = (0..n).map(|p| inst.d(c, p)).collect();
            crate::instance::sort_dedup(&mut radii);
            radii
                .into_iter()
                .map(|r| (r, (0..n).filter(|&p| inst.d(c, p) <= r).fold(0u64, |m, p| m | (1 << p))))
                .collect()
        })
        .collect();

    let mut search = CenterSearch {
        inst,
        rho: &rho,
        class_masks: &class_masks,
        options: &options,
        best: None,
        centers: Vec::new(),
        radii: Vec::new(),
    };
    search.feasible_leaf(0);
    for size in 1..=inst.k() {
        search.subsets(0, size);
    }
    let best = search.best.ok_or_else(|| Error::Infeasible("no configuration meets the requirements".into()))?;
    Ok(finish(inst, best.solution))
}

struct Candidate {
    solution: Solution,
    radii_desc: Vec<f64>,
    centers: Vec<usize>,
}

impl Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.solution
            .cost
            .total_cmp(&other.solution.cost)
            .then_with(|| cmp_f64_slices(&self.radii_desc, &other.radii_desc))
            .then_with(|| self.centers.cmp(&other.centers))
    }
}

fn cmp_f64_slices(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

struct CenterSearch<'a> {
    inst: &'a Instance,
    rho: &'a [usize],
    class_masks: &'a [u64],
    options: &'a [Vec<(f64, u64)>],
    best: Option<Candidate>,
    centers: Vec<usize>,
    radii: Vec<usize>,
}

impl CenterSearch<'_> {
    fn subsets(&mut self, start: usize, size: usize) {
        if self.centers.len() == size {
            self.radii.clear();
            self.assign_radii(0, 0.0, 0);
            return;
        }
        let need = size - self.centers.len();
        for c in start..=(self.inst.n() - need) {
            self.centers.push(c);
            self.subsets(c + 1, size);
            self.centers.pop();
        }
    }

    fn bound(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, |b| b.solution.cost) + DEFAULT_TOLERANCE
    }

    fn assign_radii(&mut self, pos: usize, partial: f64, mask: u64) {
        if pos == self.centers.len() {
            self.feasible_leaf(mask);
            return;
        }
        let c = self.centers[pos];
        let last = pos + 1 == self.centers.len();
        for idx in 0..self.options[c].len() {
            let (r, ball) = self.options[c][idx];
            if partial + r > self.bound() {
                break;
            }
            self.radii.push(idx);
            let covered = mask | ball;
            if last {
                let ok = self.meets(covered);
                if ok {
                    self.feasible_leaf(covered);
                }
                self.radii.pop();
                if ok {
                    // Larger radii for the last center only cost more.
                    break;
                }
                continue;
            }
            self.assign_radii(pos + 1, partial + r, covered);
            self.radii.pop();
        }
    }

    fn meets(&self, covered: u64) -> bool {
        self.class_masks
            .iter()
            .zip(self.rho)
            .all(|(&cm, &need)| (covered & cm).count_ones() as usize >= need)
    }

    fn feasible_leaf(&mut self, covered: u64) {
        if !self.meets(covered) {
            return;
        }
        let balls: Vec<Ball> = self
            .centers
            .iter()
            .zip(&self.radii)
            .map(|(&c, &i)| Ball::cluster(c, self.options[c][i].0))
            .collect();
        let solution = Solution::canonical(self.inst, balls);
        let cand = Candidate { radii_desc: solution.sorted_radii(), centers: self.centers.clone(), solution };
        if self.best.as_ref().is_none_or(|b| cand.cmp(b).is_lt()) {
            self.best = Some(cand);
        }
    }
}

fn finish(inst: &Instance, solution: Solution) -> OracleResult {
    debug_assert!(verify_solution(inst, &solution).feasible);
    let mut sorted_radii = solution.sorted_radii();
    sorted_radii.resize(inst.k().max(sorted_radii.len()), 0.0);
    let mut clusters = vec![Vec::new(); solution.balls.len()];
    for p in 0..inst.n() {
        let home = solution
            .balls
            .iter()
            .enumerate()
            .filter(|(_, b)| inst.d(p, b.center) <= b.radius)
            .min_by(|(i, a), (j, b)| inst.d(p, a.center).total_cmp(&inst.d(p, b.center)).then(i.cmp(j)));
        if let Some((j, _)) = home {
            clusters[j].push(p);
        }
    }
    OracleResult { opt_cost: solution.cost, solution, sorted_radii, clusters }
}

/// Optimal cost by enumerating every map from points to `{outlier, 1..k}`
/// (cluster labels in order of first use); each nonempty cluster pays the
/// smallest max-distance over all possible centers in `P`. Limited to
/// `n ≤ 8`.
pub fn solve_by_assignment(inst: &Instance) -> Result<f64> {
    if inst.n() > ASSIGNMENT_MAX_N || inst.k() > OracleCaps::default().max_k {
        return Err(Error::OracleCapExceeded(format!(
            "assignment oracle needs n ≤ {ASSIGNMENT_MAX_N}, got n = {}",
            inst.n()
        )));
    }
    let mut labels = vec![0usize; inst.n()];
    let mut outliers = vec![0usize; inst.omega()];
    let mut best = f64::INFINITY;
    assign(inst, 0, 0, &mut labels, &mut outliers, &mut best);
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Infeasible("no assignment meets the outlier budgets".into()))
    }
}

fn assign(inst: &Instance, p: usize, used: usize, labels: &mut [usize], outliers: &mut [usize], best: &mut f64) {
    if p == inst.n() {
        let mut radii: Vec<f64> = (1..=used)
            .map(|label| {
                (0..inst.n())
                    .map(|c| {
                        (0..inst.n())
                            .filter(|&q| labels[q] == label)
                            .map(|q| inst.d(q, c))
                            .fold(0.0, f64::max)
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        radii.sort_by(|a, b| b.total_cmp(a));
        let cost = radii.iter().fold(0.0, |acc, r| acc + r);
        if cost < *best {
            *best = cost;
        }
        return;
    }
    let class = inst.class_of(p);
    if outliers[class] < inst.m()[class] {
        outliers[class] += 1;
        labels[p] = 0;
        assign(inst, p + 1, used, labels, outliers, best);
        outliers[class] -= 1;
    }
    for label in 1..=(used + 1).min(inst.k()) {
        labels[p] = label;
        assign(inst, p + 1, used.max(label), labels, outliers, best);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub feasible: bool,
    pub cost: f64,
    pub opt_cost: f64,
    /// `cost / opt_cost`; 1 when both are zero, infinite when only OPT is.
    pub ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Checks `sol` is feasible and `cost ≤ bound · OPT + 1e-9`, solving the
/// instance exactly first.
pub fn verify_ratio(inst: &Instance, sol: &Solution, bound: f64) -> Result<RatioReport> {
    let opt = solve_exact_sor(inst)?;
    Ok(ratio_against(&opt, inst, sol, bound))
}

/// Same as [`verify_ratio`] against an already computed optimum.
pub fn ratio_against(opt: &OracleResult, inst: &Instance, sol: &Solution, bound: f64) -> RatioReport {
    let rep = verify_solution(inst, sol);
    let ratio = if opt.opt_cost > 0.0 {
        rep.cost / opt.opt_cost
    } else if rep.cost == 0.0 {
        1.0
    } else {
        f64::INFINITY
    };
    let pass = rep.feasible && rep.cost <= bound * opt.opt_cost + DEFAULT_TOLERANCE;
    RatioReport { feasible: rep.feasible, cost: rep.cost, opt_cost: opt.opt_cost, ratio, bound, pass }
}
