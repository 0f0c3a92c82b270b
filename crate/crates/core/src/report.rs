//! Running a named solver on an instance and describing the run as a
//! JSON-lines record.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cover2::Cover2;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::io::SolutionFile;
use crate::kcenter::{ExactKCenter, GreedyKCenter, KCenterSolver};
use crate::oracle::{solve_exact_sor, OracleResult};
use crate::residual::ResidualInstance;
use crate::search::{SearchConfig, DEFAULT_NODE_BUDGET, DEFAULT_TOLERANCE};
use crate::solution::{verify_solution, Ball, Solution};
use crate::sor7::Sor7;

/// Every solver the crate can run end to end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Cover2,
    Sor7Exact,
    Sor7Greedy,
    Oracle,
    /// Exact colorful k-center, reported as `k` balls of the common radius.
    KcenterExact,
    KcenterGreedy,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Cover2,
        Algorithm::Sor7Exact,
        Algorithm::Sor7Greedy,
        Algorithm::Oracle,
        Algorithm::KcenterExact,
        Algorithm::KcenterGreedy,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Cover2 => "cover2",
            Algorithm::Sor7Exact => "sor7-exact",
            Algorithm::Sor7Greedy => "sor7-greedy",
            Algorithm::Oracle => "oracle",
            Algorithm::KcenterExact => "kcenter-exact",
            Algorithm::KcenterGreedy => "kcenter-greedy",
        }
    }

    /// The k-center solver used inside, if any.
    pub fn subroutine(self) -> Option<&'static str> {
        match self {
            Algorithm::Cover2 | Algorithm::Sor7Exact | Algorithm::KcenterExact => Some("kcenter-exact"),
            Algorithm::Sor7Greedy | Algorithm::KcenterGreedy => Some("kcenter-greedy"),
            Algorithm::Oracle => None,
        }
    }

    /// Proven bound on `cost / OPT` at accuracy `eps`.
    pub fn guarantee(self, eps: f64) -> Guarantee {
        match self {
            Algorithm::Cover2 => Guarantee::Ratio(2.0 + eps),
            Algorithm::Sor7Exact => Guarantee::Ratio(3.0 + eps),
            Algorithm::Oracle => Guarantee::Ratio(1.0),
            Algorithm::Sor7Greedy => Guarantee::Void,
            Algorithm::KcenterExact | Algorithm::KcenterGreedy => Guarantee::None,
        }
    }

    /// Whether `epsilon` influences the run.
    pub fn uses_epsilon(self) -> bool {
        matches!(self, Algorithm::Cover2 | Algorithm::Sor7Exact | Algorithm::Sor7Greedy)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm \"{s}\"")))
    }
}

/// What the approximation ratio of a run is certified to be.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Guarantee {
    Ratio(f64),
    /// The algorithm has a parametric bound but its subroutine has none.
    Void,
    /// Not an approximation of the sum of radii at all.
    None,
}

impl Guarantee {
    pub fn factor(self) -> Option<f64> {
        match self {
            Guarantee::Ratio(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub node_budget: u64,
    /// Solve exactly as well and report the ratio.
    pub against_oracle: bool,
    /// Recorded in the report; every solver is deterministic.
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, epsilon: f64) -> Self {
        Self { algorithm, epsilon, node_budget: DEFAULT_NODE_BUDGET, against_oracle: false, seed: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    /// Absent for algorithms that ignore it.
    pub epsilon: Option<f64>,
    pub wall_ms: f64,
    pub nodes: u64,
    pub cost: f64,
    pub feasible: bool,
    pub violations: Vec<String>,
    pub oracle_opt: Option<f64>,
    pub ratio: Option<f64>,
    /// `cost ≤ factor · OPT` when both the oracle ran and a factor exists.
    pub within_guarantee: Option<bool>,
    pub subroutine: Option<String>,
    pub guarantee: Guarantee,
    pub seed: Option<u64>,
    pub instance_digest: String,
    pub balls: Vec<Ball>,
}

impl RunReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        Ok(serde_json::from_str(line)?)
    }

    /// The report with timing and node counts zeroed: the part that must
    /// not change between repeated or differently scheduled runs.
    pub fn stable(&self) -> Self {
        Self { wall_ms: 0.0, nodes: 0, ..self.clone() }
    }

    pub fn solution(&self, inst: &Instance) -> Solution {
        SolutionFile { balls: self.balls.clone() }.into_solution(inst)
    }
}

/// Runs the configured solver, verifies its output and builds the report.
pub fn run(inst: &Instance, cfg: &RunConfig) -> Result<(Solution, RunReport)> {
    let start = Instant::now();
    let (solution, nodes) = solve_with(inst, cfg)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;

    let verdict = verify_solution(inst, &solution);
    let guarantee = cfg.algorithm.guarantee(cfg.epsilon);
    let oracle = if cfg.against_oracle { Some(solve_exact_sor(inst)?) } else { None };
    let (oracle_opt, ratio, within) = match &oracle {
        Some(opt) => {
            let within = guarantee.factor().map(|f| verdict.feasible && within_factor(verdict.cost, opt.opt_cost, f));
            (Some(opt.opt_cost), Some(ratio(verdict.cost, opt.opt_cost)), within)
        }
        None => (None, None, None),
    };
    let report = RunReport {
        algorithm: cfg.algorithm,
        epsilon: cfg.algorithm.uses_epsilon().then_some(cfg.epsilon),
        wall_ms,
        nodes,
        cost: verdict.cost,
        feasible: verdict.feasible,
        violations: verdict.violations,
        oracle_opt,
        ratio,
        within_guarantee: within,
        subroutine: cfg.algorithm.subroutine().map(String::from),
        guarantee,
        seed: cfg.seed,
        instance_digest: inst.digest(),
        balls: solution.balls.clone(),
    };
    Ok((solution, report))
}

/// `cost / opt`, with `0 / 0 = 1`.
pub fn ratio(cost: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        cost / opt
    } else if cost == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// `cost ≤ factor · opt` up to the default tolerance.
pub fn within_factor(cost: f64, opt: f64, factor: f64) -> bool {
    cost <= factor * opt + DEFAULT_TOLERANCE
}

fn solve_with(inst: &Instance, cfg: &RunConfig) -> Result<(Solution, u64)> {
    let search = SearchConfig::new(cfg.epsilon).with_node_budget(cfg.node_budget);
    let exact = ExactKCenter { node_budget: cfg.node_budget };
    match cfg.algorithm {
        Algorithm::Cover2 => {
            let out = Cover2::new(search).solve(inst, None)?;
            Ok((out.solution, out.nodes))
        }
        Algorithm::Sor7Exact => {
            let out = Sor7::new(search, &exact).solve(inst, None)?;
            Ok((out.solution, out.nodes))
        }
        Algorithm::Sor7Greedy => {
            let out = Sor7::new(search, &GreedyKCenter).solve(inst, None)?;
            Ok((out.solution, out.nodes))
        }
        Algorithm::Oracle => {
            let OracleResult { solution, .. } = solve_exact_sor(inst)?;
            Ok((solution, 0))
        }
        Algorithm::KcenterExact => Ok((kcenter_as_balls(inst, &exact)?, 0)),
        Algorithm::KcenterGreedy => Ok((kcenter_as_balls(inst, &GreedyKCenter)?, 0)),
    }
}

fn kcenter_as_balls(inst: &Instance, solver: &dyn KCenterSolver) -> Result<Solution> {
    let kc = solver.solve(&ResidualInstance::full(inst), inst.k())?;
    Ok(Solution::canonical(inst, kc.centers.iter().map(|&c| Ball::cluster(c, kc.radius)).collect()))
}
