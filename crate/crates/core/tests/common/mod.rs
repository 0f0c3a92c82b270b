#![allow(dead_code)]

use colorful_radii::generate::{generate, GeneratorMode, GeneratorSpec};
use colorful_radii::profiles::ProfileGrid;
use colorful_radii::Instance;

pub const TOL: f64 = 1e-9;

/// Generator spec `i` of the ratio corpus: n in 6..=12, k in 1..=3, omega in
/// 1..=3, total outlier budget in 0..=3, uniform and planted alternating.
pub fn corpus_spec(i: u64) -> GeneratorSpec {
    let n = 6 + (i % 7) as usize;
    let omega = 1 + ((i / 7) % 3) as usize;
    let k = 1 + ((i / 21) % 3) as usize;
    let total_m = ((i / 63) % 4) as usize;
    spec_with(i, n, omega, k, total_m)
}

/// Generator spec `i` of the cross-check corpus: n in 4..=8.
pub fn small_spec(i: u64) -> GeneratorSpec {
    let n = 4 + (i % 5) as usize;
    let omega = 1 + ((i / 5) % 3) as usize;
    let k = 1 + ((i / 15) % 3) as usize;
    let total_m = ((i / 45) % 4) as usize;
    spec_with(1_000 + i, n, omega, k, total_m)
}

fn spec_with(seed: u64, n: usize, omega: usize, k: usize, total_m: usize) -> GeneratorSpec {
    let mut m = vec![0; omega];
    for j in 0..total_m {
        m[j % omega] += 1;
    }
    let mode = if seed.is_multiple_of(2) {
        GeneratorMode::Uniform
    } else {
        GeneratorMode::Planted { clusters: k, spread: 0.05 }
    };
    GeneratorSpec { n, omega, k, m, dim: 2, mode, seed }
}

pub fn corpus(count: u64) -> Vec<Instance> {
    (0..count).map(|i| generate(&corpus_spec(i)).expect("corpus spec is valid")).collect()
}

pub fn small_corpus(count: u64) -> Vec<Instance> {
    (0..count).map(|i| generate(&small_spec(i)).expect("corpus spec is valid")).collect()
}

/// Smallest grid profile above `target` position by position.
pub fn rounded_up_profile(grid: &ProfileGrid, target: &[f64]) -> Option<Vec<f64>> {
    let (h, &head) = grid.heads().iter().enumerate().find(|(_, &v)| v >= target[0])?;
    let mut out = vec![head];
    for &t in &target[1..] {
        out.push(*grid.tails(h).iter().find(|&&v| v >= t)?);
    }
    Some(out)
}

use colorful_radii::kcenter::{solve_exact, ExactKCenter};
use colorful_radii::oracle::OracleResult;
use colorful_radii::profiles::enumerate_profiles;
use colorful_radii::search::internal_epsilon;
use colorful_radii::sor7::{node_kcenter, SorSearchNode};
use colorful_radii::{residual_instance, ResidualInstance};

/// The exact k-center radius never exceeds the largest optimal radius.
pub fn check_kcenter_below_largest_radius(inst: &Instance, opt: &OracleResult) -> Result<(), String> {
    let r = solve_exact(&ResidualInstance::full(inst), inst.k()).map_err(|e| e.to_string())?.radius;
    if r <= opt.sorted_radii[0] + TOL {
        Ok(())
    } else {
        Err(format!("k-center radius {r} > largest optimal radius {}", opt.sorted_radii[0]))
    }
}

/// After removing the `i` largest optimal balls, `k - i` centers of radius
/// `2 r*_{i+1}` still meet the residual requirements.
pub fn check_residual_kcenter(inst: &Instance, opt: &OracleResult) -> Result<(), String> {
    for i in 0..inst.k() {
        let top: Vec<_> = opt.solution.balls.iter().take(i).copied().collect();
        let res = residual_instance(inst, &top);
        let r = solve_exact(&res, inst.k() - i).map_err(|e| e.to_string())?.radius;
        let bound = 2.0 * opt.sorted_radii[i];
        if r > bound + TOL {
            return Err(format!("i = {i}: residual radius {r} > 2 r*_{} = {bound}", i + 1));
        }
    }
    Ok(())
}

/// The profile stream at `beta = 1, eps` contains a profile dominating the
/// optimal radii with sum at most `(1 + eps) Σ r* + eps r*_1`.
pub fn check_profile_domination(inst: &Instance, opt: &OracleResult, eps: f64) -> Result<(), String> {
    let value = solve_exact(&ResidualInstance::full(inst), inst.k()).map_err(|e| e.to_string())?.radius;
    let target = &opt.sorted_radii;
    let limit = (1.0 + eps) * target.iter().sum::<f64>() + eps * target[0] + TOL;
    let found = enumerate_profiles(inst.k(), value, 1.0, eps)
        .map_err(|e| e.to_string())?
        .any(|p| p.dominates(target) && p.sum() <= limit);
    if found {
        Ok(())
    } else {
        Err(format!("no profile dominates {target:?} within sum {limit}"))
    }
}

/// Walks the k-center-driven search along the branch the optimum suggests:
/// guesses are the grid values just above the optimal radii, and at each
/// iteration the chosen branch is one whose ball swallows the next optimal
/// cluster. Checks the subroutine radius is at most `2 r̃_i`, that such a
/// branch always exists, and that the branch ends feasible within
/// `(3 + eps) OPT`.
pub fn check_guided_branch(inst: &Instance, opt: &OracleResult, eps: f64) -> Result<(), String> {
    let solver = ExactKCenter::default();
    let root = SorSearchNode::root(inst);
    let root_kc = node_kcenter(inst, &root, &solver).map_err(|e| e.to_string())?;
    let grid = ProfileGrid::new(inst.k(), root_kc.radius, 1.0, internal_epsilon(eps, 3.0)).map_err(|e| e.to_string())?;
    let guesses = rounded_up_profile(&grid, &opt.sorted_radii).ok_or("no grid profile dominates the optimum")?;

    let mut node = root;
    for (i, &r) in guesses.iter().enumerate() {
        if node.is_settled() {
            break;
        }
        let kc = node_kcenter(inst, &node, &solver).map_err(|e| e.to_string())?;
        if kc.radius > 2.0 * r + TOL {
            return Err(format!("iteration {}: subroutine radius {} > 2 r̃ = {}", i + 1, kc.radius, 2.0 * r));
        }
        let cluster = opt.clusters.get(i).cloned().unwrap_or_default();
        let mut next = None;
        for choice in node.choices(inst, &kc) {
            let child = colorful_radii::sor7::expand_guess(inst, &node, choice, r, 1.0, &kc).map_err(|e| e.to_string())?;
            if cluster.iter().all(|&p| child.covered().contains(p)) {
                next = Some(child);
                break;
            }
        }
        node = next.ok_or_else(|| format!("iteration {}: no branch covers optimal cluster {cluster:?}", i + 1))?;
    }
    if !node.is_settled() {
        return Err("guided branch ends with unmet requirements".into());
    }
    let cost = node.cost();
    if cost > 3.0 * node.guesses.iter().sum::<f64>() + TOL {
        return Err(format!("branch cost {cost} exceeds 3 Σ r̃"));
    }
    if cost > (3.0 + eps) * opt.opt_cost + TOL {
        return Err(format!("branch cost {cost} > (3 + {eps}) OPT = {}", (3.0 + eps) * opt.opt_cost));
    }
    Ok(())
}
