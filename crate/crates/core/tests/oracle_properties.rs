mod common;

use colorful_radii::cover2::solve_cover2;
use colorful_radii::oracle::{solve_by_assignment, solve_exact_sor};
use colorful_radii::sor7::solve_sor7_exact;
use colorful_radii::verify_solution;
use common::*;

const COUNT: u64 = 84;

#[test]
fn kcenter_radius_is_below_largest_optimal_radius() {
    for (i, inst) in corpus(COUNT).iter().enumerate() {
        let opt = solve_exact_sor(inst).unwrap();
        check_kcenter_below_largest_radius(inst, &opt).unwrap_or_else(|e| panic!("instance {i}: {e}"));
    }
}

#[test]
fn residual_kcenter_after_top_clusters() {
    for (i, inst) in corpus(COUNT).iter().enumerate() {
        let opt = solve_exact_sor(inst).unwrap();
        check_residual_kcenter(inst, &opt).unwrap_or_else(|e| panic!("instance {i}: {e}"));
    }
}

#[test]
fn stream_contains_dominating_profile() {
    for (i, inst) in corpus(COUNT).iter().enumerate() {
        let opt = solve_exact_sor(inst).unwrap();
        check_profile_domination(inst, &opt, 0.5).unwrap_or_else(|e| panic!("instance {i}: {e}"));
    }
}

#[test]
fn guided_branch_covers_optimal_clusters() {
    for eps in [0.5, 1.0] {
        for (i, inst) in corpus(COUNT).iter().enumerate() {
            let opt = solve_exact_sor(inst).unwrap();
            check_guided_branch(inst, &opt, eps).unwrap_or_else(|e| panic!("instance {i}, eps {eps}: {e}"));
        }
    }
}

#[test]
fn approximation_ratios_hold() {
    for (i, inst) in corpus(COUNT).iter().enumerate() {
        let opt = solve_exact_sor(inst).unwrap().opt_cost;
        for eps in [0.5, 1.0] {
            let c2 = solve_cover2(inst, eps, None).unwrap();
            let s7 = solve_sor7_exact(inst, eps).unwrap();
            assert!(verify_solution(inst, &c2).feasible && verify_solution(inst, &s7).feasible);
            assert!(c2.cost <= (2.0 + eps) * opt + TOL, "instance {i}: cover2 {} vs OPT {opt}", c2.cost);
            assert!(s7.cost <= (3.0 + eps) * opt + TOL, "instance {i}: sor7 {} vs OPT {opt}", s7.cost);
            assert!(opt <= c2.cost + TOL && opt <= s7.cost + TOL);
        }
    }
}

#[test]
fn oracles_agree_on_small_instances() {
    for (i, inst) in small_corpus(60).iter().enumerate() {
        let a = solve_exact_sor(inst).unwrap().opt_cost;
        let b = solve_by_assignment(inst).unwrap();
        assert!((a - b).abs() <= TOL, "instance {i}: {a} vs {b}");
    }
}

#[test]
fn oracle_clusters_fit_their_balls() {
    for inst in corpus(COUNT).iter() {
        let opt = solve_exact_sor(inst).unwrap();
        assert!(verify_solution(inst, &opt.solution).feasible);
        for (j, cluster) in opt.clusters.iter().enumerate() {
            let b = opt.ball(j).unwrap();
            assert!(cluster.iter().all(|&p| inst.d(p, b.center) <= b.radius));
        }
        let sorted = &opt.sorted_radii;
        assert_eq!(sorted.len(), inst.k());
        assert!(sorted.windows(2).all(|w| w[0] >= w[1]));
    }
}
