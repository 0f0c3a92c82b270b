//! The k-center-driven search with an exact and a greedy subroutine.

use colorful_radii::generate::{generate, GeneratorMode, GeneratorSpec};
use colorful_radii::kcenter::{ExactKCenter, GreedyKCenter, KCenterSolver};
use colorful_radii::oracle::solve_exact_sor;
use colorful_radii::sor7::Sor7;
use colorful_radii::SearchConfig;

fn main() -> colorful_radii::Result<()> {
    let spec = GeneratorSpec {
        n: 12,
        omega: 3,
        k: 3,
        m: vec![1, 0, 1],
        dim: 2,
        mode: GeneratorMode::Uniform,
        seed: 5,
    };
    let inst = generate(&spec)?;
    let opt = solve_exact_sor(&inst)?.opt_cost;
    println!("OPT = {opt:.4}");
    let solvers: [&dyn KCenterSolver; 2] = [&ExactKCenter::default(), &GreedyKCenter];
    for solver in solvers {
        let out = Sor7::new(SearchConfig::new(1.0), solver).solve(&inst, None)?;
        let guarantee = out.guarantee.map_or("void".to_string(), |g| format!("{g}"));
        println!(
            "{:<15} cost {:.4} ratio {:.3} guarantee {guarantee}; {} nodes, {} subroutine calls",
            solver.name(),
            out.solution.cost,
            out.solution.cost / opt,
            out.nodes,
            out.kcenter_calls
        );
    }
    Ok(())
}
