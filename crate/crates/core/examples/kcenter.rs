//! Colorful k-center with the exact and the greedy solver.

use colorful_radii::generate::{generate, GeneratorMode, GeneratorSpec};
use colorful_radii::kcenter::{ExactKCenter, GreedyKCenter, KCenterSolver};
use colorful_radii::ResidualInstance;

fn main() -> colorful_radii::Result<()> {
    let spec = GeneratorSpec {
        n: 12,
        omega: 2,
        k: 3,
        m: vec![1, 1],
        dim: 2,
        mode: GeneratorMode::Planted { clusters: 3, spread: 0.05 },
        seed: 11,
    };
    let inst = generate(&spec)?;
    let full = ResidualInstance::full(&inst);
    let solvers: [&dyn KCenterSolver; 2] = [&ExactKCenter::default(), &GreedyKCenter];
    for solver in solvers {
        let kc = solver.solve(&full, inst.k())?;
        println!(
            "{:<15} radius {:.4} centers {:?} outliers {:?} beta {:?}",
            solver.name(),
            kc.radius,
            kc.centers,
            kc.outliers,
            kc.beta
        );
    }
    Ok(())
}
