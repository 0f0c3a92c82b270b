//! Exact optima on small instances, and checking a solution's ratio.

use colorful_radii::cover2::solve_cover2;
use colorful_radii::fixtures::{color4, line4};
use colorful_radii::oracle::{solve_by_assignment, solve_exact_sor, verify_ratio};

fn main() -> colorful_radii::Result<()> {
    for (name, inst) in [("line4", line4(2, 0)), ("color4", color4(1, [1, 1]))] {
        let opt = solve_exact_sor(&inst)?;
        let cross = solve_by_assignment(&inst)?;
        println!("{name}: OPT {} (assignment enumeration agrees: {})", opt.opt_cost, opt.opt_cost == cross);
        println!("  optimal balls {}, clusters {:?}", opt.solution, opt.clusters);
        let approx = solve_cover2(&inst, 1.0, None)?;
        let r = verify_ratio(&inst, &approx, 3.0)?;
        println!("  cover2 cost {} ratio {:.3} within 3x: {}", r.cost, r.ratio, r.pass);
    }
    Ok(())
}
