//! The (2 + eps) covering search, with its statistics.

use colorful_radii::cover2::Cover2;
use colorful_radii::fixtures::line4;
use colorful_radii::SearchConfig;

fn main() -> colorful_radii::Result<()> {
    // Points 0, 1, 10, 11 on a line; two clusters, no outliers. OPT = 2.
    let inst = line4(2, 0);
    for eps in [0.25, 0.5, 1.0] {
        let out = Cover2::new(SearchConfig::new(eps)).solve(&inst, None)?;
        println!(
            "eps {eps}: cost {:.4} (bound {:.2}) over {} profiles, {} nodes; {}",
            out.solution.cost,
            (2.0 + eps) * 2.0,
            out.profiles,
            out.nodes,
            out.solution
        );
    }
    Ok(())
}
