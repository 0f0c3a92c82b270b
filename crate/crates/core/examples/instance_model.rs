//! Build an instance, look at balls and coverage, and round-trip it through JSON.

use colorful_radii::{counting, residual_instance, verify_solution, Ball, Instance, ResidualRequirements, Solution};

fn main() -> colorful_radii::Result<()> {
    // Two classes on a line: A at 0 and 10, B at 1 and 11. One outlier per class.
    let inst = Instance::euclidean(
        vec![(0, vec![0.0]), (1, vec![1.0]), (0, vec![10.0]), (1, vec![11.0])],
        1,
        vec![1, 1],
    )?;
    println!("n = {}, k = {}, m = {:?}, requirements = {:?}", inst.n(), inst.k(), inst.m(), inst.requirements());
    println!("B(p0, 1) = {:?}", inst.ball_members(0, 1.0)?);

    let balls = [Ball::cluster(0, 1.0)];
    let rho = ResidualRequirements(inst.requirements());
    println!("still required after B(p0, 1): {:?}", counting(&inst, &balls, &rho).0);

    let res = residual_instance(&inst, &balls);
    println!("residual points {:?}, outlier budget {:?}", res.points().collect::<Vec<_>>(), res.outlier_budget());

    let sol = Solution::canonical(&inst, balls.to_vec());
    let report = verify_solution(&inst, &sol);
    println!("feasible = {}, cost = {}", report.feasible, report.cost);

    let text = inst.to_json_string();
    let back = Instance::from_json_str(&text, true)?;
    assert_eq!(back.digest(), inst.digest());
    println!("{text}\ndigest {}", inst.digest());
    Ok(())
}
