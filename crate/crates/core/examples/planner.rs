//! Planned depths and feasibility for a few graph sizes.

use expander_lcc::graph::RegularGraph;
use expander_lcc::planner::{plan_parameters, PlanInput};

fn main() -> expander_lcc::error::Result<()> {
    println!("{:>6} {:>8} {:>4} {:>4} {:>12} {:>10} {:>9}", "n", "lambda", "l1", "l2", "leaf reads", "threshold", "feasible");
    for n in [256, 1000, 4000] {
        let mut g = RegularGraph::random_regular(n, 16, 3)?;
        let lambda = g.second_eigenvalue(1e-8)?;
        let plan = plan_parameters(&PlanInput::affine_defaults(0.001, 3, 16, lambda, n))?;
        println!(
            "{n:>6} {lambda:>8.4} {:>4} {:>4} {:>12.3e} {:>10.3e} {:>9}",
            plan.params.l1, plan.params.l2, plan.predicted_leaf_reads, plan.threshold, plan.feasible
        );
    }
    Ok(())
}
