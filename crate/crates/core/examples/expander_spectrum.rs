//! Random regular graphs: second eigenvalue against the Ramanujan bound,
//! plus the edge-walk spectrum check on a small instance.

use expander_lcc::graph::spectrum::edge_walk_spectrum_check;
use expander_lcc::graph::{ramanujan_bound, RegularGraph, DEFAULT_EIGEN_TOLERANCE};

fn main() -> expander_lcc::error::Result<()> {
    println!("{:>6} {:>4} {:>10} {:>10}", "n", "d", "lambda", "ramanujan");
    for (n, d) in [(200, 4), (200, 8), (500, 16), (1000, 16)] {
        let mut g = RegularGraph::random_regular(n, d, 7)?;
        let lambda = g.second_eigenvalue(DEFAULT_EIGEN_TOLERANCE)?;
        println!("{n:>6} {d:>4} {lambda:>10.5} {:>10.5}", ramanujan_bound(d));
    }

    let small = RegularGraph::random_regular(12, 4, 1)?;
    let report = edge_walk_spectrum_check(&small, 1e-8)?;
    println!(
        "edge walk on (12, 4): {} eigenvalues, {} zero, max deviation {:.2e}, passed {}",
        report.edge_walk.len(),
        report.zero_count,
        report.max_deviation,
        report.passed
    );
    Ok(())
}
