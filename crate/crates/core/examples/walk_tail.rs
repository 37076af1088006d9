//! How often a random walk crosses many corrupted edges.

use expander_lcc::experiment::{corrupt, walk_tail_check, write_walk_csv, NoiseModel};
use expander_lcc::graph::{DoubleCover, RegularGraph, StartDistribution};
use expander_lcc::rng;

fn main() -> expander_lcc::error::Result<()> {
    let mut g = RegularGraph::random_regular(400, 16, 5)?;
    let lambda = g.second_eigenvalue(1e-8)?;
    let cover = DoubleCover::new(g);
    let zero = vec![0u8; cover.edge_count()];
    let (_, corrupted) = corrupt(&zero, &NoiseModel::random(0.05), 2, &mut rng::substream(8, rng::NOISE, 0, 0))?;

    let mut reports = Vec::new();
    for gamma in [0.1, 0.15, 0.25] {
        reports.push(walk_tail_check(&cover, &corrupted, gamma, 40, 20_000, lambda, StartDistribution::Uniform, 8)?);
    }
    write_walk_csv(std::io::stdout().lock(), &reports)?;
    Ok(())
}
