//! Corrects single positions of a noisy codeword with the AG(2, 4) inner code.

use expander_lcc::corrector::correct;
use expander_lcc::experiment::{corrupt, NoiseModel};
use expander_lcc::geometry::AffineGeometry;
use expander_lcc::graph::{DoubleCover, RegularGraph};
use expander_lcc::planner::CorrectionParams;
use expander_lcc::rng;
use expander_lcc::score::SubsetStrategy;
use expander_lcc::tanner::TannerCode;

fn main() -> expander_lcc::error::Result<()> {
    let scheme = AffineGeometry::enumerate_flats(4, 2, 1)?.build_inner_code(2)?;
    let cover = DoubleCover::new(RegularGraph::random_regular(300, 16, 2)?);
    let code = TannerCode::build(scheme.clone(), cover)?;
    let params = CorrectionParams::fixed(2, 2);

    let clean = code.zero_codeword();
    let (noisy, flipped) = corrupt(&clean, &NoiseModel::random(0.01), code.p(), &mut rng::substream(1, rng::NOISE, 0, 0))?;
    println!("N = {}, {} corrupted positions", code.length(), flipped.len());

    for (i, &e0) in flipped.iter().take(5).enumerate() {
        let mut r = rng::substream(1, rng::POSITION, 0, i as u64);
        let fix = correct(&code, &scheme, &noisy, e0, &params, SubsetStrategy::SumDp, &mut r)?;
        println!(
            "position {e0:>5}: received {} corrected {} ({} leaf reads, {} distinct positions)",
            noisy[e0], fix.symbol, fix.queries.leaf_reads, fix.queries.distinct_reads
        );
    }
    Ok(())
}
