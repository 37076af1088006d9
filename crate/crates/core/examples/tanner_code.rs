//! A Tanner code on the double cover of a random 6-regular graph.

use expander_lcc::code::LinearCode;
use expander_lcc::field::FieldSpec;
use expander_lcc::graph::{DoubleCover, RegularGraph, Side};
use expander_lcc::recon::SmoothReconstruction;
use expander_lcc::tanner::TannerCode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> expander_lcc::error::Result<()> {
    let gf2 = FieldSpec::prime(2)?;
    let inner = SmoothReconstruction::single_parity(&LinearCode::single_parity(&gf2, 6)?)?;
    let cover = DoubleCover::new(RegularGraph::random_regular(30, 6, 11)?);
    let mut code = TannerCode::build(inner, cover)?;
    for w in code.warnings() {
        println!("warning: {w}");
    }
    let k = code.compute_dimension_and_generator()?;
    println!(
        "N = {}, k = {k}, rate {:.4} (lower bound {:.4})",
        code.length(),
        k as f64 / code.length() as f64,
        code.rate_lower_bound()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = code.random_codeword(&mut rng)?;
    println!("random codeword passes every local check: {}", code.is_codeword(&c));
    println!("view at left vertex 0: {:?}", code.local_view(&c, Side::Left, 0));

    let mut bad = c.clone();
    bad[0] ^= 1;
    println!("after one flip: {}", code.is_codeword(&bad));
    Ok(())
}
