//! Success rate of local correction across noise rates, printed as CSV.

use expander_lcc::experiment::{monotone_up_to_overlap, success_curve, write_curve_csv, TrialSetup};
use expander_lcc::geometry::AffineGeometry;
use expander_lcc::graph::{DoubleCover, RegularGraph};
use expander_lcc::planner::CorrectionParams;
use expander_lcc::score::SubsetStrategy;
use expander_lcc::tanner::TannerCode;

fn main() -> expander_lcc::error::Result<()> {
    let scheme = AffineGeometry::enumerate_flats(4, 2, 1)?.build_inner_code(2)?;
    let code = TannerCode::build(scheme.clone(), DoubleCover::new(RegularGraph::random_regular(200, 16, 9)?))?;
    let params = CorrectionParams::fixed(2, 2);
    let setup = TrialSetup {
        code: &code,
        scheme: &scheme,
        params: &params,
        strategy: SubsetStrategy::SumDp,
        codeword: None,
    };
    let points = success_curve(&setup, &[0.0, 0.01, 0.05, 0.1, 0.2], 50, 4)?;
    write_curve_csv(std::io::stdout().lock(), &points)?;
    eprintln!("monotone up to interval overlap: {}", monotone_up_to_overlap(&points));
    Ok(())
}
