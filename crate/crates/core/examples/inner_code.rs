//! The line code of AG(2, 4) over GF(2) and its smooth reconstruction.

use expander_lcc::geometry::AffineGeometry;

fn main() -> expander_lcc::error::Result<()> {
    let plane = AffineGeometry::enumerate_flats(4, 2, 1)?;
    println!("{} points, {} lines", plane.point_count(), plane.flats().len());

    let scheme = plane.build_inner_code(2)?;
    let code = scheme.code();
    println!(
        "inner code: length {}, dimension {}, rate {:.4}, distance {:?}",
        code.length(),
        code.dimension(),
        code.rate(),
        code.min_distance()
    );
    println!(
        "{} queries per reconstruction, {} lines through each point, exactly smooth: {}",
        scheme.real_queries(),
        scheme.checks_through(0).len(),
        scheme.is_exactly_smooth()
    );

    let padded = scheme.pad_to_perfect()?;
    let audit = padded.smoothness_audit_exact(5);
    println!("padded to {} queries, uniform over the other points: {}", padded.query_count(), audit.uniform);
    audit.write_csv(std::io::stdout().lock())?;
    Ok(())
}
