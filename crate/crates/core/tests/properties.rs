use expander_lcc::code::LinearCode;
use expander_lcc::corrector::correct;
use expander_lcc::field::FieldSpec;
use expander_lcc::geometry::AffineGeometry;
use expander_lcc::graph::{DoubleCover, RegularGraph, Side};
use expander_lcc::planner::CorrectionParams;
use expander_lcc::recon::SmoothReconstruction;
use expander_lcc::score::SubsetStrategy;
use expander_lcc::tanner::{read_word, write_word, TannerCode, WordHeader};
use expander_lcc::tree::{evaluate_tree, make_tree};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gaussian_binomial(m: u32, r: u32, h: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..r {
        num *= h.pow(m - i) - 1;
        den *= h.pow(i + 1) - 1;
    }
    num / den
}

#[test]
fn flat_counts() {
    for (h, m, r) in [(2, 2, 1), (3, 2, 1), (4, 2, 1), (2, 3, 1), (2, 3, 2), (3, 3, 2), (8, 2, 1)] {
        let ag = AffineGeometry::enumerate_flats(h, m, r).unwrap();
        let expected = (h as u64).pow((m - r) as u32) * gaussian_binomial(m as u32, r as u32, h as u64);
        assert_eq!(ag.flats().len() as u64, expected, "AG({m},{h}) {r}-flats");
        let through = ag.flats_through(0).count() as u64;
        assert_eq!(through, gaussian_binomial(m as u32, r as u32, h as u64));
    }
}

#[test]
fn line_code_dimensions() {
    let dims: Vec<usize> = [2, 4, 8]
        .iter()
        .map(|&h| AffineGeometry::enumerate_flats(h, 2, 1).unwrap().build_inner_code(2).unwrap().code().dimension())
        .collect();
    assert_eq!(dims, vec![1, 7, 37]);
}

#[test]
fn tanner_views_are_inner_codewords() {
    let scheme = AffineGeometry::enumerate_flats(4, 2, 1).unwrap().build_inner_code(2).unwrap();
    let mut code = TannerCode::build(scheme, DoubleCover::new(RegularGraph::random_regular(40, 16, 3).unwrap())).unwrap();
    code.compute_dimension_and_generator().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let c = code.random_codeword(&mut rng).unwrap();
        for v in 0..40 {
            for side in [Side::Left, Side::Right] {
                assert!(code.inner_code().is_codeword(&code.local_view(&c, side, v)));
            }
        }
    }
}

#[test]
fn stored_words_round_trip() {
    let gf3 = FieldSpec::prime(3).unwrap();
    let inner = SmoothReconstruction::single_parity(&LinearCode::single_parity(&gf3, 4).unwrap()).unwrap();
    let mut code = TannerCode::build(inner, DoubleCover::new(RegularGraph::random_regular(10, 4, 2).unwrap())).unwrap();
    code.compute_dimension_and_generator().unwrap();
    let c = code.random_codeword(&mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    let header = WordHeader {
        field: gf3.descriptor(),
        length: c.len(),
        graph_hash: code.graph_hash(),
    };
    let mut buf = Vec::new();
    write_word(&mut buf, &header, &c).unwrap();
    let (h, w) = read_word(&buf[..]).unwrap();
    assert_eq!((h, w), (header, c));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in 0u32..16, b in 0u32..16, c in 0u32..16) {
        let f = FieldSpec::new(2, 4).unwrap();
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn encoding_is_systematic_and_valid(msg in prop::collection::vec(0u8..3, 5)) {
        let code = LinearCode::single_parity(&FieldSpec::prime(3).unwrap(), 6).unwrap();
        let c = code.encode(&msg).unwrap();
        prop_assert!(code.is_codeword(&c));
        let info: Vec<u8> = code.info_positions().iter().map(|&i| c[i]).collect();
        prop_assert_eq!(info, msg);
    }

    #[test]
    fn trees_over_codewords_are_consistent(seed in any::<u64>(), depth in 1usize..4) {
        let scheme = AffineGeometry::enumerate_flats(4, 2, 1).unwrap().build_inner_code(2).unwrap();
        let padded = scheme.pad_to_perfect().unwrap();
        let gf2 = FieldSpec::prime(2).unwrap();
        let parity = SmoothReconstruction::single_parity(&LinearCode::single_parity(&gf2, 16).unwrap()).unwrap();
        let mut code = TannerCode::build(parity.clone(), DoubleCover::new(RegularGraph::random_regular(20, 16, 5).unwrap())).unwrap();
        code.compute_dimension_and_generator().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = code.random_codeword(&mut rng).unwrap();
        let e0 = (seed as usize) % code.length();
        let tree = make_tree(code.cover(), &parity, e0, depth, &mut rng).unwrap();
        let tau = evaluate_tree(&tree, &c).unwrap();
        prop_assert!(tau.is_locally_consistent(code.inner_code().ops()));
        prop_assert_eq!(tau.root_label(), c[e0]);
        // trees built from another scheme of a different code are rejected
        prop_assert!(correct(&code, &padded, &c, e0, &CorrectionParams::fixed(1, 1), SubsetStrategy::SumDp, &mut rng).is_err());
    }

    #[test]
    fn codewords_are_corrected_to_themselves(seed in any::<u64>()) {
        let gf2 = FieldSpec::prime(2).unwrap();
        let parity = SmoothReconstruction::single_parity(&LinearCode::single_parity(&gf2, 6).unwrap()).unwrap();
        let mut code = TannerCode::build(parity.clone(), DoubleCover::new(RegularGraph::random_regular(30, 6, 8).unwrap())).unwrap();
        code.compute_dimension_and_generator().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = code.random_codeword(&mut rng).unwrap();
        let e0 = (seed as usize) % code.length();
        for strategy in [SubsetStrategy::SumDp, SubsetStrategy::Enumerate] {
            let fix = correct(&code, &parity, &c, e0, &CorrectionParams::fixed(2, 1), strategy, &mut rng.clone()).unwrap();
            prop_assert_eq!(fix.symbol, c[e0]);
            prop_assert_eq!(fix.queries.leaf_reads, 5u64.pow(3));
        }
    }

    #[test]
    fn graph_files_round_trip(seed in any::<u64>()) {
        let g = RegularGraph::random_regular(24, 6, seed).unwrap();
        prop_assert!(g.is_simple());
        let file = g.to_file(None, Some(seed));
        let back = RegularGraph::from_file(&file).unwrap();
        for v in 0..24 {
            for port in 0..6 {
                prop_assert_eq!(back.rotate(v, port), g.rotate(v, port));
            }
        }
    }
}
