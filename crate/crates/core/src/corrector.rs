//! Local correction of a single symbol.
//!
//! An outer tree of depth `l1` is laid out from the target edge without
//! reading anything. Each distinct edge on its leaves gets its own subtree of
//! depth `l2`, which is read and scored; the winning symbols relabel the
//! outer leaves and the outer tree is folded up by the inner reconstruction.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::planner::CorrectionParams;
use crate::recon::SmoothReconstruction;
use crate::rng;
use crate::score::{correct_subtree, ScoreTable, SubsetStrategy};
use crate::tanner::TannerCode;
use crate::tree::{evaluate_tree_split, make_tree, CountingWord, EvaluatedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryAccount {
    /// Leaf reads counted once per outer-leaf occurrence.
    pub leaf_reads: u64,
    /// All node reads counted once per outer-leaf occurrence.
    pub node_reads: u64,
    /// Distinct positions of the word that were read.
    pub distinct_reads: u64,
    pub distinct_leaf_edges: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Correction {
    pub symbol: u8,
    /// Some subtree had tied minimal scores.
    pub ambiguous: bool,
    pub ambiguous_subtrees: usize,
    pub queries: QueryAccount,
    /// Score table of the subtree with the smallest margin.
    pub tightest: ScoreTable,
}

struct SubtreeResult {
    symbol: u8,
    ambiguous: bool,
    table: ScoreTable,
    leaf_reads: u64,
    node_reads: u64,
    edges: Vec<u32>,
}

/// Corrects position `e0` of `word`.
///
/// Tree layouts depend only on `rng`, never on the word, so runs that share
/// a seed query the same positions.
pub fn correct<R: Rng + ?Sized>(
    code: &TannerCode,
    scheme: &SmoothReconstruction,
    word: &[u8],
    e0: usize,
    params: &CorrectionParams,
    strategy: SubsetStrategy,
    rng: &mut R,
) -> Result<Correction> {
    let n = code.length();
    if word.len() != n {
        return Err(Error::LengthMismatch {
            what: "received word",
            expected: n,
            found: word.len(),
        });
    }
    if e0 >= n {
        return Err(Error::PositionOutOfRange { position: e0, len: n });
    }
    if scheme.code().parity_rows() != code.inner_code().parity_rows() {
        return Err(Error::InvalidParameter(
            "reconstruction scheme belongs to a different inner code".into(),
        ));
    }
    let cover = code.cover();
    let ops = code.inner_code().ops();
    let outer = make_tree(cover, scheme, e0, params.l1, rng)?;
    let subtree_seed: u64 = rng.random();

    let mut occurrences: BTreeMap<u32, u64> = BTreeMap::new();
    for &e in outer.leaf_edges() {
        *occurrences.entry(e).or_default() += 1;
    }
    let distinct: Vec<(u32, u64)> = occurrences.into_iter().collect();
    let results: Vec<SubtreeResult> = distinct
        .par_iter()
        .enumerate()
        .map(|(k, &(edge, _))| -> Result<SubtreeResult> {
            let mut sub_rng = rng::substream(subtree_seed, rng::SUBTREE, 0, k as u64);
            let tree = make_tree(cover, scheme, edge as usize, params.l2, &mut sub_rng)?;
            let mut counter = CountingWord::new(word);
            let (tau, leaf_reads) = evaluate_tree_split(&tree, &mut counter)?;
            let (symbol, ambiguous, table) = correct_subtree(&tau, ops, strategy)?;
            Ok(SubtreeResult {
                symbol,
                ambiguous,
                table,
                leaf_reads,
                node_reads: counter.reads(),
                edges: tree.edges().to_vec(),
            })
        })
        .collect::<Result<_>>()?;

    let mut corrected: BTreeMap<u32, u8> = BTreeMap::new();
    let mut touched = vec![false; n];
    let mut account = QueryAccount {
        leaf_reads: 0,
        node_reads: 0,
        distinct_reads: 0,
        distinct_leaf_edges: distinct.len() as u64,
    };
    let mut ambiguous_subtrees = 0;
    let mut tightest: Option<&ScoreTable> = None;
    for (&(edge, count), r) in distinct.iter().zip(&results) {
        corrected.insert(edge, r.symbol);
        account.leaf_reads += count * r.leaf_reads;
        account.node_reads += count * r.node_reads;
        for &e in &r.edges {
            if !touched[e as usize] {
                touched[e as usize] = true;
                account.distinct_reads += 1;
            }
        }
        ambiguous_subtrees += usize::from(r.ambiguous);
        if tightest.is_none_or(|t| r.table.margin() < t.margin()) {
            tightest = Some(&r.table);
        }
    }

    let internal = outer.shape().internal_count();
    let mut labels = vec![0u8; outer.shape().node_count()];
    for (slot, e) in labels[internal..].iter_mut().zip(outer.leaf_edges()) {
        *slot = corrected[e];
    }
    let mut folded = EvaluatedTree::new(outer.shape().clone(), labels)?;
    folded.fold_up(ops);
    Ok(Correction {
        symbol: folded.root_label(),
        ambiguous: ambiguous_subtrees > 0,
        ambiguous_subtrees,
        queries: account,
        tightest: tightest.expect("outer tree has a leaf").clone(),
    })
}

/// One correction, as written to disk.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub position: usize,
    pub symbol: u8,
    pub truth: Option<u8>,
    pub queries: QueryAccount,
    pub predicted_leaf_reads: u64,
    pub scores: Vec<u32>,
    pub normalized_scores: Vec<Option<f64>>,
    pub path_len: usize,
    pub ambiguous: bool,
    pub ambiguous_subtrees: usize,
    pub params: CorrectionParams,
    pub warnings: Vec<String>,
}

impl TrialRecord {
    pub fn new(
        position: usize,
        truth: Option<u8>,
        correction: &Correction,
        params: &CorrectionParams,
        arity: usize,
        warnings: Vec<String>,
    ) -> Self {
        Self {
            position,
            symbol: correction.symbol,
            truth,
            queries: correction.queries,
            predicted_leaf_reads: params.leaf_reads(arity).min(u64::MAX as u128) as u64,
            scores: correction.tightest.scores.clone(),
            normalized_scores: correction.tightest.normalized(),
            path_len: correction.tightest.path_len,
            ambiguous: correction.ambiguous,
            ambiguous_subtrees: correction.ambiguous_subtrees,
            params: params.clone(),
            warnings,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::field::FieldSpec;
    use crate::graph::{DoubleCover, RegularGraph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_code() -> TannerCode {
        let f = FieldSpec::prime(2).unwrap();
        let inner = SmoothReconstruction::single_parity(&LinearCode::single_parity(&f, 4).unwrap()).unwrap();
        let g = RegularGraph::random_regular(16, 4, 2).unwrap();
        let mut c = TannerCode::build(inner, DoubleCover::new(g)).unwrap();
        c.compute_dimension_and_generator().unwrap();
        c
    }

    #[test]
    fn codewords_are_returned_intact() {
        let code = small_code();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = code.random_codeword(&mut rng).unwrap();
        let params = CorrectionParams::fixed(2, 2);
        for e0 in [0, 5, 17, 63] {
            let c = correct(&code, code.inner(), &w, e0, &params, SubsetStrategy::SumDp, &mut rng).unwrap();
            assert_eq!(c.symbol, w[e0]);
            assert_eq!(c.queries.leaf_reads, 3u64.pow(4));
        }
    }

    #[test]
    fn one_error_is_fixed() {
        let code = small_code();
        let mut w = code.zero_codeword();
        w[9] = 1;
        let params = CorrectionParams::fixed(2, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let c = correct(&code, code.inner(), &w, 9, &params, SubsetStrategy::SumDp, &mut rng).unwrap();
        assert_eq!(c.symbol, 0);
    }

    #[test]
    fn strategies_agree() {
        let code = small_code();
        let mut w = code.zero_codeword();
        w[1] = 1;
        w[30] = 1;
        let params = CorrectionParams::fixed(2, 2);
        for seed in 0..5 {
            let a = correct(&code, code.inner(), &w, 1, &params, SubsetStrategy::SumDp, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let b = correct(&code, code.inner(), &w, 1, &params, SubsetStrategy::Enumerate, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            assert_eq!(a.symbol, b.symbol);
            assert_eq!(a.tightest, b.tightest);
        }
    }

    #[test]
    fn bad_inputs() {
        let code = small_code();
        let w = code.zero_codeword();
        let params = CorrectionParams::fixed(1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(correct(&code, code.inner(), &w, 64, &params, SubsetStrategy::SumDp, &mut rng).is_err());
        assert!(correct(&code, code.inner(), &w[1..], 0, &params, SubsetStrategy::SumDp, &mut rng).is_err());
    }
}
