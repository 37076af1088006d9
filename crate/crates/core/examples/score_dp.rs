//! Score tables for a small binary tree, checked against exhaustive search.

use expander_lcc::linalg::PrimeOps;
use expander_lcc::score::{score_bruteforce, score_table, SubsetStrategy};
use expander_lcc::tree::{EvaluatedTree, TreeShape};

fn main() -> expander_lcc::error::Result<()> {
    let ops = PrimeOps::new(2);
    // depth 2, arity 2, every child weight 1: each internal node is the sum
    // of its two children
    let shape = TreeShape::new(2, 2, vec![1; 6])?;
    let mut labels = vec![0u8, 0, 0, 1, 0, 0, 0];
    let tau = EvaluatedTree::new(shape.clone(), labels.clone())?;
    show("one flipped leaf", &tau, &ops)?;

    labels[0] = 1;
    let tau = EvaluatedTree::new(shape, labels)?;
    show("flipped leaf and root", &tau, &ops)?;
    Ok(())
}

fn show(title: &str, tau: &EvaluatedTree, ops: &PrimeOps) -> expander_lcc::error::Result<()> {
    let sum = score_table(tau, ops, SubsetStrategy::SumDp)?;
    let enumerated = score_table(tau, ops, SubsetStrategy::Enumerate)?;
    let exact = score_bruteforce(tau, ops)?;
    assert_eq!(sum.scores, exact.scores);
    assert_eq!(enumerated.scores, exact.scores);
    let (best, tied) = sum.argmin();
    println!("{title}: scores {:?}, normalized {:?}, choose {best} (tied: {tied})", sum.scores, sum.normalized());
    Ok(())
}
