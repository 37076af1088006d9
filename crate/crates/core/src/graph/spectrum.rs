//! Spectrum of the directed-edge walk on the double cover.
//!
//! States are triples `(u, i, b)` indexed as `b·n·d + u·d + i`. From
//! `(u, i, b)` the walk moves to `(v, j, 1 - b)` with `v` the `i`-th neighbor
//! of `u` and `j` uniform, so the operator factors as `R ⊗ S` with `S` the
//! side swap.

use nalgebra::DMatrix;
use serde::Serialize;

use super::RegularGraph;
use crate::error::{Error, Result};

pub const SPECTRUM_VERTEX_LIMIT: usize = 64;
/// Eigenvalues below this magnitude count as zero.
pub const ZERO_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub d: usize,
    pub tolerance: f64,
    /// Nonzero eigenvalues of the edge-walk operator, ascending.
    pub edge_walk: Vec<f64>,
    /// `±μ` over nonzero eigenvalues `μ` of `A/d`, ascending.
    pub expected: Vec<f64>,
    pub zero_count: usize,
    pub max_imaginary: f64,
    pub max_deviation: f64,
    /// Numerical rank of one side-to-side block.
    pub block_rank: usize,
    pub passed: bool,
}

/// Dense `2nd × 2nd` transition matrix, entry `(from, to)` at row `to`.
pub fn edge_walk_matrix(graph: &RegularGraph) -> DMatrix<f64> {
    let (n, d) = (graph.n(), graph.d());
    let nd = n * d;
    let mut m = DMatrix::zeros(2 * nd, 2 * nd);
    let w = 1.0 / d as f64;
    for b in 0..2 {
        for u in 0..n {
            for i in 0..d {
                let from = b * nd + u * d + i;
                let v = graph.neighbor(u, i);
                for j in 0..d {
                    let to = (1 - b) * nd + v * d + j;
                    m[(to, from)] += w;
                }
            }
        }
    }
    m
}

pub fn edge_walk_spectrum_check(graph: &RegularGraph, tolerance: f64) -> Result<SpectrumReport> {
    let (n, d) = (graph.n(), graph.d());
    if n > SPECTRUM_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "dense spectrum vertex count",
            size: n as u128,
            limit: SPECTRUM_VERTEX_LIMIT as u128,
        });
    }
    let nd = n * d;
    let walk = edge_walk_matrix(graph);
    let eig = walk.complex_eigenvalues();
    let mut max_imaginary: f64 = 0.0;
    let mut edge_walk = Vec::new();
    let mut zero_count = 0;
    for z in eig.iter() {
        if z.norm() <= ZERO_THRESHOLD {
            zero_count += 1;
        } else {
            max_imaginary = max_imaginary.max(z.im.abs());
            edge_walk.push(z.re);
        }
    }
    edge_walk.sort_by(f64::total_cmp);

    let adj = DMatrix::from_row_slice(n, n, &graph.normalized_adjacency());
    let mut expected: Vec<f64> = adj
        .symmetric_eigenvalues()
        .iter()
        .filter(|mu| mu.abs() > ZERO_THRESHOLD)
        .flat_map(|&mu| [mu, -mu])
        .collect();
    expected.sort_by(f64::total_cmp);

    let same_len = expected.len() == edge_walk.len();
    let max_deviation = if same_len {
        edge_walk
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };

    let block = walk.view((nd, 0), (nd, nd)).into_owned();
    let block_rank = block.rank(1e-9);

    let passed = same_len
        && max_deviation <= tolerance
        && max_imaginary <= tolerance
        && zero_count + edge_walk.len() == 2 * nd
        && block_rank <= n;
    Ok(SpectrumReport {
        n,
        d,
        tolerance,
        edge_walk,
        expected,
        zero_count,
        max_imaginary,
        max_deviation,
        block_rank,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_spectrum() {
        let g = RegularGraph::complete(4).unwrap();
        let rep = edge_walk_spectrum_check(&g, 1e-8).unwrap();
        assert!(rep.passed, "{rep:?}");
        // ±1 once, ±1/3 three times each
        assert_eq!(rep.edge_walk.len(), 8);
        assert_eq!(rep.zero_count, 24 - 8);
        assert!((rep.edge_walk[0] + 1.0).abs() < 1e-8);
        assert!((rep.edge_walk[7] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn cycle_and_random() {
        let c6 = RegularGraph::cycle(6).unwrap();
        assert!(edge_walk_spectrum_check(&c6, 1e-8).unwrap().passed);
        let g = RegularGraph::random_regular(10, 4, 1).unwrap();
        let rep = edge_walk_spectrum_check(&g, 1e-8).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.block_rank <= 10);
    }

    #[test]
    fn walk_matrix_is_column_stochastic() {
        let g = RegularGraph::random_regular(8, 3, 2).unwrap();
        let m = edge_walk_matrix(&g);
        for c in 0..m.ncols() {
            assert!((m.column(c).sum() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn guard() {
        let g = RegularGraph::random_regular(66, 2, 0).unwrap();
        assert!(edge_walk_spectrum_check(&g, 1e-8).is_err());
    }
}
