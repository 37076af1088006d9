//! Query trees over the double cover and their evaluations.
//!
//! Trees are complete `q`-ary trees stored in level order: node `k` has
//! children `k·q + 1 ..= k·q + q`. Each internal node also stores the linear
//! reconstruction weights of its children, so an evaluated tree carries all
//! it needs for consistency checks and scoring.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DoubleCover, Side};
use crate::linalg::PrimeOps;
use crate::recon::SmoothReconstruction;

/// Upper bound on the node count of a single tree.
pub const TREE_NODE_LIMIT: u128 = 1 << 26;

/// Arity, depth, and per-node child weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeShape {
    arity: usize,
    depth: usize,
    weights: Vec<u8>,
}

/// Number of nodes in a complete `arity`-ary tree of the given depth.
pub fn node_count(arity: usize, depth: usize) -> u128 {
    let q = arity as u128;
    (0..=depth as u32).map(|t| q.pow(t)).sum()
}

fn checked_node_count(arity: usize, depth: usize) -> Result<usize> {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=depth {
        total += level;
        if total > TREE_NODE_LIMIT {
            return Err(Error::TooLarge {
                what: "query tree nodes",
                size: total,
                limit: TREE_NODE_LIMIT,
            });
        }
        level *= arity as u128;
    }
    Ok(total as usize)
}

impl TreeShape {
    pub fn new(arity: usize, depth: usize, weights: Vec<u8>) -> Result<Self> {
        if arity == 0 && depth > 0 {
            return Err(Error::InvalidParameter("arity must be positive".into()));
        }
        let nodes = checked_node_count(arity, depth)?;
        let internal = nodes - arity.pow(depth as u32);
        if weights.len() != internal * arity {
            return Err(Error::LengthMismatch {
                what: "tree weights",
                expected: internal * arity,
                found: weights.len(),
            });
        }
        Ok(Self {
            arity,
            depth,
            weights,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn node_count(&self) -> usize {
        self.internal_count() + self.leaf_count()
    }

    pub fn leaf_count(&self) -> usize {
        self.arity.pow(self.depth as u32)
    }

    pub fn internal_count(&self) -> usize {
        if self.arity == 0 {
            0
        } else {
            self.weights.len() / self.arity
        }
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node >= self.internal_count()
    }

    pub fn children(&self, node: usize) -> std::ops::Range<usize> {
        node * self.arity + 1..node * self.arity + self.arity + 1
    }

    pub fn weights(&self, node: usize) -> &[u8] {
        &self.weights[node * self.arity..(node + 1) * self.arity]
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        (node > 0).then(|| (node - 1) / self.arity)
    }

    /// Nodes `root, …, leaf` on the path to `leaf`.
    pub fn path_to(&self, leaf: usize) -> Vec<usize> {
        let mut path = vec![leaf];
        let mut k = leaf;
        while let Some(p) = self.parent(k) {
            path.push(p);
            k = p;
        }
        path.reverse();
        path
    }

    /// Nodes per root-to-leaf path.
    pub fn path_len(&self) -> usize {
        self.depth + 1
    }
}

/// Side whose endpoint issues the queries at a given depth.
pub fn active_side(depth: usize) -> Side {
    if depth.is_multiple_of(2) {
        Side::Left
    } else {
        Side::Right
    }
}

/// A tree of edge ids; no symbol has been read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryTree {
    shape: TreeShape,
    edges: Vec<u32>,
}

impl QueryTree {
    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.edges[0] as usize
    }

    pub fn leaf_edges(&self) -> &[u32] {
        &self.edges[self.shape.internal_count()..]
    }
}

/// Builds the depth-`depth` query tree rooted at edge `root`.
///
/// At depth `t` the node's edge is viewed from its endpoint on the active
/// side (left for even `t`); the scheme's queries for that port become the
/// children, which are edges at the same vertex.
pub fn make_tree<R: Rng + ?Sized>(
    cover: &DoubleCover,
    scheme: &SmoothReconstruction,
    root: usize,
    depth: usize,
    rng: &mut R,
) -> Result<QueryTree> {
    if scheme.length() != cover.d() {
        return Err(Error::DegreeMismatch {
            inner: scheme.length(),
            degree: cover.d(),
        });
    }
    if root >= cover.edge_count() {
        return Err(Error::PositionOutOfRange {
            position: root,
            len: cover.edge_count(),
        });
    }
    let q = scheme.query_count();
    let nodes = checked_node_count(q, depth)?;
    let internal = nodes - q.pow(depth as u32);
    let mut edges = Vec::with_capacity(nodes);
    let mut weights = Vec::with_capacity(internal * q);
    let mut ports = Vec::with_capacity(q);
    edges.push(root as u32);
    let mut level_start = 0;
    for t in 0..depth {
        let side = active_side(t);
        let level_end = edges.len();
        for k in level_start..level_end {
            let (v, port) = cover.endpoint(edges[k] as usize, side);
            ports.clear();
            scheme.sample_weighted_into(port, rng, &mut ports, &mut weights);
            edges.extend(ports.iter().map(|&j| cover.edge_at(side, v, j) as u32));
        }
        level_start = level_end;
    }
    Ok(QueryTree {
        shape: TreeShape {
            arity: q,
            depth,
            weights,
        },
        edges,
    })
}

/// A word wrapper that counts reads.
#[derive(Debug)]
pub struct CountingWord<'a> {
    word: &'a [u8],
    reads: u64,
}

impl<'a> CountingWord<'a> {
    pub fn new(word: &'a [u8]) -> Self {
        Self { word, reads: 0 }
    }

    #[inline]
    pub fn read(&mut self, position: usize) -> u8 {
        self.reads += 1;
        self.word[position]
    }

    pub fn reads(&self) -> u64 {
        self.reads
    }
}

/// A symbol-labelled tree with the weights of its query tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluatedTree {
    shape: TreeShape,
    labels: Vec<u8>,
}

impl EvaluatedTree {
    pub fn new(shape: TreeShape, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != shape.node_count() {
            return Err(Error::LengthMismatch {
                what: "tree labels",
                expected: shape.node_count(),
                found: labels.len(),
            });
        }
        Ok(Self { shape, labels })
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn root_label(&self) -> u8 {
        self.labels[0]
    }

    /// Reconstruction of `node` from its children's labels.
    pub fn reconstruct(&self, node: usize, ops: &PrimeOps) -> u8 {
        self.shape
            .children(node)
            .zip(self.shape.weights(node))
            .fold(0u8, |acc, (c, &w)| ops.add(acc, ops.mul(w, self.labels[c])))
    }

    /// Internal nodes whose label differs from the reconstruction.
    pub fn inconsistent_nodes(&self, ops: &PrimeOps) -> Vec<usize> {
        (0..self.shape.internal_count())
            .filter(|&k| self.reconstruct(k, ops) != self.labels[k])
            .collect()
    }

    pub fn is_locally_consistent(&self, ops: &PrimeOps) -> bool {
        (0..self.shape.internal_count()).all(|k| self.reconstruct(k, ops) == self.labels[k])
    }

    /// Relabels every internal node from its children, bottom-up.
    pub fn fold_up(&mut self, ops: &PrimeOps) {
        for k in (0..self.shape.internal_count()).rev() {
            self.labels[k] = self.reconstruct(k, ops);
        }
    }
}

pub fn evaluate_tree(tree: &QueryTree, word: &[u8]) -> Result<EvaluatedTree> {
    let mut counter = CountingWord::new(word);
    evaluate_tree_counted(tree, &mut counter)
}

/// Reads every node of the tree through `word`.
pub fn evaluate_tree_counted(tree: &QueryTree, word: &mut CountingWord<'_>) -> Result<EvaluatedTree> {
    if let Some(&e) = tree.edges.iter().find(|&&e| e as usize >= word.word.len()) {
        return Err(Error::PositionOutOfRange {
            position: e as usize,
            len: word.word.len(),
        });
    }
    let labels = tree.edges.iter().map(|&e| word.read(e as usize)).collect();
    Ok(EvaluatedTree {
        shape: tree.shape.clone(),
        labels,
    })
}

/// Like [`evaluate_tree_counted`], also returning how many reads hit leaves.
pub fn evaluate_tree_split(tree: &QueryTree, word: &mut CountingWord<'_>) -> Result<(EvaluatedTree, u64)> {
    let internal = tree.shape.internal_count();
    if let Some(&e) = tree.edges.iter().find(|&&e| e as usize >= word.word.len()) {
        return Err(Error::PositionOutOfRange {
            position: e as usize,
            len: word.word.len(),
        });
    }
    let mut labels: Vec<u8> = tree.edges[..internal].iter().map(|&e| word.read(e as usize)).collect();
    let before = word.reads();
    labels.extend(tree.edges[internal..].iter().map(|&e| word.read(e as usize)));
    let leaf_reads = word.reads() - before;
    Ok((
        EvaluatedTree {
            shape: tree.shape.clone(),
            labels,
        },
        leaf_reads,
    ))
}

/// Worst root-to-leaf disagreement between two labelings of one shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathDistance {
    pub mismatches: usize,
    pub path_len: usize,
}

impl PathDistance {
    pub fn value(&self) -> f64 {
        self.mismatches as f64 / self.path_len as f64
    }
}

pub fn tree_distance(a: &EvaluatedTree, b: &EvaluatedTree) -> Result<PathDistance> {
    if a.shape != b.shape {
        return Err(Error::ShapeMismatch);
    }
    let shape = &a.shape;
    let mut worst = vec![0usize; shape.node_count()];
    for k in (0..shape.node_count()).rev() {
        let below = if shape.is_leaf(k) {
            0
        } else {
            shape.children(k).map(|c| worst[c]).max().unwrap_or(0)
        };
        worst[k] = below + usize::from(a.labels[k] != b.labels[k]);
    }
    Ok(PathDistance {
        mismatches: worst[0],
        path_len: shape.path_len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::field::FieldSpec;
    use crate::graph::RegularGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn parity_setup(n: usize, d: usize) -> (DoubleCover, SmoothReconstruction) {
        let f = FieldSpec::prime(2).unwrap();
        let code = LinearCode::single_parity(&f, d).unwrap();
        let g = RegularGraph::random_regular(n, d, 3).unwrap();
        (DoubleCover::new(g), SmoothReconstruction::single_parity(&code).unwrap())
    }

    #[test]
    fn sizes() {
        assert_eq!(node_count(3, 2), 13);
        assert_eq!(node_count(1, 4), 5);
        let (cover, scheme) = parity_setup(10, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t0 = make_tree(&cover, &scheme, 5, 0, &mut rng).unwrap();
        assert_eq!(t0.edges(), &[5]);
        let t = make_tree(&cover, &scheme, 5, 2, &mut rng).unwrap();
        assert_eq!(t.shape().node_count(), 13);
        assert_eq!(t.leaf_edges().len(), 9);
    }

    #[test]
    fn children_share_the_active_vertex() {
        let (cover, scheme) = parity_setup(12, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = make_tree(&cover, &scheme, 7, 3, &mut rng).unwrap();
        let s = t.shape();
        let mut depth_of = vec![0usize; s.node_count()];
        for k in 1..s.node_count() {
            depth_of[k] = depth_of[s.parent(k).unwrap()] + 1;
        }
        for k in 0..s.internal_count() {
            let side = active_side(depth_of[k]);
            let (v, port) = cover.endpoint(t.edges()[k] as usize, side);
            let mut ports = vec![];
            for c in s.children(k) {
                let (w, j) = cover.endpoint(t.edges()[c] as usize, side);
                assert_eq!(w, v);
                ports.push(j);
            }
            ports.sort();
            let expect: Vec<usize> = (0..4).filter(|&j| j != port).collect();
            assert_eq!(ports, expect);
        }
    }

    #[test]
    fn codeword_trees_are_consistent() {
        let (cover, scheme) = parity_setup(10, 4);
        let ops = PrimeOps::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = make_tree(&cover, &scheme, 0, 3, &mut rng).unwrap();
        let zero = vec![0u8; cover.edge_count()];
        let ev = evaluate_tree(&t, &zero).unwrap();
        assert!(ev.labels().iter().all(|&x| x == 0));
        assert!(ev.is_locally_consistent(&ops));
        // a flipped leaf breaks only the check at its parent
        let mut labels = ev.labels().to_vec();
        let leaf = t.shape().node_count() - 1;
        labels[leaf] = 1;
        let broken = EvaluatedTree::new(t.shape().clone(), labels).unwrap();
        let path = t.shape().path_to(leaf);
        assert_eq!(broken.inconsistent_nodes(&ops), vec![path[path.len() - 2]]);
    }

    #[test]
    fn read_counts() {
        let (cover, scheme) = parity_setup(10, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = make_tree(&cover, &scheme, 0, 2, &mut rng).unwrap();
        let word = vec![0u8; cover.edge_count()];
        let mut counter = CountingWord::new(&word);
        evaluate_tree_counted(&t, &mut counter).unwrap();
        assert_eq!(counter.reads(), 13);
    }

    #[test]
    fn distances() {
        let shape = TreeShape::new(1, 3, vec![1; 3]).unwrap();
        let a = EvaluatedTree::new(shape.clone(), vec![0; 4]).unwrap();
        let b = EvaluatedTree::new(shape.clone(), vec![1, 0, 0, 0]).unwrap();
        assert_eq!(tree_distance(&a, &a).unwrap().mismatches, 0);
        let d = tree_distance(&a, &b).unwrap();
        assert_eq!((d.mismatches, d.path_len), (1, 4));
        assert!((d.value() - 0.25).abs() < 1e-12);
        let other = EvaluatedTree::new(TreeShape::new(1, 2, vec![1; 2]).unwrap(), vec![0; 3]).unwrap();
        assert!(matches!(tree_distance(&a, &other), Err(Error::ShapeMismatch)));
    }

    #[test]
    fn sample_into_matches_query_sets() {
        let f = FieldSpec::prime(3).unwrap();
        let code = LinearCode::single_parity(&f, 5).unwrap();
        let scheme = SmoothReconstruction::single_parity(&code).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(9);
        let mut r2 = ChaCha8Rng::seed_from_u64(9);
        for i in 0..5 {
            let qs = scheme.sample_queries(i, &mut r1);
            let (mut p, mut w) = (vec![], vec![]);
            scheme.sample_weighted_into(i, &mut r2, &mut p, &mut w);
            assert_eq!(p, qs.positions);
            assert_eq!(w, scheme.weights(&qs));
        }
    }
}
