//! Regular graphs, their double covers, and random walks on the cover.
//!
//! A graph is stored as a rotation map on half-edges `(vertex, port)`. The
//! double cover `H` has left copies `u_0` and right copies `w_1`; the edge id
//! `u·d + i` is the edge leaving the left vertex `u` through port `i`. Its
//! right endpoint is `rot(u, i)`. Both covering edges of a base edge `{u, w}`
//! therefore get distinct ids and `N = n·d`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of restarts of the pairing procedure before giving up.
pub const PAIRING_ATTEMPTS: usize = 200;
pub const DEFAULT_EIGEN_TOLERANCE: f64 = 1e-8;
pub const EIGEN_ITERATION_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub vertex: u32,
    pub port: u32,
}

/// A d-regular graph given by its rotation map.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularGraph {
    n: usize,
    d: usize,
    rotation: Vec<(u32, u32)>,
    lambda: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub d: usize,
    pub adjacency: Vec<Vec<u32>>,
    pub rotation: Vec<[u32; 2]>,
    pub lambda: Option<f64>,
    pub lambda_tolerance: Option<f64>,
    pub seed: Option<u64>,
}

impl RegularGraph {
    /// Builds a graph from a rotation table indexed by `v·d + port`.
    pub fn from_rotation(n: usize, d: usize, rotation: Vec<(u32, u32)>) -> Result<Self> {
        if rotation.len() != n * d {
            return Err(Error::InvalidGraph(format!(
                "rotation table has {} entries, expected {}",
                rotation.len(),
                n * d
            )));
        }
        for (idx, &(w, j)) in rotation.iter().enumerate() {
            let (v, i) = (idx / d, idx % d);
            if w as usize >= n || j as usize >= d {
                return Err(Error::InvalidGraph(format!("half-edge ({v},{i}) points outside")));
            }
            if w as usize == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {v}")));
            }
            if rotation[w as usize * d + j as usize] != (v as u32, i as u32) {
                return Err(Error::InvalidGraph(format!(
                    "rotation is not an involution at ({v},{i})"
                )));
            }
        }
        Ok(Self {
            n,
            d,
            rotation,
            lambda: None,
        })
    }

    /// Ports follow the order of each neighbor list; repeated neighbors are
    /// matched occurrence by occurrence.
    pub fn from_neighbors(neighbors: &[Vec<u32>]) -> Result<Self> {
        let n = neighbors.len();
        let d = neighbors.first().map_or(0, Vec::len);
        if neighbors.iter().any(|l| l.len() != d) {
            return Err(Error::InvalidGraph("graph is not regular".into()));
        }
        let mut slot: BTreeMap<(u32, u32), VecDeque<u32>> = BTreeMap::new();
        for (v, list) in neighbors.iter().enumerate() {
            for (i, &w) in list.iter().enumerate() {
                slot.entry((v as u32, w)).or_default().push_back(i as u32);
            }
        }
        let mut rotation = vec![(0, 0); n * d];
        for (v, list) in neighbors.iter().enumerate() {
            let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
            for (i, &w) in list.iter().enumerate() {
                let k = seen.entry(w).or_default();
                let back = slot
                    .get(&(w, v as u32))
                    .and_then(|q| q.get(*k))
                    .ok_or_else(|| Error::InvalidGraph(format!("edge {v}-{w} is not symmetric")))?;
                *k += 1;
                rotation[v * d + i] = (w, *back);
            }
        }
        Self::from_rotation(n, d, rotation)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let neighbors: Vec<Vec<u32>> = (0..n as u32)
            .map(|v| (0..n as u32).filter(|&w| w != v).collect())
            .collect();
        Self::from_neighbors(&neighbors)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("cycle needs at least 3 vertices".into()));
        }
        let neighbors: Vec<Vec<u32>> = (0..n)
            .map(|v| vec![((v + n - 1) % n) as u32, ((v + 1) % n) as u32])
            .collect();
        Self::from_neighbors(&neighbors)
    }

    /// A simple random d-regular graph from the pairing model.
    ///
    /// Stubs are shuffled and paired; pairs that would form a loop or a
    /// repeated edge are returned to the pool and re-paired, and the whole
    /// attempt restarts when the leftover stubs admit no valid pair. Ports are
    /// assigned in increasing neighbor order.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Self> {
        if d == 0 || d >= n {
            return Err(Error::InvalidGraph(format!("need 0 < d < n, got n={n}, d={d}")));
        }
        if !(n * d).is_multiple_of(2) {
            return Err(Error::InvalidGraph(format!("n·d = {} is odd", n * d)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..PAIRING_ATTEMPTS {
            if let Some(edges) = try_pairing(n, d, &mut rng) {
                let mut neighbors = vec![Vec::with_capacity(d); n];
                for &(a, b) in &edges {
                    neighbors[a as usize].push(b);
                    neighbors[b as usize].push(a);
                }
                for list in &mut neighbors {
                    list.sort_unstable();
                }
                return Self::from_neighbors(&neighbors);
            }
        }
        Err(Error::GraphGenerationFailed {
            attempts: PAIRING_ATTEMPTS,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn rotate(&self, vertex: usize, port: usize) -> (usize, usize) {
        let (w, j) = self.rotation[vertex * self.d + port];
        (w as usize, j as usize)
    }

    pub fn neighbor(&self, vertex: usize, port: usize) -> usize {
        self.rotate(vertex, port).0
    }

    pub fn neighbors(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.d).map(move |i| self.neighbor(vertex, i))
    }

    pub fn is_simple(&self) -> bool {
        (0..self.n).all(|v| {
            let set: BTreeSet<usize> = self.neighbors(v).collect();
            set.len() == self.d
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn lambda(&self) -> Option<f64> {
        self.lambda
    }

    pub fn set_lambda(&mut self, lambda: f64) {
        self.lambda = Some(lambda);
    }

    /// `y = (A/d) x`.
    pub fn apply_normalized(&self, x: &[f64], y: &mut [f64]) {
        let inv = 1.0 / self.d as f64;
        for (v, out) in y.iter_mut().enumerate() {
            let s: f64 = self.rotation[v * self.d..(v + 1) * self.d]
                .iter()
                .map(|&(w, _)| x[w as usize])
                .sum();
            *out = s * inv;
        }
    }

    /// Dense normalized adjacency matrix, row-major.
    pub fn normalized_adjacency(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        let inv = 1.0 / self.d as f64;
        for v in 0..self.n {
            for w in self.neighbors(v) {
                a[v * self.n + w] += inv;
            }
        }
        a
    }

    /// Largest magnitude among the non-trivial eigenvalues of `A/d`.
    ///
    /// Power iteration on `(A/d)^2` restricted to the complement of the
    /// all-ones vector; disconnected graphs report 1. The result is cached.
    pub fn second_eigenvalue(&mut self, tolerance: f64) -> Result<f64> {
        let lambda = self.compute_second_eigenvalue(tolerance)?;
        self.lambda = Some(lambda);
        Ok(lambda)
    }

    fn compute_second_eigenvalue(&self, tolerance: f64) -> Result<f64> {
        if !self.is_connected() {
            return Ok(1.0);
        }
        let n = self.n;
        if n <= 1 {
            return Ok(0.0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a4b);
        let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let mut y = vec![0.0; n];
        deflate_and_normalize(&mut x);
        let mut prev = f64::NAN;
        let mut stable = 0;
        for _ in 0..EIGEN_ITERATION_CAP {
            self.apply_normalized(&x, &mut y);
            deflate(&mut y);
            // |M x|^2 = x^T M^2 x for symmetric M with |x| = 1
            let est = norm(&y);
            self.apply_normalized(&y, &mut x);
            deflate(&mut x);
            let nx = norm(&x);
            if nx == 0.0 {
                return Ok(0.0);
            }
            x.iter_mut().for_each(|v| *v /= nx);
            if (est - prev).abs() < tolerance * 1e-2 {
                stable += 1;
                if stable >= 20 {
                    return Ok(est);
                }
            } else {
                stable = 0;
            }
            prev = est;
        }
        Err(Error::NoConvergence {
            iterations: EIGEN_ITERATION_CAP,
        })
    }

    pub fn to_file(&self, lambda_tolerance: Option<f64>, seed: Option<u64>) -> GraphFile {
        GraphFile {
            n: self.n,
            d: self.d,
            adjacency: (0..self.n)
                .map(|v| self.neighbors(v).map(|w| w as u32).collect())
                .collect(),
            rotation: self.rotation.iter().map(|&(w, j)| [w, j]).collect(),
            lambda: self.lambda,
            lambda_tolerance,
            seed,
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let rotation = file.rotation.iter().map(|&[w, j]| (w, j)).collect();
        let mut g = Self::from_rotation(file.n, file.d, rotation)?;
        for v in 0..g.n {
            if !g.neighbors(v).map(|w| w as u32).eq(file.adjacency[v].iter().copied()) {
                return Err(Error::Artifact(format!(
                    "adjacency list of vertex {v} disagrees with rotation table"
                )));
            }
        }
        g.lambda = file.lambda;
        Ok(g)
    }
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<BTreeSet<(u32, u32)>> {
    let mut edges = BTreeSet::new();
    let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<u32, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && edges.insert((a, b)) {
                continue;
            }
            *leftover.entry(a).or_default() += 1;
            *leftover.entry(b).or_default() += 1;
        }
        if !leftover.is_empty() {
            let nodes: Vec<u32> = leftover.keys().copied().collect();
            let any_valid = nodes.iter().enumerate().any(|(k, &a)| {
                nodes[k + 1..].iter().any(|&b| !edges.contains(&(a, b)))
            });
            if !any_valid {
                return None;
            }
        }
        stubs = leftover
            .into_iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c))
            .collect();
    }
    Some(edges)
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn deflate(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

fn deflate_and_normalize(x: &mut [f64]) {
    deflate(x);
    let nx = norm(x);
    x.iter_mut().for_each(|v| *v /= nx);
}

/// The Ramanujan threshold `2√(d-1)/d`.
pub fn ramanujan_bound(d: usize) -> f64 {
    2.0 * ((d - 1) as f64).sqrt() / d as f64
}

/// Side of the double cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

/// Double cover of a regular graph with edge ids in `[n·d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleCover {
    base: RegularGraph,
}

impl DoubleCover {
    pub fn new(base: RegularGraph) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &RegularGraph {
        &self.base
    }

    pub fn base_mut(&mut self) -> &mut RegularGraph {
        &mut self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn d(&self) -> usize {
        self.base.d
    }

    /// `N = n·d`.
    pub fn edge_count(&self) -> usize {
        self.base.n * self.base.d
    }

    /// Edge at `port` of `vertex` on `side`.
    #[inline]
    pub fn edge_at(&self, side: Side, vertex: usize, port: usize) -> usize {
        let d = self.base.d;
        match side {
            Side::Left => vertex * d + port,
            Side::Right => {
                let (u, i) = self.base.rotate(vertex, port);
                u * d + i
            }
        }
    }

    /// `(vertex, port)` of edge `e` at its endpoint on `side`.
    #[inline]
    pub fn endpoint(&self, edge: usize, side: Side) -> (usize, usize) {
        let d = self.base.d;
        let (u, i) = (edge / d, edge % d);
        match side {
            Side::Left => (u, i),
            Side::Right => self.base.rotate(u, i),
        }
    }

    pub fn edges_at(&self, side: Side, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.base.d).map(move |i| self.edge_at(side, vertex, i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StartDistribution {
    /// Start at a fixed left vertex.
    PointMass(usize),
    /// Start at a uniformly random left vertex.
    Uniform,
}

/// A walk on the double cover starting on the left side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    /// `(side, vertex)` for each of the `length + 1` visited vertices.
    pub vertices: Vec<(Side, usize)>,
    pub edges: Vec<usize>,
}

pub fn random_walk<R: Rng + ?Sized>(
    cover: &DoubleCover,
    start: StartDistribution,
    length: usize,
    rng: &mut R,
) -> Walk {
    let mut v = match start {
        StartDistribution::PointMass(v) => v,
        StartDistribution::Uniform => rng.random_range(0..cover.n()),
    };
    let mut side = Side::Left;
    let mut vertices = Vec::with_capacity(length + 1);
    let mut edges = Vec::with_capacity(length);
    vertices.push((side, v));
    for _ in 0..length {
        let port = rng.random_range(0..cover.d());
        let e = cover.edge_at(side, v, port);
        side = side.flip();
        v = cover.endpoint(e, side).0;
        edges.push(e);
        vertices.push((side, v));
    }
    Walk { vertices, edges }
}

/// Exact distribution of a `steps`-step random walk on `G` from `start`.
pub fn walk_distribution(graph: &RegularGraph, start: usize, steps: usize) -> Vec<f64> {
    let mut mu = vec![0.0; graph.n()];
    mu[start] = 1.0;
    let mut next = vec![0.0; graph.n()];
    for _ in 0..steps {
        graph.apply_normalized(&mu, &mut next);
        std::mem::swap(&mut mu, &mut next);
    }
    mu
}

pub mod spectrum;

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn dense_lambda(g: &RegularGraph) -> f64 {
        let n = g.n();
        let m = DMatrix::from_row_slice(n, n, &g.normalized_adjacency());
        let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
        eig[1..].iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    #[test]
    fn k4_is_the_only_option() {
        let g = RegularGraph::random_regular(4, 3, 11).unwrap();
        assert!(g.is_simple());
        for v in 0..4 {
            let mut nb: Vec<usize> = g.neighbors(v).collect();
            nb.sort();
            let expect: Vec<usize> = (0..4).filter(|&w| w != v).collect();
            assert_eq!(nb, expect);
        }
    }

    #[test]
    fn precondition_errors() {
        assert!(RegularGraph::random_regular(3, 3, 0).is_err());
        assert!(RegularGraph::random_regular(5, 3, 0).is_err());
        assert!(RegularGraph::random_regular(5, 0, 0).is_err());
    }

    #[test]
    fn degree_audit_n100_d16() {
        let g = RegularGraph::random_regular(100, 16, 7).unwrap();
        let mut degree = vec![0usize; 100];
        for v in 0..100 {
            for w in g.neighbors(v) {
                degree[w] += 1;
                assert_ne!(w, v);
            }
        }
        assert!(degree.iter().all(|&k| k == 16));
        assert!(g.is_simple());
        assert_eq!(g, RegularGraph::random_regular(100, 16, 7).unwrap());
    }

    #[test]
    fn rotation_is_involution() {
        let g = RegularGraph::random_regular(30, 5, 2).unwrap();
        for v in 0..30 {
            for i in 0..5 {
                let (w, j) = g.rotate(v, i);
                assert_eq!(g.rotate(w, j), (v, i));
            }
        }
        let bad = vec![(1, 0), (1, 0)];
        assert!(RegularGraph::from_rotation(2, 1, bad).is_err());
    }

    #[test]
    fn k4_lambda_one_third() {
        let mut g = RegularGraph::complete(4).unwrap();
        assert!((dense_lambda(&g) - 1.0 / 3.0).abs() < 1e-12);
        let l = g.second_eigenvalue(DEFAULT_EIGEN_TOLERANCE).unwrap();
        assert!((l - 1.0 / 3.0).abs() < 1e-8, "{l}");
        assert_eq!(g.lambda(), Some(l));
    }

    #[test]
    fn complete_graph_spectrum() {
        for n in [5, 8, 13] {
            let mut g = RegularGraph::complete(n).unwrap();
            let l = g.second_eigenvalue(DEFAULT_EIGEN_TOLERANCE).unwrap();
            assert!((l - 1.0 / (n - 1) as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn power_iteration_matches_dense_oracle() {
        for seed in 0..4 {
            let mut g = RegularGraph::random_regular(60, 6, seed).unwrap();
            let oracle = dense_lambda(&g);
            let l = g.second_eigenvalue(DEFAULT_EIGEN_TOLERANCE).unwrap();
            assert!((l - oracle).abs() < 1e-6, "{l} vs {oracle}");
        }
    }

    #[test]
    fn bipartite_and_disconnected_report_one() {
        let mut c6 = RegularGraph::cycle(6).unwrap();
        assert!((c6.second_eigenvalue(1e-8).unwrap() - 1.0).abs() < 1e-6);
        // two disjoint triangles
        let nb = vec![
            vec![1, 2],
            vec![0, 2],
            vec![0, 1],
            vec![4, 5],
            vec![3, 5],
            vec![3, 4],
        ];
        let mut g = RegularGraph::from_neighbors(&nb).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.second_eigenvalue(1e-8).unwrap(), 1.0);
    }

    #[test]
    fn ramanujan_reference() {
        assert!((ramanujan_bound(16) - 0.48412).abs() < 1e-4);
    }

    #[test]
    fn cover_indexing() {
        let cover = DoubleCover::new(RegularGraph::complete(4).unwrap());
        assert_eq!(cover.edge_count(), 12);
        let mut seen = [0; 12];
        for side in [Side::Left, Side::Right] {
            for v in 0..4 {
                for (port, e) in cover.edges_at(side, v).enumerate() {
                    assert_eq!(cover.endpoint(e, side), (v, port));
                    seen[e] += 1;
                }
            }
        }
        assert!(seen.iter().all(|&c| c == 2));
        // the two covering edges of a base edge differ
        let e = cover.edge_at(Side::Left, 0, 0);
        let (w, j) = cover.endpoint(e, Side::Right);
        assert_ne!(cover.edge_at(Side::Left, w, j), e);
        let big = DoubleCover::new(RegularGraph::random_regular(100, 16, 1).unwrap());
        assert_eq!(big.edge_count(), 1600);
    }

    #[test]
    fn walks_alternate_and_use_edges() {
        let cover = DoubleCover::new(RegularGraph::complete(4).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let walk = random_walk(&cover, StartDistribution::PointMass(2), 50, &mut rng);
        assert_eq!(walk.vertices.len(), 51);
        for (t, &e) in walk.edges.iter().enumerate() {
            let (s0, v0) = walk.vertices[t];
            let (s1, v1) = walk.vertices[t + 1];
            assert_eq!(s1, s0.flip());
            assert_eq!(cover.endpoint(e, s0).0, v0);
            assert_eq!(cover.endpoint(e, s1).0, v1);
        }
    }

    #[test]
    fn single_step_is_uniform_over_ports() {
        let cover = DoubleCover::new(RegularGraph::complete(4).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut counts = [0usize; 3];
        let trials = 30_000;
        for _ in 0..trials {
            let w = random_walk(&cover, StartDistribution::PointMass(0), 1, &mut rng);
            counts[w.edges[0] % 3] += 1;
        }
        for c in counts {
            let f = c as f64 / trials as f64;
            assert!((f - 1.0 / 3.0).abs() < 0.02);
        }
    }

    #[test]
    fn long_walk_visits_each_side_uniformly() {
        let cover = DoubleCover::new(RegularGraph::random_regular(10, 4, 3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let walk = random_walk(&cover, StartDistribution::PointMass(0), 200_000, &mut rng);
        let mut counts = [[0usize; 10]; 2];
        for &(s, v) in &walk.vertices {
            counts[s.index()][v] += 1;
        }
        for side in counts {
            let total: usize = side.iter().sum();
            for c in side {
                assert!((c as f64 / total as f64 - 0.1).abs() < 0.01);
            }
        }
    }

    #[test]
    fn leaf_distribution_mixes_within_lambda_power() {
        // ‖μ_L - 1/n‖ ≤ λ^L for L ≥ ln n / ln(d/4), checked on dense propagation
        for seed in 0..3 {
            let mut g = RegularGraph::random_regular(64, 12, seed).unwrap();
            let lambda = g.second_eigenvalue(DEFAULT_EIGEN_TOLERANCE).unwrap();
            let l1 = ((64f64).ln() / (3f64).ln()).ceil() as usize;
            for steps in [l1, l1 + 1, 2 * l1] {
                let mu = walk_distribution(&g, 0, steps);
                let dev = mu.iter().map(|m| (m - 1.0 / 64.0).powi(2)).sum::<f64>().sqrt();
                assert!(dev <= lambda.powi(steps as i32) + 1e-12);
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let mut g = RegularGraph::random_regular(20, 4, 8).unwrap();
        g.second_eigenvalue(1e-8).unwrap();
        let f = g.to_file(Some(1e-8), Some(8));
        let json = serde_json::to_string(&f).unwrap();
        let back = RegularGraph::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
