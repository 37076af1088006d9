//! Expander codes: words on the edges of a double cover whose view at every
//! vertex is a codeword of the inner code.
//!
//! Port order is the rotation-map port index on both sides.

use std::io::{BufRead, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::graph::{DoubleCover, Side};
use crate::linalg::row_reduce;
use crate::recon::SmoothReconstruction;

/// Largest length for which the global parity system is eliminated.
pub const DIMENSION_LENGTH_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
pub struct TannerCode {
    cover: DoubleCover,
    inner: SmoothReconstruction,
    warnings: Vec<String>,
    generator: Option<Vec<Vec<u8>>>,
}

impl TannerCode {
    pub fn build(inner: SmoothReconstruction, cover: DoubleCover) -> Result<Self> {
        let d = cover.d();
        if inner.length() != d {
            return Err(Error::DegreeMismatch {
                inner: inner.length(),
                degree: d,
            });
        }
        let mut warnings = Vec::new();
        let code = inner.code();
        if 2 * code.dimension() <= d {
            warnings.push(format!(
                "inner rate {}/{} is at most 1/2; the rate bound is vacuous",
                code.dimension(),
                d
            ));
        }
        if let (Some(lambda), Some(delta)) = (cover.base().lambda(), code.relative_distance()) {
            if 2.0 * lambda > delta {
                warnings.push(format!(
                    "2λ = {:.4} exceeds inner relative distance {:.4}",
                    2.0 * lambda,
                    delta
                ));
            }
        }
        Ok(Self {
            cover,
            inner,
            warnings,
            generator: None,
        })
    }

    pub fn cover(&self) -> &DoubleCover {
        &self.cover
    }

    pub fn inner(&self) -> &SmoothReconstruction {
        &self.inner
    }

    pub fn inner_code(&self) -> &LinearCode {
        self.inner.code()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn p(&self) -> u32 {
        self.inner_code().field().p()
    }

    /// `N = n·d`.
    pub fn length(&self) -> usize {
        self.cover.edge_count()
    }

    /// Inner rate lower bound `2r0 - 1`, clamped at zero.
    pub fn rate_lower_bound(&self) -> f64 {
        (2.0 * self.inner_code().rate() - 1.0).max(0.0)
    }

    pub fn local_view(&self, word: &[u8], side: Side, vertex: usize) -> Vec<u8> {
        self.cover
            .edges_at(side, vertex)
            .map(|e| word[e])
            .collect()
    }

    pub fn is_codeword(&self, word: &[u8]) -> bool {
        if word.len() != self.length() {
            return false;
        }
        let inner = self.inner_code();
        [Side::Left, Side::Right].into_iter().all(|side| {
            (0..self.cover.n()).all(|v| inner.is_codeword(&self.local_view(word, side, v)))
        })
    }

    /// Per-vertex reduced inner parity rows routed onto edge ids:
    /// `2n·(d - k0)` rows of length `N`.
    pub fn global_parity_matrix(&self) -> Vec<Vec<u8>> {
        global_parity_rows(self.inner_code(), &self.cover)
    }

    /// Eliminates the global parity system and stores a nullspace basis.
    pub fn compute_dimension_and_generator(&mut self) -> Result<usize> {
        let n = self.length();
        if n > DIMENSION_LENGTH_LIMIT {
            return Err(Error::TooLarge {
                what: "code length for elimination",
                size: n as u128,
                limit: DIMENSION_LENGTH_LIMIT as u128,
            });
        }
        let inner = self.inner_code();
        let reduced = row_reduce(self.p(), n, &self.global_parity_matrix());
        let basis = reduced.nullspace_basis(inner.ops());
        let (k, k0, d) = (basis.len(), inner.dimension(), inner.length());
        // k/N ≥ 2·k0/d - 1  ⇔  k·d ≥ N·(2·k0 - d)
        if ((k * d) as i128) < (n as i128) * (2 * k0 as i128 - d as i128) {
            return Err(Error::RateBoundViolated { k, n, k0, d });
        }
        self.generator = Some(basis);
        Ok(k)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.generator.as_ref().map(Vec::len)
    }

    pub fn generator(&self) -> Result<&[Vec<u8>]> {
        self.generator.as_deref().ok_or(Error::GeneratorUnavailable)
    }

    pub fn zero_codeword(&self) -> Vec<u8> {
        vec![0; self.length()]
    }

    /// Uniform combination of the basis rows.
    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<u8>> {
        let basis = self.generator()?;
        let coeffs: Vec<u8> = (0..basis.len())
            .map(|_| rng.random_range(0..self.p()) as u8)
            .collect();
        Ok(self.combine(&coeffs))
    }

    /// `Σ coeffs[j] · basis[j]`.
    pub fn combine(&self, coeffs: &[u8]) -> Vec<u8> {
        let ops = self.inner_code().ops();
        let mut out = self.zero_codeword();
        if let Some(basis) = &self.generator {
            for (&a, row) in coeffs.iter().zip(basis) {
                if a == 0 {
                    continue;
                }
                for (o, &x) in out.iter_mut().zip(row) {
                    *o = ops.add(*o, ops.mul(a, x));
                }
            }
        }
        out
    }

    pub fn graph_hash(&self) -> String {
        graph_hash(&self.cover)
    }
}

pub fn global_parity_rows(inner: &LinearCode, cover: &DoubleCover) -> Vec<Vec<u8>> {
    let ops = inner.ops();
    let local = inner.reduced_parity_rows();
    let len = cover.edge_count();
    let mut rows = Vec::with_capacity(2 * cover.n() * local.len());
    for side in [Side::Left, Side::Right] {
        for v in 0..cover.n() {
            let edges: Vec<usize> = cover.edges_at(side, v).collect();
            for r in local {
                let mut row = vec![0u8; len];
                for (&e, &c) in edges.iter().zip(r) {
                    row[e] = ops.add(row[e], c);
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// SHA-256 over the rotation table of the base graph.
pub fn graph_hash(cover: &DoubleCover) -> String {
    let g = cover.base();
    let mut h = Sha256::new();
    h.update((g.n() as u64).to_le_bytes());
    h.update((g.d() as u64).to_le_bytes());
    for v in 0..g.n() {
        for i in 0..g.d() {
            let (w, j) = g.rotate(v, i);
            h.update((w as u32).to_le_bytes());
            h.update((j as u32).to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// First line of a stored word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordHeader {
    pub field: FieldDescriptor,
    pub length: usize,
    pub graph_hash: String,
}

/// JSON header line followed by one byte per symbol.
pub fn write_word<W: Write>(mut w: W, header: &WordHeader, word: &[u8]) -> Result<()> {
    if word.len() != header.length {
        return Err(Error::LengthMismatch {
            what: "stored word",
            expected: header.length,
            found: word.len(),
        });
    }
    serde_json::to_writer(&mut w, header)?;
    w.write_all(b"\n")?;
    w.write_all(word)?;
    Ok(())
}

pub fn read_word<R: BufRead>(mut r: R) -> Result<(WordHeader, Vec<u8>)> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    let header: WordHeader = serde_json::from_str(line.trim_end())?;
    let mut word = Vec::with_capacity(header.length);
    r.read_to_end(&mut word)?;
    if word.len() != header.length {
        return Err(Error::Artifact(format!(
            "word body has {} symbols, header says {}",
            word.len(),
            header.length
        )));
    }
    if let Some(&s) = word.iter().find(|&&s| s as u32 >= header.field.p) {
        return Err(Error::SymbolOutOfRange {
            symbol: s as u32,
            p: header.field.p,
        });
    }
    Ok((header, word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::graph::RegularGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn parity_code(n: usize, d: usize, seed: u64) -> TannerCode {
        let f = FieldSpec::prime(2).unwrap();
        let inner = SmoothReconstruction::single_parity(&LinearCode::single_parity(&f, d).unwrap()).unwrap();
        let g = if n == d + 1 {
            RegularGraph::complete(n).unwrap()
        } else {
            RegularGraph::random_regular(n, d, seed).unwrap()
        };
        TannerCode::build(inner, DoubleCover::new(g)).unwrap()
    }

    #[test]
    fn k4_single_parity() {
        let mut c = parity_code(4, 3, 0);
        assert!(c.warnings().is_empty());
        assert_eq!(c.length(), 12);
        let h = c.global_parity_matrix();
        assert_eq!(h.len(), 8);
        assert!(h.iter().all(|r| r.len() == 12));
        let k = c.compute_dimension_and_generator().unwrap();
        assert!(k >= 4);
        for g in c.generator().unwrap() {
            assert!(c.is_codeword(g));
        }
    }

    #[test]
    fn degree_mismatch() {
        let f = FieldSpec::prime(2).unwrap();
        let inner = SmoothReconstruction::single_parity(&LinearCode::single_parity(&f, 8).unwrap()).unwrap();
        let g = RegularGraph::random_regular(20, 16, 1).unwrap();
        assert!(matches!(
            TannerCode::build(inner, DoubleCover::new(g)),
            Err(Error::DegreeMismatch { inner: 8, degree: 16 })
        ));
    }

    #[test]
    fn views() {
        let c = parity_code(10, 4, 3);
        let zero = c.zero_codeword();
        assert!(c.is_codeword(&zero));
        assert!(c.local_view(&zero, Side::Left, 2).iter().all(|&x| x == 0));
        let e = 17;
        let mut ind = zero.clone();
        ind[e] = 1;
        assert!(!c.is_codeword(&ind));
        for side in [Side::Left, Side::Right] {
            let (v, port) = c.cover().endpoint(e, side);
            let view = c.local_view(&ind, side, v);
            assert_eq!(view.iter().filter(|&&x| x != 0).count(), 1);
            assert_eq!(view[port], 1);
        }
    }

    #[test]
    fn random_codewords_are_codewords() {
        let mut c = parity_code(12, 4, 5);
        assert!(matches!(c.random_codeword(&mut ChaCha8Rng::seed_from_u64(0)), Err(Error::GeneratorUnavailable)));
        c.compute_dimension_and_generator().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = c.random_codeword(&mut rng).unwrap();
        let b = c.random_codeword(&mut rng).unwrap();
        assert!(c.is_codeword(&a) && c.is_codeword(&b));
        assert_ne!(a, b);
        assert_eq!(c.combine(&vec![0; c.dimension().unwrap()]), c.zero_codeword());
    }

    #[test]
    fn full_space_inner_imposes_nothing() {
        let f = FieldSpec::prime(2).unwrap();
        let full = LinearCode::from_parity_checks(&f, 3, vec![]).unwrap();
        let cover = DoubleCover::new(RegularGraph::complete(4).unwrap());
        let rows = global_parity_rows(&full, &cover);
        assert!(rows.is_empty());
        assert_eq!(row_reduce(2, 12, &rows).free_columns().len(), 12);
    }

    #[test]
    fn word_file_round_trip() {
        let c = parity_code(10, 4, 2);
        let header = WordHeader {
            field: c.inner_code().field().descriptor(),
            length: c.length(),
            graph_hash: c.graph_hash(),
        };
        let mut word = c.zero_codeword();
        word[3] = 1;
        let mut buf = Vec::new();
        write_word(&mut buf, &header, &word).unwrap();
        let (h2, w2) = read_word(&buf[..]).unwrap();
        assert_eq!(h2, header);
        assert_eq!(w2, word);
        buf.pop();
        assert!(read_word(&buf[..]).is_err());
    }
}
