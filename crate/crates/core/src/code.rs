//! Linear codes over GF(p) defined by parity checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldSpec};
use crate::linalg::{mul_vec, row_reduce, PrimeOps, RowEchelon};

/// Codes with at most this many codewords get an exact minimum distance.
pub const DISTANCE_ENUMERATION_LIMIT: u128 = 1 << 20;

/// A linear code `C0 ⊆ GF(p)^d` given as the kernel of a parity matrix.
///
/// The generator is systematic on `info_positions` (the free columns of the
/// reduced parity matrix): encoding writes the message there verbatim and
/// every coordinate stays in the original order.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: FieldSpec,
    ops: PrimeOps,
    length: usize,
    parity: Vec<Vec<u8>>,
    reduced: RowEchelon,
    generator: Vec<Vec<u8>>,
    info_positions: Vec<usize>,
    min_distance: Option<usize>,
}

/// JSON form of a code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field: FieldDescriptor,
    pub length: usize,
    pub parity: Vec<Vec<u8>>,
    pub dimension: usize,
}

impl LinearCode {
    pub fn from_parity_checks(field: &FieldSpec, length: usize, parity: Vec<Vec<u8>>) -> Result<Self> {
        if !field.is_prime_field() {
            return Err(Error::InvalidParameter(format!(
                "code symbols must live in a prime field, got {field}"
            )));
        }
        if field.p() >= 256 {
            return Err(Error::AlphabetTooLarge(field.p()));
        }
        let p = field.p();
        for row in &parity {
            if row.len() != length {
                return Err(Error::LengthMismatch {
                    what: "parity row",
                    expected: length,
                    found: row.len(),
                });
            }
            if let Some(&s) = row.iter().find(|&&s| s as u32 >= p) {
                return Err(Error::SymbolOutOfRange { symbol: s as u32, p });
            }
        }
        let ops = PrimeOps::new(p);
        // Eliminating on reversed columns puts pivots as far right as possible,
        // so the message occupies the leading free coordinates.
        let reversed: Vec<Vec<u8>> = parity
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let mut reduced = row_reduce(p, length, &reversed);
        for row in &mut reduced.rows {
            row.reverse();
        }
        for c in &mut reduced.pivots {
            *c = length - 1 - *c;
        }
        let generator = reduced.nullspace_basis(&ops);
        let info_positions = reduced.free_columns();
        assert!(
            generator
                .iter()
                .all(|g| mul_vec(&ops, &parity, g).iter().all(|&x| x == 0)),
            "generator rows must satisfy every parity check"
        );
        let mut code = Self {
            field: field.clone(),
            ops,
            length,
            parity,
            reduced,
            generator,
            info_positions,
            min_distance: None,
        };
        if code.codeword_count() <= DISTANCE_ENUMERATION_LIMIT {
            code.min_distance = Some(code.min_distance_bruteforce()?);
        }
        Ok(code)
    }

    /// Single parity check code: all symbols sum to zero.
    pub fn single_parity(field: &FieldSpec, length: usize) -> Result<Self> {
        Self::from_parity_checks(field, length, vec![vec![1; length]])
    }

    /// Repetition code from the pairwise equalities `c_i - c_j = 0`.
    pub fn repetition(field: &FieldSpec, length: usize) -> Result<Self> {
        let minus_one = (field.p() - 1) as u8;
        let mut rows = Vec::new();
        for i in 0..length {
            for j in i + 1..length {
                let mut row = vec![0u8; length];
                row[i] = 1;
                row[j] = minus_one;
                rows.push(row);
            }
        }
        Self::from_parity_checks(field, length, rows)
    }

    /// The binary [7, 4] Hamming code.
    pub fn hamming_7_4() -> Result<Self> {
        let field = FieldSpec::prime(2)?;
        let rows = (0..3)
            .map(|bit| (1..=7u32).map(|c| ((c >> bit) & 1) as u8).collect())
            .collect();
        Self::from_parity_checks(&field, 7, rows)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ops(&self) -> &PrimeOps {
        &self.ops
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.length as f64
    }

    /// A code equal to `{0}` is kept but flagged.
    pub fn is_degenerate(&self) -> bool {
        self.dimension() == 0
    }

    pub fn parity_rows(&self) -> &[Vec<u8>] {
        &self.parity
    }

    /// Independent parity rows (reduced echelon form), `d - k0` of them.
    pub fn reduced_parity_rows(&self) -> &[Vec<u8>] {
        &self.reduced.rows
    }

    pub fn parity_rank(&self) -> usize {
        self.reduced.rank()
    }

    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    pub fn codeword_count(&self) -> u128 {
        (self.field.p() as u128)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                what: "message",
                expected: self.dimension(),
                found: message.len(),
            });
        }
        let mut out = vec![0u8; self.length];
        for (&m, g) in message.iter().zip(&self.generator) {
            if m as u32 >= self.field.p() {
                return Err(Error::SymbolOutOfRange {
                    symbol: m as u32,
                    p: self.field.p(),
                });
            }
            if m == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(g) {
                *o = self.ops.add(*o, self.ops.mul(m, x));
            }
        }
        Ok(out)
    }

    pub fn is_codeword(&self, v: &[u8]) -> bool {
        v.len() == self.length
            && v.iter().all(|&s| (s as u32) < self.field.p())
            && self.reduced.rows.iter().all(|r| self.ops.dot(r, v) == 0)
    }

    /// Exact minimum weight over nonzero codewords by enumeration.
    pub fn min_distance_bruteforce(&self) -> Result<usize> {
        let count = self.codeword_count();
        if count > DISTANCE_ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                what: "codeword enumeration",
                size: count,
                limit: DISTANCE_ENUMERATION_LIMIT,
            });
        }
        let k = self.dimension();
        if k == 0 {
            // {0} has no nonzero word; report the conventional d + 1.
            return Ok(self.length + 1);
        }
        let p = self.field.p() as u8;
        let mut digits = vec![0u8; k];
        let mut word = vec![0u8; self.length];
        let mut best = usize::MAX;
        // Base-p counter; bumping digit j adds g_j once (p adds cancel on wrap).
        loop {
            let mut j = 0;
            loop {
                if j == k {
                    return Ok(best);
                }
                for (w, &g) in word.iter_mut().zip(&self.generator[j]) {
                    *w = self.ops.add(*w, g);
                }
                digits[j] += 1;
                if digits[j] == p {
                    digits[j] = 0;
                    j += 1;
                } else {
                    break;
                }
            }
            let weight = word.iter().filter(|&&s| s != 0).count();
            if weight > 0 {
                best = best.min(weight);
            }
        }
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.min_distance
    }

    /// δ0 = distance / d, when the distance was enumerated.
    pub fn relative_distance(&self) -> Option<f64> {
        self.min_distance.map(|w| w as f64 / self.length as f64)
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            field: self.field.descriptor(),
            length: self.length,
            parity: self.parity.clone(),
            dimension: self.dimension(),
        }
    }

    pub fn from_descriptor(desc: &CodeDescriptor) -> Result<Self> {
        let field = FieldSpec::from_descriptor(&desc.field)?;
        let code = Self::from_parity_checks(&field, desc.length, desc.parity.clone())?;
        if code.dimension() != desc.dimension {
            return Err(Error::Artifact(format!(
                "stored dimension {} disagrees with computed {}",
                desc.dimension,
                code.dimension()
            )));
        }
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn single_parity_d4() {
        let c = LinearCode::single_parity(&gf2(), 4).unwrap();
        assert_eq!(c.dimension(), 3);
        assert_eq!(c.min_distance(), Some(2));
        assert_eq!(c.encode(&[1, 0, 1]).unwrap(), vec![1, 0, 1, 0]);
        assert_eq!(c.encode(&[0, 0, 0]).unwrap(), vec![0; 4]);
        assert!(c.encode(&[1, 0]).is_err());
    }

    #[test]
    fn repetition_d5() {
        let c = LinearCode::repetition(&gf2(), 5).unwrap();
        assert_eq!(c.dimension(), 1);
        assert_eq!(c.min_distance_bruteforce().unwrap(), 5);
        let c3 = LinearCode::repetition(&FieldSpec::prime(3).unwrap(), 4).unwrap();
        assert_eq!(c3.encode(&[2]).unwrap(), vec![2; 4]);
    }

    #[test]
    fn empty_parity_is_full_space() {
        let c = LinearCode::from_parity_checks(&gf2(), 5, vec![]).unwrap();
        assert_eq!(c.dimension(), 5);
        assert_eq!(c.min_distance(), Some(1));
    }

    #[test]
    fn full_rank_parity_is_degenerate() {
        let rows = (0..3).map(|i| (0..3).map(|j| (i == j) as u8).collect()).collect();
        let c = LinearCode::from_parity_checks(&gf2(), 3, rows).unwrap();
        assert!(c.is_degenerate());
        assert!(c.is_codeword(&[0, 0, 0]));
    }

    #[test]
    fn membership() {
        let c = LinearCode::hamming_7_4().unwrap();
        assert_eq!(c.dimension(), 4);
        assert_eq!(c.min_distance(), Some(3));
        assert!(c.is_codeword(&[0; 7]));
        for g in c.generator() {
            assert!(c.is_codeword(g));
            let mut bad = g.clone();
            bad[2] ^= 1;
            assert!(!c.is_codeword(&bad));
        }
        assert!(!c.is_codeword(&[0; 6]));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(LinearCode::from_parity_checks(&gf2(), 3, vec![vec![1, 1]]).is_err());
        assert!(LinearCode::from_parity_checks(&gf2(), 2, vec![vec![1, 2]]).is_err());
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert!(LinearCode::single_parity(&f4, 3).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let c = LinearCode::hamming_7_4().unwrap();
        let json = serde_json::to_string(&c.descriptor()).unwrap();
        let back = LinearCode::from_descriptor(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.generator(), c.generator());
    }

    fn small_code() -> impl Strategy<Value = (u32, usize, Vec<Vec<u8>>)> {
        (prop_oneof![Just(2u32), Just(3u32)], 2usize..8, 0usize..5).prop_flat_map(
            |(p, d, r)| {
                (
                    Just(p),
                    Just(d),
                    proptest::collection::vec(proptest::collection::vec(0u8..p as u8, d), r),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn encode_yields_codewords((p, d, rows) in small_code(), seed in any::<u64>()) {
            let field = FieldSpec::prime(p).unwrap();
            let c = LinearCode::from_parity_checks(&field, d, rows).unwrap();
            prop_assert_eq!(c.dimension(), d - c.parity_rank());
            let msg: Vec<u8> = (0..c.dimension())
                .map(|i| ((seed >> (2 * i)) % p as u64) as u8)
                .collect();
            let word = c.encode(&msg).unwrap();
            prop_assert!(c.is_codeword(&word));
            for (&pos, &m) in c.info_positions().iter().zip(&msg) {
                prop_assert_eq!(word[pos], m);
            }
        }

        #[test]
        fn distance_invariant_under_row_reduction((p, d, rows) in small_code()) {
            let field = FieldSpec::prime(p).unwrap();
            let c = LinearCode::from_parity_checks(&field, d, rows).unwrap();
            let reduced = LinearCode::from_parity_checks(&field, d, c.reduced_parity_rows().to_vec()).unwrap();
            prop_assert_eq!(c.min_distance(), reduced.min_distance());
            prop_assert_eq!(c.dimension(), reduced.dimension());
        }
    }
}
