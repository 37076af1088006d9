//! Row reduction over prime fields.
//!
//! GF(2) goes through packed 64-bit rows; other primes use dense byte rows.
//! Both produce the unique reduced row echelon form, so the two paths can be
//! checked against each other.

/// Symbol arithmetic in GF(p) for a prime `p < 256`.
#[derive(Debug, Clone)]
pub struct PrimeOps {
    p: u32,
    inv: Vec<u8>,
}

impl PrimeOps {
    pub fn new(p: u32) -> Self {
        assert!((2..256).contains(&p), "prime {p} out of byte range");
        let mut inv = vec![0u8; p as usize];
        for a in 1..p {
            let b = (1..p).find(|&b| a * b % p == 1).expect("p is prime");
            inv[a as usize] = b as u8;
        }
        Self { p, inv }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.p - b as u32) % self.p) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        ((self.p - a as u32) % self.p) as u8
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        (a as u32 * b as u32 % self.p) as u8
    }

    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
        (s % self.p as u64) as u8
    }
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    pub cols: usize,
    pub rows: Vec<Vec<u8>>,
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the right nullspace. Row `j` has a 1 at the `j`-th free
    /// column and zeros at every other free column.
    pub fn nullspace_basis(&self, ops: &PrimeOps) -> Vec<Vec<u8>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![0u8; self.cols];
                v[f] = 1;
                for (row, &c) in self.rows.iter().zip(&self.pivots) {
                    v[c] = ops.neg(row[f]);
                }
                v
            })
            .collect()
    }
}

pub fn row_reduce(p: u32, cols: usize, rows: &[Vec<u8>]) -> RowEchelon {
    if p == 2 {
        row_reduce_bits(cols, rows)
    } else {
        row_reduce_dense(&PrimeOps::new(p), cols, rows)
    }
}

pub fn row_reduce_dense(ops: &PrimeOps, cols: usize, rows: &[Vec<u8>]) -> RowEchelon {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = ops.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = ops.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = ops.sub(*x, ops.mul(f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    RowEchelon {
        cols,
        rows: m,
        pivots,
    }
}

/// Packed GF(2) rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(cols: usize) -> Self {
        Self {
            words: vec![0; cols.div_ceil(64)],
        }
    }

    pub fn from_bytes(v: &[u8]) -> Self {
        let mut row = Self::zeros(v.len());
        for (i, &b) in v.iter().enumerate() {
            if b & 1 == 1 {
                row.set(i);
            }
        }
        row
    }

    pub fn to_bytes(&self, cols: usize) -> Vec<u8> {
        (0..cols).map(|i| self.get(i) as u8).collect()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn dot(&self, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

pub fn row_reduce_bits(cols: usize, rows: &[Vec<u8>]) -> RowEchelon {
    let mut m: Vec<BitRow> = rows.iter().map(|r| BitRow::from_bytes(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i].get(c)) else {
            continue;
        };
        m.swap(r, pr);
        let (head, tail) = m.split_at_mut(r);
        let (pivot, rest) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if row.get(c) {
                row.xor_assign(pivot);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    RowEchelon {
        cols,
        rows: m.iter().map(|row| row.to_bytes(cols)).collect(),
        pivots,
    }
}

/// `rows · v` over GF(p).
pub fn mul_vec(ops: &PrimeOps, rows: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    rows.iter().map(|r| ops.dot(r, v)).collect()
}
