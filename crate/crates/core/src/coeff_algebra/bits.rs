//! GF(2) linear algebra on packed bit rows, with a sparse column-reduction
//! path for large boundary-type matrices.

use super::matrix::RingMatrix;
use super::ring::Gf2;

/// Matrices with more entries than this go through the sparse reducer.
pub const DENSE_ENTRY_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// Dense row-major GF(2) matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { rows: vec![BitVec::zeros(cols); rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { rows, cols }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[BitVec], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_ring(m: &RingMatrix<Gf2>) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for (i, j, _) in m.nonzero_entries() {
            out.set(i, j, true);
        }
        out
    }

    pub fn to_ring(&self) -> RingMatrix<Gf2> {
        RingMatrix::from_bits(self.nrows(), self.cols, |i, j| self.get(i, j))
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b)
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows(), "bit matrix shape mismatch");
        let mut out = Self::zeros(self.nrows(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for k in r.ones() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
        out
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len());
        let mut out = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.nrows(), other.nrows());
        let mut out = Self::zeros(self.nrows(), self.cols + other.cols);
        for i in 0..self.nrows() {
            for j in self.rows[i].ones() {
                out.set(i, j, true);
            }
            for j in other.rows[i].ones() {
                out.set(i, self.cols + j, true);
            }
        }
        out
    }

    /// Row echelon reduction in place. Returns the pivot columns in order.
    fn echelon(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot = self.rows[r].clone();
            let start = if reduced { 0 } else { r + 1 };
            for i in start..self.rows.len() {
                if i != r && self.rows[i].get(c) {
                    self.rows[i].xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.nrows() * self.cols > DENSE_ENTRY_LIMIT {
            return SparseColumns::from_dense(self).reduce().rank;
        }
        self.clone().echelon(false).len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.echelon(true);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::unit(self.cols, f);
            for (r, &p) in pivots.iter().enumerate() {
                if m.rows[r].get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, chosen among the columns of `self`.
    pub fn image(&self) -> Vec<BitVec> {
        let pivots = self.clone().echelon(false);
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.nrows());
        let aug = self.hstack(&BitMatrix::from_columns(std::slice::from_ref(b), self.nrows()));
        let mut m = aug;
        let pivots = m.echelon(true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if m.rows[r].get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

/// Column-sparse GF(2) matrix reduced by the standard lowest-one algorithm.
#[derive(Clone, Debug, Default)]
pub struct SparseColumns {
    pub nrows: usize,
    pub cols: Vec<Vec<usize>>,
}

/// Outcome of a sparse column reduction.
#[derive(Clone, Debug)]
pub struct SparseReduction {
    pub rank: usize,
    /// Reduced columns; zero columns correspond to kernel vectors.
    pub reduced: Vec<Vec<usize>>,
    /// Column operations: `reduced[j] = M * ops[j]`.
    pub ops: Vec<Vec<usize>>,
}

fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl SparseColumns {
    pub fn from_dense(m: &BitMatrix) -> Self {
        let mut cols = vec![Vec::new(); m.ncols()];
        for i in 0..m.nrows() {
            for j in m.row(i).ones() {
                cols[j].push(i);
            }
        }
        SparseColumns { nrows: m.nrows(), cols }
    }

    pub fn reduce(&self) -> SparseReduction {
        let mut reduced = self.cols.clone();
        let mut ops: Vec<Vec<usize>> = (0..self.cols.len()).map(|j| vec![j]).collect();
        let mut low_owner: Vec<Option<usize>> = vec![None; self.nrows];
        let mut rank = 0;
        for j in 0..reduced.len() {
            while let Some(&low) = reduced[j].last() {
                match low_owner[low] {
                    Some(k) => {
                        reduced[j] = sym_diff(&reduced[j], &reduced[k]);
                        ops[j] = sym_diff(&ops[j], &ops[k]);
                    }
                    None => {
                        low_owner[low] = Some(j);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        SparseReduction { rank, reduced, ops }
    }

    /// Kernel basis read off from the zero columns of the reduction.
    pub fn kernel(&self) -> Vec<BitVec> {
        let red = self.reduce();
        let n = self.cols.len();
        red.reduced
            .iter()
            .zip(&red.ops)
            .filter(|(c, _)| c.is_empty())
            .map(|(_, op)| {
                let mut v = BitVec::zeros(n);
                for &k in op {
                    v.set(k, true);
                }
                v
            })
            .collect()
    }
}

/// Rank, kernel and image of a GF(2) matrix.
#[derive(Clone, Debug)]
pub struct F2RankInfo {
    pub rank: usize,
    pub kernel: Vec<BitVec>,
    pub image: Vec<BitVec>,
}

pub fn f2_rank(m: &RingMatrix<Gf2>) -> usize {
    BitMatrix::from_ring(m).rank()
}

pub fn f2_rank_info(m: &RingMatrix<Gf2>) -> F2RankInfo {
    let b = BitMatrix::from_ring(m);
    let kernel = if b.nrows() * b.ncols() > DENSE_ENTRY_LIMIT {
        SparseColumns::from_dense(&b).kernel()
    } else {
        b.kernel()
    };
    let image = b.image();
    F2RankInfo { rank: image.len(), kernel, image }
}
