//! Dense linear algebra over GF(2) and homology of finite chain complexes.
//!
//! Matrices are stored row-major with every row packed into `u64` words.
//! All eliminations pick the first set bit as pivot, so every routine is
//! reproducible bit-for-bit for identical input.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector from 0/1 entries; any nonzero entry counts as 1.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        let bits: Vec<u8> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.iter().enumerate() {
            if *b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Index of the first set bit.
    pub fn first_one(&self) -> Option<usize> {
        first_one(&self.words)
    }

    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        parity(&self.words, &other.words)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
}

fn parity(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones())
        .sum::<u32>()
        % 2
        == 1
}

/// A `rows × cols` matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    ///
    /// All rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, b) in row.iter().enumerate() {
                if *b != 0 {
                    m.set(r, c, true);
                }
            }
        }
        Ok(m)
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {c} has the wrong length");
            for r in 0..rows {
                if col.get(r) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let idx = r * self.stride + c / WORD;
        let mask = 1u64 << (c % WORD);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|w| *w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let dst = r * out.stride;
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = rhs.row_words(k);
                    for (w, s) in out.data[dst..dst + out.stride].iter_mut().zip(src) {
                        *w ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} applied to {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut y = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if parity(self.row_words(r), x.words()) {
                y.set(r, true);
            }
        }
        Ok(y)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Row-reduces a list of packed rows in place to reduced echelon form.
/// Returns the pivot column of each nonzero row, in order; the nonzero rows
/// are moved to the front.
fn reduce_rows(rows: &mut [Vec<u64>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let (word, bit) = (col / WORD, 1u64 << (col % WORD));
        let Some(found) = (next..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row[word] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

fn packed_rows(m: &BitMatrix) -> Vec<Vec<u64>> {
    (0..m.rows).map(|r| m.row_words(r).to_vec()).collect()
}

/// GF(2) rank.
pub fn rank(m: &BitMatrix) -> usize {
    let mut rows = packed_rows(m);
    reduce_rows(&mut rows, m.cols).len()
}

/// Finds some `x` with `m · x = target`, or `None` if `target` is outside the
/// column span. Free variables are set to zero.
pub fn solve(m: &BitMatrix, target: &BitVector) -> Result<Option<BitVector>> {
    if target.len() != m.rows {
        return Err(Error::Dimension(format!(
            "target of length {} for a matrix with {} rows",
            target.len(),
            m.rows
        )));
    }
    // Augment each row with the target bit in column `cols`.
    let aug_cols = m.cols + 1;
    let stride = words_for(aug_cols);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            let mut w = vec![0u64; stride];
            w[..m.stride].copy_from_slice(m.row_words(r));
            if target.get(r) {
                w[m.cols / WORD] |= 1u64 << (m.cols % WORD);
            }
            w
        })
        .collect();
    let pivots = reduce_rows(&mut rows, aug_cols);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = BitVector::zeros(m.cols);
    let rhs = (m.cols / WORD, 1u64 << (m.cols % WORD));
    for (r, &p) in pivots.iter().enumerate() {
        if rows[r][rhs.0] & rhs.1 != 0 {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}

/// A subspace of `F2^ambient`, kept as a reduced echelon basis so that equal
/// subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<BitVector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::spanned_by(ambient, (0..ambient).map(|i| BitVector::unit(ambient, i)))
    }

    pub fn spanned_by<I: IntoIterator<Item = BitVector>>(ambient: usize, vectors: I) -> Self {
        let mut rows: Vec<Vec<u64>> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), ambient, "spanning vector has the wrong length");
                v.words
            })
            .collect();
        let rank = reduce_rows(&mut rows, ambient).len();
        rows.truncate(rank);
        Self {
            ambient,
            basis: rows
                .into_iter()
                .map(|words| BitVector {
                    len: ambient,
                    words,
                })
                .collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut probe = self.basis.clone();
        probe.push(v.clone());
        Subspace::spanned_by(self.ambient, probe).dim() == self.dim()
    }

    /// Image under `map`, which must have `self.ambient()` columns.
    pub fn image(&self, map: &BitMatrix) -> Result<Subspace> {
        let images = self
            .basis
            .iter()
            .map(|b| map.mul_vec(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::spanned_by(map.rows(), images))
    }

    /// Intersection by the Zassenhaus construction: reduce the rows `[u | u]`
    /// and `[w | 0]`; rows whose left half vanishes span the intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(
            self.ambient, other.ambient,
            "ambient mismatch in intersection"
        );
        let n = self.ambient;
        let width = 2 * n;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for u in &self.basis {
            let mut w = vec![0u64; words_for(width)];
            for i in 0..n {
                if u.get(i) {
                    w[i / WORD] |= 1 << (i % WORD);
                    w[(n + i) / WORD] |= 1 << ((n + i) % WORD);
                }
            }
            rows.push(w);
        }
        for u in &other.basis {
            let mut w = vec![0u64; words_for(width)];
            for i in 0..n {
                if u.get(i) {
                    w[i / WORD] |= 1 << (i % WORD);
                }
            }
            rows.push(w);
        }
        let pivots = reduce_rows(&mut rows, width);
        let vectors = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| {
                let mut v = BitVector::zeros(n);
                for i in 0..n {
                    let bit = n + i;
                    if rows[r][bit / WORD] >> (bit % WORD) & 1 == 1 {
                        v.set(i, true);
                    }
                }
                v
            });
        Subspace::spanned_by(n, vectors)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("basis", &self.basis)
            .finish()
    }
}

/// A finite chain complex of GF(2) vector spaces with signed degrees.
///
/// `boundary(d)` maps degree `d` to degree `d - 1` and has shape
/// `dim(d - 1) × dim(d)`. Missing boundaries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexF2 {
    dims: BTreeMap<i64, usize>,
    boundaries: BTreeMap<i64, BitMatrix>,
}

impl ChainComplexF2 {
    pub fn new(dims: BTreeMap<i64, usize>) -> Self {
        let dims = dims.into_iter().filter(|(_, n)| *n > 0).collect();
        Self {
            dims,
            boundaries: BTreeMap::new(),
        }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn set_boundary(&mut self, degree: i64, m: BitMatrix) -> Result<()> {
        let expected = (self.dim(degree - 1), self.dim(degree));
        if m.shape() != expected {
            return Err(Error::Dimension(format!(
                "boundary in degree {degree} has shape {:?}, expected {expected:?}",
                m.shape()
            )));
        }
        self.boundaries.insert(degree, m);
        Ok(())
    }

    pub fn boundary(&self, degree: i64) -> BitMatrix {
        self.boundaries
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(self.dim(degree - 1), self.dim(degree)))
    }

    /// Degrees where `∂∂ ≠ 0`.
    pub fn square_defects(&self) -> Vec<i64> {
        self.boundaries
            .keys()
            .copied()
            .filter(|&d| {
                let outer = self.boundary(d - 1);
                let inner = self.boundary(d);
                !outer
                    .mul(&inner)
                    .expect("boundary shapes are validated on insertion")
                    .is_zero()
            })
            .collect()
    }
}

/// `dim H_d = dim C_d − rank ∂_d − rank ∂_{d+1}` over the support of `c`.
pub fn homology_dims(c: &ChainComplexF2) -> Result<BTreeMap<i64, usize>> {
    let defects = c.square_defects();
    if !defects.is_empty() {
        return Err(Error::InvalidComplex(defects));
    }
    let ranks: BTreeMap<i64, usize> = c.boundaries.iter().map(|(d, m)| (*d, rank(m))).collect();
    let rank_at = |d: i64| ranks.get(&d).copied().unwrap_or(0);
    Ok(c.dims
        .iter()
        .map(|(&d, &n)| (d, n - rank_at(d) - rank_at(d + 1)))
        .collect())
}
