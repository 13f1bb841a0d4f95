//! Dense bit-packed linear algebra over GF(2).
//!
//! Every rank, nullspace and membership question elsewhere in the crate
//! reduces to the types here. Vectors are packed 64 coordinates per word;
//! addition is XOR. All operations are pure: inputs are never mutated and
//! elimination happens on internal copies.

use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2). Bits past `len` are always zero.
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

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Vector whose support is `indices`. Repeated indices cancel.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
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

    /// Vector built from the low `len` bits of `value` (bit `i` is coordinate `i`).
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of nonzero coordinates, ascending.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Lowest nonzero coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Coordinates `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut out = BitVector::zeros(len);
        for i in self.ones().skip_while(|&i| i < start).take_while(|&i| i < start + len) {
            out.set(i - start, true);
        }
        out
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Picks out the listed coordinates, in order.
    pub fn select(&self, coords: &[usize]) -> BitVector {
        let mut out = BitVector::zeros(coords.len());
        for (k, &c) in coords.iter().enumerate() {
            if self.get(c) {
                out.set(k, true);
            }
        }
        out
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low word, for vectors of length at most 64.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

impl Add for &BitVector {
    type Output = BitVector;
    fn add(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Add for BitVector {
    type Output = BitVector;
    fn add(mut self, rhs: BitVector) -> BitVector {
        self.xor_assign(&rhs);
        self
    }
}

impl AddAssign<&BitVector> for BitVector {
    fn add_assign(&mut self, rhs: &BitVector) {
        self.xor_assign(rhs);
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

/// A dense matrix over GF(2), stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut c = BitVector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for k in r.ones() {
                acc.xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(BitMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Submatrix on the given rows and columns (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        let data = rows.iter().map(|&r| self.data[r].select(cols)).collect();
        BitMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Row-major flattening, `rows * cols` coordinates.
    pub fn flatten(&self) -> BitVector {
        let mut out = BitVector::zeros(self.rows * self.cols);
        for (i, r) in self.data.iter().enumerate() {
            for j in r.ones() {
                out.set(i * self.cols + j, true);
            }
        }
        out
    }

    /// Inverse of [`BitMatrix::flatten`].
    pub fn unflatten(rows: usize, cols: usize, flat: &BitVector) -> BitMatrix {
        assert_eq!(flat.len(), rows * cols);
        let mut m = BitMatrix::zeros(rows, cols);
        for k in flat.ones() {
            m.set(k / cols, k % cols, true);
        }
        m
    }

    pub fn rank(&self) -> usize {
        Echelon::forward(self.data.clone(), self.cols).pivots.len()
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let ech = Echelon::reduced(self.data.clone(), self.cols);
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        let mut basis = Vec::with_capacity(self.cols - ech.pivots.len());
        for free in (0..self.cols).filter(|&c| pivot_of_col[c].is_none()) {
            let mut v = BitVector::unit(self.cols, free);
            for (r, &pc) in ech.pivots.iter().enumerate() {
                if ech.rows[r].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis).expect("nullspace vectors have ambient length")
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        // Eliminate on the augmented matrix [self | b].
        let rows: Vec<BitVector> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVector::from_indices(1, b.get(i).then_some(0))))
            .collect();
        let ech = Echelon::reduced(rows, self.cols + 1);
        let mut x = BitVector::zeros(self.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            if pc == self.cols {
                return Ok(None);
            }
            if ech.rows[r].get(self.cols) {
                x.set(pc, true);
            }
        }
        Ok(Some(x))
    }

    /// Span of the rows.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_spanning(self.cols, self.data.clone()).expect("rows have length cols")
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }
}

/// Row-echelon workspace. `rows[..pivots.len()]` are the pivot rows.
struct Echelon {
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Forward elimination only; enough for rank.
    fn forward(rows: Vec<BitVector>, cols: usize) -> Self {
        Self::eliminate(rows, cols, false)
    }

    /// Reduced row echelon form.
    fn reduced(rows: Vec<BitVector>, cols: usize) -> Self {
        Self::eliminate(rows, cols, true)
    }

    fn eliminate(mut rows: Vec<BitVector>, cols: usize, reduce_above: bool) -> Self {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows.len() {
                break;
            }
            let w = c / WORD;
            let mask = 1u64 << (c % WORD);
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].words[w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank);
            let (pivot, below) = tail.split_first_mut().expect("pivot row exists");
            for r in below.iter_mut() {
                if r.words[w] & mask != 0 {
                    for k in w..r.words.len() {
                        r.words[k] ^= pivot.words[k];
                    }
                }
            }
            if reduce_above {
                for r in head.iter_mut() {
                    if r.words[w] & mask != 0 {
                        for k in w..r.words.len() {
                            r.words[k] ^= pivot.words[k];
                        }
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        rows.truncate(rank);
        Echelon { rows, pivots }
    }
}

/// A linear subspace of GF(2)^ambient in canonical reduced row echelon form.
///
/// Two subspaces are equal iff their echelon bases coincide, so the derived
/// `PartialEq` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("dim", &self.basis.len())
            .field("basis", &self.basis)
            .finish()
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: (0..ambient).map(|i| BitVector::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning(ambient: usize, vectors: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        let ech = Echelon::reduced(vectors, ambient);
        Ok(Self {
            ambient,
            basis: ech.rows,
            pivots: ech.pivots,
        })
    }

    /// Span of the listed standard basis vectors.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= ambient) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: ambient,
            });
        }
        Self::from_spanning(
            ambient,
            indices.iter().map(|&i| BitVector::unit(ambient, i)).collect(),
        )
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

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The echelon basis as matrix rows.
    pub fn matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.ambient, self.basis.clone()).expect("basis rows have ambient length")
    }

    /// Canonical representative of `v` modulo this subspace: `v` with every
    /// pivot coordinate cleared. Linear in `v`.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(b);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        self.check_ambient(v.len())?;
        Ok(self.reduce(v).is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        Ok(other.basis.iter().all(|v| self.reduce(v).is_zero()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, all)
    }

    /// Intersection via the Zassenhaus sum–intersection scheme: rows
    /// `[s | s]` and `[t | 0]`; echelon rows with vanishing left half carry
    /// the intersection on the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        let n = self.ambient;
        let mut rows: Vec<BitVector> = self.basis.iter().map(|s| s.concat(s)).collect();
        rows.extend(other.basis.iter().map(|t| t.concat(&BitVector::zeros(n))));
        let ech = Echelon::reduced(rows, 2 * n);
        let inter = ech
            .rows
            .iter()
            .zip(&ech.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r.slice(n, n))
            .collect();
        Subspace::from_spanning(n, inter)
    }

    /// `dim(self / sub)`; requires `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        if !self.contains_subspace(sub)? {
            return Err(Error::NotASubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &BitMatrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: map.cols(),
            });
        }
        let imgs = self
            .basis
            .iter()
            .map(|v| map.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::from_spanning(map.rows(), imgs)
    }

    fn check_ambient(&self, other: usize) -> Result<()> {
        if other != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other,
            });
        }
        Ok(())
    }
}

/// Expresses vectors as combinations of a fixed list of generators.
///
/// Generators may be dependent; `express` then returns one valid
/// combination.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    ambient: usize,
    generators: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl SpanSolver {
    pub fn new(ambient: usize, generators: &[BitVector]) -> Result<Self> {
        let k = generators.len();
        let mut rows = Vec::with_capacity(k);
        for (i, g) in generators.iter().enumerate() {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: g.len(),
                });
            }
            rows.push(g.concat(&BitVector::unit(k, i)));
        }
        let ech = Echelon::reduced(rows, ambient);
        Ok(Self {
            ambient,
            generators: k,
            pivots: ech.pivots,
            rows: ech.rows,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `c` with `Σ c_i g_i = v`, or `None` if `v` is outside the span.
    pub fn express(&self, v: &BitVector) -> Option<BitVector> {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.clone();
        let mut coeffs = BitVector::zeros(self.generators);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if rest.get(p) {
                for i in row.ones() {
                    if i < self.ambient {
                        rest.flip(i);
                    } else {
                        coeffs.flip(i - self.ambient);
                    }
                }
            }
        }
        rest.is_zero().then_some(coeffs)
    }
}

/// Nullspace of a linear system given column by column: `column(i)` is the
/// residual vector produced by the `i`-th unknown alone.
pub fn solve_homogeneous<F>(unknowns: usize, residual_len: usize, column: F) -> Subspace
where
    F: Fn(usize) -> BitVector,
{
    let cols: Vec<BitVector> = (0..unknowns).map(column).collect();
    debug_assert!(cols.iter().all(|c| c.len() == residual_len));
    // Each unknown's residual is a row of the transposed system matrix.
    let t = BitMatrix::from_rows(residual_len, cols).expect("residual length");
    t.transpose().nullspace()
}
