//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed into 64-bit words, row-major. Bits at positions past
//! the logical length are always zero, so equality and hashing are plain word
//! comparisons.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
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

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
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
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

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

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + bit)
            })
        })
    }

    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Extends with zeros (or truncates) to `len`, keeping the tail invariant.
    pub fn resized(&self, len: usize) -> F2Vector {
        let mut out = F2Vector::zeros(len);
        let n = self.words.len().min(out.words.len());
        out.words[..n].copy_from_slice(&self.words[..n]);
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            cols,
            rows: vec![F2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            cols: n,
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<F2Vector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        F2Matrix { cols, rows }
    }

    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                let bits: Vec<bool> = r.iter().map(|&b| b & 1 == 1).collect();
                F2Vector::from_bits(&bits)
            })
            .collect();
        Self::from_rows(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn push_row(&mut self, row: F2Vector) {
        assert_eq!(row.len(), self.cols, "row length does not match column count");
        self.rows.push(row);
    }

    /// `M · v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        let mut out = F2Vector::zeros(self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows(), "inner dimensions differ");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = F2Vector::zeros(other.cols);
                for k in r.ones() {
                    acc.add_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        F2Matrix { cols: other.cols, rows }
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place(None).len()
    }

    /// Reduced row-echelon form `R`, its pivot columns, and an invertible
    /// `T` with `R = T·M`.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>, F2Matrix) {
        let mut r = self.clone();
        let mut t = F2Matrix::identity(self.rows());
        let pivots = r.reduce_in_place(Some(&mut t));
        (r, pivots, t)
    }

    /// Gauss–Jordan elimination; mirrors every row operation onto `track`.
    fn reduce_in_place(&mut self, mut track: Option<&mut F2Matrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows.len() {
                break;
            }
            let Some(p) = (next..self.rows.len()).find(|&i| self.rows[i].get(col)) else {
                continue;
            };
            self.rows.swap(next, p);
            if let Some(t) = track.as_deref_mut() {
                t.rows.swap(next, p);
            }
            let pivot_row = self.rows[next].clone();
            let pivot_track = track.as_deref().map(|t| t.rows[next].clone());
            for i in 0..self.rows.len() {
                if i != next && self.rows[i].get(col) {
                    self.rows[i].add_assign(&pivot_row);
                    if let (Some(t), Some(pt)) = (track.as_deref_mut(), pivot_track.as_ref()) {
                        t.rows[i].add_assign(pt);
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    /// Basis of `{v : M·v = 0}`, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let mut r = self.clone();
        let pivots = r.reduce_in_place(None);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = F2Vector::unit(self.cols, free);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.rows[row].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M·x = b`.
    pub fn solve(&self, b: &F2Vector) -> Result<F2Vector, SolveError> {
        if b.len() != self.rows() {
            return Err(SolveError::DimensionMismatch {
                rows: self.rows(),
                rhs: b.len(),
            });
        }
        let (r, pivots, t) = self.rref();
        let tb = t.mul_vec(b);
        if (pivots.len()..self.rows()).any(|i| tb.get(i)) {
            return Err(SolveError::NoSolution);
        }
        let mut x = F2Vector::zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            debug_assert!(r.get(row, p));
            if tb.get(row) {
                x.set(p, true);
            }
        }
        Ok(x)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("right-hand side has length {rhs}, matrix has {rows} rows")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("right-hand side is not in the column space")]
    NoSolution,
}

/// A subspace of `F2^n` kept as a fully reduced echelon basis.
///
/// Each basis vector's pivot is its lowest set bit, and no other basis vector
/// has that bit set.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<F2Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[F2Vector] {
        &self.basis
    }

    /// Reduces `v` against the basis in place; the result is zero iff `v`
    /// was in the span.
    pub fn reduce(&self, v: &mut F2Vector) {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                v.add_assign(b);
            }
        }
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span. Returns false if it was already there.
    pub fn add(&mut self, v: &F2Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut w = v.clone();
        self.reduce(&mut w);
        let Some(p) = w.first_one() else {
            return false;
        };
        for b in &mut self.basis {
            if b.get(p) {
                b.add_assign(&w);
            }
        }
        self.basis.push(w);
        self.pivots.push(p);
        true
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a F2Vector>) {
        for v in vs {
            self.add(v);
        }
    }
}
