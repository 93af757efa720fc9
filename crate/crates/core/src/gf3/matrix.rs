use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{add_scaled_assign, scale_assign, words_for, Trit, TritVector, Word};
use crate::error::{bail, Result};

/// Dense row-major matrix over GF(3). Each row is padded to a whole number of
/// [`Word`]s; padding slots are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TritMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<Word>,
}

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: TritMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl TritMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        TritMatrix {
            rows,
            cols,
            stride,
            data: alloc::vec![Word::ZERO; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Trit::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Trit) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds a matrix from rows of residues. All rows must share a length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.as_ref().len() != cols) {
            bail!(Shape, "row {i} has {} entries, expected {cols}", r.as_ref().len());
        }
        Ok(Self::from_fn(rows.len(), cols, |r, c| {
            Trit::new(rows[r].as_ref()[c])
        }))
    }

    pub fn from_vectors(cols: usize, rows: &[TritVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, v) in rows.iter().enumerate() {
            if v.len() != cols {
                bail!(Shape, "vector {i} has length {}, expected {cols}", v.len());
            }
            m.row_mut(i).copy_from_slice(v.words());
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Words per row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Trit {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / 64].get(c % 64)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, t: Trit) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / 64].set(c % 64, t)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Word] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [Word] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_vector(&self, r: usize) -> TritVector {
        TritVector::from_words(self.cols, self.row(r).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<TritVector> {
        (0..self.rows).map(|r| self.row_vector(r)).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: Trit) {
        assert_ne!(dst, src);
        let s = self.stride;
        let (d, sr) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        add_scaled_assign(d, sr, c);
    }

    pub fn scale_row(&mut self, r: usize, c: Trit) {
        scale_assign(self.row_mut(r), c);
    }

    pub fn transpose(&self) -> TritMatrix {
        TritMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|w| w.support() == 0)
    }

    /// Reduced row-echelon form with first-nonzero pivot selection.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            if m.get(rank, col) == Trit::TWO {
                m.scale_row(rank, Trit::TWO);
            }
            for r in 0..m.rows {
                if r != rank {
                    let a = m.get(r, col);
                    if !a.is_zero() {
                        m.add_row_multiple(r, rank, -a);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Exact product over GF(3).
    pub fn mul(&self, rhs: &TritMatrix) -> Result<TritMatrix> {
        if self.cols != rhs.rows {
            bail!(
                Shape,
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            );
        }
        let mut out = TritMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    let s = out.stride;
                    add_scaled_assign(&mut out.data[i * s..(i + 1) * s], rhs.row(k), a);
                }
            }
        }
        Ok(out)
    }

    /// `self · otherᵀ`, computed from packed inner products of rows.
    pub fn mul_transpose(&self, other: &TritMatrix) -> Result<TritMatrix> {
        if self.cols != other.cols {
            bail!(Shape, "row lengths differ: {} vs {}", self.cols, other.cols);
        }
        Ok(TritMatrix::from_fn(self.rows, other.rows, |i, j| {
            super::dot(self.row(i), other.row(j))
        }))
    }

    /// A basis (as rows) of the right null space `{x : self · x = 0}`.
    pub fn kernel_basis(&self) -> TritMatrix {
        let Rref {
            matrix: r,
            rank,
            pivots,
        } = self.rref();
        let mut is_pivot = alloc::vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = TritMatrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            k.set(i, f, Trit::ONE);
            for (row, &p) in pivots.iter().enumerate().take(rank) {
                k.set(i, p, -r.get(row, f));
            }
        }
        k
    }

    /// Keeps the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> TritMatrix {
        TritMatrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> TritMatrix {
        let mut m = TritMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            m.row_mut(i).copy_from_slice(self.row(r));
        }
        m
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &TritMatrix) -> Result<TritMatrix> {
        if self.rows != rhs.rows {
            bail!(Shape, "row counts differ: {} vs {}", self.rows, rhs.rows);
        }
        Ok(TritMatrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                rhs.get(r, c - self.cols)
            }
        }))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).value()).collect())
            .collect()
    }
}

impl Rref {
    /// Eliminates the pivot coordinates of `v` against the echelon rows.
    /// The result is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &TritVector) -> TritVector {
        let mut out = v.clone();
        for (row, &p) in self.pivots.iter().enumerate() {
            let a = out.get(p);
            if !a.is_zero() {
                add_scaled_assign(out.words_mut(), self.matrix.row(row), -a);
            }
        }
        out
    }

    pub fn contains(&self, v: &TritVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// The nonzero rows: a basis of the row space in reduced form.
    pub fn basis(&self) -> TritMatrix {
        let idx: Vec<usize> = (0..self.rank).collect();
        self.matrix.select_rows(&idx)
    }
}

impl fmt::Display for TritMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|c| (b'0' + self.get(r, c).value()) as char)
                .collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TritMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TritMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
