//! Dense linear algebra over the two-element field.
//!
//! Matrices are stored row-major with each row packed into `u64` words, so
//! row addition is a word-wise XOR. Vectors are columns and matrices act on
//! the left (`M·x`): a boundary matrix has one row per face and one column
//! per simplex.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A dense matrix over GF(2) with bit-packed rows.
///
/// Either dimension may be zero. Bits beyond `cols` in the last word of a row
/// are always zero, so whole-word comparisons and XORs are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    /// The all-zero `rows × cols` matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. Any nonzero byte counts as 1.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a `rows × cols` matrix whose `k`-th column has ones exactly at
    /// the row indices yielded by `columns[k]`.
    pub fn from_column_supports<I>(rows: usize, columns: I) -> Self
    where
        I: IntoIterator,
        I::Item: IntoIterator<Item = usize>,
    {
        let columns: Vec<Vec<usize>> = columns
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        let mut m = Self::zero(rows, columns.len());
        for (k, support) in columns.iter().enumerate() {
            for &r in support {
                m.flip(r, k);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds for {}x{} matrix",
            self.rows,
            self.cols
        );
        (self.data[row * self.stride + col / WORD_BITS] >> (col % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds for {}x{} matrix",
            self.rows,
            self.cols
        );
        let word = &mut self.data[row * self.stride + col / WORD_BITS];
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    #[inline]
    fn flip(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols);
        self.data[row * self.stride + col / WORD_BITS] ^= 1u64 << (col % WORD_BITS);
    }

    /// The packed words of one row.
    #[inline]
    pub fn row_words(&self, row: usize) -> &[u64] {
        &self.data[row * self.stride..(row + 1) * self.stride]
    }

    /// Number of ones in column `col`.
    pub fn column_weight(&self, col: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, col)).count()
    }

    /// Total number of ones.
    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in set_bits(self.row_words(r)) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self · rhs` over GF(2).
    pub fn multiply(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "multiply",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Gf2Matrix::zero(self.rows, rhs.cols);
        let stride = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * stride..(i + 1) * stride];
            for k in set_bits(self.row_words(i)) {
                xor_into(dst, rhs.row_words(k));
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a packed column vector of length `cols`.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), words_for(self.cols), "vector length mismatch");
        let mut y = vec![0u64; words_for(self.rows)];
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(x)
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1;
            if parity == 1 {
                y[r / WORD_BITS] |= 1u64 << (r % WORD_BITS);
            }
        }
        y
    }

    /// Concatenates columns: `[self | rhs]`.
    pub fn hstack(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "hstack",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Gf2Matrix::zero(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            let base = r * out.stride;
            out.data[base..base + self.stride].copy_from_slice(self.row_words(r));
            for c in set_bits(rhs.row_words(r)) {
                let col = self.cols + c;
                out.data[base + col / WORD_BITS] |= 1u64 << (col % WORD_BITS);
            }
        }
        Ok(out)
    }

    /// Dimension of the column space, by forward elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        let stride = self.stride;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let w = col / WORD_BITS;
            let mask = 1u64 << (col % WORD_BITS);
            let Some(pivot) = (rank..self.rows).find(|&r| work[r * stride + w] & mask != 0) else {
                continue;
            };
            if pivot != rank {
                swap_rows(&mut work, stride, pivot, rank);
            }
            let (head, tail) = work.split_at_mut((rank + 1) * stride);
            let pivot_row = &head[rank * stride + w..];
            for row in tail.chunks_exact_mut(stride) {
                if row[w] & mask != 0 {
                    xor_into(&mut row[w..], pivot_row);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    ///
    /// Columns are scanned left to right; the pivot for a column is the first
    /// remaining row (top to bottom) with a one there.
    pub fn reduced_row_echelon(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let stride = m.stride;
        let mut pivots = Vec::new();
        for col in 0..m.cols {
            let rank = pivots.len();
            if rank == m.rows {
                break;
            }
            let w = col / WORD_BITS;
            let mask = 1u64 << (col % WORD_BITS);
            let Some(pivot) = (rank..m.rows).find(|&r| m.data[r * stride + w] & mask != 0) else {
                continue;
            };
            if pivot != rank {
                swap_rows(&mut m.data, stride, pivot, rank);
            }
            let pivot_row: Vec<u64> = m.data[rank * stride + w..(rank + 1) * stride].to_vec();
            for r in (0..m.rows).filter(|&r| r != rank) {
                let row = &mut m.data[r * stride..(r + 1) * stride];
                if row[w] & mask != 0 {
                    xor_into(&mut row[w..], &pivot_row);
                }
            }
            pivots.push(col);
        }
        (m, pivots)
    }

    /// A basis of the null space `{x : self·x = 0}`, one basis vector per
    /// column of the result (`cols × (cols − rank)`).
    ///
    /// Basis vectors follow the free columns in ascending order; the vector
    /// for free column `f` has a one at `f`, zeros at the other free
    /// positions, and at pivot position `p_r` the entry `rref[r][f]`.
    pub fn kernel_basis(&self) -> Gf2Matrix {
        let (rref, pivots) = self.reduced_row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Gf2Matrix::zero(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, true);
            for (r, &p) in pivots.iter().enumerate() {
                if rref.get(r, f) {
                    basis.set(p, k, true);
                }
            }
        }
        basis
    }

    /// Rows rendered as strings of `0` and `1`, one row per line.
    pub fn to_bit_string(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn swap_rows(data: &mut [u64], stride: usize, a: usize, b: usize) {
    let (lo, hi) = (a.min(b), a.max(b));
    let (head, tail) = data.split_at_mut(hi * stride);
    head[lo * stride..(lo + 1) * stride].swap_with_slice(&mut tail[..stride]);
}

/// Indices of the set bits in a packed word slice, ascending.
pub(crate) fn set_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD_BITS + tz)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Unpacked Gaussian elimination on `Vec<Vec<bool>>`, kept deliberately
    /// naive so it shares nothing with the packed path.
    fn naive_rank(m: &Gf2Matrix) -> usize {
        let mut a: Vec<Vec<bool>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| a[r][c]) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && row[c] {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub(crate) fn diabolo_d1() -> Gf2Matrix {
        Gf2Matrix::from_rows(&[
            [1, 1, 0, 0, 0, 0, 0],
            [1, 0, 1, 0, 0, 0, 0],
            [0, 1, 1, 1, 0, 0, 0],
            [0, 0, 0, 1, 1, 1, 0],
            [0, 0, 0, 0, 1, 0, 1],
            [0, 0, 0, 0, 0, 1, 1],
        ])
    }

    fn diabolo_d2() -> Gf2Matrix {
        Gf2Matrix::from_rows(&[[1], [1], [1], [0], [0], [0], [0]])
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Gf2Matrix> {
        (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut m = Gf2Matrix::zero(r, c);
                for (i, b) in bits.into_iter().enumerate() {
                    m.set(i / c.max(1), i % c.max(1), b);
                }
                m
            })
        })
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert_eq!(Gf2Matrix::zero(0, 5).rank(), 0);
        assert_eq!(Gf2Matrix::zero(3, 3).rank(), 0);
        assert_eq!(Gf2Matrix::identity(0).rank(), 0);
        assert_eq!(Gf2Matrix::identity(4).rank(), 4);
        let m = Gf2Matrix::from_rows(&[[1, 0, 1], [0, 1, 1], [1, 1, 1], [0, 0, 0], [1, 0, 0], [0, 1, 0]]);
        assert_eq!(Gf2Matrix::zero(6, 0).hstack(&m).unwrap(), m);
        assert_eq!(m.hstack(&Gf2Matrix::zero(6, 0)).unwrap(), m);
    }

    #[test]
    fn multiply_small_cases() {
        let a = Gf2Matrix::from_rows(&[[1, 1], [0, 1]]);
        let b = Gf2Matrix::from_rows(&[[1], [1]]);
        assert_eq!(a.multiply(&b).unwrap(), Gf2Matrix::from_rows(&[[0], [1]]));
        let m = Gf2Matrix::from_rows(&[[1, 0, 1, 1], [0, 1, 1, 0], [1, 1, 1, 1]]);
        assert_eq!(Gf2Matrix::identity(3).multiply(&m).unwrap(), m);
        assert_eq!(
            Gf2Matrix::zero(2, 3).multiply(&m).unwrap(),
            Gf2Matrix::zero(2, 4)
        );
        assert_eq!(
            Gf2Matrix::zero(4, 0).multiply(&Gf2Matrix::zero(0, 3)).unwrap(),
            Gf2Matrix::zero(4, 3)
        );
    }

    #[test]
    fn multiply_rejects_bad_shapes() {
        let err = Gf2Matrix::zero(2, 3).multiply(&Gf2Matrix::zero(2, 3)).unwrap_err();
        assert_eq!(
            err,
            Error::ShapeMismatch {
                op: "multiply",
                left: (2, 3),
                right: (2, 3)
            }
        );
        assert!(err.to_string().contains("2x3"));
        assert!(Gf2Matrix::zero(2, 1).hstack(&Gf2Matrix::zero(3, 1)).is_err());
    }

    #[test]
    fn diabolo_boundaries() {
        let d1 = diabolo_d1();
        let d2 = diabolo_d2();
        assert_eq!(d1.multiply(&d2).unwrap(), Gf2Matrix::zero(6, 1));
        assert_eq!(d1.rank(), 5);
        let k = d1.kernel_basis();
        assert_eq!(k.shape(), (7, 2));
        assert_eq!(k.rank(), 2);
        assert!(d1.multiply(&k).unwrap().is_zero());
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(Gf2Matrix::identity(5).kernel_basis().shape(), (5, 0));
        let k = Gf2Matrix::zero(3, 4).kernel_basis();
        assert_eq!(k, Gf2Matrix::identity(4));
        assert_eq!(Gf2Matrix::zero(0, 3).kernel_basis(), Gf2Matrix::identity(3));
        assert_eq!(Gf2Matrix::zero(3, 0).kernel_basis().shape(), (0, 0));
    }

    #[test]
    fn kernel_follows_free_columns_in_order() {
        // free columns are 1 and 3
        let m = Gf2Matrix::from_rows(&[[1, 1, 0, 0], [0, 0, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, Gf2Matrix::from_rows(&[[1, 0], [1, 0], [0, 1], [0, 1]]));
    }

    #[test]
    fn hstack_rank_examples() {
        let m = diabolo_d1();
        assert_eq!(m.hstack(&m).unwrap().rank(), m.rank());
        let col = Gf2Matrix::from_rows(&[[1], [1]]);
        assert_eq!(Gf2Matrix::identity(2).hstack(&col).unwrap().rank(), 2);
    }

    #[test]
    fn rank_exhaustive_up_to_4x4() {
        for r in 0..=4usize {
            for c in 0..=4usize {
                for bits in 0u32..(1 << (r * c)) {
                    let mut m = Gf2Matrix::zero(r, c);
                    for i in 0..r * c {
                        m.set(i / c, i % c, bits >> i & 1 == 1);
                    }
                    assert_eq!(m.rank(), naive_rank(&m), "{m:?}");
                }
            }
        }
    }

    #[test]
    fn words_straddle_boundaries() {
        let mut m = Gf2Matrix::zero(3, 130);
        m.set(0, 63, true);
        m.set(0, 64, true);
        m.set(1, 64, true);
        m.set(2, 129, true);
        assert_eq!(m.rank(), 3);
        let t = m.transpose();
        assert!(t.get(129, 2) && t.get(63, 0));
        assert_eq!(t.transpose(), m);
        assert!(m.multiply(&m.kernel_basis()).unwrap().is_zero());
        assert_eq!(m.kernel_basis().cols(), 127);
    }

    #[test]
    fn bit_string_rendering() {
        let m = Gf2Matrix::from_rows(&[[1, 0], [0, 1]]);
        assert_eq!(m.to_bit_string(), "10\n01\n");
    }

    proptest! {
        #[test]
        fn rank_matches_naive(m in arb_matrix(8, 8)) {
            prop_assert_eq!(m.rank(), naive_rank(&m));
        }

        #[test]
        fn rank_nullity(m in arb_matrix(12, 70)) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.rows(), m.cols());
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert!(m.multiply(&k).unwrap().is_zero());
        }

        #[test]
        fn product_rank_bound(
            (a, b) in (0..8usize, 0..8usize, 0..8usize).prop_flat_map(|(r, k, c)| {
                (arb_fixed(r, k), arb_fixed(k, c))
            })
        ) {
            let p = a.multiply(&b).unwrap();
            prop_assert!(p.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn hstack_rank_bounds(
            (a, b) in (0..9usize, 0..9usize, 0..9usize).prop_flat_map(|(r, c1, c2)| {
                (arb_fixed(r, c1), arb_fixed(r, c2))
            })
        ) {
            let h = a.hstack(&b).unwrap();
            prop_assert!(h.rank() >= a.rank().max(b.rank()));
            prop_assert!(h.rank() <= a.rank() + b.rank());
        }

        #[test]
        fn transpose_preserves_rank(m in arb_matrix(10, 10)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn apply_matches_multiply(m in arb_matrix(9, 9)) {
            let x = Gf2Matrix::identity(m.cols());
            for c in 0..m.cols() {
                let col = x.transpose();
                let y = m.apply(col.row_words(c));
                for r in 0..m.rows() {
                    prop_assert_eq!((y[r / 64] >> (r % 64)) & 1 == 1, m.get(r, c));
                }
            }
        }
    }

    fn arb_fixed(r: usize, c: usize) -> impl Strategy<Value = Gf2Matrix> {
        proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
            let mut m = Gf2Matrix::zero(r, c);
            for (i, b) in bits.into_iter().enumerate() {
                m.set(i / c, i % c, b);
            }
            m
        })
    }
}
