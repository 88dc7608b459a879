use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// Dense matrix of exact rationals, row-major.
///
/// Shapes with a zero dimension are legal and common (maps into or out of
/// zero vector spaces).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
}

/// Outcome of solving `A * X = B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    /// Every solution is `particular + kernel * Y` for an arbitrary `Y`.
    Solutions {
        particular: ExactMatrix,
        kernel: ExactMatrix,
    },
}

impl Solution {
    pub fn particular(&self) -> Option<&ExactMatrix> {
        match self {
            Solution::Inconsistent => None,
            Solution::Solutions { particular, .. } => Some(particular),
        }
    }

    pub fn is_consistent(&self) -> bool {
        !matches!(self, Solution::Inconsistent)
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        ExactMatrix { rows, cols, data }
    }

    /// Builds from integer entries given row by row.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_vec(
            rows,
            cols,
            entries.iter().map(|&x| Rational::from(x)).collect(),
        )
    }

    /// `cols` is needed to give a 0-row matrix its width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Self::from_vec(n, cols, data)
    }

    /// `rows` is needed to give a 0-column matrix its height.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Self::from_vec(self.rows, cols, data)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::from_vec(self.rows + other.rows, self.cols, data)
    }

    pub fn block_diag(blocks: &[&ExactMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Overwrites the sub-block starting at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[i * idx.len() + j] = self.get(i, c).clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Self::from_vec(idx.len(), self.cols, data)
    }

    /// Column-major flattening, used to compare maps as vectors.
    pub fn flatten(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    /// Gauss-Jordan elimination with the leftmost available pivot, normalized
    /// to a leading 1. The reduced form is unique, so the output does not
    /// depend on the pivot search order.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip().expect("nonzero pivot");
            if !inv.is_one() {
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if !x.is_zero() {
                        let y = x * &inv;
                        m.set(r, j, y);
                    }
                }
            }
            let pivot_row: Vec<Rational> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (off, pv) in pivot_row.iter().enumerate() {
                    if pv.is_zero() {
                        continue;
                    }
                    let j = c + off;
                    let y = m.get(i, j) - &(&factor * pv);
                    m.set(i, j, y);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the null space. Basis vector `t` has a 1 at the
    /// `t`-th non-pivot column and 0 at every other non-pivot column.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let Rref { reduced, pivots } = self.rref();
        kernel_from_rref(&reduced, &pivots, self.cols)
    }

    /// All solutions of `self * X = rhs`.
    pub fn solve(&self, rhs: &ExactMatrix) -> Solution {
        assert_eq!(self.rows, rhs.rows, "row counts differ");
        let n = self.cols;
        let aug = self.hstack(rhs);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Solution::Inconsistent;
        }
        let mut particular = ExactMatrix::zeros(n, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                particular.set(p, j, reduced.get(r, n + j).clone());
            }
        }
        let a_part = reduced.block(0, 0, reduced.rows, n);
        let kernel = kernel_from_rref(&a_part, &pivots, n);
        Solution::Solutions { particular, kernel }
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        match self.solve(&ExactMatrix::identity(self.rows)) {
            Solution::Solutions { particular, kernel } if kernel.cols == 0 => Some(particular),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

fn kernel_from_rref(reduced: &ExactMatrix, pivots: &[usize], n: usize) -> ExactMatrix {
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut k = ExactMatrix::zeros(n, free.len());
    for (t, &f) in free.iter().enumerate() {
        k.set(f, t, Rational::one());
        for (r, &p) in pivots.iter().enumerate() {
            let x = reduced.get(r, f);
            if !x.is_zero() {
                k.set(p, t, -x);
            }
        }
    }
    k
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    let y = &out.data[idx] + &(a * b);
                    out.data[idx] = y;
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(rows, cols, e)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(ExactMatrix::zeros(0, 4).rank(), 0);
        assert_eq!(ExactMatrix::zeros(4, 0).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::identity(4).kernel_basis().shape(), (4, 0));
        let k = ExactMatrix::zeros(1, 3).kernel_basis();
        assert_eq!(k, ExactMatrix::identity(3));
        let k = m(1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, m(2, 1, &[-1, 1]));
    }

    #[test]
    fn solve_examples() {
        let b = m(2, 2, &[3, 4, 5, 6]);
        assert_eq!(ExactMatrix::identity(2).solve(&b).particular(), Some(&b));
        assert_eq!(
            ExactMatrix::zeros(2, 2).solve(&m(2, 1, &[1, 0])),
            Solution::Inconsistent
        );
        let x = m(1, 1, &[2]).solve(&m(1, 1, &[1]));
        assert_eq!(x.particular().unwrap().get(0, 0), &Rational::new(1, 2));
        // Empty systems.
        let s = ExactMatrix::zeros(0, 3).solve(&ExactMatrix::zeros(0, 1));
        match s {
            Solution::Solutions { particular, kernel } => {
                assert!(particular.is_zero());
                assert_eq!(kernel, ExactMatrix::identity(3));
            }
            Solution::Inconsistent => panic!("empty system is consistent"),
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(2, 2, &[2, 1, 7, 4]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |e| m(r, c, &e))
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(a in small_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn kernel_is_kernel(a in small_matrix()) {
            let k = a.kernel_basis();
            prop_assert!((&a * &k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert_eq!(k.cols(), a.cols() - a.rank());
        }

        #[test]
        fn solve_reproduces_rhs(a in small_matrix(), seed in proptest::collection::vec(-3i64..=3, 0..25)) {
            // rhs in the column space, so the system is consistent.
            let x_cols = 2;
            let mut e = seed;
            e.resize(a.cols() * x_cols, 1);
            let x = m(a.cols(), x_cols, &e);
            let b = &a * &x;
            match a.solve(&b) {
                Solution::Solutions { particular, kernel } => {
                    prop_assert_eq!(&(&a * &particular), &b);
                    prop_assert!((&a * &kernel).is_zero());
                }
                Solution::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }
    }
}
