//! Dense matrices of exact rationals: determinants, minors, cofactors,
//! products, row/column deletion and selection.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    NotSquare { rows: usize, cols: usize },
    IndexOutOfRange { index: usize, bound: usize },
    UnsortedSelector,
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}x{cols}")
            }
            MatrixError::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            MatrixError::UnsortedSelector => {
                write!(f, "selection indices must be strictly ascending")
            }
            MatrixError::ShapeMismatch { left, right } => write!(
                f,
                "shapes {}x{} and {}x{} are not conformable",
                left.0, left.1, right.0, right.1
            ),
        }
    }
}

impl core::error::Error for MatrixError {}

/// Dense row-major matrix of [`Rational`] entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "rows must have equal length"
        );
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer-literal constructor, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// A `p x 1` column vector.
    pub fn column(entries: Vec<Rational>) -> Self {
        let rows = entries.len();
        Matrix {
            rows,
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Matrix, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn multiply(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix with row `i` and column `j` removed, other entries in order.
    pub fn without_row_col(&self, i: usize, j: usize) -> Result<Matrix, MatrixError> {
        if i >= self.rows {
            return Err(MatrixError::IndexOutOfRange {
                index: i,
                bound: self.rows,
            });
        }
        if j >= self.cols {
            return Err(MatrixError::IndexOutOfRange {
                index: j,
                bound: self.cols,
            });
        }
        let mut out = Matrix::zero(self.rows - 1, self.cols - 1);
        for (ri, r) in (0..self.rows).filter(|&r| r != i).enumerate() {
            for (cj, c) in (0..self.cols).filter(|&c| c != j).enumerate() {
                out[(ri, cj)] = self[(r, c)].clone();
            }
        }
        Ok(out)
    }

    /// Matrix with row `r` and column `r` removed. Requires a square matrix.
    pub fn delete_row_col(&self, r: usize) -> Result<Matrix, MatrixError> {
        self.require_square()?;
        self.without_row_col(r, r)
    }

    /// Submatrix keeping the given rows/columns (strictly ascending indices);
    /// `None` keeps all.
    pub fn select(
        &self,
        rows: Option<&[usize]>,
        cols: Option<&[usize]>,
    ) -> Result<Matrix, MatrixError> {
        fn validate(sel: Option<&[usize]>, bound: usize) -> Result<(), MatrixError> {
            let Some(sel) = sel else { return Ok(()) };
            for w in sel.windows(2) {
                if w[0] >= w[1] {
                    return Err(MatrixError::UnsortedSelector);
                }
            }
            if let Some(&last) = sel.last() {
                if last >= bound {
                    return Err(MatrixError::IndexOutOfRange {
                        index: last,
                        bound,
                    });
                }
            }
            Ok(())
        }
        validate(rows, self.rows)?;
        validate(cols, self.cols)?;

        let all_rows: Vec<usize>;
        let row_sel = match rows {
            Some(r) => r,
            None => {
                all_rows = (0..self.rows).collect();
                &all_rows
            }
        };
        let all_cols: Vec<usize>;
        let col_sel = match cols {
            Some(c) => c,
            None => {
                all_cols = (0..self.cols).collect();
                &all_cols
            }
        };

        let mut out = Matrix::zero(row_sel.len(), col_sel.len());
        for (i, &r) in row_sel.iter().enumerate() {
            for (j, &c) in col_sel.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination after
    /// clearing each row to a common denominator. The 0x0 determinant is 1.
    pub fn det(&self) -> Result<Rational, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Rational::one());
        }

        // Clear denominators row by row; det scales by the product of the
        // per-row multipliers.
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            m.push(
                row.iter()
                    .map(|e| e.numer() * (&lcm / e.denom()))
                    .collect(),
            );
            scale *= &lcm;
        }

        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            // A fully zero pivot column short-circuits to determinant 0.
            let Some(pivot_row) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot_row != k {
                m.swap(pivot_row, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // Bareiss step: the division by the previous pivot is exact.
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }

        let mut det = m[n - 1][n - 1].clone();
        if sign < 0 {
            det = -det;
        }
        Ok(Rational::new(det, scale))
    }

    /// Signed minor `(-1)^(i+j) * det` of the matrix with row `i` and
    /// column `j` removed.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<Rational, MatrixError> {
        self.require_square()?;
        let minor = self.without_row_col(i, j)?.det()?;
        Ok(if (i + j).is_multiple_of(2) { minor } else { -minor })
    }

    /// True iff `self^k` is the zero matrix (`k >= 1`).
    pub fn power_is_zero(&self, k: usize) -> Result<bool, MatrixError> {
        self.require_square()?;
        assert!(k >= 1, "power must be at least 1");
        let mut acc = self.clone();
        if acc.is_zero() {
            return Ok(true);
        }
        for _ in 1..k {
            acc = acc.multiply(self)?;
            if acc.is_zero() {
                return Ok(true);
            }
        }
        Ok(acc.is_zero())
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// Independent oracle: determinant by cofactor expansion along the
    /// first row. Exponential, fine for the small matrices tested here.
    fn det_expansion(m: &Matrix) -> Rational {
        let n = m.rows();
        assert!(m.is_square());
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let minor = det_expansion(&m.without_row_col(0, j).unwrap());
            let term = &m[(0, j)] * minor;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_of_reduced_laplacian_fixture() {
        let m = Matrix::from_i64(&[&[1, -1], &[0, 2]]);
        assert_eq!(m.det().unwrap(), int(2));
    }

    #[test]
    fn det_of_identity_and_empty() {
        assert_eq!(Matrix::identity(0).det().unwrap(), int(1));
        assert_eq!(Matrix::identity(1).det().unwrap(), int(1));
        assert_eq!(Matrix::identity(4).det().unwrap(), int(1));
    }

    #[test]
    fn det_two_by_two() {
        let m = Matrix::from_i64(&[&[2, -1], &[-1, 2]]);
        assert_eq!(m.det().unwrap(), int(3));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = Matrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[4, 5, 6]]);
        assert_eq!(m.det().unwrap(), det_expansion(&m));
    }

    #[test]
    fn det_zero_column_short_circuits() {
        let m = Matrix::from_i64(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert_eq!(m.det().unwrap(), int(0));
    }

    #[test]
    fn det_rational_entries() {
        let m = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(1, 7)],
        ]);
        assert_eq!(m.det().unwrap(), rat(1, 14) - rat(1, 15));
        assert_eq!(m.det().unwrap(), det_expansion(&m));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = Matrix::zero(2, 3);
        assert_eq!(
            m.det(),
            Err(MatrixError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn delete_row_col_fixtures() {
        let l1 = Matrix::from_i64(&[&[1, -1, -1], &[0, 2, -1], &[-1, -1, 2]]);
        assert_eq!(
            l1.delete_row_col(2).unwrap(),
            Matrix::from_i64(&[&[1, -1], &[0, 2]])
        );
        let l2 = Matrix::from_i64(&[&[2, 0, -1], &[-1, 1, -1], &[-1, -1, 2]]);
        assert_eq!(
            l2.delete_row_col(2).unwrap(),
            Matrix::from_i64(&[&[2, 0], &[-1, 1]])
        );
        let single = Matrix::from_i64(&[&[7]]);
        let empty = single.delete_row_col(0).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
        assert_eq!(
            single.delete_row_col(1),
            Err(MatrixError::IndexOutOfRange { index: 1, bound: 1 })
        );
    }

    #[test]
    fn cofactor_fixtures() {
        let l2 = Matrix::from_i64(&[&[2, 0, -1], &[-1, 1, -1], &[-1, -1, 2]]);
        assert_eq!(l2.cofactor(2, 2).unwrap(), int(2));
        assert_eq!(Matrix::identity(2).cofactor(0, 1).unwrap(), int(0));
        let l1 = Matrix::from_i64(&[&[1, -1, -1], &[0, 2, -1], &[-1, -1, 2]]);
        assert_eq!(l1.cofactor(0, 0).unwrap(), int(3));
    }

    #[test]
    fn select_keeps_ascending_order() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let sub = m.select(Some(&[0, 2]), Some(&[1])).unwrap();
        assert_eq!(sub, Matrix::from_i64(&[&[2], &[8]]));
        assert_eq!(m.select(None, None).unwrap(), m);
        assert_eq!(
            m.select(Some(&[2, 0]), None),
            Err(MatrixError::UnsortedSelector)
        );
        assert_eq!(
            m.select(Some(&[0, 0]), None),
            Err(MatrixError::UnsortedSelector)
        );
        assert_eq!(
            m.select(None, Some(&[3])),
            Err(MatrixError::IndexOutOfRange { index: 3, bound: 3 })
        );
    }

    #[test]
    fn multiply_shapes_and_values() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[5, 6], &[7, 8]]);
        assert_eq!(
            a.multiply(&b).unwrap(),
            Matrix::from_i64(&[&[19, 22], &[43, 50]])
        );
        let c = Matrix::zero(3, 2);
        assert!(matches!(
            a.multiply(&c),
            Err(MatrixError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn power_is_zero_cases() {
        let nilpotent = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(nilpotent.power_is_zero(2).unwrap());
        assert!(!nilpotent.power_is_zero(1).unwrap());
        assert!(!Matrix::identity(3).power_is_zero(10).unwrap());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn square_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(small_rational(), n * n).prop_map(move |entries| Matrix {
            rows: n,
            cols: n,
            entries,
        })
    }

    proptest! {
        #[test]
        fn det_matches_expansion_oracle_2(m in square_matrix(2)) {
            prop_assert_eq!(m.det().unwrap(), det_expansion(&m));
        }

        #[test]
        fn det_matches_expansion_oracle_3(m in square_matrix(3)) {
            prop_assert_eq!(m.det().unwrap(), det_expansion(&m));
        }

        #[test]
        fn det_matches_expansion_oracle_4(m in square_matrix(4)) {
            prop_assert_eq!(m.det().unwrap(), det_expansion(&m));
        }

        #[test]
        fn det_transpose_invariant(m in square_matrix(3)) {
            prop_assert_eq!(m.det().unwrap(), m.transpose().det().unwrap());
        }

        #[test]
        fn det_is_multiplicative(a in square_matrix(3), b in square_matrix(3)) {
            let ab = a.multiply(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn rational_addition_is_exact(x in small_rational(), y in small_rational()) {
            prop_assert_eq!((x.clone() + y.clone()) - y, x);
        }

        #[test]
        fn transpose_is_involutive(m in square_matrix(3)) {
            prop_assert_eq!(m.transpose().transpose(), m);
        }

        #[test]
        fn cofactor_matches_signed_minor(m in square_matrix(3), i in 0usize..3, j in 0usize..3) {
            let minor = m.without_row_col(i, j).unwrap().det().unwrap();
            let expected = if (i + j) % 2 == 0 { minor } else { -minor };
            prop_assert_eq!(m.cofactor(i, j).unwrap(), expected);
        }
    }

    #[test]
    fn det_matches_expansion_oracle_tiny_sizes() {
        for (n, vals) in [
            (0, Vec::new()),
            (1, vec![rat(-3, 2)]),
            (2, vec![rat(1, 2), rat(2, 3), rat(-1, 1), rat(5, 4)]),
        ] {
            let m = Matrix {
                rows: n,
                cols: n,
                entries: vals,
            };
            assert_eq!(m.det().unwrap(), det_expansion(&m));
        }
    }
}
