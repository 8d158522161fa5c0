//! Dense matrices over truncated Laurent series.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::LaurentSeries;

#[derive(Clone, PartialEq)]
pub struct SeriesMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentSeries<S>>,
}

impl<S: Scalar> SeriesMatrix<S> {
    pub fn zeros(rows: usize, cols: usize, truncation: i64) -> Self {
        Self {
            rows,
            cols,
            entries: vec![LaurentSeries::zero(truncation); rows * cols],
        }
    }

    pub fn identity(n: usize, truncation: i64) -> Self {
        let mut m = Self::zeros(n, n, truncation);
        for i in 0..n {
            m.set(i, i, LaurentSeries::one(truncation));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentSeries<S>) -> Self {
        let entries = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentSeries<S> {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentSeries<S>) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn without_column(&self, skip: usize) -> Self {
        Self::from_fn(self.rows, self.cols - 1, |r, c| {
            let src = if c < skip { c } else { c + 1 };
            self.get(r, src).clone()
        })
    }

    /// `self * v`.
    pub fn mul_vector(&self, v: &[LaurentSeries<S>]) -> Result<Vec<LaurentSeries<S>>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c) * &v[c])
                    .reduce(|acc, term| &acc + &term)
                    .expect("matrix has at least one column")
            })
            .collect())
    }

    /// Determinant by Gaussian elimination, pivoting on the entry of
    /// smallest valuation in each column.
    ///
    /// Entries known only to vanish below some truncation are treated as
    /// such, so the result carries an honest truncation even when structural
    /// zeros are involved. When an entire remaining column is unknown-zero the
    /// determinant is returned as a zero series bounded by that column's
    /// truncation plus the minimal valuations of the other remaining columns.
    pub fn determinant(&self) -> Result<LaurentSeries<S>> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentSeries::one(i64::MAX / 4));
        }
        let mut m = self.clone();
        let mut acc: Option<LaurentSeries<S>> = None;
        let mut negate = false;
        for col in 0..n {
            let pivot_row = (col..n)
                .filter(|&r| !m.get(r, col).is_zero())
                .min_by_key(|&r| (m.get(r, col).valuation(), r));
            let Some(pivot_row) = pivot_row else {
                let bound = zero_column_bound(&m, col);
                let tail = LaurentSeries::zero(bound);
                return Ok(match acc {
                    None => tail,
                    Some(a) => &a * &tail,
                });
            };
            if pivot_row != col {
                m.swap_rows(pivot_row, col);
                negate = !negate;
            }
            let pivot = m.get(col, col).clone();
            let pivot_inv = pivot.inv()?;
            for r in col + 1..n {
                let factor = m.get(r, col) * &pivot_inv;
                for c in col + 1..n {
                    let updated = m.get(r, c) - &(&factor * m.get(col, c));
                    m.set(r, c, updated);
                }
            }
            acc = Some(match acc {
                None => pivot,
                Some(a) => &a * &pivot,
            });
        }
        let det = acc.expect("n > 0");
        Ok(if negate { -det } else { det })
    }
}

/// Lower bound on the valuation of the remaining block's determinant when
/// column `col` is zero to its known precision.
fn zero_column_bound<S: Scalar>(m: &SeriesMatrix<S>, col: usize) -> i64 {
    let n = m.rows();
    let zero_col = (col..n).map(|r| m.get(r, col).truncation()).min().unwrap_or(0);
    let others: i64 = (col + 1..n)
        .map(|c| (col..n).map(|r| m.get(r, c).valuation()).min().unwrap_or(0))
        .sum();
    zero_col + others
}

impl<S: fmt::Debug> fmt::Debug for SeriesMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SeriesMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                writeln!(f, "  [{r},{c}] {:?}", self.entries[r * self.cols + c])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Series = LaurentSeries<Rational>;

    fn c(n: i64, t: i64) -> Series {
        Series::constant(Rational::from_int(n), t)
    }

    fn mono(n: i64, e: i64, t: i64) -> Series {
        Series::monomial(Rational::from_int(n), e, t)
    }

    #[test]
    fn identity_determinant_is_one() {
        let d = SeriesMatrix::<Rational>::identity(9, 100).determinant().unwrap();
        assert!(d.eq_to_order(&Series::one(100), 100).unwrap());
    }

    #[test]
    fn two_by_two_with_pivoting() {
        // [[y^4, 1], [1, 0]] has determinant -1; the first column pivots on row 1.
        let m = SeriesMatrix::from_fn(2, 2, |r, col| match (r, col) {
            (0, 0) => mono(1, 4, 50),
            (0, 1) | (1, 0) => c(1, 50),
            _ => Series::zero(50),
        });
        let d = m.determinant().unwrap();
        assert!(d.eq_to_order(&c(-1, 40), 40).unwrap());
    }

    #[test]
    fn row_swap_flips_sign() {
        let m = SeriesMatrix::from_fn(3, 3, |r, col| mono((r * 3 + col) as i64 % 5 + 1, (r + col) as i64, 60));
        let mut swapped = m.clone();
        swapped.swap_rows(0, 2);
        let a = m.determinant().unwrap();
        let b = swapped.determinant().unwrap();
        assert!(a.eq_joint(&-b));
    }

    #[test]
    fn equal_columns_give_zero() {
        let m = SeriesMatrix::from_fn(3, 3, |r, col| {
            let k = if col == 2 { 0 } else { col };
            mono((r + 2 * k + 1) as i64, (r * k) as i64, 80)
        });
        let d = m.determinant().unwrap();
        assert!(d.is_zero());
        assert!(d.truncation() > 0);
    }

    #[test]
    fn unknown_zero_column_bounds_truncation() {
        let m = SeriesMatrix::from_fn(2, 2, |r, col| match (r, col) {
            (_, 0) => Series::zero(30),
            (0, 1) => mono(1, 5, 100),
            _ => mono(1, 7, 100),
        });
        let d = m.determinant().unwrap();
        assert!(d.is_zero());
        assert_eq!(d.truncation(), 35);
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(SeriesMatrix::<Rational>::zeros(2, 3, 10).determinant().is_err());
    }

    #[test]
    fn cofactor_agreement_3x3() {
        // Compare against the explicit 3x3 formula.
        let e = |r: usize, col: usize| {
            Series::from_terms(
                [
                    (0, Rational::from_int((r + col) as i64 + 1)),
                    (4, Rational::from_int((r * col) as i64 - 1)),
                    (12, Rational::from_int(r as i64 - col as i64)),
                ],
                64,
            )
        };
        let m = SeriesMatrix::from_fn(3, 3, e);
        let g = |r, col| m.get(r, col).clone();
        let expected = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
            - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
            + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
        assert!(m.determinant().unwrap().eq_joint(&expected));
    }
}
