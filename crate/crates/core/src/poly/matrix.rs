use thiserror::Error;

use super::{Rational, Scalar};

/// Largest side length accepted by [`determinant`].
pub const MAX_DET_SIDE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix side {0} exceeds the determinant guard of {MAX_DET_SIDE}")]
    SizeGuardExceeded(usize),
}

/// Dense row-major matrix over a scalar ring.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> GenericMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        GenericMatrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        GenericMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> GenericMatrix<U> {
        GenericMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc.add_ref(&self.get(i, k).mul_ref(rhs.get(k, j))))
        })
    }
}

/// Exact determinant by cofactor expansion memoized over column subsets.
///
/// `minors[S]` holds the determinant of the last `|S|` rows restricted to the
/// columns in `S`; the 0x0 determinant is 1.
pub fn determinant<T: Scalar>(m: &GenericMatrix<T>) -> Result<T, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n > MAX_DET_SIDE {
        return Err(MatrixError::SizeGuardExceeded(n));
    }
    if n == 0 {
        return Ok(T::one());
    }
    let full = (1usize << n) - 1;
    let mut minors: Vec<Option<T>> = vec![None; 1 << n];
    minors[0] = Some(T::one());
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|s| s.count_ones());
    for s in masks {
        let k = s.count_ones() as usize;
        let row = n - k;
        let mut acc = T::zero();
        let mut position = 0usize;
        for j in 0..n {
            if s & (1 << j) == 0 {
                continue;
            }
            let entry = m.get(row, j);
            if !entry.is_zero() {
                let minor = minors[s & !(1 << j)].as_ref().expect("smaller subsets first");
                if !minor.is_zero() {
                    let t = entry.mul_ref(minor);
                    acc = if position % 2 == 0 { acc.add_ref(&t) } else { acc.sub_ref(&t) };
                }
            }
            position += 1;
        }
        minors[s] = Some(acc);
    }
    Ok(minors[full].take().expect("full minor computed"))
}

/// Exact determinant over ℚ by Gaussian elimination, `O(n³)`, no size guard.
pub fn determinant_by_elimination(m: &GenericMatrix<Rational>) -> Result<Rational, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = m.data.clone();
    let mut det = <Rational as Scalar>::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
            return Ok(<Rational as Scalar>::zero());
        };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let pivot = a[c * n + c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r * n + c].is_zero() {
                continue;
            }
            let f = &a[r * n + c] / &pivot;
            for j in c..n {
                let t = &f * &a[c * n + j];
                a[r * n + j] -= t;
            }
        }
    }
    Ok(det)
}
