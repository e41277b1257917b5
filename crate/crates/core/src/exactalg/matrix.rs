use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rational, AlgError, Rational};

/// Dense row-major matrix with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<i64>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, AlgError> {
        if data.len() != rows * cols {
            return Err(AlgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from nested rows. An empty outer vector gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Clone + Zero + Mul<Output = T>> Matrix<T> {
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgError> {
        if self.cols != other.rows {
            return Err(AlgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        }))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }
}

impl<T: Clone + Sub<Output = T>> Matrix<T> {
    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgError> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        }))
    }
}

impl<T: Clone + Add<Output = T>> Matrix<T> {
    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgError> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        }))
    }
}

impl<T> Matrix<T> {
    fn same_shape(&self, other: &Self) -> Result<(), AlgError> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(AlgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }
}

impl<T: Clone + PartialEq + Neg<Output = T>> Matrix<T> {
    /// `A = −Aᵀ` exactly (square matrices only).
    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn to_rational(&self) -> RatMatrix {
        self.map(|&x| Rational::from_integer(x.into()))
    }

    pub fn det(&self) -> Result<Rational, AlgError> {
        self.to_rational().det()
    }

    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }
}

impl RatMatrix {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Result<Rational, AlgError> {
        if !self.is_square() {
            return Err(AlgError::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] / &piv;
                    for j in c..n {
                        let v = &m[(c, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<RatMatrix, AlgError> {
        if !self.is_square() {
            return Err(AlgError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = RatMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgError::Singular);
        }
        Ok(RatMatrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Basis of `{v : A v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Entries as `p/q` strings, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_string_rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn q(rows: Vec<Vec<i64>>) -> RatMatrix {
        IntMatrix::from_rows(rows).unwrap().to_rational()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = q(vec![vec![2, 1], vec![7, 4]]);
        assert_eq!(a.det().unwrap(), rat(1, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, q(vec![vec![4, -1], vec![-7, 2]]));
        assert_eq!(a.checked_mul(&inv).unwrap(), RatMatrix::identity(2));
        let s = q(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det().unwrap(), rat(0, 1));
        assert_eq!(s.inverse(), Err(AlgError::Singular));
    }

    #[test]
    fn rank_and_nullspace() {
        let a = q(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn skew_detection() {
        let a = IntMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert!(a.is_skew());
        let b = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(!b.is_skew());
    }

    #[test]
    fn shape_errors() {
        assert!(IntMatrix::from_rows(vec![vec![1, 2], vec![3]]).is_err());
        let a = IntMatrix::zeros(2, 3);
        assert!(a.checked_mul(&a).is_err());
        assert!(a.to_rational().det().is_err());
    }
}
