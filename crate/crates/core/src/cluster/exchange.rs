use crate::exactalg::IntMatrix;

use super::ClusterError;

/// `n_c × (n_c + n_s)` integer matrix with skew-symmetric principal part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedExchangeMatrix {
    n_c: usize,
    n_s: usize,
    b: IntMatrix,
}

impl ExtendedExchangeMatrix {
    pub fn new(b: IntMatrix) -> Result<Self, ClusterError> {
        let n_c = b.rows();
        if b.cols() < n_c {
            return Err(ClusterError::Shape(format!(
                "{}x{} has fewer columns than rows",
                n_c,
                b.cols()
            )));
        }
        let idx: Vec<usize> = (0..n_c).collect();
        if !b.submatrix(&idx, &idx).is_skew() {
            return Err(ClusterError::PrincipalNotSkew);
        }
        Ok(ExtendedExchangeMatrix {
            n_c,
            n_s: b.cols() - n_c,
            b,
        })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn n_s(&self) -> usize {
        self.n_s
    }

    /// `n_c + n_s`.
    pub fn size(&self) -> usize {
        self.n_c + self.n_s
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[(i, j)]
    }

    /// Matrix mutation in direction `k` (0-based):
    /// `b'_ij = −b_ij` if `i = k` or `j = k`, else
    /// `b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2`.
    pub fn mutate(&self, k: usize) -> Result<Self, ClusterError> {
        if k >= self.n_c {
            return Err(ClusterError::DirectionOutOfRange { k, n_c: self.n_c });
        }
        let b = &self.b;
        let out = IntMatrix::from_fn(b.rows(), b.cols(), |i, j| {
            if i == k || j == k {
                -b[(i, j)]
            } else {
                let (bik, bkj) = (b[(i, k)], b[(k, j)]);
                // the numerator is always even: both summands share sign and magnitude when nonzero
                b[(i, j)] + (bik.abs() * bkj + bik * bkj.abs()) / 2
            }
        });
        Ok(ExtendedExchangeMatrix {
            n_c: self.n_c,
            n_s: self.n_s,
            b: out,
        })
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    /// Whether the principal part is irreducible, i.e. its graph (edge `i–j`
    /// when `b_ij ≠ 0`) is connected.
    pub fn principal_irreducible(&self) -> bool {
        if self.n_c == 0 {
            return false;
        }
        let mut seen = vec![false; self.n_c];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.n_c {
                if !seen[j] && self.b[(i, j)] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_principal() {
        let b = ExtendedExchangeMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let m = b.mutate(0).unwrap();
        assert_eq!(m.matrix(), &IntMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap());
    }

    #[test]
    fn single_row_sign_flip() {
        let b = ExtendedExchangeMatrix::from_rows(vec![vec![0, -1, 1, -1]]).unwrap();
        let m = b.mutate(0).unwrap();
        assert_eq!(m.matrix(), &IntMatrix::from_rows(vec![vec![0, 1, -1, 1]]).unwrap());
    }

    #[test]
    fn mutation_off_the_pivot() {
        // A2 with one frozen column
        let b = ExtendedExchangeMatrix::from_rows(vec![vec![0, 1, 1], vec![-1, 0, 0]]).unwrap();
        let m = b.mutate(0).unwrap();
        // b'_{1,2} = 0 + (|b_10| b_02 + b_10 |b_02|)/2 = (1 - 1)/2 = 0
        assert_eq!(
            m.matrix(),
            &IntMatrix::from_rows(vec![vec![0, -1, -1], vec![1, 0, 0]]).unwrap()
        );
        let m1 = b.mutate(1).unwrap();
        // b'_{0,2} = 1 + (|b_01| b_12 + b_01 |b_12|)/2 = 1
        assert_eq!(
            m1.matrix(),
            &IntMatrix::from_rows(vec![vec![0, -1, 1], vec![1, 0, 0]]).unwrap()
        );
        assert_eq!(m1.mutate(1).unwrap(), b);
    }

    #[test]
    fn validation() {
        assert_eq!(
            ExtendedExchangeMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]),
            Err(ClusterError::PrincipalNotSkew)
        );
        let b = ExtendedExchangeMatrix::from_rows(vec![vec![0, 1]]).unwrap();
        assert_eq!(b.mutate(1), Err(ClusterError::DirectionOutOfRange { k: 1, n_c: 1 }));
    }

    #[test]
    fn irreducibility() {
        let conn = ExtendedExchangeMatrix::from_rows(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        assert!(conn.principal_irreducible());
        let split = ExtendedExchangeMatrix::from_rows(vec![vec![0, 0, 1], vec![0, 0, 1]]).unwrap();
        assert!(!split.principal_irreducible());
    }
}
