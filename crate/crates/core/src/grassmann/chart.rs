use crate::cluster::{ExtendedExchangeMatrix, Seed};
use crate::exactalg::{rat, IntMatrix, LaurentPoly, RatExpr, VarTable};
use crate::rmatrix::permutations;

use super::GrassmannError;

/// Coordinates `y11 … ykm` on the cell representative `[1_k | Y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannChart {
    k: usize,
    n: usize,
    vars: VarTable,
}

impl GrassmannChart {
    pub fn new(k: usize, n: usize) -> Result<Self, GrassmannError> {
        if k == 0 || k >= n || n > 9 {
            return Err(GrassmannError::BadChart(format!("need 1 <= k < n <= 9, got k = {k}, n = {n}")));
        }
        let m = n - k;
        let vars = VarTable::new((1..=k).flat_map(|i| (1..=m).map(move |j| format!("y{i}{j}"))))?;
        Ok(GrassmannChart { k, n, vars })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.n - self.k
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// Variable index of `y_ij` (1-based `i`, `j`).
    pub fn y_index(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.m() + (j - 1)
    }

    pub fn y(&self, i: usize, j: usize) -> LaurentPoly {
        LaurentPoly::var(self.vars.len(), self.y_index(i, j))
    }

    /// Entry `(r, c)` (1-based) of `[1_k | Y]`.
    fn entry(&self, r: usize, c: usize) -> LaurentPoly {
        let nv = self.vars.len();
        if c <= self.k {
            LaurentPoly::constant(nv, rat(i64::from(r == c), 1))
        } else {
            self.y(r, c - self.k)
        }
    }

    /// Maximal minor on the columns `set` (1-based, increasing).
    pub fn plucker(&self, set: &[usize]) -> Result<LaurentPoly, GrassmannError> {
        if set.len() != self.k || set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&c| c == 0 || c > self.n) {
            return Err(GrassmannError::IndexOutOfRange(format!(
                "{set:?} is not an increasing {}-subset of [1, {}]",
                self.k, self.n
            )));
        }
        let nv = self.vars.len();
        let mut acc = LaurentPoly::zero(nv);
        for (sg, p) in permutations(self.k) {
            let mut term = LaurentPoly::constant(nv, rat(sg, 1));
            for (r, &c) in p.iter().enumerate() {
                term = &term * &self.entry(r + 1, set[c]);
                if term.is_zero() {
                    break;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// `x(i, j) = x_{I_ij}`.
    pub fn x(&self, i: usize, j: usize) -> Result<LaurentPoly, GrassmannError> {
        self.plucker(&index_set(self.k, self.n, i, j)?)
    }

    /// `x(i, j)` with `x(0, j) = x(i, m + 1) = 1`.
    pub(crate) fn x_or_one(&self, i: usize, j: usize) -> Result<LaurentPoly, GrassmannError> {
        if i == 0 || j == self.m() + 1 {
            Ok(LaurentPoly::one(self.vars.len()))
        } else {
            self.x(i, j)
        }
    }

    /// Initial seed: cluster `x(i, j)` over mutable vertices in lexicographic
    /// order, then stable `x(1,1), …, x(k,1), x(k,2), …, x(k,m)`.
    pub fn initial_seed(&self) -> Result<Seed, GrassmannError> {
        let q = GridQuiver::new(self.k, self.m());
        if q.mutable().is_empty() {
            return Err(GrassmannError::EmptyCluster { k: self.k, n: self.n });
        }
        let b = ExtendedExchangeMatrix::new(q.exchange_matrix())?;
        let fun = |v: &[(usize, usize)]| -> Result<Vec<RatExpr>, GrassmannError> {
            v.iter().map(|&(i, j)| Ok(RatExpr::from_poly(self.x(i, j)?))).collect()
        };
        Ok(Seed::new(self.vars.clone(), b, fun(&q.mutable())?, fun(&q.stable())?)?)
    }
}

/// `I_ij` for `i ∈ [k]`, `j ∈ [m]`, sorted.
pub fn index_set(k: usize, n: usize, i: usize, j: usize) -> Result<Vec<usize>, GrassmannError> {
    let m = n.saturating_sub(k);
    if i == 0 || i > k || j == 0 || j > m {
        return Err(GrassmannError::IndexOutOfRange(format!("(i, j) = ({i}, {j}) for k = {k}, m = {m}")));
    }
    let mut set: Vec<usize> = if i + j <= m + 1 {
        (i + 1..=k).chain(j + k..=i + j + k - 1).collect()
    } else {
        let lo = i + j - m;
        (1..=k).filter(|&r| r < lo || r > i).chain(j + k..=n).collect()
    };
    set.sort_unstable();
    Ok(set)
}

/// The `k × m` grid with edges `(i,j) → (i,j+1)`, `(i+1,j) → (i,j)`,
/// `(i,j) → (i+1,j−1)`. An edge `u → v` contributes `b_uv = +1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridQuiver {
    k: usize,
    m: usize,
}

impl GridQuiver {
    pub fn new(k: usize, m: usize) -> Self {
        GridQuiver { k, m }
    }

    pub fn mutable(&self) -> Vec<(usize, usize)> {
        (1..self.k).flat_map(|i| (2..=self.m).map(move |j| (i, j))).collect()
    }

    pub fn stable(&self) -> Vec<(usize, usize)> {
        let (k, m) = (self.k, self.m);
        (1..=k).map(|i| (i, 1)).chain((2..=m).map(|j| (k, j))).collect()
    }

    /// Mutable vertices followed by stable ones.
    pub fn vertices(&self) -> Vec<(usize, usize)> {
        let mut v = self.mutable();
        v.extend(self.stable());
        v
    }

    pub fn edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let (k, m) = (self.k, self.m);
        let mut out = Vec::new();
        for i in 1..=k {
            for j in 1..=m {
                if j < m {
                    out.push(((i, j), (i, j + 1)));
                }
                if i < k {
                    out.push(((i + 1, j), (i, j)));
                }
                if i < k && j > 1 {
                    out.push(((i, j), (i + 1, j - 1)));
                }
            }
        }
        out
    }

    /// Rows of the skew adjacency matrix restricted to mutable vertices.
    pub fn exchange_matrix(&self) -> IntMatrix {
        let verts = self.vertices();
        let pos = |v: (usize, usize)| verts.iter().position(|&w| w == v).expect("grid vertex");
        let n = verts.len();
        let mut full = IntMatrix::zeros(n, n);
        for (u, v) in self.edges() {
            let (a, b) = (pos(u), pos(v));
            full[(a, b)] += 1;
            full[(b, a)] -= 1;
        }
        let rows: Vec<usize> = (0..self.mutable().len()).collect();
        let cols: Vec<usize> = (0..n).collect();
        full.submatrix(&rows, &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets_g24() {
        assert_eq!(index_set(2, 4, 1, 1).unwrap(), vec![2, 3]);
        assert_eq!(index_set(2, 4, 1, 2).unwrap(), vec![2, 4]);
        assert_eq!(index_set(2, 4, 2, 1).unwrap(), vec![3, 4]);
        assert_eq!(index_set(2, 4, 2, 2).unwrap(), vec![1, 4]);
        assert_eq!(index_set(3, 6, 1, 1).unwrap(), vec![2, 3, 4]);
        assert!(index_set(2, 4, 3, 1).is_err());
    }

    #[test]
    fn index_sets_have_k_elements() {
        for n in 2..=7 {
            for k in 1..n {
                for i in 1..=k {
                    for j in 1..=n - k {
                        let s = index_set(k, n, i, j).unwrap();
                        assert_eq!(s.len(), k, "k={k} n={n} ({i},{j})");
                        assert!(s.windows(2).all(|w| w[0] < w[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn minors() {
        let c = GrassmannChart::new(2, 4).unwrap();
        let y = |i, j| c.y(i, j);
        assert_eq!(c.plucker(&[1, 2]).unwrap(), LaurentPoly::one(4));
        assert_eq!(c.plucker(&[3, 4]).unwrap(), &(&y(1, 1) * &y(2, 2)) - &(&y(1, 2) * &y(2, 1)));
        assert_eq!(c.plucker(&[2, 3]).unwrap(), -&y(1, 1));
        assert!(c.plucker(&[2, 2]).is_err());
    }

    #[test]
    fn short_plucker_relation() {
        let c = GrassmannChart::new(2, 4).unwrap();
        let p = |a, b| c.plucker(&[a, b]).unwrap();
        let lhs = &p(1, 3) * &p(2, 4);
        let rhs = &(&p(1, 2) * &p(3, 4)) + &(&p(1, 4) * &p(2, 3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn g24_seed() {
        let c = GrassmannChart::new(2, 4).unwrap();
        let s = c.initial_seed().unwrap();
        assert_eq!(s.matrix().matrix(), &IntMatrix::from_rows(vec![vec![0, -1, 1, -1]]).unwrap());
        assert_eq!(s.cluster()[0], RatExpr::from_poly(-&c.y(1, 2)));
        assert_eq!(s.stable()[1], RatExpr::from_poly(c.plucker(&[3, 4]).unwrap()));
    }

    #[test]
    fn g25_shape_and_entries() {
        let c = GrassmannChart::new(2, 5).unwrap();
        let b = c.initial_seed().unwrap().matrix().clone();
        assert_eq!((b.n_c(), b.n_s()), (2, 4));
        for n in 3..=7 {
            for k in 2..n - 1 {
                let q = GridQuiver::new(k, n - k);
                let m = q.exchange_matrix();
                assert!((0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)].abs() <= 1)));
                assert_eq!(q.stable().len(), n - 1);
            }
        }
    }

    #[test]
    fn degenerate_charts() {
        let c = GrassmannChart::new(1, 4).unwrap();
        assert_eq!(c.initial_seed(), Err(GrassmannError::EmptyCluster { k: 1, n: 4 }));
        assert!(GrassmannChart::new(3, 3).is_err());
    }
}
