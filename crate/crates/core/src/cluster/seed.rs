use crate::exactalg::{RatExpr, VarTable};

use super::{ClusterError, ExtendedExchangeMatrix};

/// A seed: exchange matrix plus cluster and stable variables, all expressed
/// as rational functions of the ambient coordinates `vars`.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    vars: VarTable,
    matrix: ExtendedExchangeMatrix,
    cluster: Vec<RatExpr>,
    stable: Vec<RatExpr>,
}

impl Seed {
    pub fn new(
        vars: VarTable,
        matrix: ExtendedExchangeMatrix,
        cluster: Vec<RatExpr>,
        stable: Vec<RatExpr>,
    ) -> Result<Self, ClusterError> {
        if cluster.len() != matrix.n_c() || stable.len() != matrix.n_s() {
            return Err(ClusterError::Shape(format!(
                "{} cluster and {} stable variables for a {}x{} matrix",
                cluster.len(),
                stable.len(),
                matrix.n_c(),
                matrix.size()
            )));
        }
        for e in cluster.iter().chain(&stable) {
            if e.nvars() != vars.len() {
                return Err(crate::exactalg::AlgError::VarMismatch {
                    left: vars.len(),
                    right: e.nvars(),
                }
                .into());
            }
            if e.is_zero() {
                return Err(ClusterError::Shape("zero cluster variable".into()));
            }
        }
        Ok(Seed {
            vars,
            matrix,
            cluster,
            stable,
        })
    }

    /// Seed whose extended cluster is the coordinate tuple itself.
    pub fn initial(vars: VarTable, matrix: ExtendedExchangeMatrix) -> Result<Self, ClusterError> {
        let n = vars.len();
        if n != matrix.size() {
            return Err(ClusterError::Shape(format!(
                "{n} coordinates for {} extended cluster variables",
                matrix.size()
            )));
        }
        let all: Vec<RatExpr> = (0..n).map(|i| RatExpr::var(n, i)).collect();
        let (c, s) = all.split_at(matrix.n_c());
        Seed::new(vars, matrix, c.to_vec(), s.to_vec())
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn matrix(&self) -> &ExtendedExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[RatExpr] {
        &self.cluster
    }

    pub fn stable(&self) -> &[RatExpr] {
        &self.stable
    }

    /// Cluster followed by stable variables.
    pub fn extended(&self) -> Vec<RatExpr> {
        self.cluster.iter().chain(&self.stable).cloned().collect()
    }

    /// Seed mutation in direction `k` (0-based). The new variable solves
    /// `x_k x'_k = Π_{b_ki>0} x_i^{b_ki} + Π_{b_ki<0} x_i^{−b_ki}`; empty
    /// products are 1.
    pub fn mutate(&self, k: usize) -> Result<Seed, ClusterError> {
        let matrix = self.matrix.mutate(k)?;
        let n = self.vars.len();
        let ext = self.extended();
        let mut pos = RatExpr::one(n);
        let mut neg = RatExpr::one(n);
        for (i, x) in ext.iter().enumerate() {
            let b = self.matrix.get(k, i);
            if b > 0 {
                pos = &pos * &x.powi(b as i32)?;
            } else if b < 0 {
                neg = &neg * &x.powi((-b) as i32)?;
            }
        }
        let mut cluster = self.cluster.clone();
        cluster[k] = (&pos + &neg).checked_div(&self.cluster[k])?;
        Ok(Seed {
            vars: self.vars.clone(),
            matrix,
            cluster,
            stable: self.stable.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, LaurentPoly};

    #[test]
    fn empty_products() {
        let b = ExtendedExchangeMatrix::from_rows(vec![vec![0]]).unwrap();
        let s = Seed::initial(VarTable::numbered("x", 1), b).unwrap();
        let m = s.mutate(0).unwrap();
        let expect = RatExpr::from_poly(LaurentPoly::monomial(rat(2, 1), vec![-1]));
        assert_eq!(m.cluster()[0], expect);
    }

    #[test]
    fn exchange_relation_and_involution() {
        // rows over (x1 | x2 x3 x4) = [0 | -1, 1, -1]
        let b = ExtendedExchangeMatrix::from_rows(vec![vec![0, -1, 1, -1]]).unwrap();
        let s = Seed::initial(VarTable::numbered("x", 4), b).unwrap();
        let m = s.mutate(0).unwrap();
        let x = |i| LaurentPoly::var(4, i);
        let expect = RatExpr::new(&x(2) + &(&x(1) * &x(3)), x(0)).unwrap();
        assert_eq!(m.cluster()[0], expect);
        assert_eq!(m.stable(), s.stable());
        let back = m.mutate(0).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn shape_checks() {
        let b = ExtendedExchangeMatrix::from_rows(vec![vec![0, 1]]).unwrap();
        assert!(Seed::initial(VarTable::numbered("x", 3), b.clone()).is_err());
        assert!(Seed::new(VarTable::numbered("x", 2), b, vec![RatExpr::zero(2)], vec![RatExpr::var(2, 1)]).is_err());
    }
}
