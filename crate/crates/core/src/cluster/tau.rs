use num_traits::Zero;

use crate::exactalg::{AlgError, IntMatrix, RatMatrix, VarTable};
use crate::poisson::CoordinateMap;

use super::{ClusterError, ExtendedExchangeMatrix};

pub const DEFAULT_KAPPA_BOUND: i64 = 3;

/// Data of the τ-coordinates `τ_j = x_j^{κ_j} Π_k x_k^{b̂_jk}`.
///
/// `bhat` is skew with first `n_c` rows equal to `B̃`; `κ_j = 0` for cluster
/// indices; `bkappa = bhat + diag(κ)` is nonsingular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauFrame {
    n_c: usize,
    bhat: IntMatrix,
    kappa: Vec<i64>,
    bkappa: IntMatrix,
}

impl TauFrame {
    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn bhat(&self) -> &IntMatrix {
        &self.bhat
    }

    pub fn kappa(&self) -> &[i64] {
        &self.kappa
    }

    pub fn bkappa(&self) -> &IntMatrix {
        &self.bkappa
    }

    /// Frame with an explicitly chosen `κ` (one entry per extended index;
    /// cluster entries must be zero).
    pub fn with_kappa(
        b: &ExtendedExchangeMatrix,
        stable_block: Option<&IntMatrix>,
        kappa: Vec<i64>,
    ) -> Result<Self, ClusterError> {
        if kappa.len() != b.size() || kappa[..b.n_c()].iter().any(|&k| k != 0) {
            return Err(ClusterError::Shape(
                "kappa must have one entry per extended variable and vanish on cluster indices".into(),
            ));
        }
        let bhat = assemble_bhat(b, stable_block)?;
        let bkappa = add_diag(&bhat, &kappa);
        if bkappa.det()?.is_zero() {
            return Err(ClusterError::SingularKappa);
        }
        Ok(TauFrame {
            n_c: b.n_c(),
            bhat,
            kappa,
            bkappa,
        })
    }
}

fn assemble_bhat(b: &ExtendedExchangeMatrix, stable_block: Option<&IntMatrix>) -> Result<IntMatrix, ClusterError> {
    let (n_c, n) = (b.n_c(), b.size());
    let n_s = n - n_c;
    if let Some(s) = stable_block {
        if s.rows() != n_s || s.cols() != n_s || !s.is_skew() {
            return Err(ClusterError::Shape("stable block must be a skew n_s x n_s matrix".into()));
        }
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        if i < n_c {
            b.get(i, j)
        } else if j < n_c {
            -b.get(j, i)
        } else {
            stable_block.map_or(0, |s| s[(i - n_c, j - n_c)])
        }
    }))
}

fn add_diag(m: &IntMatrix, d: &[i64]) -> IntMatrix {
    let mut out = m.clone();
    for (i, &k) in d.iter().enumerate() {
        out[(i, i)] += k;
    }
    out
}

/// Order in which each κ entry is tried: 0, 1, −1, 2, −2, …
fn kappa_values(bound: i64) -> Vec<i64> {
    let mut v = vec![0];
    for a in 1..=bound {
        v.push(a);
        v.push(-a);
    }
    v
}

/// Assembles `B̂` from `B̃`, `−B̃ᵀ` and the stable block (zero by default), then
/// searches κ on the stable indices lexicographically, each entry running
/// through `0, 1, −1, …, bound, −bound`, until `det(B̂ + κ) ≠ 0`.
pub fn build_tau_frame(
    b: &ExtendedExchangeMatrix,
    stable_block: Option<&IntMatrix>,
    bound: i64,
) -> Result<TauFrame, ClusterError> {
    let rank = b.rank();
    if rank != b.n_c() {
        return Err(ClusterError::RankDeficient { rank, n_c: b.n_c() });
    }
    let bhat = assemble_bhat(b, stable_block)?;
    let (n_c, n) = (b.n_c(), b.size());
    let values = kappa_values(bound);
    let mut digits = vec![0usize; n - n_c];
    loop {
        let mut kappa = vec![0i64; n];
        for (slot, &d) in kappa[n_c..].iter_mut().zip(&digits) {
            *slot = values[d];
        }
        let bkappa = add_diag(&bhat, &kappa);
        if !bkappa.det()?.is_zero() {
            return Ok(TauFrame {
                n_c,
                bhat,
                kappa,
                bkappa,
            });
        }
        // odometer, last index fastest
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Err(ClusterError::KappaSearchExhausted { bound });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < values.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The monomial map `x̃ ↦ τ`: row `j` of `B_κ` holds the exponents of `τ_j`.
pub fn tau_map(frame: &TauFrame, vars: &VarTable) -> Result<CoordinateMap, ClusterError> {
    let n = frame.bkappa.rows();
    if vars.len() != n {
        return Err(AlgError::VarMismatch {
            left: n,
            right: vars.len(),
        }
        .into());
    }
    let exps: Vec<Vec<i32>> = (0..n)
        .map(|j| frame.bkappa.row(j).iter().map(|&e| e as i32).collect())
        .collect();
    Ok(CoordinateMap::monomial(
        vars.clone(),
        VarTable::numbered("tau", n),
        &exps,
    )?)
}

/// Coefficient matrix after the monomial change of coordinates with exponent
/// matrix `M`: `M Ω Mᵀ`.
pub fn omega_in_basis(omega: &RatMatrix, m: &IntMatrix) -> Result<RatMatrix, ClusterError> {
    if !m.is_square() || m.cols() != omega.rows() || !omega.is_square() {
        return Err(ClusterError::Shape(format!(
            "exponent matrix {}x{} vs coefficient matrix {}x{}",
            m.rows(),
            m.cols(),
            omega.rows(),
            omega.cols()
        )));
    }
    let mq = m.to_rational();
    Ok(mq.checked_mul(omega)?.checked_mul(&mq.transpose())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, LaurentPoly, RatExpr};

    fn g24() -> ExtendedExchangeMatrix {
        ExtendedExchangeMatrix::from_rows(vec![vec![0, -1, 1, -1]]).unwrap()
    }

    /// Cofactor expansion, independent of the elimination in `det`.
    fn det_oracle(m: &IntMatrix) -> i64 {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)];
        }
        (0..n)
            .map(|j| {
                let rows: Vec<usize> = (1..n).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[(0, j)] * det_oracle(&m.submatrix(&rows, &cols))
            })
            .sum()
    }

    #[test]
    fn explicit_kappa_determinant() {
        let f = TauFrame::with_kappa(&g24(), None, vec![0, 1, 1, 1]).unwrap();
        assert_eq!(det_oracle(f.bkappa()), 3);
        assert_eq!(f.bkappa().det().unwrap(), rat(3, 1));
        assert!(f.bhat().is_skew());
    }

    #[test]
    fn searched_kappa() {
        let f = build_tau_frame(&g24(), None, DEFAULT_KAPPA_BOUND).unwrap();
        // (0,0,0), (0,0,±a) and (0,±a,0) leave two proportional rows
        assert_eq!(f.kappa(), &[0, 0, 1, 1]);
        assert_eq!(det_oracle(f.bkappa()), 1);
        assert!(TauFrame::with_kappa(&g24(), None, vec![0, 0, 0, 0]).is_err());
    }

    #[test]
    fn rank_deficiency() {
        let b = ExtendedExchangeMatrix::from_rows(vec![vec![0, 0, 0]]).unwrap();
        assert_eq!(
            build_tau_frame(&b, None, 3),
            Err(ClusterError::RankDeficient { rank: 0, n_c: 1 })
        );
    }

    #[test]
    fn tau_monomials_read_rows() {
        let f = build_tau_frame(&g24(), None, 3).unwrap();
        let map = tau_map(&f, &VarTable::numbered("x", 4)).unwrap();
        let tau1 = RatExpr::from_poly(LaurentPoly::monomial(rat(1, 1), vec![0, -1, 1, -1]));
        assert_eq!(map.images()[0], tau1);
        assert!(!f.bkappa().det().unwrap().is_zero());
    }

    #[test]
    fn change_of_basis() {
        let omega = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(2, 1)], vec![rat(-2, 1), rat(0, 1)]]).unwrap();
        assert_eq!(omega_in_basis(&omega, &IntMatrix::identity(2)).unwrap(), omega);
        let flip = IntMatrix::from_rows(vec![vec![-1, 0], vec![0, 1]]).unwrap();
        assert_eq!(omega_in_basis(&omega, &flip).unwrap(), omega.scale(&rat(-1, 1)));
        assert!(omega_in_basis(&omega, &IntMatrix::identity(3)).is_err());
    }
}
