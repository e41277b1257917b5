use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::{LaurentPoly, Matrix, RatMatrix, Rational};

use super::SkewParam;

/// `R(ξ)_ij = t · sign(j − i) ξ_ij` off the diagonal and
/// `R(ξ)_ii = Σ_j s_ij ξ_jj` on it. `t = 1` gives `R_S`; other values of `t`
/// exist as negative controls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    triangular: Rational,
    s: RatMatrix,
}

/// Entries `R` can act on.
pub trait Coefficient: Clone {
    fn scaled(&self, c: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
}

impl Coefficient for Rational {
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl Coefficient for LaurentPoly {
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl RMatrix {
    /// `R₀ = π₊ − π₋`.
    pub fn standard(n: usize) -> Self {
        Self::deformed(&SkewParam::zero(n))
    }

    /// `R_S = R₀ + S π₀`.
    pub fn deformed(s: &SkewParam) -> Self {
        RMatrix {
            n: s.n(),
            triangular: Rational::one(),
            s: s.full().clone(),
        }
    }

    /// `c · R`.
    pub fn scaled(&self, c: &Rational) -> Self {
        RMatrix {
            n: self.n,
            triangular: &self.triangular * c,
            s: self.s.scale(c),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply<T: Coefficient>(&self, xi: &Matrix<T>) -> Matrix<T> {
        assert_eq!((xi.rows(), xi.cols()), (self.n, self.n), "R acts on n x n matrices");
        let neg = -self.triangular.clone();
        Matrix::from_fn(self.n, self.n, |i, j| {
            if i < j {
                xi[(i, j)].scaled(&self.triangular)
            } else if i > j {
                xi[(i, j)].scaled(&neg)
            } else {
                (1..self.n).fold(xi[(0, 0)].scaled(&self.s[(i, 0)]), |acc, k| {
                    acc.plus(&xi[(k, k)].scaled(&self.s[(i, k)]))
                })
            }
        })
    }
}

/// Basis of `sl_n`: `E_ij` for `i ≠ j`, then `H_i = E_ii − E_{i+1,i+1}`.
/// Names are 1-based.
pub fn sl_basis(n: usize) -> Vec<(String, RatMatrix)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = RatMatrix::zeros(n, n);
                e[(i, j)] = Rational::one();
                out.push((format!("E{}{}", i + 1, j + 1), e));
            }
        }
    }
    for i in 0..n - 1 {
        let mut h = RatMatrix::zeros(n, n);
        h[(i, i)] = Rational::one();
        h[(i + 1, i + 1)] = -Rational::one();
        out.push((format!("H{}", i + 1), h));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McybeFailure {
    /// `[Rξ,Rη] − R([Rξ,η] + [ξ,Rη]) + [ξ,η]`, which should vanish.
    YangBaxter(RatMatrix),
    /// `Tr(Rξ·η) + Tr(ξ·Rη)`, which should vanish.
    Skewness(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McybeViolation {
    pub pair: (String, String),
    pub failure: McybeFailure,
}

impl fmt::Display for McybeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            McybeFailure::YangBaxter(m) => write!(
                f,
                "MCYBE fails at ({}, {}): residual {}",
                self.pair.0, self.pair.1, m.to_string().replace('\n', " ")
            ),
            McybeFailure::Skewness(v) => write!(
                f,
                "R is not trace-skew at ({}, {}): residual {}",
                self.pair.0, self.pair.1, v
            ),
        }
    }
}

fn mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.checked_mul(b).expect("square matrices of equal size")
}

fn bracket(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    mul(a, b).checked_sub(&mul(b, a)).expect("same size")
}

fn trace(a: &RatMatrix) -> Rational {
    (0..a.rows()).map(|i| a[(i, i)].clone()).sum()
}

/// Checks the modified classical Yang–Baxter equation and skewness for the
/// trace form on every ordered pair of basis elements of `sl_n`.
pub fn mcybe_check(r: &RMatrix) -> Result<(), McybeViolation> {
    let basis = sl_basis(r.n());
    for (na, a) in &basis {
        let ra = r.apply(a);
        for (nb, b) in &basis {
            let rb = r.apply(b);
            let skew = trace(&mul(&ra, b)) + trace(&mul(a, &rb));
            if !skew.is_zero() {
                return Err(McybeViolation {
                    pair: (na.clone(), nb.clone()),
                    failure: McybeFailure::Skewness(skew),
                });
            }
            let inner = bracket(&ra, b).checked_add(&bracket(a, &rb)).expect("same size");
            let residual = bracket(&ra, &rb)
                .checked_sub(&r.apply(&inner))
                .and_then(|m| m.checked_add(&bracket(a, b)))
                .expect("same size");
            if !residual.is_zero() {
                return Err(McybeViolation {
                    pair: (na.clone(), nb.clone()),
                    failure: McybeFailure::YangBaxter(residual),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::rng::Lcg64;

    fn named(n: usize, name: &str) -> RatMatrix {
        sl_basis(n).into_iter().find(|(s, _)| s == name).unwrap().1
    }

    #[test]
    fn standard_action() {
        let r = RMatrix::standard(2);
        assert_eq!(r.apply(&named(2, "E12")), named(2, "E12"));
        assert_eq!(r.apply(&named(2, "E21")), named(2, "E21").scale(&rat(-1, 1)));
        assert!(r.apply(&named(2, "H1")).is_zero());
    }

    #[test]
    fn diagonal_part_uses_completed_s() {
        let mut rng = Lcg64::new(3);
        let s = SkewParam::random(3, &mut rng);
        let h = vec![rat(2, 1), rat(-5, 1), rat(3, 1)];
        let xi = RatMatrix::from_fn(3, 3, |i, j| if i == j { h[i].clone() } else { rat(0, 1) });
        let out = RMatrix::deformed(&s).apply(&xi);
        let sh = s.full().mul_vec(&h);
        for i in 0..3 {
            assert_eq!(out[(i, i)], sh[i]);
        }
    }

    #[test]
    fn sl2_by_hand() {
        // [R e, R f] − R([R e, f] + [e, R f]) = [e, −f] − R([e,f] − [e,f]) = −h
        let (e, f) = (named(2, "E12"), named(2, "E21"));
        let r = RMatrix::standard(2);
        let lhs = bracket(&r.apply(&e), &r.apply(&f));
        assert_eq!(lhs, bracket(&e, &f).scale(&rat(-1, 1)));
        assert!(mcybe_check(&r).is_ok());
    }

    #[test]
    fn deformed_operators_pass() {
        let mut rng = Lcg64::new(11);
        for n in 2..=5 {
            for _ in 0..2 {
                let s = SkewParam::random(n, &mut rng);
                assert_eq!(mcybe_check(&RMatrix::deformed(&s)), Ok(()));
            }
        }
    }

    #[test]
    fn scaling_breaks_mcybe() {
        let r = RMatrix::standard(2).scaled(&rat(2, 1));
        let err = mcybe_check(&r).unwrap_err();
        assert!(matches!(err.failure, McybeFailure::YangBaxter(_)));
    }
}
