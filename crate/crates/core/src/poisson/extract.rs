use std::fmt;

use num_traits::Zero;

use crate::exactalg::{RatExpr, RatMatrix, Rational};

use super::BracketTable;

/// A basis pair whose bracket is not a constant multiple of the product.
#[derive(Clone, Debug, PartialEq)]
pub struct NotLogCanonical {
    pub pair: (usize, usize),
    pub bracket: RatExpr,
    /// `{f_i, f_j} / (f_i f_j)`, which should have been constant.
    pub ratio: RatExpr,
}

impl fmt::Display for NotLogCanonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair ({}, {}) is not log-canonical: bracket/product = {}",
            self.pair.0 + 1,
            self.pair.1 + 1,
            self.ratio
        )
    }
}

/// Coefficient matrix `Ω` with `{f_i, f_j} = ω_ij f_i f_j` for every pair of
/// basis elements, or the first (lexicographic) pair where the ratio is not a
/// constant.
///
/// `ω` is read off the leading terms of the cross-multiplied ratio and then
/// confirmed exactly: `num(ratio) = ω · den(ratio)` as polynomials.
pub fn extract_log_canonical(table: &BracketTable, basis: &[RatExpr]) -> Result<RatMatrix, NotLogCanonical> {
    let n = basis.len();
    let mut omega = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let bracket = table.bracket(&basis[i], &basis[j]);
            let product = &basis[i] * &basis[j];
            let ratio = &bracket / &product;
            match constant_value(&ratio) {
                Some(w) => {
                    omega[(j, i)] = -w.clone();
                    omega[(i, j)] = w;
                }
                None => {
                    return Err(NotLogCanonical {
                        pair: (i, j),
                        bracket,
                        ratio,
                    })
                }
            }
        }
    }
    Ok(omega)
}

/// The constant value of an unreduced quotient, if it is constant.
fn constant_value(e: &RatExpr) -> Option<Rational> {
    let (num, den) = (e.num(), e.den());
    if num.is_zero() {
        return Some(Rational::zero());
    }
    let (mn, cn) = num.leading_term()?;
    let (md, cd) = den.leading_term()?;
    if mn != md {
        return None;
    }
    let w = cn / cd;
    (num == &den.scale(&w)).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, LaurentPoly, VarTable};
    use crate::poisson::LogCanonicalStructure;

    #[test]
    fn recovers_omega_of_coordinates() {
        let omega = RatMatrix::from_rows(vec![
            vec![rat(0, 1), rat(2, 3), rat(-1, 1)],
            vec![rat(-2, 3), rat(0, 1), rat(5, 1)],
            vec![rat(1, 1), rat(-5, 1), rat(0, 1)],
        ])
        .unwrap();
        let lc = LogCanonicalStructure::new(VarTable::numbered("x", 3), omega.clone()).unwrap();
        let basis: Vec<RatExpr> = (0..3).map(|i| RatExpr::var(3, i)).collect();
        assert_eq!(extract_log_canonical(&lc.to_table(), &basis).unwrap(), omega);
    }

    #[test]
    fn monomial_basis_transforms_omega() {
        // basis (x1 x2, x2^-1) under ω12 = 1: {x1x2, x2^-1} = -x2^-2 {x1x2, x2} = -x1 x2^-1 ... ratio -1
        let omega = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-1, 1), rat(0, 1)]]).unwrap();
        let t = LogCanonicalStructure::new(VarTable::numbered("x", 2), omega).unwrap().to_table();
        let basis = vec![
            RatExpr::from_poly(LaurentPoly::monomial(rat(1, 1), vec![1, 1])),
            RatExpr::from_poly(LaurentPoly::monomial(rat(1, 1), vec![0, -1])),
        ];
        let w = extract_log_canonical(&t, &basis).unwrap();
        assert_eq!(w[(0, 1)], rat(-1, 1));
    }

    #[test]
    fn constant_shift_breaks_log_canonicity() {
        let omega = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-1, 1), rat(0, 1)]]).unwrap();
        let t = LogCanonicalStructure::new(VarTable::numbered("y", 2), omega).unwrap().to_table();
        let y = LaurentPoly::var(2, 0);
        let basis = vec![
            RatExpr::from_poly(y.clone()),
            RatExpr::from_poly(&y + &LaurentPoly::one(2)),
            RatExpr::var(2, 1),
        ];
        // {y1, y1+1} = 0 is fine (ω = 0); the failure is (y1+1, y2)
        let err = extract_log_canonical(&t, &basis).unwrap_err();
        assert_eq!(err.pair, (1, 2));
        assert!(err.to_string().contains("(2, 3)"));
    }
}
