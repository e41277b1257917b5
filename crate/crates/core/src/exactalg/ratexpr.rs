use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgError, LaurentPoly, Monomial, Rational, VarTable};

/// Quotient of two Laurent polynomials.
///
/// The quotient is never reduced by a GCD. The only normalization is that a
/// single-term denominator is folded into the numerator (it is invertible in
/// the Laurent ring) and a zero numerator gets denominator one. Equality is
/// decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatExpr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatExpr {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgError> {
        if den.is_zero() {
            return Err(AlgError::ZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(AlgError::VarMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatExpr {
                num,
                den: LaurentPoly::one(n),
            };
        }
        if let Some((c, m)) = den.as_monomial() {
            if !(c.is_one() && m.is_one()) {
                let inv = Monomial(m.0.iter().map(|e| -e).collect());
                let num = num.shift(&inv).scale(&c.recip());
                return RatExpr {
                    num,
                    den: LaurentPoly::one(n),
                };
            }
        }
        RatExpr { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        RatExpr {
            num: p,
            den: LaurentPoly::one(n),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(LaurentPoly::var(nvars, i))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` when the denominator is one (i.e. the value is a Laurent polynomial).
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.as_constant().filter(|c| c.is_one()).map(|_| &self.num)
    }

    /// Equality in the field of fractions: `p.num·q.den − q.num·p.den = 0`.
    pub fn equals(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgError> {
        if self.den == other.den {
            return Ok(Self::normalized(self.num.checked_add(&other.num)?, self.den.clone()));
        }
        let num = self.num.checked_mul(&other.den)?.checked_add(&other.num.checked_mul(&self.den)?)?;
        Ok(Self::normalized(num, &self.den * &other.den))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgError> {
        let num = self.num.checked_mul(&other.num)?;
        if num.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        Ok(Self::normalized(num, self.den.checked_mul(&other.den)?))
    }

    pub fn recip(&self) -> Result<Self, AlgError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgError> {
        self.checked_mul(&other.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Integer power; negative exponents invert (fails on zero).
    pub fn powi(&self, e: i32) -> Result<Self, AlgError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::normalized(base.num.pow(k), base.den.pow(k)))
    }

    /// Quotient rule: `(p'q − pq')/q²`.
    pub fn partial(&self, i: usize) -> Result<Self, AlgError> {
        let dp = self.num.partial(i)?;
        if self.den.as_constant().is_some() {
            return Ok(Self::normalized(dp, self.den.clone()));
        }
        let dq = self.den.partial(i)?;
        let num = &(&dp * &self.den) - &(&self.num * &dq);
        Ok(Self::normalized(num, self.den.pow(2)))
    }

    /// Exact value at `point`; a vanishing denominator is an unlucky point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgError::UnluckyPoint("denominator vanishes".into()));
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Replaces variable `i` by `images[i]` (all images share one variable set).
    pub fn compose(&self, images: &[RatExpr]) -> Result<Self, AlgError> {
        let n = compose_poly(&self.num, images)?;
        let d = compose_poly(&self.den, images)?;
        n.checked_div(&d)
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> impl fmt::Display + 'a {
        RatDisplay { e: self, vars }
    }
}

/// Evaluates a Laurent polynomial with each variable replaced by a rational
/// expression.
pub(crate) fn compose_poly(p: &LaurentPoly, images: &[RatExpr]) -> Result<RatExpr, AlgError> {
    if images.len() != p.nvars() {
        return Err(AlgError::DimensionMismatch(format!(
            "{} images for {} variables",
            images.len(),
            p.nvars()
        )));
    }
    let target = images.first().map(RatExpr::nvars).unwrap_or(0);
    let mut acc = RatExpr::zero(target);
    for (m, c) in p.terms() {
        let mut t = RatExpr::constant(target, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e != 0 {
                t = t.checked_mul(&images[i].powi(e)?)?;
            }
        }
        acc = acc.checked_add(&t)?;
    }
    Ok(acc)
}

struct RatDisplay<'a> {
    e: &'a RatExpr,
    vars: &'a VarTable,
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.e.as_poly() {
            Some(p) => write!(f, "{}", p.display(self.vars)),
            None => write!(
                f,
                "({})/({})",
                self.e.num.display(self.vars),
                self.e.den.display(self.vars)
            ),
        }
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl PartialEq for RatExpr {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<LaurentPoly> for RatExpr {
    fn from(p: LaurentPoly) -> Self {
        RatExpr::from_poly(p)
    }
}

impl Add<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn add(self, rhs: &RatExpr) -> RatExpr {
        self.checked_add(rhs).expect("RatExpr::add")
    }
}

impl Sub<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn sub(self, rhs: &RatExpr) -> RatExpr {
        self.checked_add(&-rhs).expect("RatExpr::sub")
    }
}

impl Mul<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn mul(self, rhs: &RatExpr) -> RatExpr {
        self.checked_mul(rhs).expect("RatExpr::mul")
    }
}

impl Div<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn div(self, rhs: &RatExpr) -> RatExpr {
        self.checked_div(rhs).expect("RatExpr::div")
    }
}

impl Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(2, i)
    }

    fn one() -> LaurentPoly {
        LaurentPoly::one(2)
    }

    #[test]
    fn factorization_identity() {
        let p = RatExpr::new(&x(0).pow(2) - &one(), &x(0) - &one()).unwrap();
        let q = RatExpr::from_poly(&x(0) + &one());
        assert_eq!(p, q);
    }

    #[test]
    fn distinct_quotients() {
        let p = RatExpr::new(x(0), x(1)).unwrap();
        let q = RatExpr::new(x(1), x(0)).unwrap();
        assert_ne!(p, q);
    }

    #[test]
    fn zeros_with_different_denominators() {
        let p = RatExpr::new(LaurentPoly::zero(2), x(0)).unwrap();
        let q = RatExpr::new(LaurentPoly::zero(2), &x(0) + &x(1)).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatExpr::new(x(0), LaurentPoly::zero(2)).unwrap_err(),
            AlgError::ZeroDenominator
        );
    }

    #[test]
    fn monomial_denominator_is_folded() {
        let p = RatExpr::new(&x(0) + &x(1), x(1).scale(&rat(2, 1))).unwrap();
        assert!(p.as_poly().is_some());
        assert_eq!(p.eval(&[rat(1, 1), rat(1, 1)]).unwrap(), rat(1, 1));
    }

    #[test]
    fn unlucky_point() {
        let p = RatExpr::new(&x(0) + &x(1), &x(0) - &x(1)).unwrap();
        assert!(matches!(
            p.eval(&[rat(1, 1), rat(1, 1)]),
            Err(AlgError::UnluckyPoint(_))
        ));
        assert_eq!(p.eval(&[rat(3, 1), rat(1, 1)]).unwrap(), rat(2, 1));
    }

    #[test]
    fn quotient_rule() {
        // d/dx1 [x1 / (x1 + x2)] = x2 / (x1 + x2)^2
        let f = RatExpr::new(x(0), &x(0) + &x(1)).unwrap();
        let expect = RatExpr::new(x(1), (&x(0) + &x(1)).pow(2)).unwrap();
        assert_eq!(f.partial(0).unwrap(), expect);
    }

    #[test]
    fn compose_with_images() {
        // f = x1 x2^-1 with x1 -> x1 + x2, x2 -> x1
        let f = RatExpr::from_poly(LaurentPoly::monomial(rat(1, 1), vec![1, -1]));
        let images = [RatExpr::from_poly(&x(0) + &x(1)), RatExpr::from_poly(x(0))];
        let g = f.compose(&images).unwrap();
        assert_eq!(g, RatExpr::new(&x(0) + &x(1), x(0)).unwrap());
    }
}
