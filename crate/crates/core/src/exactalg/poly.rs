use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rational, AlgError, IntMatrix, Rational, VarTable};

/// Exponent vector of a Laurent monomial. Entries may be negative.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// on the vector. The order only matters for deterministic output and for
/// picking a leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate Laurent polynomial over the rationals.
///
/// Invariant: no stored coefficient is zero and every exponent vector has
/// length `nvars`. The zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars}");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn monomial(coef: Rational, exps: Vec<i32>) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        if !coef.is_zero() {
            p.terms.insert(Monomial(exps), coef);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, AlgError>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(AlgError::VarMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((c, e))` when the polynomial is a single term `c·x^e`.
    pub fn as_monomial(&self) -> Option<(&Rational, &Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c, m))
        } else {
            None
        }
    }

    /// Greatest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(AlgError::VarMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies every term by the monomial `x^e`.
    pub fn shift(&self, e: &Monomial) -> Self {
        assert_eq!(e.0.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.times(e), c.clone()))
                .collect(),
        }
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `∂/∂x_i` (0-based).
    pub fn partial(&self, i: usize) -> Result<Self, AlgError> {
        if i >= self.nvars {
            return Err(AlgError::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                out.terms.insert(m2, c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Replaces each variable `x_r` by the Laurent monomial `Π_c u_c^{M[r][c]}`
    /// in a new variable set of size `M.cols()`.
    pub fn substitute_monomial(&self, m: &IntMatrix) -> Result<Self, AlgError> {
        if m.rows() != self.nvars {
            return Err(AlgError::DimensionMismatch(format!(
                "substitution matrix has {} rows, polynomial has {} variables",
                m.rows(),
                self.nvars
            )));
        }
        let cols = m.cols();
        let mut out = Self::zero(cols);
        for (mono, c) in &self.terms {
            let mut e = vec![0i32; cols];
            for (r, &er) in mono.0.iter().enumerate() {
                if er == 0 {
                    continue;
                }
                for (col, slot) in e.iter_mut().enumerate() {
                    *slot += er * m[(r, col)] as i32;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Re-indexes into a larger variable set: variable `i` becomes `offset + i`.
    pub fn embed(&self, new_nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= new_nvars);
        LaurentPoly {
            nvars: new_nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; new_nvars];
                    e[offset..offset + self.nvars].copy_from_slice(&m.0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Variables with a strictly negative exponent somewhere.
    pub fn negative_support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] < 0))
            .collect()
    }

    /// Largest exponent of `x_i` over all terms (0 for the zero polynomial).
    pub fn degree_in(&self, i: usize) -> i32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Lowest exponent of `x_i` over all terms (0 for the zero polynomial).
    pub fn min_degree_in(&self, i: usize) -> i32 {
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    /// Exact value at `point`. Fails with [`AlgError::UnluckyPoint`] when a
    /// variable with a negative exponent is zero.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgError> {
        if point.len() != self.nvars {
            return Err(AlgError::VarMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = &point[i];
                if e < 0 && x.is_zero() {
                    return Err(AlgError::UnluckyPoint(format!(
                        "variable {} is zero but appears with exponent {e}",
                        i + 1
                    )));
                }
                t *= pow_rat(x, e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Human-readable form using the names in `vars`.
    pub fn display<'a>(&'a self, vars: &'a VarTable) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            names: Some(vars),
        }
    }
}

fn pow_rat(x: &Rational, e: i32) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

pub struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    names: Option<&'a VarTable>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match self.names {
                    Some(v) => v.name(i).to_string(),
                    None => format!("x{}", i + 1),
                };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay {
            poly: self,
            names: None,
        }
        .fmt(f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect(concat!("LaurentPoly::", stringify!($method)))
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(2, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let expect = &x(0).pow(2) - &x(1).pow(2);
        assert_eq!(p, expect);
    }

    #[test]
    fn laurent_inverse_monomial() {
        let inv = LaurentPoly::monomial(rat(1, 1), vec![-1, 0]);
        assert_eq!(&inv * &x(0), LaurentPoly::one(2));
    }

    #[test]
    fn cancellation_to_zero() {
        let one = LaurentPoly::one(2);
        let a = &x(0) + &one;
        let b = -&a;
        let s = &a + &b;
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = LaurentPoly::var(2, 0);
        let b = LaurentPoly::var(3, 0);
        assert_eq!(
            a.checked_mul(&b),
            Err(AlgError::VarMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn partial_derivatives() {
        // x1^2 x2 -> 2 x1 x2
        let f = LaurentPoly::monomial(rat(1, 1), vec![2, 1]);
        assert_eq!(f.partial(0).unwrap(), LaurentPoly::monomial(rat(2, 1), vec![1, 1]));
        // x1^-1 -> -x1^-2
        let g = LaurentPoly::monomial(rat(1, 1), vec![-1, 0]);
        assert_eq!(g.partial(0).unwrap(), LaurentPoly::monomial(rat(-1, 1), vec![-2, 0]));
        // d/dx2 x1^3 -> 0
        let h = LaurentPoly::monomial(rat(1, 1), vec![3, 0]);
        assert!(h.partial(1).unwrap().is_zero());
        assert!(matches!(h.partial(2), Err(AlgError::IndexOutOfRange { .. })));
    }

    #[test]
    fn monomial_substitution() {
        // x1 -> u^2, x2 -> u^-1 v : x1 x2 -> u v
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![-1, 1]]).unwrap();
        let f = LaurentPoly::monomial(rat(1, 1), vec![1, 1]);
        assert_eq!(
            f.substitute_monomial(&m).unwrap(),
            LaurentPoly::monomial(rat(1, 1), vec![1, 1])
        );
        // identity leaves f unchanged
        let g = &(&x(0) * &x(1)) + &LaurentPoly::constant(2, rat(3, 2));
        assert_eq!(g.substitute_monomial(&IntMatrix::identity(2)).unwrap(), g);
        // x1 + x2 with both -> u collapses to 2u
        let collide = IntMatrix::from_rows(vec![vec![1], vec![1]]).unwrap();
        let s = (&x(0) + &x(1)).substitute_monomial(&collide).unwrap();
        assert_eq!(s, LaurentPoly::monomial(rat(2, 1), vec![1]));
        assert!(s.substitute_monomial(&IntMatrix::identity(2)).is_err());
    }

    #[test]
    fn evaluation() {
        let f = LaurentPoly::monomial(rat(1, 1), vec![1, -1]);
        assert_eq!(f.eval(&[rat(3, 1), rat(2, 1)]).unwrap(), rat(3, 2));
        assert!(matches!(
            f.eval(&[rat(3, 1), rat(0, 1)]),
            Err(AlgError::UnluckyPoint(_))
        ));
        let five = LaurentPoly::constant(2, rat(5, 1));
        assert_eq!(five.eval(&[rat(9, 7), rat(-1, 3)]).unwrap(), rat(5, 1));
    }

    #[test]
    fn display_uses_canonical_order() {
        let vars = VarTable::new(["a", "b"]).unwrap();
        let f = &(&x(0).pow(2) - &x(1)) + &LaurentPoly::constant(2, rat(-1, 2));
        assert_eq!(f.display(&vars).to_string(), "a^2 - b - 1/2");
    }
}
