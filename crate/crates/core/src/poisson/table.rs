use std::fmt;

use crate::exactalg::{LaurentPoly, RatExpr, RatMatrix, Rational, VarTable};

use super::PoissonError;

/// Skew table of coordinate brackets `β_ij = {x_i, x_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable {
    vars: VarTable,
    // full N×N, skew-filled
    entries: Vec<LaurentPoly>,
}

impl BracketTable {
    /// Builds the table from `f(i, j)` for `i < j`.
    pub fn from_fn(
        vars: VarTable,
        mut f: impl FnMut(usize, usize) -> LaurentPoly,
    ) -> Result<Self, PoissonError> {
        let n = vars.len();
        let mut entries = vec![LaurentPoly::zero(n); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let p = f(i, j);
                if p.nvars() != n {
                    return Err(crate::exactalg::AlgError::VarMismatch {
                        left: n,
                        right: p.nvars(),
                    }
                    .into());
                }
                entries[j * n + i] = -&p;
                entries[i * n + j] = p;
            }
        }
        Ok(BracketTable { vars, entries })
    }

    pub fn zero(vars: VarTable) -> Self {
        let n = vars.len();
        BracketTable {
            vars,
            entries: vec![LaurentPoly::zero(n); n * n],
        }
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// `{x_i, x_j}` (0-based).
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.nvars() + j]
    }

    /// Biderivation on polynomials: `Σ_{i<j} β_ij (∂_i f ∂_j g − ∂_j f ∂_i g)`.
    pub fn bracket_poly(&self, f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
        let n = self.nvars();
        let df = gradient(f, n);
        let dg = gradient(g, n);
        let mut acc = LaurentPoly::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let b = self.get(i, j);
                if b.is_zero() {
                    continue;
                }
                let mut cross = LaurentPoly::zero(n);
                if let (Some(a), Some(c)) = (&df[i], &dg[j]) {
                    cross = &cross + &(a * c);
                }
                if let (Some(a), Some(c)) = (&df[j], &dg[i]) {
                    cross = &cross - &(a * c);
                }
                if !cross.is_zero() {
                    acc = &acc + &(b * &cross);
                }
            }
        }
        acc
    }

    /// The unique biderivation extension to rational expressions:
    /// `{p/q, r/s} = ({p,r}qs − {p,s}qr − {q,r}ps + {q,s}pr) / (q²s²)`.
    pub fn bracket(&self, f: &RatExpr, g: &RatExpr) -> RatExpr {
        let (p, q) = (f.num(), f.den());
        let (r, s) = (g.num(), g.den());
        let q_const = q.as_constant().is_some();
        let s_const = s.as_constant().is_some();
        let pr = self.bracket_poly(p, r);
        let rat = |num: LaurentPoly, den: LaurentPoly| {
            RatExpr::new(num, den).expect("denominators are nonzero")
        };
        match (q_const, s_const) {
            (true, true) => RatExpr::from_poly(pr),
            (true, false) => {
                let ps = self.bracket_poly(p, s);
                rat(&(&pr * s) - &(&ps * r), s.pow(2))
            }
            (false, true) => {
                let qr = self.bracket_poly(q, r);
                rat(&(&pr * q) - &(&qr * p), q.pow(2))
            }
            (false, false) => {
                let ps = self.bracket_poly(p, s);
                let qr = self.bracket_poly(q, r);
                let qs = self.bracket_poly(q, s);
                let num = &(&(&(&pr * q) * s) - &(&(&ps * q) * r))
                    - &(&(&(&qr * p) * s) - &(&(&qs * p) * r));
                rat(num, &q.pow(2) * &s.pow(2))
            }
        }
    }

    /// Same table with every entry multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> Self {
        BracketTable {
            vars: self.vars.clone(),
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

fn gradient(f: &LaurentPoly, n: usize) -> Vec<Option<LaurentPoly>> {
    (0..n)
        .map(|i| {
            let d = f.partial(i).expect("index in range");
            (!d.is_zero()).then_some(d)
        })
        .collect()
}

/// Log-canonical structure `{x_i, x_j} = ω_ij x_i x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogCanonicalStructure {
    vars: VarTable,
    omega: RatMatrix,
}

impl LogCanonicalStructure {
    pub fn new(vars: VarTable, omega: RatMatrix) -> Result<Self, PoissonError> {
        if omega.rows() != vars.len() || !omega.is_skew() {
            return Err(PoissonError::NotSkew);
        }
        Ok(LogCanonicalStructure { vars, omega })
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn omega(&self) -> &RatMatrix {
        &self.omega
    }

    /// Whether every `ω_ij` is an integer. Reported, never enforced.
    pub fn is_integral(&self) -> bool {
        (0..self.omega.rows())
            .all(|i| (0..self.omega.cols()).all(|j| self.omega[(i, j)].is_integer()))
    }

    pub fn to_table(&self) -> BracketTable {
        let n = self.vars.len();
        BracketTable::from_fn(self.vars.clone(), |i, j| {
            let mut e = vec![0; n];
            e[i] += 1;
            e[j] += 1;
            LaurentPoly::monomial(self.omega[(i, j)].clone(), e)
        })
        .expect("monomials match the table")
    }
}

/// First failing triple `(i, j, k)` with `i < j < k` and the nonzero Jacobiator.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: LaurentPoly,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "Jacobi fails at ({}, {}, {}): residual {}",
            i + 1,
            j + 1,
            k + 1,
            self.residual
        )
    }
}

/// `{x_k, x_l}`-table Jacobi check over all triples `i < j < k`, in
/// lexicographic order.
pub fn jacobi_check(table: &BracketTable) -> Result<(), JacobiViolation> {
    let n = table.nvars();
    // {h, x_k} = Σ_l ∂_l h · β_lk
    let with_coord = |h: &LaurentPoly, k: usize| -> LaurentPoly {
        let mut acc = LaurentPoly::zero(n);
        for l in 0..n {
            let b = table.get(l, k);
            if b.is_zero() {
                continue;
            }
            let d = h.partial(l).expect("index in range");
            if !d.is_zero() {
                acc = &acc + &(&d * b);
            }
        }
        acc
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let r = &(&with_coord(table.get(i, j), k) + &with_coord(table.get(j, k), i))
                    + &with_coord(table.get(k, i), j);
                if !r.is_zero() {
                    return Err(JacobiViolation {
                        triple: (i, j, k),
                        residual: r,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Block table on the concatenated variables; cross brackets vanish.
pub fn product_structure(a: &BracketTable, b: &BracketTable) -> Result<BracketTable, PoissonError> {
    let vars = a.vars.concat(&b.vars)?;
    let (na, n) = (a.nvars(), vars.len());
    BracketTable::from_fn(vars, |i, j| {
        if j < na {
            a.get(i, j).embed(n, 0)
        } else if i >= na {
            b.get(i - na, j - na).embed(n, na)
        } else {
            LaurentPoly::zero(n)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, IntMatrix};

    fn lc2(w: Rational) -> LogCanonicalStructure {
        let omega = RatMatrix::from_rows(vec![
            vec![rat(0, 1), w.clone()],
            vec![-w, rat(0, 1)],
        ])
        .unwrap();
        LogCanonicalStructure::new(VarTable::numbered("x", 2), omega).unwrap()
    }

    fn x(n: usize, i: usize) -> RatExpr {
        RatExpr::var(n, i)
    }

    #[test]
    fn defining_property() {
        let t = lc2(rat(1, 1)).to_table();
        let b = t.bracket(&x(2, 0), &x(2, 1));
        assert_eq!(b, RatExpr::from_poly(LaurentPoly::monomial(rat(1, 1), vec![1, 1])));
    }

    #[test]
    fn leibniz_expansion() {
        // {x1 x2, x2} = x2 {x1, x2} = x1 x2^2
        let t = lc2(rat(1, 1)).to_table();
        let b = t.bracket(&(&x(2, 0) * &x(2, 1)), &x(2, 1));
        assert_eq!(b, RatExpr::from_poly(LaurentPoly::monomial(rat(1, 1), vec![1, 2])));
    }

    #[test]
    fn antisymmetry_on_quotients() {
        let t = lc2(rat(3, 2)).to_table();
        let f = RatExpr::new(
            &LaurentPoly::var(2, 0) + &LaurentPoly::one(2),
            &LaurentPoly::var(2, 1) + &LaurentPoly::var(2, 0),
        )
        .unwrap();
        assert!(t.bracket(&f, &f).is_zero());
    }

    #[test]
    fn quotient_rule_matches_direct_definition() {
        // {x1/x2... } using a non-monomial denominator: {1/(x1+x2), x1}
        let t = lc2(rat(1, 1)).to_table();
        let s = &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1);
        let f = RatExpr::new(LaurentPoly::one(2), s.clone()).unwrap();
        // = -{x1 + x2, x1}/s^2 = -{x2,x1}/s^2 = x1 x2 / s^2
        let expect = RatExpr::new(LaurentPoly::monomial(rat(1, 1), vec![1, 1]), s.pow(2)).unwrap();
        assert_eq!(t.bracket(&f, &x(2, 0)), expect);
    }

    #[test]
    fn log_canonical_passes_jacobi() {
        let omega = RatMatrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 2), rat(-3, 1)],
            vec![rat(-1, 2), rat(0, 1), rat(7, 5)],
            vec![rat(3, 1), rat(-7, 5), rat(0, 1)],
        ])
        .unwrap();
        let lc = LogCanonicalStructure::new(VarTable::numbered("x", 3), omega).unwrap();
        assert!(!lc.is_integral());
        assert!(jacobi_check(&lc.to_table()).is_ok());
    }

    #[test]
    fn casimir_example_is_poisson() {
        // β12 = x3^2, β13 = β23 = 0: x3 is a Casimir, every Jacobi term vanishes.
        let t = BracketTable::from_fn(VarTable::numbered("x", 3), |i, j| match (i, j) {
            (0, 1) => LaurentPoly::monomial(rat(1, 1), vec![0, 0, 2]),
            _ => LaurentPoly::zero(3),
        })
        .unwrap();
        assert!(jacobi_check(&t).is_ok());
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // β12 = 1, β13 = -x1: Jacobiator {{x3,x1},x2} = {x1,x2} = 1.
        let t = BracketTable::from_fn(VarTable::numbered("x", 3), |i, j| match (i, j) {
            (0, 1) => LaurentPoly::one(3),
            (0, 2) => -LaurentPoly::var(3, 0),
            _ => LaurentPoly::zero(3),
        })
        .unwrap();
        let v = jacobi_check(&t).unwrap_err();
        assert_eq!(v.triple, (0, 1, 2));
        assert_eq!(v.residual, LaurentPoly::one(3));
        assert_eq!(v.to_string(), "Jacobi fails at (1, 2, 3): residual 1");
    }

    #[test]
    fn product_blocks() {
        let z1 = BracketTable::zero(VarTable::new(["a"]).unwrap());
        let z2 = BracketTable::zero(VarTable::new(["b"]).unwrap());
        let p = product_structure(&z1, &z2).unwrap();
        assert_eq!(p, BracketTable::zero(VarTable::new(["a", "b"]).unwrap()));

        let a = lc2(rat(1, 1));
        let b = LogCanonicalStructure::new(
            VarTable::new(["d1", "d2"]).unwrap(),
            IntMatrix::from_rows(vec![vec![0, 2], vec![-2, 0]]).unwrap().to_rational(),
        )
        .unwrap();
        let p = product_structure(&a.to_table(), &b.to_table()).unwrap();
        let omega = IntMatrix::from_rows(vec![
            vec![0, 1, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 2],
            vec![0, 0, -2, 0],
        ])
        .unwrap()
        .to_rational();
        let expect = LogCanonicalStructure::new(p.vars().clone(), omega).unwrap();
        assert_eq!(p, expect.to_table());

        let empty = BracketTable::zero(VarTable::new(Vec::<String>::new()).unwrap());
        assert_eq!(product_structure(&a.to_table(), &empty).unwrap(), a.to_table());
        assert!(product_structure(&a.to_table(), &a.to_table()).is_err());
    }
}
