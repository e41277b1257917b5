use crate::exactalg::{rat, AlgError, LaurentPoly, Matrix, Rational, VarTable};
use crate::poisson::{BracketTable, LogCanonicalStructure};

use super::{RMatrix, RMatrixError, SkewParam};

/// Matrix entries `x11, x12, …, xnn`, row-major.
pub fn entry_vars(prefix: &str, n: usize) -> VarTable {
    VarTable::new((1..=n).flat_map(|i| (1..=n).map(move |j| format!("{prefix}{i}{j}"))))
        .expect("entry names are distinct")
}

fn sign(a: usize, b: usize) -> i64 {
    match b.cmp(&a) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

/// Entrywise R_S bracket on `gl_n`:
/// `{x_ij, x_i'j'} = ½(sign(i'−i) + sign(j'−j)) x_ij' x_i'j + ½(s_ii' − s_jj') x_ij x_i'j'`.
pub fn sklyanin_entry_table(s: &SkewParam) -> BracketTable {
    let n = s.n();
    let vars = entry_vars("x", n);
    let nv = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    BracketTable::from_fn(vars, |a, b| {
        let (i, j) = (a / n, a % n);
        let (ip, jp) = (b / n, b % n);
        let c0 = rat(sign(i, ip) + sign(j, jp), 2);
        let cs = (s.s(i, ip) - s.s(j, jp)) / Rational::from_integer(2.into());
        let mut e0 = vec![0; nv];
        e0[idx(i, jp)] += 1;
        e0[idx(ip, j)] += 1;
        let mut es = vec![0; nv];
        es[a] += 1;
        es[b] += 1;
        &LaurentPoly::monomial(c0, e0) + &LaurentPoly::monomial(cs, es)
    })
    .expect("entry table is skew by construction")
}

fn poly_mul(a: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>) -> Matrix<LaurentPoly> {
    let n = a.rows();
    Matrix::from_fn(n, b.cols(), |i, j| {
        (1..a.cols()).fold(&a[(i, 0)] * &b[(0, j)], |acc, k| &acc + &(&a[(i, k)] * &b[(k, j)]))
    })
}

fn trace_pairing(a: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>, nvars: usize) -> LaurentPoly {
    let n = a.rows();
    let mut acc = LaurentPoly::zero(nvars);
    for i in 0..n {
        for j in 0..n {
            acc = &acc + &(&a[(i, j)] * &b[(j, i)]);
        }
    }
    acc
}

/// `{f, g}_R = ½(R(∇'f), ∇'g) − ½(R(∇f), ∇g)` with `∇f = X·grad f`,
/// `∇'f = grad f·X`, `grad f = (∂f/∂x_ji)` and the trace pairing. `f` and
/// `g` live in the `n²` entry variables, row-major.
pub fn sklyanin_functional_bracket(
    r: &RMatrix,
    f: &LaurentPoly,
    g: &LaurentPoly,
) -> Result<LaurentPoly, RMatrixError> {
    let n = r.n();
    let nv = n * n;
    if f.nvars() != nv || g.nvars() != nv {
        return Err(AlgError::VarMismatch {
            left: nv,
            right: f.nvars().max(g.nvars()),
        }
        .into());
    }
    let x = Matrix::from_fn(n, n, |i, j| LaurentPoly::var(nv, i * n + j));
    let grad = |h: &LaurentPoly| -> Result<Matrix<LaurentPoly>, AlgError> {
        let mut cells = Vec::with_capacity(nv);
        for i in 0..n {
            for j in 0..n {
                cells.push(h.partial(j * n + i)?);
            }
        }
        Matrix::new(n, n, cells)
    };
    let (gf, gg) = (grad(f)?, grad(g)?);
    let left = trace_pairing(&r.apply(&poly_mul(&gf, &x)), &poly_mul(&gg, &x), nv);
    let right = trace_pairing(&r.apply(&poly_mul(&x, &gf)), &poly_mul(&x, &gg), nv);
    Ok((&left - &right).scale(&rat(1, 2)))
}

/// Log-canonical bracket `{d_i, d_j} = v_ij d_i d_j` on `d1, …, dn`, with the
/// completed `V`.
pub fn torus_table(v: &SkewParam) -> BracketTable {
    let vars = VarTable::numbered("d", v.n());
    LogCanonicalStructure::new(vars, v.full().clone())
        .expect("completed matrix is skew")
        .to_table()
}

/// The same bracket on `d1, …, d(n−1)` only, read from the core; `d_n` is
/// meant to be eliminated as `(d_1⋯d_{n−1})⁻¹`, which reproduces the
/// completed entries.
pub fn torus_core_table(prefix: &str, v: &SkewParam) -> BracketTable {
    let vars = VarTable::numbered(prefix, v.n() - 1);
    LogCanonicalStructure::new(vars, v.core().clone())
        .expect("core is skew")
        .to_table()
}
