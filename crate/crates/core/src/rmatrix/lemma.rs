use crate::exactalg::{rat, LaurentPoly, RatExpr, VarTable};
use crate::poisson::{
    poisson_map_check, product_structure, BracketTable, CheckMode, CoordinateMap, MapOutcome,
};

use super::sklyanin::entry_vars;
use super::{sklyanin_entry_table, torus_core_table, RMatrixError, SkewParam};

/// Signs and index lists of every permutation of `0..n`.
pub(crate) fn permutations(n: usize) -> Vec<(i64, Vec<usize>)> {
    if n == 0 {
        return vec![(1, Vec::new())];
    }
    let mut out = Vec::new();
    for (sg, p) in permutations(n - 1) {
        // insert n−1 at position k: crosses (n−1−k) entries
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            let s = if (n - 1 - k).is_multiple_of(2) { sg } else { -sg };
            out.push((s, q));
        }
    }
    out
}

/// `det` of the generic `n × n` matrix whose entry `(i, j)` is variable
/// `offset + i n + j` among `nvars`.
pub(crate) fn generic_det(n: usize, nvars: usize, offset: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(nvars);
    for (s, p) in permutations(n) {
        let mut e = vec![0; nvars];
        for (i, &j) in p.iter().enumerate() {
            e[offset + i * n + j] = 1;
        }
        acc = &acc + &LaurentPoly::monomial(rat(s, 1), e);
    }
    acc
}

/// The multiplication `(D₁, X, D₂) ↦ D₁ X D₂` with source variables
/// `a1…a(n−1), x11…xnn, b1…b(n−1)` and target `y11…ynn`. The last diagonal
/// entries are eliminated through `a_n = (a_1⋯a_{n−1})⁻¹` and likewise for `b`.
pub fn factorization_map(n: usize) -> Result<CoordinateMap, RMatrixError> {
    let a = VarTable::numbered("a", n - 1);
    let b = VarTable::numbered("b", n - 1);
    let source = a.concat(&entry_vars("x", n))?.concat(&b)?;
    let nv = source.len();
    let (xo, bo) = (n - 1, n - 1 + n * n);
    let diag = |offset: usize, i: usize, e: &mut Vec<i32>| {
        if i + 1 < n {
            e[offset + i] += 1;
        } else {
            for k in 0..n - 1 {
                e[offset + k] -= 1;
            }
        }
    };
    let images = (0..n * n)
        .map(|c| {
            let (i, j) = (c / n, c % n);
            let mut e = vec![0; nv];
            diag(0, i, &mut e);
            e[xo + c] += 1;
            diag(bo, j, &mut e);
            RatExpr::from_poly(LaurentPoly::monomial(rat(1, 1), e))
        })
        .collect();
    Ok(CoordinateMap::new(source, entry_vars("y", n), images)?)
}

/// Checks that `(D₁, X, D₂) ↦ D₁ X D₂` is Poisson from
/// `H^{½S} × SL_n^{0} × H^{−½S}` to `SL_n^{target}` (`target` defaults to
/// `S`; any other value serves as a negative control).
///
/// Symbolic mode checks the identity on all of `gl_n`, where it already
/// holds; sampled mode draws points with `det X = 1`.
pub fn verify_factorization_lemma(
    s: &SkewParam,
    mode: CheckMode,
    target: Option<&SkewParam>,
) -> Result<MapOutcome, RMatrixError> {
    let n = s.n();
    let half = rat(1, 2);
    let source = product_structure(
        &product_structure(
            &torus_core_table("a", &s.scaled(&half)),
            &sklyanin_entry_table(&SkewParam::zero(n)),
        )?,
        &torus_core_table("b", &s.scaled(&-half)),
    )?;
    let t = target.unwrap_or(s);
    if t.n() != n {
        return Err(RMatrixError::Size(format!("target has n = {}, expected {n}", t.n())));
    }
    let target_table = sklyanin_entry_table(t);
    let target_table = BracketTable::from_fn(entry_vars("y", n), |i, j| target_table.get(i, j).clone())?;
    let mut map = factorization_map(n)?;
    if matches!(mode, CheckMode::Sampled { .. }) {
        let nv = map.source().len();
        let det = generic_det(n, nv, n - 1);
        map = map.with_constraint(&det - &LaurentPoly::one(nv))?;
    }
    Ok(poisson_map_check(&map, &source, &target_table, mode)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;
    use crate::rng::Lcg64;

    #[test]
    fn determinant_expansion() {
        assert_eq!(permutations(3).len(), 6);
        let d = generic_det(2, 4, 0);
        let x = |i| LaurentPoly::var(4, i);
        assert_eq!(d, &(&x(0) * &x(3)) - &(&x(1) * &x(2)));
        let p = [rat(2, 1), rat(1, 1), rat(0, 1), rat(1, 1), rat(3, 1), rat(1, 1), rat(1, 1), rat(0, 1), rat(1, 1)];
        // cofactor expansion along the first row: 2·3 − 1·0 + 0 = 6
        assert_eq!(generic_det(3, 9, 0).eval(&p).unwrap(), rat(6, 1));
    }

    #[test]
    fn unconstrained_symbolic_pass() {
        assert!(verify_factorization_lemma(&SkewParam::zero(2), CheckMode::Symbolic, None)
            .unwrap()
            .is_pass());
        let mut rng = Lcg64::new(2);
        let s = SkewParam::random(3, &mut rng);
        assert!(verify_factorization_lemma(&s, CheckMode::Symbolic, None).unwrap().is_pass());
    }

    #[test]
    fn sampled_on_sl3() {
        let mut rng = Lcg64::new(4);
        let s = SkewParam::random(3, &mut rng);
        let out = verify_factorization_lemma(&s, CheckMode::Sampled { trials: 10, seed: 9 }, None).unwrap();
        assert_eq!(out, MapOutcome::Pass { points_checked: 10 });
    }

    #[test]
    fn doubled_target_fails() {
        let mut rng = Lcg64::new(4);
        let s = SkewParam::random(3, &mut rng);
        let wrong = s.scaled(&Rational::from_integer(2.into()));
        let out = verify_factorization_lemma(&s, CheckMode::Symbolic, Some(&wrong)).unwrap();
        assert!(!out.is_pass());
    }
}
