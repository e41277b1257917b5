use crate::exactalg::{rat, LaurentPoly, RatExpr, Rational, VarTable};
use crate::poisson::{poisson_map_check, product_structure, BracketTable, CheckMode, CoordinateMap, MapOutcome};
use crate::rmatrix::{torus_core_table, SkewParam};

use super::{GrassmannChart, GrassmannError};

fn sign(d: i64) -> i64 {
    d.signum()
}

fn check_s(chart: &GrassmannChart, s: &SkewParam) -> Result<(), GrassmannError> {
    if s.n() != chart.n() {
        return Err(GrassmannError::BadChart(format!(
            "S has n = {}, chart has n = {}",
            s.n(),
            chart.n()
        )));
    }
    Ok(())
}

/// `{y_ij, y_αβ}_S = ½(sign(α−i) − sign(β−j)) y_iβ y_αj
///  + ½(s_{i,β+k} + s_{j+k,α} − s_{i,α} − s_{j+k,β+k}) y_ij y_αβ`
/// with the completed `S` (1-based indices as written).
pub fn gr_bracket_table(chart: &GrassmannChart, s: &SkewParam) -> Result<BracketTable, GrassmannError> {
    check_s(chart, s)?;
    let (k, m) = (chart.k(), chart.m());
    let nv = chart.vars().len();
    // 1-based completed entries
    let sv = |a: usize, b: usize| s.s(a - 1, b - 1).clone();
    Ok(BracketTable::from_fn(chart.vars().clone(), |p, q| {
        let (i, j) = (p / m + 1, p % m + 1);
        let (al, be) = (q / m + 1, q % m + 1);
        let c0 = rat(sign(al as i64 - i as i64) - sign(be as i64 - j as i64), 2);
        let mut e0 = vec![0; nv];
        e0[chart.y_index(i, be)] += 1;
        e0[chart.y_index(al, j)] += 1;
        let cs: Rational = (sv(i, be + k) + sv(j + k, al) - sv(i, al) - sv(j + k, be + k)) / rat(2, 1);
        let mut es = vec![0; nv];
        es[p] += 1;
        es[q] += 1;
        &LaurentPoly::monomial(c0, e0) + &LaurentPoly::monomial(cs, es)
    })?)
}

/// `(Y, D) ↦ Ỹ` with `ỹ_ij = y_ij d_{j+k} / d_i`, source `y…, d1…d(n−1)`
/// and `d_n = (d_1⋯d_{n−1})⁻¹`.
pub fn torus_action_map(chart: &GrassmannChart) -> Result<CoordinateMap, GrassmannError> {
    let (k, m, n) = (chart.k(), chart.m(), chart.n());
    let ny = chart.vars().len();
    let source = chart.vars().concat(&VarTable::numbered("d", n - 1))?;
    let nv = source.len();
    let add_d = |e: &mut Vec<i32>, idx: usize, sgn: i32| {
        if idx < n {
            e[ny + idx - 1] += sgn;
        } else {
            for t in 0..n - 1 {
                e[ny + t] -= sgn;
            }
        }
    };
    let images = (1..=k)
        .flat_map(|i| (1..=m).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut e = vec![0; nv];
            e[chart.y_index(i, j)] = 1;
            add_d(&mut e, j + k, 1);
            add_d(&mut e, i, -1);
            RatExpr::from_poly(LaurentPoly::monomial(rat(1, 1), e))
        })
        .collect();
    Ok(CoordinateMap::new(source, chart.vars().clone(), images)?)
}

/// Symbolic check that `(X, D) ↦ XD` is Poisson from `G^{0} × H^{V}` to
/// `G^{S}`. `V` defaults to `−½S`.
pub fn verify_torus_action_gr(
    chart: &GrassmannChart,
    s: &SkewParam,
    v: Option<&SkewParam>,
) -> Result<MapOutcome, GrassmannError> {
    check_s(chart, s)?;
    let default_v = s.scaled(&rat(-1, 2));
    let v = v.unwrap_or(&default_v);
    check_s(chart, v)?;
    let source = product_structure(
        &gr_bracket_table(chart, &SkewParam::zero(chart.n()))?,
        &torus_core_table("d", v),
    )?;
    let target = gr_bracket_table(chart, s)?;
    Ok(poisson_map_check(&torus_action_map(chart)?, &source, &target, CheckMode::Symbolic)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::jacobi_check;
    use crate::rng::Lcg64;

    #[test]
    fn standard_entries_g24() {
        let c = GrassmannChart::new(2, 4).unwrap();
        let t = gr_bracket_table(&c, &SkewParam::zero(4)).unwrap();
        let (y11, y21, y22) = (c.y(1, 1), c.y(2, 1), c.y(2, 2));
        assert_eq!(t.get(0, 2), &(&y11 * &y21).scale(&rat(1, 2)));
        assert_eq!(t.get(1, 2), &(&y11 * &y22));
        assert!(t.get(0, 3).is_zero());
    }

    #[test]
    fn deformation_term() {
        let c = GrassmannChart::new(2, 4).unwrap();
        let mut rng = Lcg64::new(12);
        let s = SkewParam::random(4, &mut rng);
        let t0 = gr_bracket_table(&c, &SkewParam::zero(4)).unwrap();
        let t = gr_bracket_table(&c, &s).unwrap();
        // (y11, y22): ½(s14 + s32 − s12 − s34)
        let w = (s.s(0, 3) + s.s(2, 1) - s.s(0, 1) - s.s(2, 3)) / rat(2, 1);
        let diff = t.get(0, 3) - t0.get(0, 3);
        assert_eq!(diff, (&c.y(1, 1) * &c.y(2, 2)).scale(&w));
        // every difference is a multiple of y_ij y_αβ
        for p in 0..4 {
            for q in p + 1..4 {
                let d = t.get(p, q) - t0.get(p, q);
                let prod = &c.y(p / 2 + 1, p % 2 + 1) * &c.y(q / 2 + 1, q % 2 + 1);
                assert!(d.is_zero() || d.num_terms() == 1 && d.as_monomial().unwrap().1 == prod.as_monomial().unwrap().1);
            }
        }
    }

    #[test]
    fn gr_tables_are_poisson() {
        let mut rng = Lcg64::new(13);
        for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 5)] {
            let c = GrassmannChart::new(k, n).unwrap();
            let s = SkewParam::random(n, &mut rng);
            assert_eq!(jacobi_check(&gr_bracket_table(&c, &s).unwrap()), Ok(()), "({k}, {n})");
        }
    }

    #[test]
    fn torus_action() {
        let mut rng = Lcg64::new(14);
        for (k, n) in [(2, 3), (2, 4)] {
            let c = GrassmannChart::new(k, n).unwrap();
            let s = SkewParam::random(n, &mut rng);
            assert!(verify_torus_action_gr(&c, &s, None).unwrap().is_pass());
            let wrong = s.scaled(&rat(1, 2));
            assert!(!verify_torus_action_gr(&c, &s, Some(&wrong)).unwrap().is_pass());
        }
        let c = GrassmannChart::new(2, 4).unwrap();
        assert!(verify_torus_action_gr(&c, &SkewParam::zero(4), None).unwrap().is_pass());
    }
}
