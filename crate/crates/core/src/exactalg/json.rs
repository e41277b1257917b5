use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, AlgError, LaurentPoly, RatExpr, VarTable};

/// `{"vars":[...], "terms":[{"exp":[...], "coef":"p/q"}]}`, terms in
/// canonical order (descending graded-lex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub coef: String,
}

pub fn poly_to_json(p: &LaurentPoly, vars: &VarTable) -> PolyJson {
    assert_eq!(p.nvars(), vars.len(), "polynomial and variable table disagree");
    PolyJson {
        vars: vars.names().to_vec(),
        terms: p
            .terms()
            .rev()
            .map(|(m, c)| TermJson {
                exp: m.0.clone(),
                coef: format_rational(c),
            })
            .collect(),
    }
}

pub fn poly_from_json(j: &PolyJson) -> Result<(LaurentPoly, VarTable), AlgError> {
    let vars = VarTable::new(j.vars.iter().cloned())?;
    let terms = j
        .terms
        .iter()
        .map(|t| Ok((t.exp.clone(), parse_rational(&t.coef)?)))
        .collect::<Result<Vec<_>, AlgError>>()?;
    Ok((LaurentPoly::from_terms(vars.len(), terms)?, vars))
}

/// A rational expression serializes as a bare polynomial when its denominator
/// is one, otherwise as `{"num": poly, "den": poly}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatExprJson {
    Quotient { num: PolyJson, den: PolyJson },
    Poly(PolyJson),
}

pub fn ratexpr_to_json(e: &RatExpr, vars: &VarTable) -> RatExprJson {
    match e.as_poly() {
        Some(p) => RatExprJson::Poly(poly_to_json(p, vars)),
        None => RatExprJson::Quotient {
            num: poly_to_json(e.num(), vars),
            den: poly_to_json(e.den(), vars),
        },
    }
}

pub fn ratexpr_from_json(j: &RatExprJson) -> Result<(RatExpr, VarTable), AlgError> {
    match j {
        RatExprJson::Poly(p) => {
            let (p, v) = poly_from_json(p)?;
            Ok((RatExpr::from_poly(p), v))
        }
        RatExprJson::Quotient { num, den } => {
            let (n, v) = poly_from_json(num)?;
            let (d, v2) = poly_from_json(den)?;
            if v != v2 {
                return Err(AlgError::VarMismatch {
                    left: v.len(),
                    right: v2.len(),
                });
            }
            Ok((RatExpr::new(n, d)?, v))
        }
    }
}
