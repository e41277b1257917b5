use serde::{Deserialize, Serialize};

use crate::exactalg::{parse_rational, poly_from_json, poly_to_json, AlgError, PolyJson, RatMatrix, VarTable};

use super::{BracketTable, LogCanonicalStructure, PoissonError};

/// Either `{"vars":[...], "entries":[{"i":1,"j":2,"poly":{...}}]}` with
/// 1-based indices and `i < j`, or the log-canonical shortcut
/// `{"vars":[...], "omega":[["0","1/2"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BracketTableJson {
    LogCanonical {
        vars: Vec<String>,
        omega: Vec<Vec<String>>,
    },
    Entries {
        vars: Vec<String>,
        entries: Vec<BracketEntryJson>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntryJson {
    pub i: usize,
    pub j: usize,
    pub poly: PolyJson,
}

/// Serializes every nonzero entry with `i < j`, in lexicographic order.
pub fn table_to_json(t: &BracketTable) -> BracketTableJson {
    let n = t.nvars();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = t.get(i, j);
            if !p.is_zero() {
                entries.push(BracketEntryJson {
                    i: i + 1,
                    j: j + 1,
                    poly: poly_to_json(p, t.vars()),
                });
            }
        }
    }
    BracketTableJson::Entries {
        vars: t.vars().names().to_vec(),
        entries,
    }
}

pub fn table_from_json(j: &BracketTableJson) -> Result<BracketTable, PoissonError> {
    match j {
        BracketTableJson::LogCanonical { vars, omega } => {
            let vars = VarTable::new(vars.iter().cloned())?;
            let rows = omega
                .iter()
                .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let omega = RatMatrix::from_rows(rows)?;
            Ok(LogCanonicalStructure::new(vars, omega)?.to_table())
        }
        BracketTableJson::Entries { vars, entries } => {
            let vars = VarTable::new(vars.iter().cloned())?;
            let n = vars.len();
            let mut polys = vec![None; n * n];
            for e in entries {
                if e.i == 0 || e.j == 0 || e.i >= e.j || e.j > n {
                    return Err(AlgError::Parse(format!("bad entry index ({}, {})", e.i, e.j)).into());
                }
                let (p, pv) = poly_from_json(&e.poly)?;
                if pv != vars {
                    return Err(AlgError::Parse("entry variables differ from table variables".into()).into());
                }
                polys[(e.i - 1) * n + (e.j - 1)] = Some(p);
            }
            BracketTable::from_fn(vars, |i, j| {
                polys[i * n + j].take().unwrap_or_else(|| crate::exactalg::LaurentPoly::zero(n))
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::LaurentPoly;

    #[test]
    fn round_trip_entries() {
        let vars = VarTable::numbered("x", 3);
        let t = BracketTable::from_fn(vars, |i, j| match (i, j) {
            (0, 2) => LaurentPoly::monomial(crate::exactalg::rat(1, 2), vec![1, 1, 0]),
            _ => LaurentPoly::zero(3),
        })
        .unwrap();
        let j = table_to_json(&t);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains(r#""i":1,"j":3"#));
        let back: BracketTableJson = serde_json::from_str(&s).unwrap();
        assert_eq!(table_from_json(&back).unwrap(), t);
    }

    #[test]
    fn omega_shortcut() {
        let s = r#"{"vars":["a","b"],"omega":[["0","1/2"],["-1/2","0"]]}"#;
        let j: BracketTableJson = serde_json::from_str(s).unwrap();
        let t = table_from_json(&j).unwrap();
        assert_eq!(t.get(0, 1), &LaurentPoly::monomial(crate::exactalg::rat(1, 2), vec![1, 1]));
        let bad = r#"{"vars":["a","b"],"omega":[["0","1"],["1","0"]]}"#;
        let j: BracketTableJson = serde_json::from_str(bad).unwrap();
        assert_eq!(table_from_json(&j), Err(PoissonError::NotSkew));
    }
}
