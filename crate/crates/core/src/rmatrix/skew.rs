use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactalg::{parse_rational, RatMatrix, Rational};
use crate::rng::Lcg64;

use super::RMatrixError;

/// Completes a skew `(n−1) × (n−1)` core to the `n × n` skew matrix whose
/// rows and columns sum to zero: `s_in = −Σ_j s_ij`, `s_nj = −Σ_i s_ij`.
pub fn complete_skew(core: &RatMatrix) -> Result<RatMatrix, RMatrixError> {
    if !core.is_square() || !core.is_skew() {
        return Err(RMatrixError::NotSkew);
    }
    let m = core.rows();
    let n = m + 1;
    let mut s = RatMatrix::zeros(n, n);
    for i in 0..m {
        let mut row = Rational::zero();
        for j in 0..m {
            s[(i, j)] = core[(i, j)].clone();
            row += &core[(i, j)];
        }
        s[(i, m)] = -row.clone();
        s[(m, i)] = row;
    }
    Ok(s)
}

/// A skew diagonal operator on `sl_n`, given by its core and kept completed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewParam {
    n: usize,
    core: RatMatrix,
    full: RatMatrix,
}

impl SkewParam {
    pub fn new(n: usize, core: RatMatrix) -> Result<Self, RMatrixError> {
        if n < 2 || core.rows() != n - 1 {
            return Err(RMatrixError::Size(format!(
                "core for n = {n} must be {0}x{0}",
                n.saturating_sub(1)
            )));
        }
        let full = complete_skew(&core)?;
        Ok(SkewParam { n, core, full })
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, RatMatrix::zeros(n - 1, n - 1)).expect("zero core is skew")
    }

    /// Core drawn with [`Lcg64::skew_matrix`].
    pub fn random(n: usize, rng: &mut Lcg64) -> Self {
        Self::new(n, rng.skew_matrix(n - 1)).expect("random core is skew")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn core(&self) -> &RatMatrix {
        &self.core
    }

    /// The completed `n × n` matrix.
    pub fn full(&self) -> &RatMatrix {
        &self.full
    }

    /// Completed entry, 0-based.
    pub fn s(&self, i: usize, j: usize) -> &Rational {
        &self.full[(i, j)]
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::new(self.n, self.core.scale(c)).expect("scaling keeps skewness")
    }

    pub fn is_zero(&self) -> bool {
        self.core.is_zero()
    }

    pub fn to_json(&self) -> SkewParamJson {
        SkewParamJson {
            n: self.n,
            core: self.core.to_string_rows(),
        }
    }

    pub fn from_json(j: &SkewParamJson) -> Result<Self, RMatrixError> {
        let rows = j
            .core
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let core = if rows.is_empty() {
            RatMatrix::zeros(0, 0)
        } else {
            RatMatrix::from_rows(rows)?
        };
        Self::new(j.n, core)
    }
}

/// `{"n": 4, "core": [["0", "1/2", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewParamJson {
    pub n: usize,
    pub core: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn completion_rules() {
        assert!(complete_skew(&RatMatrix::zeros(1, 1)).unwrap().is_zero());
        let s = rat(2, 3);
        let core = RatMatrix::from_rows(vec![vec![rat(0, 1), s.clone()], vec![-s.clone(), rat(0, 1)]]).unwrap();
        let full = complete_skew(&core).unwrap();
        assert_eq!(full[(0, 2)], -s.clone());
        assert_eq!(full[(1, 2)], s);
        assert_eq!(full[(2, 2)], rat(0, 1));
        assert!(full.is_skew());
        let ones = vec![rat(1, 1); 3];
        assert!(full.mul_vec(&ones).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn rejects_non_skew() {
        let core = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]).unwrap();
        assert_eq!(complete_skew(&core), Err(RMatrixError::NotSkew));
        assert!(SkewParam::new(4, core).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = Lcg64::new(7);
        let p = SkewParam::random(4, &mut rng);
        let s = serde_json::to_string(&p.to_json()).unwrap();
        let back: SkewParamJson = serde_json::from_str(&s).unwrap();
        assert_eq!(SkewParam::from_json(&back).unwrap(), p);
        let parsed: SkewParamJson = serde_json::from_str(r#"{"n":3,"core":[["0","1/2"],["-1/2","0"]]}"#).unwrap();
        let p = SkewParam::from_json(&parsed).unwrap();
        assert_eq!(p.s(2, 0), &rat(1, 2));
    }
}
