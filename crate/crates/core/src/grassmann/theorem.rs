use std::fmt;

use crate::cluster::{
    build_tau_frame, check_compatibility, check_compatibility_direct, compatible_solution_space, Compatibility,
    DirectOutcome, DEFAULT_KAPPA_BOUND,
};
use crate::exactalg::{RatExpr, RatMatrix, Rational};
use crate::poisson::{extract_log_canonical, NotLogCanonical};
use crate::rmatrix::SkewParam;

use super::{gr_bracket_table, index_set, GrassmannChart, GrassmannError, GridQuiver};

type Positions = [(usize, usize); 3];

/// The six `(i, j)` positions in the closed τ formula, numerator first.
fn tau_positions(i: usize, j: usize) -> (Positions, Positions) {
    (
        [(i + 1, j - 1), (i, j + 1), (i - 1, j)],
        [(i - 1, j + 1), (i, j - 1), (i + 1, j)],
    )
}

/// `τ_ij = x(i+1,j−1) x(i,j+1) x(i−1,j) / (x(i−1,j+1) x(i,j−1) x(i+1,j))`
/// with `x(0, ·) = x(·, m+1) = 1`, for `i ∈ [k−1]`, `j ∈ [2, m]`.
pub fn tau_grassmann(chart: &GrassmannChart, i: usize, j: usize) -> Result<RatExpr, GrassmannError> {
    if i == 0 || i >= chart.k() || j < 2 || j > chart.m() {
        return Err(GrassmannError::IndexOutOfRange(format!("τ({i}, {j}) is not a mutable position")));
    }
    let nv = chart.vars().len();
    let (num, den) = tau_positions(i, j);
    let prod = |ps: &[(usize, usize)]| -> Result<RatExpr, GrassmannError> {
        let mut acc = RatExpr::one(nv);
        for &(a, b) in ps {
            acc = &acc * &RatExpr::from_poly(chart.x_or_one(a, b)?);
        }
        Ok(acc)
    };
    Ok(prod(&num)?.checked_div(&prod(&den)?)?)
}

/// A τ whose torus weight does not cancel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HViolation {
    pub position: (usize, usize),
    /// Exponent of `d_1, …, d_n` left over.
    pub weight: Vec<i64>,
}

impl fmt::Display for HViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau{:?} has torus weight {:?}", self.position, self.weight)
    }
}

/// Under `X ↦ XD` the minor `x_I` picks up `d^I`. For every mutable `(i, j)`
/// the weights of the six factors of `τ_ij` must cancel; a boundary factor
/// stands for `x_[k]`.
pub fn verify_h_invariance(chart: &GrassmannChart) -> Result<(), HViolation> {
    let (k, m, n) = (chart.k(), chart.m(), chart.n());
    let weight_of = |a: usize, b: usize| -> Vec<usize> {
        if a == 0 || b == m + 1 {
            (1..=k).collect()
        } else {
            index_set(k, n, a, b).expect("grid position")
        }
    };
    for (i, j) in GridQuiver::new(k, m).mutable() {
        let (num, den) = tau_positions(i, j);
        let mut w = vec![0i64; n];
        for (a, b) in num {
            for c in weight_of(a, b) {
                w[c - 1] += 1;
            }
        }
        for (a, b) in den {
            for c in weight_of(a, b) {
                w[c - 1] -= 1;
            }
        }
        if w.iter().any(|&e| e != 0) {
            return Err(HViolation {
                position: (i, j),
                weight: w,
            });
        }
    }
    Ok(())
}

/// Outcome for one deformation parameter `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct ForwardSample {
    pub s: SkewParam,
    pub omega: Result<RatMatrix, NotLogCanonical>,
    pub verdict: Option<Compatibility>,
    pub direct: DirectOutcome,
}

impl ForwardSample {
    pub fn passed(&self) -> bool {
        self.omega.is_ok()
            && self.verdict.as_ref().is_some_and(Compatibility::is_compatible)
            && self.direct.is_pass()
    }

    pub fn lambda(&self) -> Option<&Rational> {
        self.verdict.as_ref().and_then(Compatibility::lambda)
    }
}

/// Dimension of the compatible space against the parameter count, and the
/// span of the family `S ↦ Ω(S)` with scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completeness {
    pub dimension: usize,
    pub expected: usize,
    /// Rank of `{Ω(0)} ∪ {Ω(E_ab) − Ω(0)}`.
    pub family_rank: usize,
    /// Rank of the family together with the solution basis.
    pub combined_rank: usize,
}

impl Completeness {
    pub fn passed(&self) -> bool {
        self.dimension == self.expected && self.family_rank == self.dimension && self.combined_rank == self.dimension
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainTheoremReport {
    pub kappa: Vec<i64>,
    pub forward: Vec<ForwardSample>,
    pub completeness: Completeness,
}

impl MainTheoremReport {
    pub fn passed(&self) -> bool {
        self.forward.iter().all(ForwardSample::passed) && self.completeness.passed()
    }
}

fn flatten_upper(w: &RatMatrix) -> Vec<Rational> {
    let n = w.rows();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| w[(i, j)].clone())).collect()
}

fn rank_of(vs: Vec<Vec<Rational>>) -> Result<usize, GrassmannError> {
    if vs.is_empty() {
        return Ok(0);
    }
    Ok(RatMatrix::from_rows(vs)?.rank())
}

/// Forward direction for every `S` in `samples` (log-canonical initial
/// cluster, τ criterion, mutations up to `depth`) and the completeness
/// comparison of the compatible space with the family `S ↦ Ω(S)`.
pub fn verify_main_theorem(
    chart: &GrassmannChart,
    samples: &[SkewParam],
    depth: usize,
) -> Result<MainTheoremReport, GrassmannError> {
    let seed = chart.initial_seed()?;
    let b = seed.matrix().clone();
    let frame = build_tau_frame(&b, None, DEFAULT_KAPPA_BOUND)?;
    let ext = seed.extended();
    let omega_of = |s: &SkewParam| -> Result<Result<RatMatrix, NotLogCanonical>, GrassmannError> {
        Ok(extract_log_canonical(&gr_bracket_table(chart, s)?, &ext))
    };

    let mut forward = Vec::with_capacity(samples.len());
    for s in samples {
        let table = gr_bracket_table(chart, s)?;
        let omega = extract_log_canonical(&table, &ext);
        let verdict = match &omega {
            Ok(w) => Some(check_compatibility(w, &b, &frame)?),
            Err(_) => None,
        };
        let direct = check_compatibility_direct(&table, &seed, depth)?;
        forward.push(ForwardSample {
            s: s.clone(),
            omega,
            verdict,
            direct,
        });
    }

    let n = chart.n();
    let basis = compatible_solution_space(&b, &frame)?;
    let mut family = Vec::new();
    let base = omega_of(&SkewParam::zero(n))?.map_err(|e| GrassmannError::BadChart(e.to_string()))?;
    family.push(flatten_upper(&base));
    for a in 0..n - 1 {
        for c in a + 1..n - 1 {
            let mut core = RatMatrix::zeros(n - 1, n - 1);
            core[(a, c)] = Rational::from_integer(1.into());
            core[(c, a)] = Rational::from_integer((-1).into());
            let w = omega_of(&SkewParam::new(n, core)?)?.map_err(|e| GrassmannError::BadChart(e.to_string()))?;
            family.push(flatten_upper(&w.checked_sub(&base)?));
        }
    }
    let family_rank = rank_of(family.clone())?;
    let mut combined = family;
    combined.extend(basis.iter().map(flatten_upper));
    let completeness = Completeness {
        dimension: basis.len(),
        expected: 1 + (n - 1) * (n - 2) / 2,
        family_rank,
        combined_rank: rank_of(combined)?,
    };
    Ok(MainTheoremReport {
        kappa: frame.kappa().to_vec(),
        forward,
        completeness,
    })
}
