use std::fmt;

use num_traits::Zero;

use crate::exactalg::{format_rational, AlgError, LaurentPoly, RatExpr, Rational, VarTable};
use crate::rng::Lcg64;

use super::{BracketTable, PoissonError};

/// Numerator and denominator bounds of the sampling box for free coordinates.
const SAMPLE_NUM_BOUND: i64 = 12;
const SAMPLE_DEN_BOUND: i64 = 6;
/// Attempts allowed per requested sample point before giving up.
const RETRIES_PER_POINT: usize = 200;

/// Map between coordinate rings: target coordinate `a` pulls back to
/// `images[a]`, a rational expression in the source coordinates. An optional
/// constraint `g = 0` cuts out the source variety.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    source: VarTable,
    target: VarTable,
    images: Vec<RatExpr>,
    constraint: Option<LaurentPoly>,
}

impl CoordinateMap {
    pub fn new(source: VarTable, target: VarTable, images: Vec<RatExpr>) -> Result<Self, PoissonError> {
        if images.len() != target.len() {
            return Err(AlgError::DimensionMismatch(format!(
                "{} images for {} target coordinates",
                images.len(),
                target.len()
            ))
            .into());
        }
        if let Some(bad) = images.iter().find(|e| e.nvars() != source.len()) {
            return Err(AlgError::VarMismatch {
                left: source.len(),
                right: bad.nvars(),
            }
            .into());
        }
        Ok(CoordinateMap {
            source,
            target,
            images,
            constraint: None,
        })
    }

    pub fn identity(vars: VarTable) -> Self {
        let n = vars.len();
        let images = (0..n).map(|i| RatExpr::var(n, i)).collect();
        CoordinateMap {
            source: vars.clone(),
            target: vars,
            images,
            constraint: None,
        }
    }

    /// Restricts the source to `g = 0`. `g` must be nonzero.
    pub fn with_constraint(mut self, g: LaurentPoly) -> Result<Self, PoissonError> {
        if g.is_zero() || g.nvars() != self.source.len() {
            return Err(AlgError::DimensionMismatch("constraint must be a nonzero source polynomial".into()).into());
        }
        self.constraint = Some(g);
        Ok(self)
    }

    pub fn source(&self) -> &VarTable {
        &self.source
    }

    pub fn target(&self) -> &VarTable {
        &self.target
    }

    pub fn images(&self) -> &[RatExpr] {
        &self.images
    }

    pub fn constraint(&self) -> Option<&LaurentPoly> {
        self.constraint.as_ref()
    }

    /// `φ*(f)` for a polynomial in the target coordinates.
    pub fn pullback(&self, f: &LaurentPoly) -> Result<RatExpr, AlgError> {
        RatExpr::from_poly(f.clone()).compose(&self.images)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Symbolic,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapOutcome {
    Pass { points_checked: usize },
    Fail(MapViolation),
}

impl MapOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, MapOutcome::Pass { .. })
    }
}

/// Residual `{φ_a, φ_b}_source − φ*({y_a, y_b}_target)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Symbolic(RatExpr),
    Sampled {
        point: Vec<Rational>,
        lhs: Rational,
        rhs: Rational,
        expression: RatExpr,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapViolation {
    /// Target coordinate pair (0-based, `a < b`).
    pub pair: (usize, usize),
    pub pair_names: (String, String),
    pub residual: Residual,
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bracket of ({}, {}) not preserved", self.pair_names.0, self.pair_names.1)?;
        match &self.residual {
            Residual::Symbolic(r) => write!(f, ": residual {r}"),
            Residual::Sampled { point, lhs, rhs, .. } => {
                let p: Vec<String> = point.iter().map(format_rational).collect();
                write!(
                    f,
                    " at [{}]: {} vs {}",
                    p.join(", "),
                    format_rational(lhs),
                    format_rational(rhs)
                )
            }
        }
    }
}

/// Checks that `φ` is a Poisson map from `(source vars, source)` to
/// `(target vars, target)`: for every target pair `a < b`,
/// `{φ_a, φ_b}_source = φ*({y_a, y_b}_target)`.
///
/// Pairs are visited in lexicographic order and the first failure is
/// returned. In sampled mode each of the `trials` points is an exact rational
/// point of the constraint variety, and the source bracket is assembled from a
/// numeric Jacobian as `J β Jᵀ`.
pub fn poisson_map_check(
    map: &CoordinateMap,
    source: &BracketTable,
    target: &BracketTable,
    mode: CheckMode,
) -> Result<MapOutcome, PoissonError> {
    if source.vars() != map.source() || target.vars() != map.target() {
        return Err(AlgError::VarMismatch {
            left: map.source().len(),
            right: source.nvars(),
        }
        .into());
    }
    match mode {
        CheckMode::Symbolic => symbolic_check(map, source, target),
        CheckMode::Sampled { trials, seed } => sampled_check(map, source, target, trials, seed),
    }
}

fn symbolic_residual(
    map: &CoordinateMap,
    source: &BracketTable,
    target: &BracketTable,
    a: usize,
    b: usize,
) -> Result<RatExpr, PoissonError> {
    let lhs = source.bracket(&map.images[a], &map.images[b]);
    let rhs = map.pullback(target.get(a, b))?;
    Ok(&lhs - &rhs)
}

fn symbolic_check(
    map: &CoordinateMap,
    source: &BracketTable,
    target: &BracketTable,
) -> Result<MapOutcome, PoissonError> {
    if map.constraint.is_some() {
        return Err(PoissonError::SymbolicWithConstraint);
    }
    let m = map.target.len();
    for a in 0..m {
        for b in a + 1..m {
            let r = symbolic_residual(map, source, target, a, b)?;
            if !r.is_zero() {
                return Ok(MapOutcome::Fail(MapViolation {
                    pair: (a, b),
                    pair_names: (map.target.name(a).into(), map.target.name(b).into()),
                    residual: Residual::Symbolic(r),
                }));
            }
        }
    }
    Ok(MapOutcome::Pass { points_checked: 0 })
}

/// Splits `g = a·x_v + b` for the last variable `v` in which `g` is linear
/// (degree exactly one, no negative powers).
fn linear_split(g: &LaurentPoly) -> Option<(usize, LaurentPoly, LaurentPoly)> {
    let n = g.nvars();
    let v = (0..n)
        .rev()
        .find(|&v| g.degree_in(v) == 1 && g.min_degree_in(v) >= 0)?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (m, c) in g.terms() {
        let mut e = m.0.clone();
        if e[v] == 1 {
            e[v] = 0;
            a.push((e, c.clone()));
        } else {
            b.push((e, c.clone()));
        }
    }
    Some((
        v,
        LaurentPoly::from_terms(n, a).ok()?,
        LaurentPoly::from_terms(n, b).ok()?,
    ))
}

/// Draws points from the sampling box, solving `g = 0` for one coordinate.
struct PointSampler {
    nvars: usize,
    solve: Option<(usize, LaurentPoly, LaurentPoly)>,
    rng: Lcg64,
}

impl PointSampler {
    fn new(nvars: usize, constraint: Option<&LaurentPoly>, seed: u64) -> Result<Self, PoissonError> {
        let solve = match constraint {
            None => None,
            Some(g) => Some(linear_split(g).ok_or(PoissonError::NoSolvableVariable)?),
        };
        Ok(PointSampler {
            nvars,
            solve,
            rng: Lcg64::new(seed),
        })
    }

    /// `None` when this draw is unusable (the solved coefficient vanished or a
    /// coordinate landed on a pole).
    fn draw(&mut self) -> Option<Vec<Rational>> {
        let mut p: Vec<Rational> = (0..self.nvars)
            .map(|_| self.rng.rational(SAMPLE_NUM_BOUND, SAMPLE_DEN_BOUND))
            .collect();
        if let Some((v, a, b)) = &self.solve {
            p[*v] = Rational::zero();
            let av = a.eval(&p).ok()?;
            if av.is_zero() {
                return None;
            }
            let bv = b.eval(&p).ok()?;
            p[*v] = -bv / av;
        }
        Some(p)
    }
}

fn sampled_check(
    map: &CoordinateMap,
    source: &BracketTable,
    target: &BracketTable,
    trials: usize,
    seed: u64,
) -> Result<MapOutcome, PoissonError> {
    let n = map.source.len();
    let jac_sym: Vec<Vec<RatExpr>> = map
        .images
        .iter()
        .map(|img| (0..n).map(|i| img.partial(i)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut sampler = PointSampler::new(n, map.constraint.as_ref(), seed)?;
    let max_attempts = RETRIES_PER_POINT * trials.max(1);
    let mut attempts = 0;
    let mut done = 0;
    while done < trials {
        if attempts == max_attempts {
            return Err(PoissonError::PointGeneration { attempts });
        }
        attempts += 1;
        let Some(point) = sampler.draw() else { continue };
        match check_at_point(map, source, target, &jac_sym, &point) {
            Err(AlgError::UnluckyPoint(_)) => continue,
            Err(e) => return Err(e.into()),
            Ok(None) => done += 1,
            Ok(Some((a, b, lhs, rhs))) => {
                let expression = symbolic_residual(map, source, target, a, b)?;
                return Ok(MapOutcome::Fail(MapViolation {
                    pair: (a, b),
                    pair_names: (map.target.name(a).into(), map.target.name(b).into()),
                    residual: Residual::Sampled {
                        point,
                        lhs,
                        rhs,
                        expression,
                    },
                }));
            }
        }
    }
    Ok(MapOutcome::Pass { points_checked: done })
}

type PointFailure = (usize, usize, Rational, Rational);

fn check_at_point(
    map: &CoordinateMap,
    source: &BracketTable,
    target: &BracketTable,
    jac_sym: &[Vec<RatExpr>],
    point: &[Rational],
) -> Result<Option<PointFailure>, AlgError> {
    let n = map.source.len();
    let m = map.target.len();
    let image_vals: Vec<Rational> = map.images.iter().map(|e| e.eval(point)).collect::<Result<_, _>>()?;
    let jac: Vec<Vec<Rational>> = jac_sym
        .iter()
        .map(|row| row.iter().map(|e| e.eval(point)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut beta = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = source.get(i, j).eval(point)?;
            beta[j][i] = -v.clone();
            beta[i][j] = v;
        }
    }
    // (J β) rows, then pair with J rows
    let jb: Vec<Vec<Rational>> = jac
        .iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, r)| !r.is_zero())
                        .map(|(i, r)| r * &beta[i][j])
                        .sum()
                })
                .collect()
        })
        .collect();
    for a in 0..m {
        for b in a + 1..m {
            let lhs: Rational = jb[a].iter().zip(&jac[b]).map(|(x, y)| x * y).sum();
            let rhs = target.get(a, b).eval(&image_vals)?;
            if lhs != rhs {
                return Ok(Some((a, b, lhs, rhs)));
            }
        }
    }
    Ok(None)
}

impl CoordinateMap {
    /// Laurent monomial map: target `a` ↦ `Π_i x_i^{exps[a][i]}`.
    pub fn monomial(source: VarTable, target: VarTable, exps: &[Vec<i32>]) -> Result<Self, PoissonError> {
        let images = exps
            .iter()
            .map(|e| {
                if e.len() != source.len() {
                    return Err(AlgError::VarMismatch {
                        left: source.len(),
                        right: e.len(),
                    });
                }
                Ok(RatExpr::from_poly(LaurentPoly::monomial(
                    Rational::from_integer(1.into()),
                    e.clone(),
                )))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CoordinateMap::new(source, target, images)
    }
}
