use num_traits::Zero;

use crate::exactalg::{RatMatrix, Rational};
use crate::poisson::{extract_log_canonical, BracketTable, LogCanonicalStructure, NotLogCanonical};

use super::{omega_in_basis, ClusterError, ExtendedExchangeMatrix, Seed, TauFrame};

/// Verdict of the τ-proportionality criterion.
#[derive(Clone, Debug, PartialEq)]
pub enum Compatibility {
    Compatible {
        lambda: Rational,
        /// λ = 0: the criterion rows vanish, so proportionality holds
        /// only in the degenerate sense.
        trivial: bool,
        /// All ω_ij are integers.
        integral: bool,
    },
    /// First entry (row-major, 0-based) of `Ω^τ([n_c], :)` that differs
    /// from `λ B̃`.
    Incompatible {
        entry: (usize, usize),
        found: Rational,
        expected: Rational,
    },
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible { .. })
    }

    pub fn lambda(&self) -> Option<&Rational> {
        match self {
            Compatibility::Compatible { lambda, .. } => Some(lambda),
            Compatibility::Incompatible { .. } => None,
        }
    }
}

/// Rank `n_c`, irreducible principal part, at least one cluster variable.
pub fn theorem_preconditions(b: &ExtendedExchangeMatrix) -> Result<(), ClusterError> {
    if b.n_c() == 0 {
        return Err(ClusterError::NoClusterVariables);
    }
    let rank = b.rank();
    if rank != b.n_c() {
        return Err(ClusterError::RankDeficient { rank, n_c: b.n_c() });
    }
    if !b.principal_irreducible() {
        return Err(ClusterError::Reducible);
    }
    Ok(())
}

fn check_omega(omega: &RatMatrix, n: usize) -> Result<(), ClusterError> {
    if omega.rows() != n || omega.cols() != n || !omega.is_skew() {
        return Err(ClusterError::BadOmega);
    }
    Ok(())
}

/// Computes `Ω^τ = B_κ Ω B_κᵀ` and tests whether its first `n_c` rows are a
/// multiple of `B̃`. λ is read from the first nonzero entry of `B̃`.
pub fn check_compatibility(
    omega: &RatMatrix,
    b: &ExtendedExchangeMatrix,
    frame: &TauFrame,
) -> Result<Compatibility, ClusterError> {
    theorem_preconditions(b)?;
    check_omega(omega, b.size())?;
    if frame.bkappa().rows() != b.size() {
        return Err(ClusterError::Shape("frame does not match the exchange matrix".into()));
    }
    let tau = omega_in_basis(omega, frame.bkappa())?;
    let (n_c, n) = (b.n_c(), b.size());
    let (pi, pj) = (0..n_c)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| b.get(i, j) != 0)
        .expect("rank n_c >= 1 forces a nonzero entry");
    let lambda = &tau[(pi, pj)] / Rational::from_integer(b.get(pi, pj).into());
    for i in 0..n_c {
        for j in 0..n {
            let expected = &lambda * Rational::from_integer(b.get(i, j).into());
            if tau[(i, j)] != expected {
                return Ok(Compatibility::Incompatible {
                    entry: (i, j),
                    found: tau[(i, j)].clone(),
                    expected,
                });
            }
        }
    }
    let integral = (0..n).all(|i| (0..n).all(|j| omega[(i, j)].is_integer()));
    Ok(Compatibility::Compatible {
        trivial: lambda.is_zero(),
        lambda,
        integral,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum DirectOutcome {
    Pass { seeds_checked: usize },
    /// `path` lists the mutation directions (0-based) leading from the
    /// initial seed to the failing one.
    Fail { path: Vec<usize>, violation: NotLogCanonical },
}

impl DirectOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, DirectOutcome::Pass { .. })
    }
}

/// Extracts a log-canonical matrix on the extended cluster of every seed
/// reachable in at most `depth` mutations. Seeds are visited level by level,
/// directions in increasing order, never undoing the previous step.
pub fn check_compatibility_direct(
    table: &BracketTable,
    seed: &Seed,
    depth: usize,
) -> Result<DirectOutcome, ClusterError> {
    if table.vars() != seed.vars() {
        return Err(ClusterError::Shape("bracket and seed use different coordinates".into()));
    }
    let mut level: Vec<(Vec<usize>, Seed)> = vec![(Vec::new(), seed.clone())];
    let mut checked = 0;
    for d in 0..=depth {
        for (path, s) in &level {
            if let Err(violation) = extract_log_canonical(table, &s.extended()) {
                return Ok(DirectOutcome::Fail {
                    path: path.clone(),
                    violation,
                });
            }
            checked += 1;
        }
        if d == depth {
            break;
        }
        let mut next = Vec::new();
        for (path, s) in &level {
            for k in 0..s.matrix().n_c() {
                if path.last() == Some(&k) {
                    continue;
                }
                let mut p = path.clone();
                p.push(k);
                next.push((p, s.mutate(k)?));
            }
        }
        level = next;
    }
    Ok(DirectOutcome::Pass { seeds_checked: checked })
}

/// [`check_compatibility_direct`] for the log-canonical bracket with matrix
/// `Ω` in the seed's coordinates.
pub fn check_compatibility_direct_omega(
    omega: &RatMatrix,
    seed: &Seed,
    depth: usize,
) -> Result<DirectOutcome, ClusterError> {
    check_omega(omega, seed.vars().len())?;
    let table = LogCanonicalStructure::new(seed.vars().clone(), omega.clone())?.to_table();
    check_compatibility_direct(&table, seed, depth)
}

/// Basis of all skew `Ω` for which some λ makes
/// `(B_κ Ω B_κᵀ)([n_c], :) = λ B̃`. The unknowns are `ω_ij` (`i < j`) and λ;
/// the exact nullspace is projected onto the `ω` coordinates.
pub fn compatible_solution_space(
    b: &ExtendedExchangeMatrix,
    frame: &TauFrame,
) -> Result<Vec<RatMatrix>, ClusterError> {
    theorem_preconditions(b)?;
    let (n_c, n) = (b.n_c(), b.size());
    let m = frame.bkappa().to_rational();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let unknowns = pairs.len() + 1;
    let mut rows = Vec::with_capacity(n_c * n);
    for r in 0..n_c {
        for c in 0..n {
            // (M Ω Mᵀ)_rc = Σ_{i<j} ω_ij (M_ri M_cj − M_rj M_ci)
            let mut row: Vec<Rational> = pairs
                .iter()
                .map(|&(i, j)| &m[(r, i)] * &m[(c, j)] - &m[(r, j)] * &m[(c, i)])
                .collect();
            row.push(-Rational::from_integer(b.get(r, c).into()));
            rows.push(row);
        }
    }
    let system = RatMatrix::from_rows(rows)?;
    debug_assert_eq!(system.cols(), unknowns);
    let projected: Vec<Vec<Rational>> = system
        .nullspace()
        .into_iter()
        .map(|mut v| {
            v.pop();
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    if projected.is_empty() {
        return Ok(Vec::new());
    }
    let (r, pivots) = RatMatrix::from_rows(projected)?.rref();
    Ok((0..pivots.len())
        .map(|row| {
            let mut w = RatMatrix::zeros(n, n);
            for (idx, &(i, j)) in pairs.iter().enumerate() {
                w[(i, j)] = r[(row, idx)].clone();
                w[(j, i)] = -r[(row, idx)].clone();
            }
            w
        })
        .collect())
}

pub fn compatible_space_dimension(b: &ExtendedExchangeMatrix, frame: &TauFrame) -> Result<usize, ClusterError> {
    Ok(compatible_solution_space(b, frame)?.len())
}
