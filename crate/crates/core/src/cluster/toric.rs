use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactalg::{RatMatrix, Rational, VarTable};
use crate::poisson::CoordinateMap;

use super::{check_compatibility, omega_in_basis, ClusterError, Compatibility, ExtendedExchangeMatrix, TauFrame};

/// `C = B_κ⁻¹(:, stable) · U`, checked to satisfy `B̃C = 0`. `U` defaults to
/// the identity.
pub fn toric_action_matrix(frame: &TauFrame, u: Option<&RatMatrix>) -> Result<RatMatrix, ClusterError> {
    let n = frame.bkappa().rows();
    let n_c = frame.n_c();
    let n_s = n - n_c;
    let u = match u {
        Some(u) => {
            if u.rows() != n_s || u.cols() != n_s {
                return Err(ClusterError::Shape(format!("U must be {n_s}x{n_s}")));
            }
            if u.det()?.is_zero() {
                return Err(ClusterError::SingularU);
            }
            u.clone()
        }
        None => RatMatrix::identity(n_s),
    };
    let inv = frame.bkappa().to_rational().inverse()?;
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (n_c..n).collect();
    let c = inv.submatrix(&rows, &cols).checked_mul(&u)?;
    let btilde = frame.bhat().submatrix(&(0..n_c).collect::<Vec<_>>(), &rows).to_rational();
    if !btilde.checked_mul(&c)?.is_zero() {
        return Err(ClusterError::Shape("B̃C does not vanish".into()));
    }
    Ok(c)
}

/// The action `x_i ↦ x_i Π_α d_α^{L c_iα}` as a map from `(x, d)` to `x`,
/// where `L` is the least common denominator of `C` (returned alongside).
/// The source `d_α` is an `L`-th root of the group parameter, which keeps all
/// exponents integral.
pub fn toric_action_map(c: &RatMatrix, vars: &VarTable) -> Result<(CoordinateMap, i64), ClusterError> {
    let n = vars.len();
    if c.rows() != n {
        return Err(ClusterError::Shape(format!("C has {} rows for {n} variables", c.rows())));
    }
    let n_s = c.cols();
    let l = (0..n)
        .flat_map(|i| c.row(i).iter())
        .fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let l: i64 = l
        .try_into()
        .map_err(|_| ClusterError::Shape("denominator of C too large".into()))?;
    let lq = Rational::from_integer(l.into());
    let exps: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut e = vec![0i32; n + n_s];
            e[i] = 1;
            for a in 0..n_s {
                let v = (&c[(i, a)] * &lq).to_integer();
                e[n + a] = i32::try_from(v).expect("exponent fits in i32");
            }
            e
        })
        .collect();
    let source = vars.concat(&VarTable::numbered("d", n_s))?;
    Ok((CoordinateMap::monomial(source, vars.clone(), &exps)?, l))
}

/// One member `Ω_V = Ω₀ + CVCᵀ` of the compatible family, with the stable
/// blocks `Z` of `Ω_V^τ` and `Z₀` of `Ω₀^τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMember {
    pub omega_v: RatMatrix,
    pub verdict: Compatibility,
    pub z: RatMatrix,
    pub z0: RatMatrix,
    /// `Z = Z₀ + U V Uᵀ`.
    pub matches_uvut: bool,
    /// `Z = Z₀ + U V U⁻¹`.
    pub matches_uvuinv: bool,
}

pub fn compatible_family(
    omega0: &RatMatrix,
    b: &ExtendedExchangeMatrix,
    frame: &TauFrame,
    c: &RatMatrix,
    u: &RatMatrix,
    v: &RatMatrix,
) -> Result<FamilyMember, ClusterError> {
    let (n_c, n) = (b.n_c(), b.size());
    let n_s = n - n_c;
    if !v.is_skew() || v.rows() != n_s {
        return Err(ClusterError::Shape(format!("V must be a skew {n_s}x{n_s} matrix")));
    }
    if !check_compatibility(omega0, b, frame)?.is_compatible() {
        return Err(ClusterError::IncompatibleBase);
    }
    let omega_v = omega0.checked_add(&c.checked_mul(v)?.checked_mul(&c.transpose())?)?;
    let verdict = check_compatibility(&omega_v, b, frame)?;
    let stable: Vec<usize> = (n_c..n).collect();
    let z = omega_in_basis(&omega_v, frame.bkappa())?.submatrix(&stable, &stable);
    let z0 = omega_in_basis(omega0, frame.bkappa())?.submatrix(&stable, &stable);
    let uvut = z0.checked_add(&u.checked_mul(v)?.checked_mul(&u.transpose())?)?;
    let uvuinv = z0.checked_add(&u.checked_mul(v)?.checked_mul(&u.inverse()?)?)?;
    Ok(FamilyMember {
        matches_uvut: z == uvut,
        matches_uvuinv: z == uvuinv,
        omega_v,
        verdict,
        z,
        z0,
    })
}

/// Exponent rows `B_κ C`; the first `n_c` vanish exactly when the action
/// fixes the cluster τ-coordinates.
pub fn tau_weights(frame: &TauFrame, c: &RatMatrix) -> Result<RatMatrix, ClusterError> {
    Ok(frame.bkappa().to_rational().checked_mul(c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{build_tau_frame, tau_map};
    use crate::exactalg::{rat, RatExpr};

    fn g24() -> ExtendedExchangeMatrix {
        ExtendedExchangeMatrix::from_rows(vec![vec![0, -1, 1, -1]]).unwrap()
    }

    fn standard_omega() -> RatMatrix {
        let mut w = RatMatrix::zeros(4, 4);
        for j in [1, 3] {
            w[(0, j)] = rat(1, 2);
            w[(j, 0)] = rat(-1, 2);
        }
        w
    }

    #[test]
    fn kernel_and_selector() {
        let frame = build_tau_frame(&g24(), None, 3).unwrap();
        let c = toric_action_matrix(&frame, None).unwrap();
        assert_eq!((c.rows(), c.cols()), (4, 3));
        let w = tau_weights(&frame, &c).unwrap();
        // B_κ C = E: zero cluster row, identity on the stable rows
        let e = RatMatrix::from_fn(4, 3, |i, a| if i == a + 1 { rat(1, 1) } else { rat(0, 1) });
        assert_eq!(w, e);
    }

    #[test]
    fn singular_u_rejected() {
        let frame = build_tau_frame(&g24(), None, 3).unwrap();
        let u = RatMatrix::zeros(3, 3);
        assert_eq!(toric_action_matrix(&frame, Some(&u)), Err(ClusterError::SingularU));
    }

    #[test]
    fn cluster_tau_is_invariant() {
        let frame = build_tau_frame(&g24(), None, 3).unwrap();
        let u = RatMatrix::from_rows(vec![
            vec![rat(2, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 3), rat(0, 1)],
            vec![rat(1, 1), rat(0, 1), rat(-1, 1)],
        ])
        .unwrap();
        let c = toric_action_matrix(&frame, Some(&u)).unwrap();
        let vars = VarTable::numbered("x", 4);
        let (act, _l) = toric_action_map(&c, &vars).unwrap();
        let tau = tau_map(&frame, &vars).unwrap();
        let tau1 = &tau.images()[0];
        let moved = tau1.compose(act.images()).unwrap();
        let n = act.source().len();
        let fixed = tau1.compose(&(0..4).map(|i| RatExpr::var(n, i)).collect::<Vec<_>>()).unwrap();
        assert_eq!(moved, fixed);
    }

    #[test]
    fn family_shifts_stable_block() {
        let frame = build_tau_frame(&g24(), None, 3).unwrap();
        let u = RatMatrix::identity(3);
        let c = toric_action_matrix(&frame, None).unwrap();
        let v = RatMatrix::from_rows(vec![
            vec![rat(0, 1), rat(2, 1), rat(-1, 3)],
            vec![rat(-2, 1), rat(0, 1), rat(5, 1)],
            vec![rat(1, 3), rat(-5, 1), rat(0, 1)],
        ])
        .unwrap();
        let m = compatible_family(&standard_omega(), &g24(), &frame, &c, &u, &v).unwrap();
        assert_eq!(m.verdict.lambda(), Some(&rat(-1, 1)));
        assert_eq!(m.z.checked_sub(&m.z0).unwrap(), v);
        assert!(m.matches_uvut && m.matches_uvuinv);
        let zero = RatMatrix::zeros(3, 3);
        assert_eq!(compatible_family(&standard_omega(), &g24(), &frame, &c, &u, &zero).unwrap().omega_v, standard_omega());
    }

    #[test]
    fn non_orthogonal_u_separates_the_identities() {
        let frame = build_tau_frame(&g24(), None, 3).unwrap();
        let u = RatMatrix::from_rows(vec![
            vec![rat(1, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        ])
        .unwrap();
        let c = toric_action_matrix(&frame, Some(&u)).unwrap();
        let v = RatMatrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(-1, 1), rat(0, 1), rat(1, 1)],
            vec![rat(0, 1), rat(-1, 1), rat(0, 1)],
        ])
        .unwrap();
        let m = compatible_family(&standard_omega(), &g24(), &frame, &c, &u, &v).unwrap();
        assert!(m.verdict.is_compatible());
        assert!(m.matches_uvut);
        assert!(!m.matches_uvuinv);
    }
}
