//! The verification checks behind every scenario kind and the suite.
//!
//! Each function consumes draws from the caller's generator in a fixed order
//! and returns one [`Check`].

use clusterpoisson::cluster::{
    build_tau_frame, check_compatibility, check_compatibility_direct_omega, compatible_family, tau_map,
    theorem_preconditions, toric_action_map, toric_action_matrix, ClusterError, Compatibility, DirectOutcome,
    ExtendedExchangeMatrix, Seed, DEFAULT_KAPPA_BOUND,
};
use clusterpoisson::exactalg::{format_rational, rat, IntMatrix, LaurentPoly, RatExpr, RatMatrix, VarTable};
use clusterpoisson::grassmann::{
    gr_bracket_table, verify_h_invariance, verify_main_theorem, verify_torus_action_gr, GrassmannChart,
};
use clusterpoisson::poisson::{extract_log_canonical, jacobi_check, CheckMode, MapOutcome, MapViolation, Residual};
use clusterpoisson::rmatrix::{
    mcybe_check, sklyanin_entry_table, sklyanin_functional_bracket, verify_factorization_lemma, RMatrix, SkewParam,
};
use clusterpoisson::rng::Lcg64;
use serde_json::{json, Value};

use crate::report::{Check, Probe};

fn matrix_json(m: &RatMatrix) -> Value {
    json!(m.to_string_rows())
}

fn int_matrix_json(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

fn s_json(s: &SkewParam) -> Value {
    serde_json::to_value(s.to_json()).expect("S serializes")
}

fn violation_json(v: &MapViolation) -> Value {
    let mut w = json!({
        "pair": [v.pair_names.0, v.pair_names.1],
    });
    match &v.residual {
        Residual::Symbolic(e) => w["residual"] = json!(e.to_string()),
        Residual::Sampled {
            point,
            lhs,
            rhs,
            expression,
        } => {
            w["point"] = json!(point.iter().map(format_rational).collect::<Vec<_>>());
            w["lhs"] = json!(format_rational(lhs));
            w["rhs"] = json!(format_rational(rhs));
            w["residual"] = json!(expression.to_string());
        }
    }
    w
}

fn draw_s(n: usize, rng: &mut Lcg64, fixed: Option<&SkewParam>) -> SkewParam {
    match fixed {
        Some(s) => s.clone(),
        None => SkewParam::random(n, rng),
    }
}

/// `μ_k ∘ μ_k = id` on random extended exchange matrices with `n_c ≤ 6`,
/// `n_s ≤ 3` and entries in `[−3, 3]`; the smallest ones are also mutated as
/// seeds.
pub fn mutation_involution(rng: &mut Lcg64, samples: usize) -> Check {
    Probe::new("mutation-involution").run(|p| {
        let mut seeds_checked = 0;
        for t in 0..samples {
            let n_c = rng.range(1, 6) as usize;
            let n_s = rng.range(0, 3) as usize;
            let mut m = IntMatrix::zeros(n_c, n_c + n_s);
            for i in 0..n_c {
                for j in i + 1..n_c {
                    let v = rng.range(-3, 3);
                    m[(i, j)] = v;
                    m[(j, i)] = -v;
                }
                for j in n_c..n_c + n_s {
                    m[(i, j)] = rng.range(-3, 3);
                }
            }
            let b = ExtendedExchangeMatrix::new(m)?;
            for k in 0..n_c {
                if b.mutate(k)?.mutate(k)? != b {
                    p.fail(
                        format!("matrix {t}: mu_{} applied twice is not the identity", k + 1),
                        json!({"matrix": int_matrix_json(b.matrix()), "direction": k + 1}),
                    );
                    return Ok(());
                }
            }
            if b.size() <= 4 {
                let seed = Seed::initial(VarTable::numbered("x", b.size()), b.clone())?;
                for k in 0..n_c {
                    if seed.mutate(k)?.mutate(k)? != seed {
                        p.fail(
                            format!("matrix {t}: seed mutation mu_{} is not an involution", k + 1),
                            json!({"matrix": int_matrix_json(b.matrix()), "direction": k + 1}),
                        );
                        return Ok(());
                    }
                }
                seeds_checked += 1;
            }
        }
        p.note(format!("{samples} matrices, {seeds_checked} seeds"));
        Ok(())
    })
}

/// `R_S` against the modified classical Yang-Baxter equation and trace
/// skewness, plus the rejected control `2R₀`.
pub fn mcybe(rng: &mut Lcg64, ns: &[usize], samples: usize) -> Check {
    Probe::new("mcybe").run(|p| {
        for &n in ns {
            for t in 0..samples {
                let s = SkewParam::random(n, rng);
                if let Err(v) = mcybe_check(&RMatrix::deformed(&s)) {
                    p.fail(
                        format!("n = {n}, sample {t}: {v}"),
                        json!({"n": n, "S": s_json(&s), "pair": [v.pair.0, v.pair.1]}),
                    );
                    return Ok(());
                }
            }
            p.note(format!("n = {n}: {samples} samples pass"));
        }
        match mcybe_check(&RMatrix::standard(2).scaled(&rat(2, 1))) {
            Err(v) => p.note(format!("control 2R0 rejected: {v}")),
            Ok(()) => p.fail("control 2R0 unexpectedly satisfies MCYBE", json!({"n": 2})),
        }
        Ok(())
    })
}

/// Jacobi identity of the entry table and agreement with the functional
/// bracket on every ordered pair of entries.
pub fn sklyanin_consistency(rng: &mut Lcg64, ns: &[usize], samples: usize) -> Check {
    Probe::new("sklyanin-consistency").run(|p| {
        for &n in ns {
            let nv = n * n;
            for t in 0..samples {
                let s = SkewParam::random(n, rng);
                let table = sklyanin_entry_table(&s);
                if let Err(v) = jacobi_check(&table) {
                    p.fail(
                        format!("n = {n}, sample {t}: {v}"),
                        json!({"n": n, "S": s_json(&s), "triple": [v.triple.0, v.triple.1, v.triple.2], "residual": v.residual.to_string()}),
                    );
                    return Ok(());
                }
                let r = RMatrix::deformed(&s);
                for a in 0..nv {
                    for b in 0..nv {
                        let f = sklyanin_functional_bracket(&r, &LaurentPoly::var(nv, a), &LaurentPoly::var(nv, b))?;
                        if &f != table.get(a, b) {
                            let names = table.vars();
                            p.fail(
                                format!("n = {n}, sample {t}: functional and entry brackets differ"),
                                json!({
                                    "n": n,
                                    "S": s_json(&s),
                                    "pair": [names.name(a), names.name(b)],
                                    "functional": f.to_string(),
                                    "table": table.get(a, b).to_string(),
                                }),
                            );
                            return Ok(());
                        }
                    }
                }
            }
            p.note(format!("n = {n}: {samples} samples, Jacobi and {} pairs agree", nv * nv));
        }
        Ok(())
    })
}

/// The multiplication `(D₁, X, D₂) ↦ D₁XD₂`, symbolically on `gl_n` and on
/// `trials` exact points with `det X = 1`; the doubled target is the control.
pub fn factorization_lemma(
    rng: &mut Lcg64,
    ns: &[usize],
    samples: usize,
    trials: usize,
    fixed: Option<&SkewParam>,
) -> Check {
    Probe::new("factorization-lemma").run(|p| {
        let mut control: Option<SkewParam> = None;
        for &n in ns {
            for t in 0..samples {
                let s = draw_s(n, rng, fixed);
                let sampled = CheckMode::Sampled {
                    trials,
                    seed: u64::from(rng.next_u32()),
                };
                for (label, mode) in [("symbolic", CheckMode::Symbolic), ("sampled", sampled)] {
                    if let MapOutcome::Fail(v) = verify_factorization_lemma(&s, mode, None)? {
                        p.fail(
                            format!("n = {n}, sample {t}, {label}: {v}"),
                            json!({"n": n, "S": s_json(&s), "violation": violation_json(&v)}),
                        );
                        return Ok(());
                    }
                }
                if control.is_none() && !s.is_zero() {
                    control = Some(s);
                }
            }
            p.note(format!("n = {n}: {samples} samples, symbolic and {trials} points on det = 1"));
        }
        match control {
            Some(s) => {
                let twisted = s.scaled(&rat(2, 1));
                match verify_factorization_lemma(&s, CheckMode::Symbolic, Some(&twisted))? {
                    MapOutcome::Fail(v) => p.note(format!("control with target 2S rejected: {v}")),
                    MapOutcome::Pass { .. } => {
                        p.fail("control with target 2S passed", json!({"S": s_json(&s)}))
                    }
                }
            }
            None => p.skip("no nonzero S drawn; twisted control not applicable"),
        }
        Ok(())
    })
}

/// Which twist the torus-action check treats as the expected one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    /// `V = −½S`.
    Correct,
    /// `V = +½S`, an injected sign error.
    WrongSign,
}

/// `(X, D) ↦ XD` from `G^0 × H^V` to `G^S`, plus the opposite twist as control.
pub fn torus_action(
    rng: &mut Lcg64,
    pairs: &[(usize, usize)],
    samples: usize,
    twist: Twist,
    fixed: Option<(&SkewParam, Option<&SkewParam>)>,
) -> Check {
    Probe::new("torus-action").run(|p| {
        for &(k, n) in pairs {
            let chart = GrassmannChart::new(k, n)?;
            let mut control = None;
            for t in 0..samples {
                let s = draw_s(n, rng, fixed.map(|f| f.0));
                let v = match (twist, fixed.and_then(|f| f.1)) {
                    (Twist::WrongSign, _) => Some(s.scaled(&rat(1, 2))),
                    (Twist::Correct, v) => v.cloned(),
                };
                if let MapOutcome::Fail(viol) = verify_torus_action_gr(&chart, &s, v.as_ref())? {
                    p.fail(
                        format!("G({k},{n}), sample {t}: action is not Poisson: {viol}"),
                        json!({"k": k, "n": n, "S": s_json(&s), "violation": violation_json(&viol)}),
                    );
                    return Ok(());
                }
                if control.is_none() && !s.is_zero() {
                    control = Some(s);
                }
            }
            match control {
                Some(s) => {
                    let wrong = s.scaled(&rat(1, 2));
                    if verify_torus_action_gr(&chart, &s, Some(&wrong))?.is_pass() {
                        p.fail(
                            format!("G({k},{n}): wrong twist V = S/2 accepted"),
                            json!({"k": k, "n": n, "S": s_json(&s)}),
                        );
                        return Ok(());
                    }
                    p.note(format!("G({k},{n}): {samples} samples pass, wrong twist rejected"));
                }
                None => p.note(format!("G({k},{n}): {samples} samples pass, S = 0 so no twist control")),
            }
        }
        Ok(())
    })
}

/// Exact cancellation of torus weights in every closed-form τ.
pub fn h_invariance(pairs: &[(usize, usize)]) -> Check {
    Probe::new("h-invariance").run(|p| {
        for &(k, n) in pairs {
            let chart = GrassmannChart::new(k, n)?;
            if let Err(v) = verify_h_invariance(&chart) {
                p.fail(
                    format!("G({k},{n}): {v}"),
                    json!({"k": k, "n": n, "position": [v.position.0, v.position.1], "weight": v.weight}),
                );
                return Ok(());
            }
        }
        p.note(format!("{} Grassmannians", pairs.len()));
        Ok(())
    })
}

/// All `(k, n)` with `2 ≤ k < n ≤ max_n`.
pub fn grassmann_pairs(max_n: usize) -> Vec<(usize, usize)> {
    (3..=max_n).flat_map(|n| (2..n).map(move |k| (k, n))).collect()
}

fn lambda_string(c: &Option<Compatibility>) -> String {
    match c.as_ref().and_then(Compatibility::lambda) {
        Some(l) => format_rational(l),
        None => "-".into(),
    }
}

/// For each pair: `S = 0` followed by `samples` draws, each log-canonical on
/// the initial extended cluster, compatible by the τ criterion and by direct
/// mutation to `depth`. For `G(2,4)` the `S = 0` values are pinned.
pub fn compatibility_forward(
    rng: &mut Lcg64,
    pairs: &[(usize, usize)],
    samples: usize,
    depth: usize,
    fixed: Option<&SkewParam>,
) -> Check {
    Probe::new("compatibility-forward").run(|p| {
        for &(k, n) in pairs {
            let chart = GrassmannChart::new(k, n)?;
            let mut ss = vec![SkewParam::zero(n)];
            ss.extend((0..samples).map(|_| draw_s(n, rng, fixed)));
            let report = verify_main_theorem(&chart, &ss, depth)?;
            for (t, f) in report.forward.iter().enumerate() {
                if !f.passed() {
                    let reason = match (&f.omega, &f.verdict, &f.direct) {
                        (Err(e), _, _) => e.to_string(),
                        (_, Some(Compatibility::Incompatible { entry, found, expected }), _) => format!(
                            "tau criterion fails at ({}, {}): found {}, expected {}",
                            entry.0 + 1,
                            entry.1 + 1,
                            format_rational(found),
                            format_rational(expected)
                        ),
                        (_, _, DirectOutcome::Fail { path, violation }) => {
                            format!("mutation path {path:?}: {violation}")
                        }
                        _ => "unknown".into(),
                    };
                    p.fail(
                        format!("G({k},{n}), sample {t}: {reason}"),
                        json!({"k": k, "n": n, "S": s_json(&f.s)}),
                    );
                    return Ok(());
                }
            }
            let zero = &report.forward[0];
            let lambdas: Vec<String> = report.forward[1..].iter().map(|f| lambda_string(&f.verdict)).collect();
            p.note(format!(
                "G({k},{n}): kappa = {:?}, S = 0 lambda = {}, samples lambda = [{}]",
                report.kappa,
                lambda_string(&zero.verdict),
                lambdas.join(", ")
            ));
            if (k, n) == (2, 4) {
                let omega = zero.omega.as_ref().expect("checked above");
                let mut expected = RatMatrix::zeros(4, 4);
                for j in [1, 3] {
                    expected[(0, j)] = rat(1, 2);
                    expected[(j, 0)] = rat(-1, 2);
                }
                let lambda = zero.lambda().cloned();
                if omega != &expected || lambda != Some(rat(-1, 1)) {
                    p.fail(
                        "G(2,4), S = 0: Omega or lambda differs from omega_12 = omega_14 = 1/2, lambda = -1",
                        json!({"omega": matrix_json(omega), "lambda": lambda.as_ref().map(format_rational)}),
                    );
                    return Ok(());
                }
                p.note("G(2,4), S = 0: omega_12 = omega_14 = 1/2, others 0, lambda = -1");
            }
        }
        p.note("conventions: zero stable block in B-hat, minimal kappa, edge u -> v gives b_uv = +1");
        Ok(())
    })
}

/// Dimension of the compatible space and the span of `S ↦ Ω(S)` with scaling.
pub fn compatibility_completeness(pairs: &[(usize, usize)]) -> Check {
    Probe::new("compatibility-completeness").run(|p| {
        for &(k, n) in pairs {
            let chart = GrassmannChart::new(k, n)?;
            let c = verify_main_theorem(&chart, &[], 0)?.completeness;
            if !c.passed() {
                p.fail(
                    format!(
                        "G({k},{n}): dimension {} (expected {}), family rank {}, combined rank {}",
                        c.dimension, c.expected, c.family_rank, c.combined_rank
                    ),
                    json!({"k": k, "n": n}),
                );
                return Ok(());
            }
            p.note(format!("G({k},{n}): dimension {} spanned by the family", c.dimension));
        }
        Ok(())
    })
}

fn omega_for(chart: &GrassmannChart, seed: &Seed, s: &SkewParam) -> Result<RatMatrix, Box<dyn std::error::Error>> {
    Ok(extract_log_canonical(&gr_bracket_table(chart, s)?, &seed.extended()).map_err(|e| e.to_string())?)
}

/// With `U = I`: `B̃C = 0`, the cluster τ are fixed by the toric action, and
/// `Ω₀ + CVCᵀ` is compatible with the same λ and `Z = Z₀ + V` for random `V`.
pub fn compatible_family_check(
    rng: &mut Lcg64,
    pairs: &[(usize, usize)],
    v_samples: usize,
    fixed_v: Option<&RatMatrix>,
) -> Check {
    Probe::new("compatible-family").run(|p| {
        for &(k, n) in pairs {
            let chart = GrassmannChart::new(k, n)?;
            let seed = chart.initial_seed()?;
            let b = seed.matrix();
            let (n_c, size) = (b.n_c(), b.size());
            let n_s = size - n_c;
            let frame = build_tau_frame(b, None, DEFAULT_KAPPA_BOUND)?;
            let c = toric_action_matrix(&frame, None)?;
            if !b.matrix().to_rational().checked_mul(&c)?.is_zero() {
                p.fail(format!("G({k},{n}): B C != 0"), json!({"C": matrix_json(&c)}));
                return Ok(());
            }
            let vars = VarTable::numbered("x", size);
            let (act, _) = toric_action_map(&c, &vars)?;
            let tau = tau_map(&frame, &vars)?;
            let embed: Vec<RatExpr> = (0..size).map(|i| RatExpr::var(act.source().len(), i)).collect();
            for i in 0..n_c {
                let t = &tau.images()[i];
                if t.compose(act.images())? != t.compose(&embed)? {
                    p.fail(
                        format!("G({k},{n}): tau_{} is not fixed by the toric action", i + 1),
                        json!({"tau": t.to_string(), "C": matrix_json(&c)}),
                    );
                    return Ok(());
                }
            }
            let omega0 = omega_for(&chart, &seed, &SkewParam::zero(n))?;
            let lambda0 = check_compatibility(&omega0, b, &frame)?.lambda().cloned();
            let u = RatMatrix::identity(n_s);
            for t in 0..v_samples {
                let v = match fixed_v {
                    Some(v) => v.clone(),
                    None => rng.skew_matrix(n_s),
                };
                let m = compatible_family(&omega0, b, &frame, &c, &u, &v)?;
                let ok = m.verdict.lambda() == lambda0.as_ref() && m.z.checked_sub(&m.z0)? == v && m.matches_uvut;
                if !ok {
                    p.fail(
                        format!("G({k},{n}), V sample {t}: family member fails"),
                        json!({
                            "V": matrix_json(&v),
                            "Z": matrix_json(&m.z),
                            "Z0": matrix_json(&m.z0),
                            "lambda": m.verdict.lambda().map(format_rational),
                        }),
                    );
                    return Ok(());
                }
            }
            p.note(format!(
                "G({k},{n}): B C = 0, tau_1..tau_{n_c} invariant, {v_samples} V give Z = Z0 + V, lambda = {}",
                lambda0.as_ref().map_or("-".into(), format_rational)
            ));
        }
        Ok(())
    })
}

/// A single-entry perturbation of the standard `G(2,4)` matrix must be
/// rejected by both routes, and precondition failures must be reported as
/// such.
pub fn negative_controls() -> Check {
    Probe::new("negative-controls").run(|p| {
        let chart = GrassmannChart::new(2, 4)?;
        let gseed = chart.initial_seed()?;
        let b = gseed.matrix().clone();
        let frame = build_tau_frame(&b, None, DEFAULT_KAPPA_BOUND)?;
        let mut omega = omega_for(&chart, &gseed, &SkewParam::zero(4))?;
        // stable-stable entry (x_{2,1}, x_{2,2}); the cluster-stable ones keep
        // the bracket compatible when there is a single cluster variable
        omega[(2, 3)] += rat(1, 1);
        omega[(3, 2)] -= rat(1, 1);
        match check_compatibility(&omega, &b, &frame)? {
            Compatibility::Incompatible { entry, found, expected } => p.note(format!(
                "tau route: entry ({}, {}) is {}, expected {}",
                entry.0 + 1,
                entry.1 + 1,
                format_rational(&found),
                format_rational(&expected)
            )),
            c => {
                p.fail("tau route accepted the perturbed Omega", json!({"verdict": format!("{c:?}")}));
                return Ok(());
            }
        }
        let seed = Seed::initial(VarTable::numbered("x", 4), b.clone())?;
        match check_compatibility_direct_omega(&omega, &seed, 1)? {
            DirectOutcome::Fail { path, violation } => {
                p.note(format!("direct route: after mutations {path:?}, {violation}"))
            }
            DirectOutcome::Pass { .. } => {
                p.fail("direct route accepted the perturbed Omega", json!({"omega": matrix_json(&omega)}));
                return Ok(());
            }
        }

        let rank_deficient = ExtendedExchangeMatrix::from_rows(vec![vec![0, 0, 0]])?;
        let reducible = ExtendedExchangeMatrix::from_rows(vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]])?;
        let e1 = theorem_preconditions(&rank_deficient).err();
        let rframe = build_tau_frame(&reducible, None, DEFAULT_KAPPA_BOUND)?;
        let e2 = check_compatibility(&RatMatrix::zeros(4, 4), &reducible, &rframe).err();
        match (e1, e2) {
            (Some(a @ ClusterError::RankDeficient { .. }), Some(b @ ClusterError::Reducible))
                if a.is_precondition() && b.is_precondition() =>
            {
                p.note(format!("preconditions: \"{a}\" and \"{b}\""))
            }
            (a, b) => p.fail(
                "precondition violations not reported as distinct precondition errors",
                json!({"rank_deficient": format!("{a:?}"), "reducible": format!("{b:?}")}),
            ),
        }
        Ok(())
    })
}
