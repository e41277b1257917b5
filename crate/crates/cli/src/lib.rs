//! Scenario runner for the `clusterpoisson` checks.
//!
//! A [`Scenario`] names one kind of verification plus its parameters; running
//! it yields a [`Report`] of named checks. All sampling flows from the
//! scenario seed through [`Lcg64`], so a scenario and seed determine the report
//! byte for byte once timings are stripped ([`Report::canonical_json`]).

pub mod checks;
mod report;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clusterpoisson::rmatrix::{SkewParam, SkewParamJson};
use clusterpoisson::rng::Lcg64;
use serde::{Deserialize, Serialize};

pub use checks::Twist;
pub use report::{Check, Report, Status};

/// Environment variable naming the directory for reports when no `--out`
/// is given.
pub const REPORT_DIR_ENV: &str = "CLUSTERPOISSON_REPORT_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    MutationSuite,
    Mcybe,
    SklyaninJacobi,
    FactorizationLemma,
    TorusActionGr,
    HInvariance,
    GrassmannCompatibility,
    CompatibleDimension,
    #[default]
    FullPaperSuite,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("kind serializes");
        f.write_str(s.as_str().expect("kind is a string"))
    }
}

/// Injected faults for exercising the failure path of the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// The torus-action check expects `V = +½S` instead of `−½S`.
    WrongSignTwist,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `{"n": .., "core": [[..]]}` file with a fixed `S`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_path: Option<PathBuf>,
    /// Same format, the torus twist `V` for `torus-action-gr`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

impl Scenario {
    pub fn new(kind: Kind) -> Self {
        Scenario {
            kind,
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Json(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = fs::read_to_string(path).map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScenarioError {
    Io(String),
    Json(String),
    Invalid(String),
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Io(m) => write!(f, "I/O error: {m}"),
            ScenarioError::Json(m) => write!(f, "malformed scenario: {m}"),
            ScenarioError::Invalid(m) => write!(f, "invalid parameters: {m}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ScenarioError> {
    Err(ScenarioError::Invalid(msg.into()))
}

fn load_skew(path: &Path, n: usize) -> Result<SkewParam, ScenarioError> {
    let text = fs::read_to_string(path).map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))?;
    let j: SkewParamJson = serde_json::from_str(&text).map_err(|e| ScenarioError::Json(e.to_string()))?;
    if j.n != n {
        return invalid(format!("{} has n = {}, scenario has n = {n}", path.display(), j.n));
    }
    SkewParam::from_json(&j).map_err(|e| ScenarioError::Invalid(format!("{}: {e}", path.display())))
}

fn ns_for(s: &Scenario, lo: usize, hi: usize, default: &[usize]) -> Result<Vec<usize>, ScenarioError> {
    match s.n {
        Some(n) if (lo..=hi).contains(&n) => Ok(vec![n]),
        Some(n) => invalid(format!("{}: n = {n} outside [{lo}, {hi}]", s.kind)),
        None => Ok(default.to_vec()),
    }
}

/// `(k, n)` pairs: the scenario's own, validated against `min_k` and a
/// minimum `m = n − k`, or the default list.
fn pairs_for(
    s: &Scenario,
    min_k: usize,
    min_m: usize,
    max_n: usize,
    default: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>, ScenarioError> {
    match (s.k, s.n) {
        (Some(k), Some(n)) => {
            if k < min_k || n < k + min_m || n > max_n {
                return invalid(format!(
                    "{}: need {min_k} <= k, k + {min_m} <= n <= {max_n}, got k = {k}, n = {n}",
                    s.kind
                ));
            }
            Ok(vec![(k, n)])
        }
        (None, None) => Ok(default.to_vec()),
        _ => invalid(format!("{}: give both k and n or neither", s.kind)),
    }
}

fn need_n_for_path(s: &Scenario, ns: &[usize]) -> Result<Option<SkewParam>, ScenarioError> {
    match (&s.s_path, ns) {
        (None, _) => Ok(None),
        (Some(p), [n]) => Ok(Some(load_skew(p, *n)?)),
        (Some(_), _) => invalid("s_path requires a single n"),
    }
}

fn positive(name: &str, v: Option<usize>, default: usize) -> Result<usize, ScenarioError> {
    match v.unwrap_or(default) {
        0 => invalid(format!("{name} must be positive")),
        x => Ok(x),
    }
}

/// Parameters of the full suite; the defaults reproduce the acceptance run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest `n` for the MCYBE sweep; H-invariance runs to `max_n + 1`.
    pub max_n: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 5,
            seed: 0,
            fault: None,
        }
    }
}

/// Check names of the suite, in execution order.
pub const SUITE_CHECKS: [&str; 10] = [
    "mutation-involution",
    "mcybe",
    "sklyanin-consistency",
    "factorization-lemma",
    "torus-action",
    "h-invariance",
    "compatibility-forward",
    "compatibility-completeness",
    "compatible-family",
    "negative-controls",
];

/// Every check of the acceptance run, in order, from one generator.
pub fn full_paper_suite(cfg: SuiteConfig) -> Report {
    let start = Instant::now();
    let mut rng = Lcg64::new(cfg.seed);
    let twist = match cfg.fault {
        Some(Fault::WrongSignTwist) => Twist::WrongSign,
        None => Twist::Correct,
    };
    let g_small = [(2, 3), (2, 4)];
    let g_mid = [(2, 4), (2, 5)];
    let checks = vec![
        checks::mutation_involution(&mut rng, 200),
        checks::mcybe(&mut rng, &(2..=cfg.max_n).collect::<Vec<_>>(), 10),
        checks::sklyanin_consistency(&mut rng, &[2, 3], 5),
        checks::factorization_lemma(&mut rng, &[2, 3], 2, 50, None),
        checks::torus_action(&mut rng, &g_small, 5, twist, None),
        checks::h_invariance(&checks::grassmann_pairs(cfg.max_n + 1)),
        checks::compatibility_forward(&mut rng, &[(2, 4), (2, 5), (3, 5)], 5, 2, None),
        checks::compatibility_completeness(&g_mid),
        checks::compatible_family_check(&mut rng, &g_mid, 10, None),
        checks::negative_controls(),
    ];
    let scenario = Scenario {
        max_n: Some(cfg.max_n),
        seed: Some(cfg.seed),
        fault: cfg.fault,
        ..Scenario::new(Kind::FullPaperSuite)
    };
    Report::new(scenario, checks, Some(start.elapsed().as_millis() as u64))
}

/// Validates the parameters for the scenario's kind and runs it.
pub fn run_scenario(s: &Scenario) -> Result<Report, ScenarioError> {
    let start = Instant::now();
    let mut rng = Lcg64::new(s.seed.unwrap_or(0));
    let check = match s.kind {
        Kind::MutationSuite => checks::mutation_involution(&mut rng, positive("samples", s.samples, 200)?),
        Kind::Mcybe => {
            let ns = ns_for(s, 2, 8, &[2, 3, 4, 5])?;
            checks::mcybe(&mut rng, &ns, positive("samples", s.samples, 10)?)
        }
        Kind::SklyaninJacobi => {
            let ns = ns_for(s, 2, 4, &[2, 3])?;
            checks::sklyanin_consistency(&mut rng, &ns, positive("samples", s.samples, 5)?)
        }
        Kind::FactorizationLemma => {
            let ns = ns_for(s, 2, 4, &[2, 3])?;
            let fixed = need_n_for_path(s, &ns)?;
            let samples = if fixed.is_some() { 1 } else { positive("samples", s.samples, 2)? };
            let trials = positive("trials", s.trials, 50)?;
            checks::factorization_lemma(&mut rng, &ns, samples, trials, fixed.as_ref())
        }
        Kind::TorusActionGr => {
            let pairs = pairs_for(s, 1, 1, 6, &[(2, 3), (2, 4)])?;
            let fixed_s = match &s.s_path {
                Some(p) if pairs.len() == 1 => Some(load_skew(p, pairs[0].1)?),
                Some(_) => return invalid("s_path requires k and n"),
                None => None,
            };
            let fixed_v = match (&s.v_path, &fixed_s) {
                (Some(p), Some(_)) => Some(load_skew(p, pairs[0].1)?),
                (Some(_), None) => return invalid("v_path requires s_path"),
                (None, _) => None,
            };
            let samples = if fixed_s.is_some() { 1 } else { positive("samples", s.samples, 5)? };
            let twist = match s.fault {
                Some(Fault::WrongSignTwist) => Twist::WrongSign,
                None => Twist::Correct,
            };
            let fixed = fixed_s.as_ref().map(|x| (x, fixed_v.as_ref()));
            checks::torus_action(&mut rng, &pairs, samples, twist, fixed)
        }
        Kind::HInvariance => {
            let pairs = match (s.k, s.n) {
                (None, None) => checks::grassmann_pairs(s.max_n.unwrap_or(6)),
                _ => pairs_for(s, 2, 1, 9, &[])?,
            };
            if pairs.is_empty() {
                return invalid("h-invariance: max_n must be at least 3");
            }
            checks::h_invariance(&pairs)
        }
        Kind::GrassmannCompatibility => {
            let pairs = pairs_for(s, 2, 2, 6, &[(2, 4), (2, 5), (3, 5)])?;
            let fixed = match &s.s_path {
                Some(p) if pairs.len() == 1 => Some(load_skew(p, pairs[0].1)?),
                Some(_) => return invalid("s_path requires k and n"),
                None => None,
            };
            let samples = if fixed.is_some() { 1 } else { s.samples.unwrap_or(5) };
            let depth = s.depth.unwrap_or(2);
            if depth > 4 {
                return invalid("depth must be at most 4");
            }
            checks::compatibility_forward(&mut rng, &pairs, samples, depth, fixed.as_ref())
        }
        Kind::CompatibleDimension => {
            let pairs = pairs_for(s, 2, 2, 6, &[(2, 4), (2, 5)])?;
            checks::compatibility_completeness(&pairs)
        }
        Kind::FullPaperSuite => {
            let max_n = s.max_n.unwrap_or(5);
            if !(2..=6).contains(&max_n) {
                return invalid("full-paper-suite: max_n must lie in [2, 6]");
            }
            let mut r = full_paper_suite(SuiteConfig {
                max_n,
                seed: s.seed.unwrap_or(0),
                fault: s.fault,
            });
            r.scenario = s.clone();
            return Ok(r);
        }
    };
    Ok(Report::new(s.clone(), vec![check], Some(start.elapsed().as_millis() as u64)))
}

/// Writes `path` (JSON) and the same path with extension `txt`.
pub fn write_report(report: &Report, path: &Path) -> Result<(), ScenarioError> {
    let io = |e: std::io::Error| ScenarioError::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, report.to_json() + "\n").map_err(io)?;
    fs::write(path.with_extension("txt"), report.to_string() + "\n").map_err(io)?;
    Ok(())
}
