use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use clusterpoisson_cli::{
    full_paper_suite, run_scenario, write_report, Report, Scenario, ScenarioError, SuiteConfig, REPORT_DIR_ENV,
};

/// Exact verification of cluster-compatible Poisson structures.
#[derive(Parser)]
#[command(name = "clusterpoisson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Verify {
        scenario: PathBuf,
        /// Report path; a `.txt` rendering is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the number of sampled points.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Run every check of the acceptance suite.
    Suite {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn report_path(out: Option<PathBuf>, scenario_out: Option<&Path>, stem: &str) -> Option<PathBuf> {
    out.or_else(|| scenario_out.map(Path::to_path_buf)).or_else(|| {
        std::env::var_os(REPORT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{stem}-report.json")))
    })
}

fn finish(report: &Report, path: Option<PathBuf>) -> Result<u8, ScenarioError> {
    println!("{report}");
    if let Some(p) = path {
        write_report(report, &p)?;
        println!("report written to {}", p.display());
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, ScenarioError> {
    match cli.command {
        Command::Verify {
            scenario,
            out,
            seed,
            trials,
        } => {
            let mut s = Scenario::load(&scenario)?;
            s.seed = seed.or(s.seed);
            s.trials = trials.or(s.trials);
            let report = run_scenario(&s)?;
            let path = report_path(out, s.output.as_deref(), &s.kind.to_string());
            finish(&report, path)
        }
        Command::Suite { max_n, seed, out } => {
            if !(2..=6).contains(&max_n) {
                return Err(ScenarioError::Invalid("--max-n must lie in [2, 6]".into()));
            }
            let report = full_paper_suite(SuiteConfig {
                max_n,
                seed,
                fault: None,
            });
            finish(&report, report_path(out, None, "suite"))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
