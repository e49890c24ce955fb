//! The `sicov` command line.
//!
//! Exit codes: 0 success, 1 the test rejected and `--exit-on-reject` was
//! given, 2 invalid usage or input, 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sicov_core::estimators::{dcov_dcor_baseline, pearson_baseline, sicor_from_terms, sicov_from_terms};
use sicov_core::exec::Executor;
use sicov_core::inference::{asymptotic_ci_with, null_distribution_sim_with, permutation_test, permutation_test_with};
use sicov_core::kernels::term_statistics_with;
use sicov_core::oracle::{
    cauchy_closed_form, lemma21_check, normal_closed_form, population_sicor, population_terms,
    quadrature_sicov_discrete, QuadratureSpec,
};
use sicov_core::rng::{derive_seed, Stream, RNG_NAME};
use sicov_core::simulate::Generator;
use sicov_core::{AlphaParam, EstimatorConfig, Mode, PairedSample, DEFAULT_SEED, DEFAULT_TUPLE_BUDGET};

use crate::report::{record_csv, table_csv, CiReport, EstimateReport, OracleReport, Table, TestReport};
use crate::{load_csv, load_csv_infer, load_fixture, RayonExecutor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sicov", version, about = "Sub-independence covariance and correlation: estimation, testing, simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate siCov and siCor with dCor and Pearson baselines.
    Estimate(EstimateArgs),
    /// Permutation test of independence, optionally with a normal-theory interval for siCov.
    Test(TestArgs),
    /// Simulation tables.
    ///
    /// Scenarios and their CSV columns:
    ///   normal-grid  rho,n,sicov_closed,sicor_closed,ratio_r,sicov_hat,sicor_hat
    ///   cauchy-grid  alpha,sicor_closed
    ///   null-sim     replicate,value  (value = sqrt(n)·siCov_hat under independent margins)
    ///   power-x2     n,runs,permutations,level,rejections,rate,mean_pearson  (y = x² − 1)
    #[command(verbatim_doc_comment)]
    Simulate(SimulateArgs),
    /// Evaluate the oracles on a discrete-law fixture: {"atoms": [[x, y, prob], ...]}.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: &str| e.to_string())
}

#[derive(Debug, Args)]
pub struct Common {
    /// Exponent α in (0,2).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Estimator mode: u, u-incomplete or v-fast. Default: exact when cheap, sampled otherwise.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    /// Tuples per term family in u-incomplete mode.
    #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output format (json for estimate/test/oracle, csv for simulate by default).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV with header x1..xp,y1..yp.
    #[arg(long)]
    pub input: PathBuf,
    /// Declared margin dimension; inferred from the header when omitted.
    #[arg(long)]
    pub p: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: Common,
    /// Clamp the empirical siCor into [0, 1] (a warning is still emitted).
    #[arg(long)]
    pub clamp_sicor: bool,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 999)]
    pub permutations: usize,
    /// Significance level; the interval (with --ci) has confidence 1 − level.
    #[arg(long, default_value_t = 0.05)]
    pub level: f64,
    /// Also report the normal-theory interval for siCov.
    #[arg(long)]
    pub ci: bool,
    /// Kernel evaluations per row for the first-projection estimates.
    #[arg(long, default_value_t = 2000)]
    pub k1_budget: u64,
    /// Exit with status 1 when the test rejects.
    #[arg(long)]
    pub exit_on_reject: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    NormalGrid,
    CauchyGrid,
    NullSim,
    PowerX2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NullLaw {
    Normal,
    Rademacher,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub scenario: Scenario,
    #[command(flatten)]
    pub common: Common,
    /// Sample size (default 2000 for normal-grid, 200 otherwise).
    #[arg(long)]
    pub n: Option<usize>,
    /// Replicates for null-sim (default 1000) or runs for power-x2 (default 200).
    #[arg(long)]
    pub replicates: Option<usize>,
    /// Permutations per run in power-x2.
    #[arg(long, default_value_t = 199)]
    pub permutations: usize,
    #[arg(long, default_value_t = 0.05)]
    pub level: f64,
    /// Independent margins used by null-sim.
    #[arg(long, value_enum, default_value_t = NullLaw::Normal)]
    pub law: NullLaw,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// JSON fixture {"atoms": [[x, y, prob], ...]}.
    #[arg(long)]
    pub fixture: PathBuf,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 200.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<sicov_core::Error> for Failure {
    fn from(e: sicov_core::Error) -> Self {
        use sicov_core::Error as E;
        let code = match e {
            E::DegenerateDenominator { .. } | E::QuadratureNotConverged { .. } | E::ZeroVariance { .. } => EXIT_NUMERIC,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Parses `args` (including the program name), runs, and writes the report
/// to `stdout` (or `--out`) and errors to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, out, code)) => match out {
            Some(path) => match std::fs::write(&path, text) {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    EXIT_USAGE
                }
            },
            None => {
                let _ = stdout.write_all(text.as_bytes());
                code
            }
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

type Outcome = Result<(String, Option<PathBuf>, i32), Failure>;

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Estimate(a) => run_estimate(a),
        Command::Test(a) => run_test(a),
        Command::Simulate(a) => run_simulate(a),
        Command::Oracle(a) => run_oracle(a),
    }
}

fn executor(common: &Common) -> Result<RayonExecutor, Failure> {
    match common.threads {
        Some(0) => Err(Failure::usage("--threads must be at least 1")),
        Some(t) => RayonExecutor::with_threads(t).map_err(Failure::usage),
        None => Ok(RayonExecutor::global()),
    }
}

fn config(common: &Common, clamp: bool) -> Result<EstimatorConfig, Failure> {
    let cfg = EstimatorConfig {
        mode: common.mode,
        tuple_budget: common.budget,
        seed: common.seed,
        clamp_correlation: clamp,
        ..EstimatorConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn load(input: &InputArgs) -> Result<PairedSample, Failure> {
    let loaded = match input.p {
        Some(p) => load_csv(&input.input, p),
        None => load_csv_infer(&input.input),
    };
    loaded.map_err(|e| Failure::usage(format!("{}: {e}", input.input.display())))
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

fn render<T: Serialize>(report: &T, template: Option<&T>, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Json) {
        Format::Json => json_text(report),
        Format::Csv => record_csv(report, template),
    }
}

fn run_estimate(a: EstimateArgs) -> Outcome {
    let sample = load(&a.input)?;
    let alpha = AlphaParam::new(a.common.alpha)?;
    let cfg = config(&a.common, a.clamp_sicor)?;
    let exec = executor(&a.common)?;
    let (n, p) = (sample.n(), sample.p());
    let mode = cfg.resolve_mode(n, p, alpha);

    let terms = term_statistics_with(&sample, alpha, &cfg, &exec)?;
    let sicov = sicov_from_terms(terms, mode, n).estimate;
    let constant = sample.x_is_constant() || sample.y_is_constant();
    let sicor = sicor_from_terms(terms, mode, n, constant, cfg.clamp_correlation)?.estimate;
    let (dcov, dcor) = dcov_dcor_baseline(&sample)?;
    let mut warnings: Vec<String> = sicov.warnings.iter().map(|w| format!("sicov: {w}")).collect();
    warnings.extend(sicor.warnings.iter().map(|w| format!("sicor: {w}")));
    let pearson = if p == 1 {
        match pearson_baseline(&sample) {
            Ok(r) => Some(r.value),
            Err(e) => {
                warnings.push(format!("pearson: {e}"));
                None
            }
        }
    } else {
        None
    };
    let report = EstimateReport {
        sicov: sicov.value,
        sicor: sicor.value,
        dcov: dcov.value,
        dcor: dcor.value,
        pearson,
        alpha: alpha.get(),
        mode: mode.as_str(),
        n,
        p,
        seed: cfg.seed,
        budget: (mode == Mode::UIncomplete).then_some(cfg.tuple_budget),
        rng: RNG_NAME,
        warnings,
    };
    Ok((render(&report, None, a.common.format), a.common.out, EXIT_OK))
}

fn run_test(a: TestArgs) -> Outcome {
    let sample = load(&a.input)?;
    let alpha = AlphaParam::new(a.common.alpha)?;
    let cfg = config(&a.common, false)?;
    let exec = executor(&a.common)?;
    let result = permutation_test_with(&sample, alpha, a.permutations, a.level, &cfg, &exec)?;
    let ci = if a.ci {
        let ci = asymptotic_ci_with(&sample, alpha, 1.0 - a.level, a.k1_budget, &cfg, &exec)?;
        Some(CiReport {
            lower: ci.lower,
            upper: ci.upper,
            level: ci.level,
            variance_hat: ci.variance_hat,
            k1_budget: a.k1_budget,
            warnings: ci.warnings.iter().map(ToString::to_string).collect(),
        })
    } else {
        None
    };
    let report = TestReport {
        statistic: result.statistic,
        p_value: result.p_value,
        reject: result.reject,
        permutations: result.permutations,
        level: result.level,
        alpha: alpha.get(),
        mode: result.mode.as_str(),
        n: sample.n(),
        p: sample.p(),
        seed: result.seed,
        rng: RNG_NAME,
        ci,
    };
    let template = TestReport {
        ci: Some(CiReport { lower: 0.0, upper: 0.0, level: 0.0, variance_hat: 0.0, k1_budget: 0, warnings: vec![] }),
        ..report.clone()
    };
    let code = if a.exit_on_reject && result.reject { EXIT_REJECT } else { EXIT_OK };
    Ok((render(&report, Some(&template), a.common.format), a.common.out, code))
}

fn run_simulate(a: SimulateArgs) -> Outcome {
    let alpha = AlphaParam::new(a.common.alpha)?;
    let cfg = config(&a.common, false)?;
    let exec = executor(&a.common)?;
    let seed = cfg.seed;
    let table = match a.scenario {
        Scenario::NormalGrid => {
            let n = a.n.unwrap_or(2000);
            let rhos = [-1.0, -0.5, 0.0, 0.5, 1.0];
            let mut rows = Vec::new();
            for (k, &rho) in rhos.iter().enumerate() {
                let closed = normal_closed_form(rho)?;
                let sample = Generator::bivariate_normal(rho)?.replicate(n, seed, k as u64)?;
                let terms = term_statistics_with(&sample, alpha, &cfg, &exec)?;
                let mode = cfg.resolve_mode(n, 1, alpha);
                let sicor = sicor_from_terms(terms, mode, n, false, false)?.estimate.value;
                rows.push(vec![
                    json!(rho),
                    json!(n),
                    json!(closed.sicov),
                    json!(closed.sicor),
                    json!(closed.ratio_r),
                    json!(terms.sicov()),
                    json!(sicor),
                ]);
            }
            Table {
                scenario: "normal-grid",
                columns: vec!["rho", "n", "sicov_closed", "sicor_closed", "ratio_r", "sicov_hat", "sicor_hat"],
                rows,
            }
        }
        Scenario::CauchyGrid => {
            let mut rows = Vec::new();
            for k in 1..=9 {
                let a = k as f64 / 10.0;
                rows.push(vec![json!(a), json!(cauchy_closed_form(a)?)]);
            }
            Table { scenario: "cauchy-grid", columns: vec!["alpha", "sicor_closed"], rows }
        }
        Scenario::NullSim => {
            let n = a.n.unwrap_or(200);
            let generator = match a.law {
                NullLaw::Normal => Generator::IndependentNormal,
                NullLaw::Rademacher => Generator::IndependentRademacher,
            };
            let draws = null_distribution_sim_with(&generator, n, a.replicates.unwrap_or(1000), alpha, seed, &exec)?;
            let rows = draws.iter().enumerate().map(|(r, v)| vec![json!(r), json!(v)]).collect();
            Table { scenario: "null-sim", columns: vec!["replicate", "value"], rows }
        }
        Scenario::PowerX2 => {
            let n = a.n.unwrap_or(200);
            let runs = a.replicates.unwrap_or(200);
            if runs == 0 {
                return Err(Failure::usage("--replicates must be at least 1"));
            }
            let outcomes = exec.map(runs, |r| {
                let sample = Generator::SquareMinusOne.replicate(n, seed, r as u64)?;
                let run_cfg = EstimatorConfig { seed: derive_seed(seed, Stream::EstimatorSeed, r as u64), ..cfg.clone() };
                let test = permutation_test(&sample, alpha, a.permutations, a.level, &run_cfg)?;
                Ok::<_, sicov_core::Error>((test.reject, pearson_baseline(&sample)?.value))
            });
            let outcomes = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
            let rejections = outcomes.iter().filter(|o| o.0).count();
            let mean_pearson = outcomes.iter().map(|o| o.1).sum::<f64>() / runs as f64;
            Table {
                scenario: "power-x2",
                columns: vec!["n", "runs", "permutations", "level", "rejections", "rate", "mean_pearson"],
                rows: vec![vec![
                    json!(n),
                    json!(runs),
                    json!(a.permutations),
                    json!(a.level),
                    json!(rejections),
                    json!(rejections as f64 / runs as f64),
                    json!(mean_pearson),
                ]],
            }
        }
    };
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => table_csv(&table),
        Format::Json => json_text(&table),
    };
    Ok((text, a.common.out, EXIT_OK))
}

fn run_oracle(a: OracleArgs) -> Outcome {
    let law = load_fixture(&a.fixture).map_err(|e| Failure::usage(format!("{}: {e}", a.fixture.display())))?;
    let alpha = AlphaParam::new(a.common.alpha)?;
    let spec = QuadratureSpec { t_max: a.t_max, rel_tol: a.rel_tol, ..QuadratureSpec::default() };
    spec.validate()?;
    let terms = population_terms(&law, alpha);
    let sicor = population_sicor(&law, alpha).ok();
    let quad = quadrature_sicov_discrete(&law, alpha, &spec)?;
    let (lemma, moment) = lemma21_check(&law.x_marginal().difference(), alpha, &spec)?;
    let report = OracleReport {
        atoms: law.len(),
        alpha: alpha.get(),
        sicov_population: terms.sicov(),
        sicor_population: sicor,
        sicov_quadrature: quad.value,
        quadrature_error: quad.error,
        quadrature_tail: quad.tail,
        quadrature_tail_bound: quad.tail_bound,
        lemma_quadrature: lemma.value,
        lemma_moment: moment,
    };
    Ok((render(&report, None, a.common.format), a.common.out, EXIT_OK))
}
