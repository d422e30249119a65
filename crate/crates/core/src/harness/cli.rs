//! Command-line front end: `fit`, `test`, `power` and `critical`.
//!
//! Tables go to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 64 for usage and configuration errors, 65 for bad data and 70 when a
//! numerical procedure fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::data::{ingest, Bundled};
use super::report::{Cell, Layout, ReportTable};
use crate::distributions::{AlternativeSpec, CensoredSample};
use crate::error::{Error, Result, EXIT_USAGE};
use crate::estimation::{log_likelihood, standard_errors, weibull_mle};
use crate::resampling::{
    monte_carlo_critical_values, p_values, warp_speed_power, CensoringPlan, CensoringTail,
    PowerStudyConfig,
};
use crate::statistics::StatisticSpec;

#[derive(Debug, Parser)]
#[command(
    name = "weibull-gof",
    version,
    about = "Goodness-of-fit tests for the Weibull distribution with right-censored data"
)]
pub struct Cli {
    /// Worker threads for resampling (0 = one per core). Never changes results.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned plain-text table.
    Text,
    /// CSV with columns statistic,value,se,config-echo.
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a Weibull model by maximum likelihood.
    Fit(FitArgs),
    /// Bootstrap p-values of the goodness-of-fit tests for a dataset.
    Test(TestArgs),
    /// Monte Carlo power study with the warp-speed bootstrap.
    Power(PowerArgs),
    /// Monte Carlo critical values under the Weibull hypothesis.
    Critical(CriticalArgs),
}

/// A dataset file, or `@name` for a bundled dataset
/// (`@leukemia-survival`, `@remission-times`).
#[derive(Debug, Clone, Args)]
pub struct DataArg {
    /// CSV file of `time,delta` rows, or @leukemia-survival / @remission-times.
    pub data: String,
}

impl DataArg {
    fn load(&self) -> Result<CensoredSample> {
        match self.data.strip_prefix('@') {
            Some(name) => Ok(name.parse::<Bundled>()?.sample()),
            None => ingest(PathBuf::from(&self.data)),
        }
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub data: DataArg,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub data: DataArg,

    /// Statistic: KS, CM, LS, KR, KR:a:m, S1:a or S2:a. Repeatable;
    /// defaults to KS, CM, LS, KR, S1 and S2 at a = 1, 5, 10.
    #[arg(long = "stat", value_name = "STAT")]
    pub stats: Vec<StatisticSpec>,

    /// Bootstrap replications (at least 99).
    #[arg(short = 'B', long, default_value_t = 999)]
    pub replications: usize,

    /// Seed for the bootstrap.
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    /// TOML file with any of: n, reps, alpha, seed, alternatives,
    /// censoring, statistics. Flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Lifetime distribution, e.g. ln:0.5, gamma:2, beta:0.5,1, w:1.5. Repeatable.
    #[arg(long = "alt", value_name = "ALT")]
    pub alternatives: Vec<AlternativeSpec>,

    /// Use only the Weibull lifetimes W(0.5), W(1.5), W(2).
    #[arg(long, conflicts_with = "alternatives")]
    pub null_only: bool,

    /// Censoring as model:proportion (exponential, uniform, koziol-green) or none. Repeatable.
    #[arg(long = "censor", value_name = "MODEL:P")]
    pub censoring: Vec<CensoringPlan>,

    /// Sample size.
    #[arg(long)]
    pub n: Option<usize>,

    /// Monte Carlo replications per row.
    #[arg(long)]
    pub reps: Option<usize>,

    /// Significance level.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Seed; each row derives its own stream from it.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Statistic (as for `test`). Repeatable.
    #[arg(long = "stat", value_name = "STAT")]
    pub stats: Vec<StatisticSpec>,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    /// Sample size.
    #[arg(long)]
    pub n: usize,

    /// Statistic (as for `test`). Repeatable.
    #[arg(long = "stat", value_name = "STAT")]
    pub stats: Vec<StatisticSpec>,

    /// Censoring as model:proportion, or none.
    #[arg(long = "censor", value_name = "MODEL:P", default_value = "none")]
    pub censoring: CensoringPlan,

    /// Monte Carlo replications.
    #[arg(long, default_value_t = 5000)]
    pub reps: usize,

    /// Significance level.
    #[arg(long, default_value_t = 0.10)]
    pub alpha: f64,

    /// Seed.
    #[arg(long)]
    pub seed: u64,
}

/// Settings a power-study TOML file may carry.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerFile {
    pub n: Option<usize>,
    pub reps: Option<usize>,
    pub alpha: Option<f64>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub alternatives: Vec<String>,
    #[serde(default)]
    pub censoring: Vec<String>,
    #[serde(default)]
    pub statistics: Vec<String>,
    #[serde(default)]
    pub null_only: bool,
}

const DEFAULT_N: usize = 100;
const DEFAULT_REPS: usize = 1000;
const DEFAULT_ALPHA: f64 = 0.10;

fn stats_or_default(stats: &[StatisticSpec]) -> Vec<StatisticSpec> {
    if stats.is_empty() {
        StatisticSpec::standard_set()
    } else {
        stats.to_vec()
    }
}

fn fmt_list<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Seed for one row of a study: the first 8 bytes of SHA-256(seed ‖ label).
pub fn row_seed(seed: u64, label: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(label.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

/// Weibull fit with standard errors and the log-likelihood.
pub fn cmd_fit(args: &FitArgs) -> Result<ReportTable> {
    let sample = args.data.load()?;
    let params = weibull_mle(&sample)?;
    let se = standard_errors(&sample, &params);
    let mut t = ReportTable::new("Weibull maximum likelihood fit", Layout::Long, "estimate");
    t.precision = 6;
    t.echo("data", &args.data.data)
        .echo("n", sample.len())
        .echo("events", sample.events())
        .echo("censored", format!("{:.4}", sample.censored_fraction()));
    let rows = [
        ("lambda", params.scale(), se.map(|s| s.0)),
        ("theta", params.shape(), se.map(|s| s.1)),
        ("loglik", log_likelihood(&sample, &params), None),
    ];
    for (name, value, se) in rows {
        t.push(Cell {
            group: String::new(),
            statistic: name.into(),
            value,
            se,
            echo: String::new(),
        });
    }
    Ok(t)
}

/// Bootstrap p-values, one per statistic, from a common set of draws.
pub fn cmd_test(args: &TestArgs) -> Result<ReportTable> {
    let sample = args.data.load()?;
    let specs = stats_or_default(&args.stats);
    let params = weibull_mle(&sample)?;
    let (pvals, draws) = p_values(&sample, &specs, args.replications, args.seed)?;
    if let Some(w) = draws.warning() {
        eprintln!("warning: {w}");
    }
    let mut t = ReportTable::new("Bootstrap goodness-of-fit tests", Layout::Long, "p-value");
    t.echo("data", &args.data.data)
        .echo("n", sample.len())
        .echo("events", sample.events())
        .echo("censored", format!("{:.4}", sample.censored_fraction()))
        .echo("lambda", params.scale())
        .echo("theta", params.shape())
        .echo("B", args.replications)
        .echo("seed", args.seed);
    for p in pvals {
        t.push(Cell {
            group: String::new(),
            statistic: p.spec.to_string(),
            value: p.p_value,
            se: Some(p.se),
            echo: format!("W={}", p.statistic),
        });
    }
    Ok(t)
}

/// Resolved power-study settings after merging the TOML file and flags.
struct PowerPlan {
    alternatives: Vec<AlternativeSpec>,
    censoring: Vec<CensoringPlan>,
    n: usize,
    reps: usize,
    alpha: f64,
    seed: u64,
    stats: Vec<StatisticSpec>,
}

fn parse_all<T: std::str::FromStr<Err = Error>>(items: &[String]) -> Result<Vec<T>> {
    items.iter().map(|s| s.parse()).collect()
}

fn power_plan(args: &PowerArgs) -> Result<PowerPlan> {
    let file: PowerFile = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
        None => PowerFile::default(),
    };
    let null_only = args.null_only || file.null_only;
    let alternatives = if !args.alternatives.is_empty() {
        args.alternatives.clone()
    } else if null_only {
        AlternativeSpec::null_set()
    } else if !file.alternatives.is_empty() {
        parse_all(&file.alternatives)?
    } else {
        AlternativeSpec::standard_set()
    };
    let censoring = if !args.censoring.is_empty() {
        args.censoring.clone()
    } else if !file.censoring.is_empty() {
        parse_all(&file.censoring)?
    } else {
        vec![CensoringPlan::none()]
    };
    let stats = if !args.stats.is_empty() {
        args.stats.clone()
    } else if !file.statistics.is_empty() {
        parse_all(&file.statistics)?
    } else {
        StatisticSpec::standard_set()
    };
    let seed = args.seed.or(file.seed).ok_or_else(|| {
        Error::Config("a seed is required: pass --seed or set seed in the config file".into())
    })?;
    Ok(PowerPlan {
        alternatives,
        censoring,
        n: args.n.or(file.n).unwrap_or(DEFAULT_N),
        reps: args.reps.or(file.reps).unwrap_or(DEFAULT_REPS),
        alpha: args.alpha.or(file.alpha).unwrap_or(DEFAULT_ALPHA),
        seed,
        stats,
    })
}

/// Rejection rates, one row per lifetime × censoring combination.
pub fn cmd_power(args: &PowerArgs) -> Result<ReportTable> {
    let plan = power_plan(args)?;
    let mut t = ReportTable::new("Warp-speed bootstrap power", Layout::Pivot, "power");
    t.precision = 3;
    t.echo("n", plan.n)
        .echo("reps", plan.reps)
        .echo("alpha", plan.alpha)
        .echo("seed", plan.seed);
    for alt in &plan.alternatives {
        for censoring in &plan.censoring {
            let label = format!("{alt} {censoring}");
            let config = PowerStudyConfig {
                lifetime: *alt,
                censoring: *censoring,
                n: plan.n,
                reps: plan.reps,
                alpha: plan.alpha,
                seed: row_seed(plan.seed, &label),
                statistics: plan.stats.clone(),
                censoring_tail: CensoringTail::default(),
            };
            let result = warp_speed_power(&config)?;
            if let Some(w) = &result.warning {
                eprintln!("warning: {label}: {w}");
            }
            for e in &result.entries {
                t.push(Cell {
                    group: label.clone(),
                    statistic: e.spec.to_string(),
                    value: e.power,
                    se: Some(e.se),
                    echo: format!(
                        "censoring={};observed-censoring={:.4};critical={}",
                        result.censoring, result.censored_fraction, e.critical_value
                    ),
                });
            }
        }
    }
    Ok(t)
}

/// Null critical values by Monte Carlo.
pub fn cmd_critical(args: &CriticalArgs) -> Result<ReportTable> {
    let specs = stats_or_default(&args.stats);
    let values = monte_carlo_critical_values(
        args.n,
        &specs,
        args.censoring,
        args.reps,
        args.alpha,
        args.seed,
    )?;
    let mut t = ReportTable::new("Monte Carlo critical values", Layout::Long, "critical");
    t.precision = 6;
    t.echo("n", args.n)
        .echo("censoring", args.censoring)
        .echo("reps", args.reps)
        .echo("alpha", args.alpha)
        .echo("seed", args.seed)
        .echo("stats", fmt_list(&specs));
    for v in values {
        t.push(Cell {
            group: String::new(),
            statistic: v.spec.to_string(),
            value: v.value,
            se: Some(v.se),
            echo: String::new(),
        });
    }
    Ok(t)
}

fn run_command(cli: &Cli) -> Result<ReportTable> {
    match &cli.command {
        Command::Fit(a) => cmd_fit(a),
        Command::Test(a) => cmd_test(a),
        Command::Power(a) => cmd_power(a),
        Command::Critical(a) => cmd_critical(a),
    }
}

/// Runs a parsed command line and renders its table.
pub fn execute(cli: &Cli) -> Result<String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} threads: {e}", cli.threads)))?;
    let table = pool.install(|| run_command(cli))?;
    Ok(match cli.format {
        Format::Text => table.to_text(),
        Format::Csv => table.to_csv(),
    })
}

/// Entry point for the binary; returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => match stdout.write_all(out.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                Error::Io(e).exit_code()
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("weibull-gof").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn help_is_success() {
        for cmd in [
            vec!["--help"],
            vec!["fit", "--help"],
            vec!["power", "--help"],
        ] {
            let (code, out, _) = run_capture(&cmd);
            assert_eq!(code, 0);
            assert!(out.contains("Usage"));
        }
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run_capture(&[]).0, 64);
        assert_eq!(run_capture(&["test", "@leukemia-survival"]).0, 64); // no seed
        assert_eq!(
            run_capture(&["critical", "--n", "20", "--seed", "1", "--stat", "AD"]).0,
            64
        );
        assert_eq!(run_capture(&["power", "--n", "20", "--reps", "100"]).0, 64); // no seed
        assert_eq!(
            run_capture(&["power", "--seed", "1", "--n", "5", "--reps", "100"]).0,
            64
        );
    }

    #[test]
    fn fit_bundled() {
        let (code, out, _) = run_capture(&["--format", "csv", "fit", "@leukemia-survival"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("statistic,value,se,config-echo\n"));
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn missing_file_is_a_data_error() {
        let (code, _, err) = run_capture(&["fit", "/nonexistent/file.csv"]);
        assert_eq!(code, 65);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn row_seeds_depend_on_label() {
        assert_ne!(row_seed(1, "a"), row_seed(1, "b"));
        assert_ne!(row_seed(1, "a"), row_seed(2, "a"));
        assert_eq!(row_seed(1, "a"), row_seed(1, "a"));
    }
}
