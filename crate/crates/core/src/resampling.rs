//! Parametric bootstrap for critical values and p-values, and the warp-speed
//! Monte Carlo power engine.
//!
//! Every replicate owns an RNG stream derived from `(seed, replicate index)`,
//! and results are reduced in index order, so output does not depend on the
//! number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::distributions::{
    calibrate_censoring, sample_censored, AlternativeSpec, CensoredSample, CensoringModel,
    CensoringSpec, Lifetime, WeibullParams,
};
use crate::error::{Error, Result};
use crate::estimation::{km_jumps, km_jumps_with, transform, weibull_mle, LastJump};
use crate::statistics::{evaluate_all, StatisticSpec};

/// Failed refits tolerated for a single replicate before giving up.
const ATTEMPTS_PER_REPLICATE: u64 = 1000;
/// Redraw share above which a warning is attached to the result.
const REDRAW_WARNING_RATE: f64 = 0.01;

/// RNG for replicate `index` under `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Fit, transform and evaluate every statistic on one sample.
pub fn statistics_of(sample: &CensoredSample, specs: &[StatisticSpec]) -> Result<Vec<f64>> {
    let params = weibull_mle(sample)?;
    let ts = transform(sample, &params)?;
    let km = km_jumps(&ts)?;
    evaluate_all(specs, &ts, &km)
}

/// Where the censoring Kaplan–Meier estimate puts the mass it leaves
/// unassigned when the largest observation is an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CensoringTail {
    /// At the largest observation.
    Maximum,
    /// At +∞: such draws are never censored.
    #[default]
    Unbounded,
}

/// The fitted null model a bootstrap sample is drawn from: the Weibull MLE
/// for lifetimes and the Kaplan–Meier estimate of the censoring law.
#[derive(Debug, Clone)]
pub struct FittedNull {
    params: WeibullParams,
    // censoring KM on the transformed scale; None for complete samples
    censoring: Option<(Vec<f64>, Vec<f64>)>,
    tail: CensoringTail,
    censored_fraction: f64,
}

impl FittedNull {
    pub fn fit(sample: &CensoredSample) -> Result<Self> {
        Self::fit_with(sample, CensoringTail::default())
    }

    pub fn fit_with(sample: &CensoredSample, tail: CensoringTail) -> Result<Self> {
        let params = weibull_mle(sample)?;
        let censoring = if sample.events() == sample.len() {
            None
        } else {
            let flipped = transform(sample, &params)?.flipped();
            let last = match tail {
                CensoringTail::Maximum => LastJump::Leftover,
                CensoringTail::Unbounded => LastJump::EventsOnly,
            };
            let km = km_jumps_with(&flipped, last)?;
            Some((km.support().to_vec(), km.cumulative().to_vec()))
        };
        Ok(Self {
            params,
            censoring,
            tail,
            censored_fraction: sample.censored_fraction(),
        })
    }

    pub fn params(&self) -> &WeibullParams {
        &self.params
    }

    pub fn censored_fraction(&self) -> f64 {
        self.censored_fraction
    }

    /// One censoring time on the original scale, or +∞ without censoring.
    fn censoring_time<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let Some((support, cumulative)) = &self.censoring else {
            return f64::INFINITY;
        };
        let u = rng.random::<f64>();
        let i = cumulative.partition_point(|&c| c <= u);
        let i = if i == support.len() {
            match self.tail {
                // only reachable through rounding in the partial sums
                CensoringTail::Maximum => i - 1,
                CensoringTail::Unbounded => return f64::INFINITY,
            }
        } else {
            i
        };
        self.params.scale() * (support[i] / self.params.shape()).exp()
    }

    /// A bootstrap sample of size `n`: `T* = min(X*, C*)`, `δ* = 1{X* ≤ C*}`.
    pub fn draw<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<CensoredSample> {
        let mut times = Vec::with_capacity(n);
        let mut deltas = Vec::with_capacity(n);
        for _ in 0..n {
            let u: f64 = rng.random_range(f64::EPSILON..1.0);
            let x = self.params.from_uniform(u).max(f64::MIN_POSITIVE);
            let c = self.censoring_time(rng);
            times.push(x.min(c));
            deltas.push(x <= c);
        }
        CensoredSample::new(times, deltas)
    }
}

/// Bootstrap design: replicate count, level and seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    replications: usize,
    alpha: f64,
    seed: u64,
}

impl BootstrapConfig {
    pub fn new(replications: usize, alpha: f64, seed: u64) -> Result<Self> {
        if replications == 0 {
            return Err(Error::InvalidParameter(
                "need at least one bootstrap replicate".into(),
            ));
        }
        check_alpha(alpha)?;
        Ok(Self {
            replications,
            alpha,
            seed,
        })
    }

    pub fn replications(&self) -> usize {
        self.replications
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )))
    }
}

/// Bootstrap statistic values, one column per requested statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapDraws {
    pub specs: Vec<StatisticSpec>,
    /// `values[s][b]` is statistic `s` on replicate `b`.
    pub values: Vec<Vec<f64>>,
    pub attempts: u64,
    pub redraws: u64,
}

impl BootstrapDraws {
    pub fn redraw_rate(&self) -> f64 {
        self.redraws as f64 / self.attempts.max(1) as f64
    }

    pub fn warning(&self) -> Option<String> {
        redraw_warning(self.redraws, self.attempts)
    }
}

fn redraw_warning(redraws: u64, attempts: u64) -> Option<String> {
    let rate = redraws as f64 / attempts.max(1) as f64;
    (rate > REDRAW_WARNING_RATE).then(|| {
        format!(
            "{redraws} of {attempts} replicates ({:.1}%) were redrawn after a failed refit",
            100.0 * rate
        )
    })
}

// Retries `draw` until it succeeds; returns the value and attempts used.
fn with_redraws<T, R, F>(rng: &mut R, mut draw: F) -> Result<(T, u64)>
where
    R: Rng,
    F: FnMut(&mut R) -> Result<T>,
{
    let mut last = None;
    for attempt in 1..=ATTEMPTS_PER_REPLICATE {
        match draw(rng) {
            Ok(v) => return Ok((v, attempt)),
            Err(e) => last = Some(e),
        }
    }
    Err(Error::Numeric(format!(
        "replicate failed {ATTEMPTS_PER_REPLICATE} times in a row; last error: {}",
        last.expect("at least one attempt")
    )))
}

fn check_total_attempts(attempts: u64, replications: usize) -> Result<()> {
    if attempts > 10 * replications as u64 {
        Err(Error::Numeric(format!(
            "{attempts} attempts for {replications} replicates exceeds the cap of 10 per replicate"
        )))
    } else {
        Ok(())
    }
}

/// Null distribution of each statistic by the parametric bootstrap from the
/// fitted model of `sample`.
pub fn bootstrap_null_statistics(
    sample: &CensoredSample,
    specs: &[StatisticSpec],
    replications: usize,
    seed: u64,
) -> Result<BootstrapDraws> {
    let null = FittedNull::fit(sample)?;
    bootstrap_from(&null, sample.len(), specs, replications, seed)
}

/// As [`bootstrap_null_statistics`] with an already fitted null model.
pub fn bootstrap_from(
    null: &FittedNull,
    n: usize,
    specs: &[StatisticSpec],
    replications: usize,
    seed: u64,
) -> Result<BootstrapDraws> {
    let rows: Vec<(Vec<f64>, u64)> = (0..replications)
        .into_par_iter()
        .map(|b| {
            let mut rng = replicate_rng(seed, b as u64);
            with_redraws(&mut rng, |rng| statistics_of(&null.draw(n, rng)?, specs))
        })
        .collect::<Result<_>>()?;
    let attempts: u64 = rows.iter().map(|r| r.1).sum();
    check_total_attempts(attempts, replications)?;
    let values = (0..specs.len())
        .map(|s| rows.iter().map(|r| r.0[s]).collect())
        .collect();
    Ok(BootstrapDraws {
        specs: specs.to_vec(),
        values,
        attempts,
        redraws: attempts - replications as u64,
    })
}

/// One-based index `⌊B(1 − α)⌋`, clamped to `[1, B]`.
pub fn order_statistic_index(replications: usize, alpha: f64) -> usize {
    let k = (replications as f64 * (1.0 - alpha)).floor() as usize;
    k.clamp(1, replications.max(1))
}

/// `W*₍⌊B(1−α)⌋₎` of the given draws.
pub fn critical_value_from(draws: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if draws.is_empty() {
        return Err(Error::InvalidParameter(
            "no draws to take a quantile of".into(),
        ));
    }
    let mut sorted = draws.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted[order_statistic_index(sorted.len(), alpha) - 1])
}

/// Half the spread of the order statistics `√(Bα(1−α))` places either side
/// of the critical one; a rough Monte Carlo standard error.
pub fn critical_value_se(draws: &[f64], alpha: f64) -> f64 {
    let b = draws.len();
    if b < 2 {
        return f64::NAN;
    }
    let mut sorted = draws.to_vec();
    sorted.sort_by(f64::total_cmp);
    let k = order_statistic_index(b, alpha) - 1;
    let spread = (b as f64 * alpha * (1.0 - alpha)).sqrt().ceil() as usize;
    let lo = k.saturating_sub(spread);
    let hi = (k + spread).min(b - 1);
    (sorted[hi] - sorted[lo]) / 2.0
}

/// Bootstrap critical value of one statistic for `sample`.
pub fn critical_value(
    sample: &CensoredSample,
    spec: &StatisticSpec,
    config: &BootstrapConfig,
) -> Result<f64> {
    let draws = bootstrap_null_statistics(sample, &[*spec], config.replications, config.seed)?;
    critical_value_from(&draws.values[0], config.alpha)
}

/// `(1 + #{W* ≥ W}) / (B + 1)`.
pub fn p_value_from(observed: f64, draws: &[f64]) -> f64 {
    let exceed = draws.iter().filter(|&&w| w >= observed).count();
    (1 + exceed) as f64 / (draws.len() + 1) as f64
}

/// A bootstrap p-value with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PValue {
    pub spec: StatisticSpec,
    pub statistic: f64,
    pub p_value: f64,
    pub se: f64,
}

/// Bootstrap p-values for several statistics, all from the same draws.
pub fn p_values(
    sample: &CensoredSample,
    specs: &[StatisticSpec],
    replications: usize,
    seed: u64,
) -> Result<(Vec<PValue>, BootstrapDraws)> {
    if replications < 99 {
        return Err(Error::InvalidParameter(format!(
            "p-values need at least 99 bootstrap replicates, got {replications}"
        )));
    }
    let observed = statistics_of(sample, specs)?;
    let draws = bootstrap_null_statistics(sample, specs, replications, seed)?;
    let b = replications as f64;
    let out = specs
        .iter()
        .zip(&observed)
        .zip(&draws.values)
        .map(|((&spec, &w), pool)| {
            let p = p_value_from(w, pool);
            PValue {
                spec,
                statistic: w,
                p_value: p,
                se: (p * (1.0 - p) / b).sqrt(),
            }
        })
        .collect();
    Ok((out, draws))
}

/// p-value of one statistic.
pub fn p_value(
    sample: &CensoredSample,
    spec: &StatisticSpec,
    replications: usize,
    seed: u64,
) -> Result<f64> {
    Ok(p_values(sample, &[*spec], replications, seed)?.0[0].p_value)
}

/// How censoring is set up in a power study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CensoringPlan {
    /// A fully specified mechanism.
    Fixed(CensoringSpec),
    /// Calibrate the model's parameter to the target proportion for each
    /// lifetime distribution.
    Target {
        model: CensoringModel,
        proportion: f64,
    },
}

impl CensoringPlan {
    pub fn none() -> Self {
        Self::Fixed(CensoringSpec::None)
    }

    pub fn resolve<L: Lifetime + ?Sized>(&self, lifetime: &L) -> Result<CensoringSpec> {
        match *self {
            Self::Fixed(spec) => Ok(spec),
            Self::Target {
                model: CensoringModel::None,
                ..
            } => Ok(CensoringSpec::None),
            Self::Target { model, proportion } => calibrate_censoring(model, lifetime, proportion),
        }
    }
}

impl std::fmt::Display for CensoringPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Fixed(spec) => write!(f, "{spec}"),
            Self::Target {
                model: CensoringModel::None,
                ..
            } => f.write_str("none"),
            Self::Target { model, proportion } => write!(f, "{}:{proportion}", model.name()),
        }
    }
}

/// Parses `none` or `model:proportion`, e.g. `exponential:0.1`.
impl std::str::FromStr for CensoringPlan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (model, proportion) = match s.split_once(':') {
            Some((m, p)) => (m.parse::<CensoringModel>()?, Some(p)),
            None => (s.parse::<CensoringModel>()?, None),
        };
        match (model, proportion) {
            (CensoringModel::None, None) => Ok(Self::none()),
            (CensoringModel::None, Some(_)) => Err(Error::Config(format!(
                "'{s}': no proportion goes with 'none'"
            ))),
            (_, None) => Err(Error::Config(format!(
                "'{s}': expected model:proportion, e.g. exponential:0.1"
            ))),
            (model, Some(p)) => {
                let proportion: f64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad censoring proportion '{p}'")))?;
                if !(proportion > 0.0 && proportion < 1.0) {
                    return Err(Error::Config(format!(
                        "censoring proportion must lie in (0, 1), got {proportion}"
                    )));
                }
                Ok(Self::Target { model, proportion })
            }
        }
    }
}

/// Design of one power-table row.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerStudyConfig {
    pub lifetime: AlternativeSpec,
    pub censoring: CensoringPlan,
    pub n: usize,
    pub reps: usize,
    pub alpha: f64,
    pub seed: u64,
    pub statistics: Vec<StatisticSpec>,
    pub censoring_tail: CensoringTail,
}

impl PowerStudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 10 {
            return Err(Error::Config(format!(
                "sample size must be at least 10, got {}",
                self.n
            )));
        }
        if self.reps < 100 {
            return Err(Error::Config(format!(
                "need at least 100 Monte Carlo replications, got {}",
                self.reps
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.statistics.is_empty() {
            return Err(Error::Config("no statistics requested".into()));
        }
        if let CensoringPlan::Target { model, proportion } = self.censoring {
            if model != CensoringModel::None && !(proportion > 0.0 && proportion < 1.0) {
                return Err(Error::Config(format!(
                    "censoring proportion must lie in (0, 1), got {proportion}"
                )));
            }
        }
        Ok(())
    }
}

/// Rejection rate of one statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerEntry {
    pub spec: StatisticSpec,
    pub power: f64,
    pub se: f64,
    pub critical_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    pub config: PowerStudyConfig,
    /// The censoring mechanism after calibration.
    pub censoring: CensoringSpec,
    pub entries: Vec<PowerEntry>,
    /// Mean censored fraction over the Monte Carlo samples.
    pub censored_fraction: f64,
    pub attempts: u64,
    pub redraws: u64,
    pub warning: Option<String>,
}

/// Per-replicate output of the warp-speed loop.
struct WarpDraw {
    observed: Vec<f64>,
    bootstrap: Vec<f64>,
    censored: usize,
    attempts: u64,
}

/// Monte Carlo power with the warp-speed bootstrap: each replication draws a
/// sample from the alternative, computes `Wᵣ`, and draws a single bootstrap
/// replicate `W*ᵣ` from the sample's fitted null. The critical value is the
/// `⌊reps(1−α)⌋`-th order statistic of `{W*ᵣ}` and power is `#{Wᵣ > ĉ}/reps`.
pub fn warp_speed_power(config: &PowerStudyConfig) -> Result<PowerResult> {
    config.validate()?;
    let censoring = config.censoring.resolve(&config.lifetime)?;
    let WarpPools {
        w,
        w_star,
        censored,
        attempts,
    } = warp_speed_pools(config, &censoring)?;
    let reps = config.reps as f64;
    let entries = config
        .statistics
        .iter()
        .enumerate()
        .map(|(s, &spec)| {
            let c = critical_value_from(&w_star[s], config.alpha)?;
            let power = w[s].iter().filter(|&&v| v > c).count() as f64 / reps;
            Ok(PowerEntry {
                spec,
                power,
                se: (power * (1.0 - power) / reps).sqrt(),
                critical_value: c,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // each replication makes two draws: the sample and its bootstrap replicate
    let redraws = attempts - 2 * config.reps as u64;
    Ok(PowerResult {
        config: config.clone(),
        censoring,
        entries,
        censored_fraction: censored as f64 / (reps * config.n as f64),
        attempts,
        redraws,
        warning: redraw_warning(redraws, attempts),
    })
}

/// Output of the warp-speed loop.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpPools {
    /// `w[s][r]`: statistic `s` on replication `r`'s sample.
    pub w: Vec<Vec<f64>>,
    /// `w_star[s][r]`: statistic `s` on that sample's bootstrap replicate.
    pub w_star: Vec<Vec<f64>>,
    /// Censored observations over all samples.
    pub censored: usize,
    pub attempts: u64,
}

/// The observed and bootstrap pools of the warp-speed loop, per statistic.
pub fn warp_speed_pools(config: &PowerStudyConfig, censoring: &CensoringSpec) -> Result<WarpPools> {
    let specs = &config.statistics;
    let n = config.n;
    let draws: Vec<WarpDraw> = (0..config.reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(config.seed, r as u64);
            let ((sample, observed), first) = with_redraws(&mut rng, |rng| {
                let sample = sample_censored(&config.lifetime, censoring, n, rng)?;
                let w = statistics_of(&sample, specs)?;
                Ok((sample, w))
            })?;
            let null = FittedNull::fit_with(&sample, config.censoring_tail)?;
            let (bootstrap, second) =
                with_redraws(&mut rng, |rng| statistics_of(&null.draw(n, rng)?, specs))?;
            Ok(WarpDraw {
                observed,
                bootstrap,
                censored: sample.len() - sample.events(),
                attempts: first + second,
            })
        })
        .collect::<Result<_>>()?;
    let attempts: u64 = draws.iter().map(|d| d.attempts).sum();
    check_total_attempts(attempts, 2 * config.reps)?;
    let column = |s: usize, pick: fn(&WarpDraw) -> &Vec<f64>| -> Vec<f64> {
        draws.iter().map(|d| pick(d)[s]).collect()
    };
    let w = (0..specs.len())
        .map(|s| column(s, |d| &d.observed))
        .collect();
    let w_star = (0..specs.len())
        .map(|s| column(s, |d| &d.bootstrap))
        .collect();
    let censored = draws.iter().map(|d| d.censored).sum();
    Ok(WarpPools {
        w,
        w_star,
        censored,
        attempts,
    })
}

/// A Monte Carlo critical value with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalValue {
    pub spec: StatisticSpec,
    pub value: f64,
    pub se: f64,
}

/// Null critical values for sample size `n`.
///
/// Without censoring the statistics are exactly pivotal, so the pool is a
/// direct Monte Carlo sample from Weibull(1, 1). With censoring the pool is
/// the warp-speed bootstrap pool `{W*ᵣ}` under a Weibull(1, 1) truth.
pub fn monte_carlo_critical_values(
    n: usize,
    specs: &[StatisticSpec],
    censoring: CensoringPlan,
    reps: usize,
    alpha: f64,
    seed: u64,
) -> Result<Vec<CriticalValue>> {
    let config = PowerStudyConfig {
        lifetime: AlternativeSpec::Weibull { shape: 1.0 },
        censoring,
        n,
        reps,
        alpha,
        seed,
        statistics: specs.to_vec(),
        censoring_tail: CensoringTail::default(),
    };
    config.validate()?;
    let spec = censoring.resolve(&config.lifetime)?;
    let pools: Vec<Vec<f64>> = if spec == CensoringSpec::None {
        let unit = WeibullParams::new(1.0, 1.0)?;
        let rows: Vec<(Vec<f64>, u64)> = (0..reps)
            .into_par_iter()
            .map(|r| {
                let mut rng = replicate_rng(seed, r as u64);
                with_redraws(&mut rng, |rng| {
                    let sample = sample_censored(&unit, &CensoringSpec::None, n, rng)?;
                    statistics_of(&sample, specs)
                })
            })
            .collect::<Result<_>>()?;
        let attempts = rows.iter().map(|r| r.1).sum();
        check_total_attempts(attempts, reps)?;
        (0..specs.len())
            .map(|s| rows.iter().map(|r| r.0[s]).collect())
            .collect()
    } else {
        warp_speed_pools(&config, &spec)?.w_star
    };
    specs
        .iter()
        .zip(&pools)
        .map(|(&spec, pool)| {
            Ok(CriticalValue {
                spec,
                value: critical_value_from(pool, alpha)?,
                se: critical_value_se(pool, alpha),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_statistic_indices() {
        assert_eq!(order_statistic_index(10, 0.10), 9);
        assert_eq!(order_statistic_index(1, 0.5), 1);
        assert_eq!(order_statistic_index(5000, 0.10), 4500);
        assert_eq!(order_statistic_index(3, 0.9), 1);
    }

    #[test]
    fn critical_value_picks_order_statistic() {
        let draws: Vec<f64> = (1..=10).rev().map(f64::from).collect();
        assert_eq!(critical_value_from(&draws, 0.10).unwrap(), 9.0);
        assert_eq!(critical_value_from(&[4.2], 0.5).unwrap(), 4.2);
        assert!(critical_value_from(&[], 0.5).is_err());
        assert!(critical_value_from(&draws, 1.0).is_err());
    }

    #[test]
    fn p_value_bounds() {
        let draws = [1.0, 2.0, 3.0];
        assert_eq!(p_value_from(10.0, &draws), 0.25);
        assert_eq!(p_value_from(0.0, &draws), 1.0);
        // ties count as exceedances
        assert_eq!(p_value_from(2.0, &draws), 0.75);
    }

    #[test]
    fn streams_are_distinct_and_reproducible() {
        let a: u64 = replicate_rng(7, 0).random();
        let b: u64 = replicate_rng(7, 1).random();
        let c: u64 = replicate_rng(7, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn complete_sample_bootstrap_is_uncensored() {
        let sample = CensoredSample::uncensored(vec![0.3, 0.9, 1.4, 2.2, 0.5, 1.1, 3.0]).unwrap();
        let null = FittedNull::fit(&sample).unwrap();
        let mut rng = replicate_rng(1, 0);
        for _ in 0..50 {
            assert_eq!(null.draw(7, &mut rng).unwrap().events(), 7);
        }
    }

    #[test]
    fn censoring_times_come_from_censored_support() {
        let sample = CensoredSample::new(
            vec![0.4, 0.8, 1.5, 2.0, 2.5, 3.1],
            vec![true, false, true, false, true, true],
        )
        .unwrap();
        let draws = |tail| {
            let null = FittedNull::fit_with(&sample, tail).unwrap();
            let mut rng = replicate_rng(3, 0);
            let mut seen = std::collections::BTreeSet::new();
            for _ in 0..200 {
                seen.insert(null.censoring_time(&mut rng).to_bits());
            }
            seen.into_iter().map(f64::from_bits).collect::<Vec<_>>()
        };
        let close = |a: &[f64], b: &[f64]| {
            a.len() == b.len()
                && a.iter()
                    .zip(b)
                    .all(|(x, y)| x == y || (x - y).abs() < 1e-12)
        };
        // censored points 0.8 and 2.0, plus the leftover mass
        let at_max = draws(CensoringTail::Maximum);
        assert!(close(&at_max, &[0.8, 2.0, 3.1]), "{at_max:?}");
        let unbounded = draws(CensoringTail::Unbounded);
        assert!(
            close(&unbounded, &[0.8, 2.0, f64::INFINITY]),
            "{unbounded:?}"
        );
    }

    #[test]
    fn single_replicate_is_reproducible() {
        let sample = CensoredSample::new(
            vec![0.4, 0.8, 1.5, 2.0, 2.5, 3.1, 0.2, 1.9],
            vec![true, false, true, true, true, true, false, true],
        )
        .unwrap();
        let specs = StatisticSpec::standard_set();
        let a = bootstrap_null_statistics(&sample, &specs, 1, 11).unwrap();
        let b = bootstrap_null_statistics(&sample, &specs, 1, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values.len(), specs.len());
    }

    #[test]
    fn critical_values_are_monotone_in_alpha() {
        let sample =
            CensoredSample::uncensored((1..=20).map(|i| f64::from(i).sqrt()).collect()).unwrap();
        let spec = StatisticSpec::s1(1.0).unwrap();
        let draws = bootstrap_null_statistics(&sample, &[spec], 200, 5).unwrap();
        let c01 = critical_value_from(&draws.values[0], 0.01).unwrap();
        let c10 = critical_value_from(&draws.values[0], 0.10).unwrap();
        let c50 = critical_value_from(&draws.values[0], 0.50).unwrap();
        assert!(c01 >= c10 && c10 >= c50);
    }

    #[test]
    fn censoring_plan_parsing() {
        assert_eq!(
            "none".parse::<CensoringPlan>().unwrap(),
            CensoringPlan::none()
        );
        let plan: CensoringPlan = "koziol-green:0.2".parse().unwrap();
        assert_eq!(
            plan,
            CensoringPlan::Target {
                model: CensoringModel::KoziolGreen,
                proportion: 0.2
            }
        );
        assert_eq!(plan.to_string().parse::<CensoringPlan>().unwrap(), plan);
        for bad in [
            "exponential",
            "uniform:1.5",
            "none:0.1",
            "weird:0.1",
            "exp:x",
        ] {
            assert!(bad.parse::<CensoringPlan>().is_err(), "{bad}");
        }
    }

    #[test]
    fn power_config_validation() {
        let base = PowerStudyConfig {
            lifetime: AlternativeSpec::Weibull { shape: 1.0 },
            censoring: CensoringPlan::none(),
            n: 20,
            reps: 100,
            alpha: 0.1,
            seed: 0,
            statistics: vec![StatisticSpec::ks()],
            censoring_tail: CensoringTail::default(),
        };
        assert!(base.validate().is_ok());
        let bad = [
            PowerStudyConfig {
                n: 9,
                ..base.clone()
            },
            PowerStudyConfig {
                reps: 99,
                ..base.clone()
            },
            PowerStudyConfig {
                alpha: 0.0,
                ..base.clone()
            },
            PowerStudyConfig {
                statistics: vec![],
                ..base.clone()
            },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        }
    }
}
