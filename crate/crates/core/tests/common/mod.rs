//! Independent reference implementations used by several test targets.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weibull_gof::distributions::{sample_censored, CensoredSample, CensoringSpec, WeibullParams};
use weibull_gof::estimation::{
    km_jumps, transform, weibull_mle, KaplanMeierFit, TransformedSample,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Kaplan–Meier jumps straight from the survival product
/// `S(j) = Π_{k≤j} (1 − δₖ/(n−k+1))`, with the leftover mass at the end.
pub fn km_product_oracle(deltas: &[bool]) -> Vec<f64> {
    let n = deltas.len();
    let mut surv = vec![1.0; n + 1];
    for j in 1..=n {
        let factor = if deltas[j - 1] {
            1.0 - 1.0 / (n - j + 1) as f64
        } else {
            1.0
        };
        surv[j] = surv[j - 1] * factor;
    }
    (1..=n)
        .map(|j| {
            if j == n {
                surv[n - 1]
            } else {
                surv[j - 1] - surv[j]
            }
        })
        .collect()
}

// Profile log-likelihood written out independently of the library.
fn profile_loglik(logs: &[f64], deltas: &[bool], theta: f64) -> f64 {
    let d = deltas.iter().filter(|&&x| x).count() as f64;
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = logs.iter().map(|l| (theta * (l - top)).exp()).sum();
    let log_lambda = top + (s / d).ln() / theta;
    let event_logs: f64 = logs
        .iter()
        .zip(deltas)
        .filter(|(_, &x)| x)
        .map(|(l, _)| l)
        .sum();
    d * theta.ln() - d * theta * log_lambda + (theta - 1.0) * event_logs - d
}

/// MLE by a coarse grid over log θ followed by golden-section polishing.
/// Returns (λ, θ).
pub fn mle_grid_oracle(sample: &CensoredSample) -> (f64, f64) {
    let logs: Vec<f64> = sample.times().iter().map(|t| t.ln()).collect();
    let deltas = sample.deltas();
    let f = |u: f64| profile_loglik(&logs, deltas, u.exp());
    let grid: Vec<f64> = (0..=2000)
        .map(|i| -6.0 + 12.0 * i as f64 / 2000.0)
        .collect();
    let best = (0..grid.len())
        .max_by(|&i, &j| f(grid[i]).total_cmp(&f(grid[j])))
        .unwrap();
    let (mut lo, mut hi) = (
        grid[best.saturating_sub(1)],
        grid[(best + 1).min(grid.len() - 1)],
    );
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if f(x1) < f(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    let theta = (0.5 * (lo + hi)).exp();
    let d = sample.events() as f64;
    let lambda = (logs.iter().map(|l| (theta * l).exp()).sum::<f64>() / d).powf(1.0 / theta);
    (lambda, theta)
}

/// A Weibull sample with random parameters and roughly `rate`-driven
/// exponential censoring; redrawn until it has at least two distinct events.
pub fn random_censored_sample(rng: &mut ChaCha8Rng, n: usize) -> CensoredSample {
    loop {
        let scale = rng.random_range(0.2..5.0);
        let shape = rng.random_range(0.4..4.0);
        let params = WeibullParams::new(scale, shape).unwrap();
        let rate = rng.random_range(0.05..0.8) / scale;
        let censoring = CensoringSpec::Exponential { rate };
        let s = sample_censored(&params, &censoring, n, rng).unwrap();
        if s.events() >= 2 && weibull_mle(&s).is_ok() {
            return s;
        }
    }
}

/// MLE, transform and Kaplan–Meier in one go.
pub fn fitted(sample: &CensoredSample) -> (TransformedSample, KaplanMeierFit) {
    let params = weibull_mle(sample).unwrap();
    let ts = transform(sample, &params).unwrap();
    let km = km_jumps(&ts).unwrap();
    (ts, km)
}

/// Kolmogorov distance between the empirical CDF of `xs` and `cdf`.
pub fn kolmogorov_distance(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Five-point central difference; the three-point rule's O(h²) error alone
/// reaches 1e-6 at steep likelihoods with h = 1e-5.
pub fn five_point(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}
