//! Censored Weibull maximum likelihood, the log-scale transformation onto the
//! standard extreme value law, and the Kaplan–Meier estimator.
//!
//! The likelihood maximised is the usual right-censored one,
//!
//! ```text
//! ℓ(θ, λ) = d·log θ − dθ·log λ + (θ − 1) Σ_{δⱼ=1} log tⱼ − λ^{−θ} Σⱼ tⱼ^θ,
//! ```
//!
//! where the log-time term runs over uncensored observations only.

use crate::distributions::{CensoredSample, WeibullParams};
use crate::error::{Error, Result};

const MAX_NEWTON_ITERATIONS: usize = 200;
const SCORE_TOLERANCE: f64 = 1e-10;
const SHAPE_CEILING: f64 = 1e7;

/// Censored Weibull log-likelihood at `params`.
pub fn log_likelihood(sample: &CensoredSample, params: &WeibullParams) -> f64 {
    let (lambda, theta) = (params.scale(), params.shape());
    let d = sample.events() as f64;
    let log_lambda = lambda.ln();
    let mut event_logs = 0.0;
    let mut power_sum = 0.0;
    for (&t, &delta) in sample.times().iter().zip(sample.deltas()) {
        let lt = t.ln();
        if delta {
            event_logs += lt;
        }
        power_sum += (theta * (lt - log_lambda)).exp();
    }
    d * theta.ln() - d * theta * log_lambda + (theta - 1.0) * event_logs - power_sum
}

// Log-times shifted by their maximum so that exp(θ·u) never overflows.
struct Profile {
    shifted: Vec<f64>,
    shift: f64,
    events: f64,
    event_sum: f64,
}

impl Profile {
    fn new(sample: &CensoredSample) -> Self {
        let logs: Vec<f64> = sample.times().iter().map(|t| t.ln()).collect();
        let shift = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let shifted: Vec<f64> = logs.iter().map(|l| l - shift).collect();
        let event_sum = shifted
            .iter()
            .zip(sample.deltas())
            .filter(|(_, &d)| d)
            .map(|(u, _)| u)
            .sum();
        Self {
            shifted,
            shift,
            events: sample.events() as f64,
            event_sum,
        }
    }

    /// Profile score in θ and its derivative.
    fn score(&self, theta: f64) -> (f64, f64) {
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for &u in &self.shifted {
            let w = (theta * u).exp();
            s0 += w;
            s1 += w * u;
            s2 += w * u * u;
        }
        let mean = s1 / s0;
        let var = (s2 / s0 - mean * mean).max(0.0);
        let d = self.events;
        (
            d / theta + self.event_sum - d * mean,
            -d / (theta * theta) - d * var,
        )
    }

    /// λ̂(θ) = (Σ tⱼ^θ / d)^{1/θ}.
    fn scale(&self, theta: f64) -> f64 {
        let s0: f64 = self.shifted.iter().map(|&u| (theta * u).exp()).sum();
        (self.shift + (s0 / self.events).ln() / theta).exp()
    }
}

/// Derivative of the profile log-likelihood in θ (equivalently, the partial
/// score in θ evaluated at λ̂(θ)).
pub fn profile_score(sample: &CensoredSample, shape: f64) -> f64 {
    Profile::new(sample).score(shape).0
}

/// Maximum likelihood estimate of `(λ, θ)` from right-censored data.
///
/// λ is profiled out; the score equation in θ is strictly decreasing and is
/// solved by Newton's method inside a bracket found by doubling/halving from a
/// log-scale moment start `1.2826 / sd(log t)` over the uncensored times.
pub fn weibull_mle(sample: &CensoredSample) -> Result<WeibullParams> {
    let d = sample.events();
    if d < 2 {
        return Err(Error::InsufficientEvents(d));
    }
    let event_logs: Vec<f64> = sample
        .times()
        .iter()
        .zip(sample.deltas())
        .filter(|(_, &delta)| delta)
        .map(|(t, _)| t.ln())
        .collect();
    let mean = event_logs.iter().sum::<f64>() / d as f64;
    let var = event_logs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / (d - 1) as f64;
    if !(var > 0.0) {
        return Err(Error::Degenerate(
            "all uncensored times are equal; the shape estimate diverges".into(),
        ));
    }
    let start = 1.2826 / var.sqrt();

    let profile = Profile::new(sample);
    let score = |theta: f64| profile.score(theta);

    let (mut lo, mut hi) = (start, start);
    while score(lo).0 < 0.0 {
        lo *= 0.5;
        if lo < 1e-12 {
            return Err(Error::Numeric(format!(
                "could not bracket the shape estimate from below (start {start})"
            )));
        }
    }
    while score(hi).0 > 0.0 {
        hi *= 2.0;
        if hi > SHAPE_CEILING {
            return Err(Error::Degenerate(format!(
                "shape estimate exceeds {SHAPE_CEILING:e}; the likelihood has no finite maximum"
            )));
        }
    }

    let mut theta = start.clamp(lo, hi);
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let (g, dg) = score(theta);
        if g.abs() < SCORE_TOLERANCE {
            return WeibullParams::new(profile.scale(theta), theta);
        }
        if g > 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        let mut next = theta - g / dg;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        // Step below floating-point resolution: θ is as good as it gets.
        if (next - theta).abs() <= 4.0 * f64::EPSILON * theta {
            return WeibullParams::new(profile.scale(next), next);
        }
        theta = next;
    }
    let (g, _) = score(theta);
    Err(Error::Numeric(format!(
        "shape estimate did not converge in {MAX_NEWTON_ITERATIONS} iterations \
         (θ = {theta}, score = {g:e}, bracket [{lo}, {hi}])"
    )))
}

/// Asymptotic standard errors `(se(λ̂), se(θ̂))` from the inverse of the
/// observed information at `params`. `None` if the information matrix is not
/// positive definite there.
pub fn standard_errors(sample: &CensoredSample, params: &WeibullParams) -> Option<(f64, f64)> {
    let (lambda, theta) = (params.scale(), params.shape());
    let d = sample.events() as f64;
    let (mut sz, mut szl, mut szl2) = (0.0, 0.0, 0.0);
    for &t in sample.times() {
        let l = (t / lambda).ln();
        let z = (theta * l).exp();
        sz += z;
        szl += z * l;
        szl2 += z * l * l;
    }
    // observed information: minus the Hessian of the log-likelihood
    let i_ll = (theta / (lambda * lambda)) * ((1.0 + theta) * sz - d);
    let i_tt = d / (theta * theta) + szl2;
    let i_lt = (d - sz - theta * szl) / lambda;
    let det = i_ll * i_tt - i_lt * i_lt;
    if !(det > 0.0 && i_ll > 0.0) {
        return None;
    }
    Some(((i_tt / det).sqrt(), (i_ll / det).sqrt()))
}

/// Values on the extreme-value scale, sorted ascending with their indicators.
///
/// At tied values, events (`true`) are ordered before censored observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedSample {
    y: Vec<f64>,
    deltas: Vec<bool>,
    params: Option<WeibullParams>,
}

impl TransformedSample {
    /// Sorts arbitrary `(y, δ)` pairs. Useful for working directly on the
    /// extreme-value scale.
    pub fn new(y: Vec<f64>, deltas: Vec<bool>) -> Result<Self> {
        Self::build(y, deltas, None)
    }

    fn build(y: Vec<f64>, deltas: Vec<bool>, params: Option<WeibullParams>) -> Result<Self> {
        if y.len() != deltas.len() {
            return Err(Error::InvalidParameter(format!(
                "{} values but {} indicators",
                y.len(),
                deltas.len()
            )));
        }
        if y.iter().any(|v| v.is_nan()) {
            return Err(Error::Domain("transformed value is NaN".into()));
        }
        let mut pairs: Vec<(f64, bool)> = y.into_iter().zip(deltas).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
        let (y, deltas) = pairs.into_iter().unzip();
        Ok(Self { y, deltas, params })
    }

    /// Sorted values `Y₍ⱼ₎`.
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Indicators `δ₍ⱼ₎` aligned with [`y`](Self::y).
    pub fn deltas(&self) -> &[bool] {
        &self.deltas
    }

    /// Parameters used in the transformation, if it came from [`transform`].
    pub fn params(&self) -> Option<&WeibullParams> {
        self.params.as_ref()
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// The same values with every indicator flipped, re-sorted so that the new
    /// events come first at ties. This is the input for estimating the
    /// censoring distribution.
    pub fn flipped(&self) -> TransformedSample {
        let deltas = self.deltas.iter().map(|d| !d).collect();
        Self::build(self.y.clone(), deltas, self.params).expect("lengths already match")
    }
}

/// `Yⱼ = θ̂ (log Tⱼ − log λ̂)`, sorted.
pub fn transform(sample: &CensoredSample, params: &WeibullParams) -> Result<TransformedSample> {
    let log_scale = params.scale().ln();
    let shape = params.shape();
    let y = sample
        .times()
        .iter()
        .map(|&t| {
            if t > 0.0 {
                Ok(shape * (t.ln() - log_scale))
            } else {
                Err(Error::Domain(format!(
                    "cannot transform non-positive time {t}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    TransformedSample::build(y, sample.deltas().to_vec(), Some(*params))
}

/// Where the Kaplan–Meier estimator puts the mass left over after the last
/// event when the largest observation is censored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LastJump {
    /// Δₙ is the leftover product regardless of δ₍ₙ₎; total mass is 1.
    #[default]
    Leftover,
    /// Δₙ = δ₍ₙ₎ × leftover; the estimate is defective when δ₍ₙ₎ = 0.
    EventsOnly,
}

/// Kaplan–Meier estimate as a step function with jumps Δⱼ at the sorted values.
#[derive(Debug, Clone, PartialEq)]
pub struct KaplanMeierFit {
    support: Vec<f64>,
    jumps: Vec<f64>,
    cumulative: Vec<f64>,
}

impl KaplanMeierFit {
    pub fn support(&self) -> &[f64] {
        &self.support
    }

    /// Jump sizes Δⱼ, aligned with [`support`](Self::support).
    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    /// Partial sums Σ_{i≤j} Δᵢ.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn total_mass(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// Right-continuous distribution function `Gₙ(t) = Σ_{Y₍ⱼ₎ ≤ t} Δⱼ`.
    pub fn cdf(&self, t: f64) -> f64 {
        let k = self.support.partition_point(|&y| y <= t);
        if k == 0 {
            0.0
        } else {
            self.cumulative[k - 1]
        }
    }

    /// Left limit `Gₙ(t−)`.
    pub fn left_limit(&self, t: f64) -> f64 {
        let k = self.support.partition_point(|&y| y < t);
        if k == 0 {
            0.0
        } else {
            self.cumulative[k - 1]
        }
    }
}

/// Kaplan–Meier jumps with the leftover-mass convention for the last point.
pub fn km_jumps(ts: &TransformedSample) -> Result<KaplanMeierFit> {
    km_jumps_with(ts, LastJump::Leftover)
}

/// Kaplan–Meier jumps:
///
/// ```text
/// Δ₁ = δ₍₁₎/n
/// Δⱼ = δ₍ⱼ₎/(n−j+1) · Π_{k<j} ((n−k)/(n−k+1))^{δ₍ₖ₎},   2 ≤ j ≤ n−1
/// Δₙ = Π_{k<n} ((n−k)/(n−k+1))^{δ₍ₖ₎}                   (leftover convention)
/// ```
///
/// Computed in the equivalent redistribute-to-the-right form
/// `Δⱼ = δ₍ⱼ₎/n · Π_{k<j, δ₍ₖ₎=0} (n−k+1)/(n−k)`, which gives exactly `1/n`
/// for complete samples.
pub fn km_jumps_with(ts: &TransformedSample, last: LastJump) -> Result<KaplanMeierFit> {
    let n = ts.len();
    if n == 0 {
        return Err(Error::Domain(
            "Kaplan–Meier estimate of an empty sample".into(),
        ));
    }
    let mut jumps = Vec::with_capacity(n);
    let mut weight = 1.0 / n as f64;
    for (j, &delta) in ts.deltas().iter().enumerate() {
        let at_risk = (n - j) as f64;
        if j + 1 == n {
            jumps.push(match last {
                LastJump::Leftover => weight,
                LastJump::EventsOnly if delta => weight,
                LastJump::EventsOnly => 0.0,
            });
        } else if delta {
            jumps.push(weight);
        } else {
            jumps.push(0.0);
            weight *= at_risk / (at_risk - 1.0);
        }
    }
    let cumulative = jumps
        .iter()
        .scan(0.0, |acc, &dj| {
            *acc += dj;
            Some(*acc)
        })
        .collect();
    Ok(KaplanMeierFit {
        support: ts.y().to_vec(),
        jumps,
        cumulative,
    })
}

/// `Gₙ(t)` for a fitted estimator.
pub fn km_cdf(fit: &KaplanMeierFit, t: f64) -> f64 {
    fit.cdf(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_errors_match_numerical_hessian() {
        let sample = CensoredSample::new(
            vec![0.3, 0.7, 1.1, 1.6, 2.2, 0.9, 1.4, 3.0, 0.5, 2.7],
            vec![
                true, true, false, true, true, true, false, true, true, false,
            ],
        )
        .unwrap();
        let p = weibull_mle(&sample).unwrap();
        let (se_l, se_t) = standard_errors(&sample, &p).unwrap();
        let ll = |l: f64, t: f64| log_likelihood(&sample, &WeibullParams::new(l, t).unwrap());
        let (l, t) = (p.scale(), p.shape());
        let (hl, ht) = (1e-4 * l, 1e-4 * t);
        let h_ll = (ll(l + hl, t) - 2.0 * ll(l, t) + ll(l - hl, t)) / (hl * hl);
        let h_tt = (ll(l, t + ht) - 2.0 * ll(l, t) + ll(l, t - ht)) / (ht * ht);
        let h_lt = (ll(l + hl, t + ht) - ll(l + hl, t - ht) - ll(l - hl, t + ht)
            + ll(l - hl, t - ht))
            / (4.0 * hl * ht);
        let det = h_ll * h_tt - h_lt * h_lt;
        assert!((se_l - (-h_tt / det).sqrt()).abs() < 1e-5 * se_l);
        assert!((se_t - (-h_ll / det).sqrt()).abs() < 1e-5 * se_t);
    }
    use std::f64::consts::E;

    fn ts(y: &[f64], d: &[u8]) -> TransformedSample {
        TransformedSample::new(y.to_vec(), d.iter().map(|&x| x == 1).collect()).unwrap()
    }

    #[test]
    fn full_sample_jumps_are_uniform() {
        let fit = km_jumps(&ts(&[0.1, 0.2, 0.3, 0.4], &[1, 1, 1, 1])).unwrap();
        assert_eq!(fit.jumps(), &[0.25, 0.25, 0.25, 0.25]);
        for (j, &y) in fit.support().iter().enumerate() {
            assert_eq!(fit.cdf(y), (j + 1) as f64 / 4.0);
        }
    }

    #[test]
    fn censored_jump_examples() {
        let fit = km_jumps(&ts(&[1.0, 2.0, 3.0], &[1, 0, 1])).unwrap();
        let expect = [1.0 / 3.0, 0.0, 2.0 / 3.0];
        for (a, b) in fit.jumps().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((fit.cdf(2.5) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(fit.cdf(0.5), 0.0);

        let fit = km_jumps(&ts(&[1.0, 2.0, 3.0], &[0, 1, 1])).unwrap();
        let expect = [0.0, 0.5, 0.5];
        for (a, b) in fit.jumps().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((fit.total_mass() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn events_only_convention_is_defective() {
        let fit = km_jumps_with(&ts(&[1.0, 2.0, 3.0], &[1, 1, 0]), LastJump::EventsOnly).unwrap();
        assert!((fit.total_mass() - 2.0 / 3.0).abs() < 1e-15);
        let fit = km_jumps(&ts(&[1.0, 2.0, 3.0], &[1, 1, 0])).unwrap();
        assert!((fit.total_mass() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn left_limit_and_ties() {
        let fit = km_jumps(&ts(&[0.0, 1.0, 1.0, 2.0], &[1, 1, 1, 1])).unwrap();
        assert_eq!(fit.cdf(1.0), 0.75);
        assert_eq!(fit.left_limit(1.0), 0.25);
        assert_eq!(km_cdf(&fit, f64::NEG_INFINITY), 0.0);
    }

    #[test]
    fn ties_put_events_first() {
        let t = ts(&[2.0, 1.0, 1.0], &[1, 0, 1]);
        assert_eq!(t.y(), &[1.0, 1.0, 2.0]);
        assert_eq!(t.deltas(), &[true, false, true]);
        let f = t.flipped();
        assert_eq!(f.deltas(), &[true, false, false]);
    }

    #[test]
    fn empty_sample_is_rejected() {
        assert!(km_jumps(&ts(&[], &[])).is_err());
    }

    #[test]
    fn transform_examples() {
        let p = WeibullParams::new(1.0, 2.0).unwrap();
        let s = CensoredSample::uncensored(vec![E, 1.0]).unwrap();
        let t = transform(&s, &p).unwrap();
        assert!((t.y()[0] - 0.0).abs() < 1e-15);
        assert!((t.y()[1] - 2.0).abs() < 1e-15);

        let p = WeibullParams::new(3.5, 0.7).unwrap();
        let s = CensoredSample::uncensored(vec![3.5]).unwrap();
        assert_eq!(transform(&s, &p).unwrap().y(), &[0.0]);
    }

    #[test]
    fn mle_errors() {
        let s = CensoredSample::new(vec![1.0, 2.0, 3.0], vec![true, false, false]).unwrap();
        assert!(matches!(weibull_mle(&s), Err(Error::InsufficientEvents(1))));
        let s = CensoredSample::new(vec![2.0, 2.0, 3.0], vec![true, true, false]).unwrap();
        assert!(matches!(weibull_mle(&s), Err(Error::Degenerate(_))));
    }

    #[test]
    fn exponential_profile_gives_mean() {
        // With θ fixed at 1 the profile scale is the sample mean.
        let s = CensoredSample::uncensored(vec![0.3, 1.2, 2.5, 0.9]).unwrap();
        let p = Profile::new(&s);
        assert!((p.scale(1.0) - 1.225).abs() < 1e-14);
    }

    #[test]
    fn mle_satisfies_profile_identity() {
        let s =
            CensoredSample::new(vec![1.0, 2.0, 3.0, 4.0], vec![true, false, true, true]).unwrap();
        let fit = weibull_mle(&s).unwrap();
        let theta = fit.shape();
        let d = s.events() as f64;
        let lam = (s.times().iter().map(|t| t.powf(theta)).sum::<f64>() / d).powf(1.0 / theta);
        assert!((lam - fit.scale()).abs() < 1e-12);
        assert!(profile_score(&s, theta).abs() < 1e-8);
    }
}
