//! Empirical Laplace transform statistic.
//!
//! Compares `ψₙ(t) = Σⱼ Δⱼ e^{−tYⱼ}` with the EV(0,1) transform `Γ(1 − t)`
//! under the weight `e^{at − e^{at}}` on `(−1, 0]`, as the Riemann sum
//!
//! ```text
//! KR = n Σ_{k=−m}^{−1} [ψₙ(k/m) − Γ(1 − k/m)]² e^{ak/m − e^{ak/m}}.
//! ```
//!
//! The sum carries no `1/m` factor, so it approximates `m` times the integral.

use statrs::function::gamma::gamma;

use super::{weighted_points, StatisticSpec, StatisticValue};
use crate::error::{Error, Result};
use crate::estimation::{KaplanMeierFit, TransformedSample};

// Beyond this, e^{|Y|} may overflow and the log-space path is taken.
const DIRECT_LIMIT: f64 = 600.0;

pub fn stat_kr(
    ts: &TransformedSample,
    km: &KaplanMeierFit,
    a: f64,
    m: usize,
) -> Result<StatisticValue> {
    let spec = StatisticSpec::kr(a, m)?;
    let pts: Vec<(f64, f64)> = weighted_points(ts, km).collect();
    let mf = m as f64;
    let direct = pts.iter().all(|(y, _)| y.abs() < DIRECT_LIMIT);

    // e^{−Yⱼ k/m} for k = −1, −2, … is ratioⱼ^{|k|}
    let ratios: Vec<f64> = pts.iter().map(|(y, _)| (y / mf).exp()).collect();
    let mut powers: Vec<f64> = pts.iter().map(|&(_, d)| d).collect();

    let mut sum = 0.0;
    for step in 1..=m {
        let s = step as f64 / mf;
        let psi = if direct {
            powers
                .iter_mut()
                .zip(&ratios)
                .map(|(p, r)| {
                    *p *= r;
                    *p
                })
                .sum::<f64>()
        } else {
            log_space_transform(&pts, s)?
        };
        let at = -a * s;
        let weight = (at - at.exp()).exp();
        let gap = psi - gamma(1.0 + s);
        sum += gap * gap * weight;
    }
    let value = ts.len() as f64 * sum;
    if !value.is_finite() {
        return Err(Error::Numeric(format!("{spec} overflowed")));
    }
    Ok(StatisticValue { value, spec })
}

// Σ Δⱼ e^{s·Yⱼ} via log-sum-exp.
fn log_space_transform(pts: &[(f64, f64)], s: f64) -> Result<f64> {
    let logs: Vec<f64> = pts.iter().map(|(y, d)| d.ln() + s * y).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let total = top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln();
    let v = total.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!(
            "empirical Laplace transform overflows at t = {}",
            -s
        )))
    }
}

/// Integrand `n [ψₙ(t) − Γ(1 − t)]² e^{at − e^{at}}` of the integral form,
/// for `t ∈ (−1, 0]`.
pub fn krit_integrand(ts: &TransformedSample, km: &KaplanMeierFit, a: f64, t: f64) -> f64 {
    let psi: f64 = weighted_points(ts, km)
        .map(|(y, d)| d * (-t * y).exp())
        .sum();
    let gap = psi - gamma(1.0 - t);
    ts.len() as f64 * gap * gap * (a * t - (a * t).exp()).exp()
}
