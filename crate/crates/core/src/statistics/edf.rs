//! Distance statistics between the Kaplan–Meier estimate and the fitted
//! EV(0,1) distribution function.

use super::{StatisticSpec, StatisticValue};
use crate::distributions::{ev01_cdf, ev01_survival};
use crate::error::{Error, Result};
use crate::estimation::{KaplanMeierFit, TransformedSample};

/// Kolmogorov–Smirnov:
/// `max_j max{Gₙ(Y₍ⱼ₎) − G(Y₍ⱼ₎), G(Y₍ⱼ₎) − Gₙ(Y₍ⱼ₎−)}`.
///
/// Index-wise partial sums are used for `Gₙ` and its left limit; within a
/// group of ties the maxima land on the group's last and first member
/// respectively, so this equals the tie-aware supremum.
pub fn stat_ks(ts: &TransformedSample, km: &KaplanMeierFit) -> Result<StatisticValue> {
    let mut below = 0.0;
    let mut best = f64::NEG_INFINITY;
    for (&y, &cum) in ts.y().iter().zip(km.cumulative()) {
        let z = ev01_cdf(y);
        best = best.max(cum - z).max(z - below);
        below = cum;
    }
    Ok(StatisticValue {
        value: best.max(0.0),
        spec: StatisticSpec::ks(),
    })
}

/// Cramér–von Mises for censored data: `n ∫₀¹ (Gₙ(G⁻¹(u)) − u)² du`,
/// integrated exactly over the pieces where the Kaplan–Meier step function
/// is constant.
pub fn stat_cm(ts: &TransformedSample, km: &KaplanMeierFit) -> Result<StatisticValue> {
    // ∫_{u0}^{u1} (c − u)² du = ((u1 − c)³ − (u0 − c)³) / 3
    let piece = |c: f64, u0: f64, u1: f64| ((u1 - c).powi(3) - (u0 - c).powi(3)) / 3.0;
    let mut level = 0.0;
    let mut left = 0.0;
    let mut sum = 0.0;
    for (&y, &cum) in ts.y().iter().zip(km.cumulative()) {
        let z = ev01_cdf(y);
        sum += piece(level, left, z);
        level = cum;
        left = z;
    }
    sum += piece(level, left, 1.0);
    Ok(StatisticValue {
        value: ts.len() as f64 * sum,
        spec: StatisticSpec::cm(),
    })
}

/// Liao–Shimokawa with Kaplan–Meier plotting positions:
///
/// ```text
/// (1/√n) Σⱼ max{Gₙ(Y₍ⱼ₎) − Ẑⱼ, Ẑⱼ − Gₙ(Y₍ⱼ₎−)} / √(Ẑⱼ(1 − Ẑⱼ)),   Ẑⱼ = G(Y₍ⱼ₎)
/// ```
///
/// For a complete sample the plotting positions are `j/n` and `(j−1)/n`.
pub fn stat_ls(ts: &TransformedSample, km: &KaplanMeierFit) -> Result<StatisticValue> {
    let mut below = 0.0;
    let mut sum = 0.0;
    for (&y, &cum) in ts.y().iter().zip(km.cumulative()) {
        let z = ev01_cdf(y);
        let s = ev01_survival(y);
        let var = z * s;
        if !(var > 0.0) {
            return Err(Error::Domain(format!(
                "fitted probability at Y = {y} is 0 or 1; LS is undefined"
            )));
        }
        sum += (cum - z).max(z - below) / var.sqrt();
        below = cum;
    }
    Ok(StatisticValue {
        value: sum / (ts.len() as f64).sqrt(),
        spec: StatisticSpec::ls(),
    })
}
