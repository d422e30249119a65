//! Weighted L² statistics from the Stein characterisation of EV(0,1).
//!
//! With `bⱼ = 1 − e^{Yⱼ}` and jumps Δⱼ, the statistic is
//!
//! ```text
//! S = n ∫ |Σⱼ Δⱼ (it + bⱼ) e^{itYⱼ}|² w(t) dt.
//! ```
//!
//! Expanding the modulus turns the integral into a double sum over pairs with
//! `D = Yⱼ − Yₖ`; Gaussian and Laplace weights have closed-form transforms.

use std::f64::consts::PI;

use super::{weighted_points, StatisticSpec, StatisticValue};
use crate::error::{Error, Result};
use crate::estimation::{KaplanMeierFit, TransformedSample};
use crate::quadrature::Quadrature;

/// Weight function for the brute-force integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `e^{−at²}`
    Gaussian,
    /// `e^{−a|t|}`
    Laplace,
}

fn check_a(a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "tuning parameter a must be positive, got {a}"
        )))
    }
}

fn points(ts: &TransformedSample, km: &KaplanMeierFit) -> Vec<(f64, f64, f64)> {
    weighted_points(ts, km)
        .map(|(y, d)| (y, d, -y.exp_m1()))
        .collect()
}

/// Gaussian-weight statistic in closed form:
///
/// ```text
/// n√(π/a) ΣⱼΣₖ ΔⱼΔₖ e^{−D²/4a} { (2a − D²)/(4a²) + bⱼD/a + bⱼbₖ }
/// ```
pub fn stat_s1(ts: &TransformedSample, km: &KaplanMeierFit, a: f64) -> Result<StatisticValue> {
    check_a(a)?;
    let pts = points(ts, km);
    let inv4a = 0.25 / a;
    let inv4a2 = inv4a / a;
    let mut sum = 0.0;
    for (j, &(yj, dj, bj)) in pts.iter().enumerate() {
        // diagonal: D = 0
        sum += dj * dj * (2.0 * a * inv4a2 + bj * bj);
        for &(yk, dk, bk) in &pts[j + 1..] {
            let diff = yj - yk;
            let d2 = diff * diff;
            let e = (-d2 * inv4a).exp();
            // (j,k) and (k,j) together; the odd bD/a term leaves (bⱼ − bₖ)D/a
            sum += dj * dk * e * (2.0 * ((2.0 * a - d2) * inv4a2 + bj * bk) + (bj - bk) * diff / a);
        }
    }
    let value = ts.len() as f64 * (PI / a).sqrt() * sum;
    finite(value, StatisticSpec::s1(a)?)
}

/// Laplace-weight statistic in closed form, with `Q = D² + a²`:
///
/// ```text
/// n ΣⱼΣₖ ΔⱼΔₖ { −4a(3D² − a²)/Q³ + 8aD·bⱼ/Q² + 2a·bⱼbₖ/Q }
/// ```
pub fn stat_s2(ts: &TransformedSample, km: &KaplanMeierFit, a: f64) -> Result<StatisticValue> {
    check_a(a)?;
    let pts = points(ts, km);
    let a2 = a * a;
    let mut sum = 0.0;
    for (j, &(yj, dj, bj)) in pts.iter().enumerate() {
        sum += dj * dj * (4.0 * a * a2 / (a2 * a2 * a2) + 2.0 * a * bj * bj / a2);
        for &(yk, dk, bk) in &pts[j + 1..] {
            let diff = yj - yk;
            let d2 = diff * diff;
            let q = d2 + a2;
            let q2 = q * q;
            let even = -4.0 * a * (3.0 * d2 - a2) / (q2 * q) + 2.0 * a * bj * bk / q;
            let odd = 8.0 * a * diff * (bj - bk) / q2;
            sum += dj * dk * (2.0 * even + odd);
        }
    }
    let value = ts.len() as f64 * sum;
    finite(value, StatisticSpec::s2(a)?)
}

fn finite(value: f64, spec: StatisticSpec) -> Result<StatisticValue> {
    if value.is_finite() {
        Ok(StatisticValue { value, spec })
    } else {
        Err(Error::Numeric(format!("{spec} is not finite")))
    }
}

/// Reference value by direct numerical integration of
/// `n (R(t)² + I(t)²) w(t)` over a truncated real line, where
///
/// ```text
/// R(t) = Σ Δⱼ [−t sin(tYⱼ) + bⱼ cos(tYⱼ)]
/// I(t) = Σ Δⱼ [ t cos(tYⱼ) + bⱼ sin(tYⱼ)]
/// ```
///
/// The line is cut at `max(10, √(60/a))` (Gaussian) or `max(50, 60/a)`
/// (Laplace), where the weight times the quadratic envelope is negligible.
pub fn stat_oracle(
    ts: &TransformedSample,
    km: &KaplanMeierFit,
    weight: Weight,
    a: f64,
) -> Result<StatisticValue> {
    check_a(a)?;
    let pts = points(ts, km);
    let n = ts.len() as f64;
    let integrand = |t: f64| {
        let (mut re, mut im) = (0.0, 0.0);
        for &(y, d, b) in &pts {
            let (s, c) = (t * y).sin_cos();
            re += d * (-t * s + b * c);
            im += d * (t * c + b * s);
        }
        let w = match weight {
            Weight::Gaussian => (-a * t * t).exp(),
            Weight::Laplace => (-a * t.abs()).exp(),
        };
        n * (re * re + im * im) * w
    };
    let limit = match weight {
        Weight::Gaussian => (60.0 / a).sqrt().max(10.0),
        Weight::Laplace => (60.0 / a).max(50.0),
    };
    let quad = Quadrature::new().abs_tol(1e-10).max_panels(20_000);
    // split at 0: the Laplace weight has a kink there
    let left = quad.integrate(integrand, -limit, 0.0)?;
    let right = quad.integrate(integrand, 0.0, limit)?;
    let spec = match weight {
        Weight::Gaussian => StatisticSpec::s1(a)?,
        Weight::Laplace => StatisticSpec::s2(a)?,
    };
    Ok(StatisticValue {
        value: left.value + right.value,
        spec,
    })
}
