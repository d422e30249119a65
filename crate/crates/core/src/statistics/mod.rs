//! Goodness-of-fit statistics on the extreme-value scale.
//!
//! Every statistic is a function of the sorted transformed sample and its
//! Kaplan–Meier jumps, and every one rejects the Weibull hypothesis for large
//! values:
//!
//! * `S1`, `S2`: weighted L² statistics built on the Stein identity
//!   `E[(it + 1 − e^W) e^{itW}] = 0` of the standard extreme value law, with
//!   Gaussian (`e^{−at²}`) and Laplace (`e^{−a|t|}`) weights;
//! * `KS`, `CM`: Kolmogorov–Smirnov and Cramér–von Mises distances between
//!   the Kaplan–Meier estimate and the fitted EV(0,1) law;
//! * `LS`: the Liao–Shimokawa statistic with Kaplan–Meier plotting positions;
//! * `KR`: an empirical Laplace transform statistic, Riemann-summed on (−1, 0].

mod edf;
mod krit;
mod stein;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimation::{KaplanMeierFit, TransformedSample};

pub use edf::{stat_cm, stat_ks, stat_ls};
pub use krit::{krit_integrand, stat_kr};
pub use stein::{stat_oracle, stat_s1, stat_s2, Weight};

/// Default tuning for the Laplace-transform statistic.
pub const KR_DEFAULT_A: f64 = -5.0;
pub const KR_DEFAULT_M: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatisticKind {
    S1,
    S2,
    KS,
    CM,
    LS,
    KR,
}

/// Which statistic to compute, with its tuning parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatisticSpec {
    kind: StatisticKind,
    a: f64,
    m: usize,
}

impl StatisticSpec {
    pub fn new(kind: StatisticKind, a: f64, m: usize) -> Result<Self> {
        match kind {
            StatisticKind::S1 | StatisticKind::S2 if !(a.is_finite() && a > 0.0) => {
                Err(Error::Config(format!("{kind:?} needs a > 0, got {a}")))
            }
            StatisticKind::KR if m == 0 || !a.is_finite() => Err(Error::Config(format!(
                "KR needs m ≥ 1 and finite a, got m = {m}, a = {a}"
            ))),
            _ => Ok(Self { kind, a, m }),
        }
    }

    /// Gaussian-weight Stein statistic.
    pub fn s1(a: f64) -> Result<Self> {
        Self::new(StatisticKind::S1, a, 0)
    }

    /// Laplace-weight Stein statistic.
    pub fn s2(a: f64) -> Result<Self> {
        Self::new(StatisticKind::S2, a, 0)
    }

    pub fn ks() -> Self {
        Self {
            kind: StatisticKind::KS,
            a: 0.0,
            m: 0,
        }
    }

    pub fn cm() -> Self {
        Self {
            kind: StatisticKind::CM,
            a: 0.0,
            m: 0,
        }
    }

    pub fn ls() -> Self {
        Self {
            kind: StatisticKind::LS,
            a: 0.0,
            m: 0,
        }
    }

    pub fn kr(a: f64, m: usize) -> Result<Self> {
        Self::new(StatisticKind::KR, a, m)
    }

    /// KR with a = −5, m = 100.
    pub fn kr_default() -> Self {
        Self {
            kind: StatisticKind::KR,
            a: KR_DEFAULT_A,
            m: KR_DEFAULT_M,
        }
    }

    pub fn kind(&self) -> StatisticKind {
        self.kind
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The ten statistics reported in the power tables, in column order:
    /// KS, CM, LS, KR, S1 (a = 1, 5, 10), S2 (a = 1, 5, 10).
    pub fn standard_set() -> Vec<StatisticSpec> {
        let mut v = vec![Self::ks(), Self::cm(), Self::ls(), Self::kr_default()];
        for a in [1.0, 5.0, 10.0] {
            v.push(Self::s1(a).expect("positive a"));
        }
        for a in [1.0, 5.0, 10.0] {
            v.push(Self::s2(a).expect("positive a"));
        }
        v
    }
}

impl fmt::Display for StatisticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            StatisticKind::S1 => write!(f, "S1(a={})", self.a),
            StatisticKind::S2 => write!(f, "S2(a={})", self.a),
            StatisticKind::KS => f.write_str("KS"),
            StatisticKind::CM => f.write_str("CM"),
            StatisticKind::LS => f.write_str("LS"),
            StatisticKind::KR if self.a == KR_DEFAULT_A && self.m == KR_DEFAULT_M => {
                f.write_str("KR")
            }
            StatisticKind::KR => write!(f, "KR(a={},m={})", self.a, self.m),
        }
    }
}

/// Parses `KS`, `CM`, `LS`, `KR`, `KR:a:m`, `S1:a`, `S2:a` (case-insensitive).
impl FromStr for StatisticSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let num = |i: usize| -> Result<f64> {
            parts[i]
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number '{}' in statistic '{s}'", parts[i])))
        };
        match (parts[0].to_ascii_uppercase().as_str(), parts.len()) {
            ("KS", 1) => Ok(Self::ks()),
            ("CM", 1) => Ok(Self::cm()),
            ("LS", 1) => Ok(Self::ls()),
            ("KR", 1) => Ok(Self::kr_default()),
            ("KR", 3) => {
                let m = parts[2]
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad m '{}' in '{s}'", parts[2])))?;
                Self::kr(num(1)?, m)
            }
            ("S1", 2) => Self::s1(num(1)?),
            ("S2", 2) => Self::s2(num(1)?),
            _ => Err(Error::Config(format!(
                "unknown statistic '{s}' (expected KS, CM, LS, KR[:a:m], S1:a or S2:a)"
            ))),
        }
    }
}

/// A computed statistic together with what produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatisticValue {
    pub value: f64,
    pub spec: StatisticSpec,
}

/// Dispatches to the statistic named by `spec`.
pub fn evaluate(
    spec: &StatisticSpec,
    ts: &TransformedSample,
    km: &KaplanMeierFit,
) -> Result<StatisticValue> {
    match spec.kind {
        StatisticKind::S1 => stat_s1(ts, km, spec.a),
        StatisticKind::S2 => stat_s2(ts, km, spec.a),
        StatisticKind::KS => stat_ks(ts, km),
        StatisticKind::CM => stat_cm(ts, km),
        StatisticKind::LS => stat_ls(ts, km),
        StatisticKind::KR => stat_kr(ts, km, spec.a, spec.m),
    }
}

/// Evaluates several statistics on the same fitted sample.
pub fn evaluate_all(
    specs: &[StatisticSpec],
    ts: &TransformedSample,
    km: &KaplanMeierFit,
) -> Result<Vec<f64>> {
    specs
        .iter()
        .map(|s| evaluate(s, ts, km).map(|v| v.value))
        .collect()
}

// Nonzero jumps only; censored points carry no mass.
pub(crate) fn weighted_points<'a>(
    ts: &'a TransformedSample,
    km: &'a KaplanMeierFit,
) -> impl Iterator<Item = (f64, f64)> + 'a {
    ts.y()
        .iter()
        .zip(km.jumps())
        .filter(|(_, &d)| d != 0.0)
        .map(|(&y, &d)| (y, d))
}
