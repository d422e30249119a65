//! Lifetime and censoring distributions.
//!
//! Holds the Weibull null model, the alternative lifetime families used in the
//! power study, the three random-censoring mechanisms, and deterministic
//! calibration of censoring parameters to a target censoring proportion.
//!
//! Every sampler takes an explicit RNG; nothing here touches a global stream.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Beta, ChiSquared, Distribution, Exp, Gamma, LogNormal, Open01};
use statrs::distribution::{self as sd, ContinuousCDF};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quadrature::Quadrature;

/// Weibull law with distribution function `1 − exp(−(x/scale)^shape)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeibullParams {
    scale: f64,
    shape: f64,
}

impl WeibullParams {
    pub fn new(scale: f64, shape: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Weibull scale must be positive and finite, got {scale}"
            )));
        }
        if !(shape.is_finite() && shape > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Weibull shape must be positive and finite, got {shape}"
            )));
        }
        Ok(Self { scale, shape })
    }

    /// The scale parameter λ.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The shape parameter θ.
    pub fn shape(&self) -> f64 {
        self.shape
    }

    /// Inverse transform of a uniform variate: `λ(−ln u)^{1/θ}`.
    ///
    /// Decreasing in `u`.
    pub fn from_uniform(&self, u: f64) -> f64 {
        self.scale * (-u.ln()).powf(self.shape.recip())
    }
}

/// Draws `n` i.i.d. Weibull variates by inverse transform.
pub fn sample_weibull<R: Rng + ?Sized>(params: &WeibullParams, n: usize, rng: &mut R) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let u: f64 = Open01.sample(rng);
            params.from_uniform(u)
        })
        .collect()
}

/// Distribution function of the standard type I extreme value law, `1 − exp(−eˣ)`.
pub fn ev01_cdf(x: f64) -> f64 {
    -(-x.exp()).exp_m1()
}

/// Survival function of EV(0,1), `exp(−eˣ)`, accurate in the upper tail.
pub fn ev01_survival(x: f64) -> f64 {
    (-x.exp()).exp()
}

/// Quantile function of EV(0,1).
pub fn ev01_quantile(p: f64) -> f64 {
    (-(-p).ln_1p()).ln()
}

/// A continuous lifetime distribution on `(0, ∞)` that can be sampled and
/// inverted.
pub trait Lifetime {
    fn density(&self, x: f64) -> f64;

    fn survival(&self, x: f64) -> f64;

    fn cdf(&self, x: f64) -> f64 {
        1.0 - self.survival(x)
    }

    /// Right end of the support (`∞` unless bounded).
    fn upper_support(&self) -> f64 {
        f64::INFINITY
    }

    /// Solves `S(x) = q` for `q ∈ (0, 1)`.
    fn inverse_survival(&self, q: f64) -> f64 {
        solve_inverse_survival(self, q)
    }

    fn quantile(&self, p: f64) -> f64 {
        self.inverse_survival(1.0 - p)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64>;

    /// Short human-readable label, e.g. `LN(0.5)`.
    fn label(&self) -> String;
}

impl Lifetime for WeibullParams {
    fn density(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let z = x / self.scale;
        self.shape / self.scale * z.powf(self.shape - 1.0) * (-z.powf(self.shape)).exp()
    }

    fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        (-(x / self.scale).powf(self.shape)).exp()
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        -(-(x / self.scale).powf(self.shape)).exp_m1()
    }

    fn inverse_survival(&self, q: f64) -> f64 {
        self.from_uniform(q)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        sample_weibull(self, n, rng)
    }

    fn label(&self) -> String {
        if self.scale == 1.0 {
            format!("W({})", self.shape)
        } else {
            format!("W({},{})", self.scale, self.shape)
        }
    }
}

/// Alternative lifetime families, each with unit scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Weibull,
    Gamma,
    Lognormal,
    ChiSquare,
    Beta,
    Lindley,
}

impl Family {
    pub fn parameter_count(self) -> usize {
        match self {
            Family::Beta => 2,
            _ => 1,
        }
    }
}

/// A member of one of the alternative families.
///
/// Densities:
/// * `Weibull { shape: θ }`: θx^{θ−1}e^{−x^θ}
/// * `Gamma { shape: θ }`: x^{θ−1}e^{−x}/Γ(θ)
/// * `Lognormal { sigma: θ }`: exp(−log²x/(2θ²)) / (θx√(2π))
/// * `ChiSquare { dof: θ }`: x^{θ/2−1}e^{−x/2} / (2^{θ/2}Γ(θ/2))
/// * `Beta { alpha: α, beta: θ }`: x^{α−1}(1−x)^{θ−1}Γ(α+θ)/(Γ(α)Γ(θ)) on (0, 1)
/// * `Lindley { theta: θ }`: θ²(1+x)e^{−θx}/(θ+1)
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlternativeSpec {
    Weibull { shape: f64 },
    Gamma { shape: f64 },
    Lognormal { sigma: f64 },
    ChiSquare { dof: f64 },
    Beta { alpha: f64, beta: f64 },
    Lindley { theta: f64 },
}

impl AlternativeSpec {
    /// Builds a family member from its parameter list, validating count and sign.
    pub fn new(family: Family, params: &[f64]) -> Result<Self> {
        if params.len() != family.parameter_count() {
            return Err(Error::Config(format!(
                "{family:?} takes {} parameter(s), got {}",
                family.parameter_count(),
                params.len()
            )));
        }
        if let Some(bad) = params.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(Error::Config(format!(
                "{family:?} parameters must be positive and finite, got {bad}"
            )));
        }
        Ok(match family {
            Family::Weibull => AlternativeSpec::Weibull { shape: params[0] },
            Family::Gamma => AlternativeSpec::Gamma { shape: params[0] },
            Family::Lognormal => AlternativeSpec::Lognormal { sigma: params[0] },
            Family::ChiSquare => AlternativeSpec::ChiSquare { dof: params[0] },
            Family::Beta => AlternativeSpec::Beta {
                alpha: params[0],
                beta: params[1],
            },
            Family::Lindley => AlternativeSpec::Lindley { theta: params[0] },
        })
    }

    pub fn family(&self) -> Family {
        match self {
            AlternativeSpec::Weibull { .. } => Family::Weibull,
            AlternativeSpec::Gamma { .. } => Family::Gamma,
            AlternativeSpec::Lognormal { .. } => Family::Lognormal,
            AlternativeSpec::ChiSquare { .. } => Family::ChiSquare,
            AlternativeSpec::Beta { .. } => Family::Beta,
            AlternativeSpec::Lindley { .. } => Family::Lindley,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            AlternativeSpec::Weibull { shape } => vec![shape],
            AlternativeSpec::Gamma { shape } => vec![shape],
            AlternativeSpec::Lognormal { sigma } => vec![sigma],
            AlternativeSpec::ChiSquare { dof } => vec![dof],
            AlternativeSpec::Beta { alpha, beta } => vec![alpha, beta],
            AlternativeSpec::Lindley { theta } => vec![theta],
        }
    }

    /// Whether the law belongs to the Weibull null family.
    pub fn is_weibull(&self) -> bool {
        matches!(self, AlternativeSpec::Weibull { .. })
    }

    /// The thirteen lifetime laws of the power study, in table order.
    pub fn standard_set() -> Vec<AlternativeSpec> {
        use AlternativeSpec::*;
        vec![
            Weibull { shape: 0.5 },
            Weibull { shape: 1.5 },
            Weibull { shape: 2.0 },
            Gamma { shape: 2.0 },
            Gamma { shape: 3.0 },
            Lognormal { sigma: 0.5 },
            Lognormal { sigma: 1.0 },
            ChiSquare { dof: 8.0 },
            ChiSquare { dof: 10.0 },
            Beta {
                alpha: 1.0,
                beta: 1.0,
            },
            Beta {
                alpha: 0.5,
                beta: 1.0,
            },
            Lindley { theta: 0.5 },
            Lindley { theta: 2.0 },
        ]
    }

    /// The Weibull members of [`standard_set`](Self::standard_set).
    pub fn null_set() -> Vec<AlternativeSpec> {
        Self::standard_set()
            .into_iter()
            .filter(AlternativeSpec::is_weibull)
            .collect()
    }
}

impl fmt::Display for AlternativeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlternativeSpec::Weibull { shape } => write!(f, "W({shape})"),
            AlternativeSpec::Gamma { shape } => write!(f, "Gamma({shape})"),
            AlternativeSpec::Lognormal { sigma } => write!(f, "LN({sigma})"),
            AlternativeSpec::ChiSquare { dof } => write!(f, "Chi2({dof})"),
            AlternativeSpec::Beta { alpha, beta } => write!(f, "Beta({alpha},{beta})"),
            AlternativeSpec::Lindley { theta } => write!(f, "Lind({theta})"),
        }
    }
}

/// Parses `family:p1[,p2]`, e.g. `LN:0.5`, `beta:0.5,1`, `W:2`, `lind:0.5`.
impl FromStr for AlternativeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("expected family:params, got '{s}'")))?;
        let family = match name.trim().to_ascii_lowercase().as_str() {
            "w" | "weibull" => Family::Weibull,
            "gamma" | "g" => Family::Gamma,
            "ln" | "lognormal" => Family::Lognormal,
            "chi2" | "chisq" | "chisquare" => Family::ChiSquare,
            "beta" | "b" => Family::Beta,
            "lind" | "lindley" => Family::Lindley,
            other => {
                return Err(Error::Config(format!(
                    "unsupported lifetime family '{other}'"
                )))
            }
        };
        let params = rest
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad parameter '{p}' in '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        AlternativeSpec::new(family, &params)
    }
}

impl Lifetime for AlternativeSpec {
    fn density(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            AlternativeSpec::Weibull { shape } => {
                shape * x.powf(shape - 1.0) * (-x.powf(shape)).exp()
            }
            AlternativeSpec::Gamma { shape } => {
                ((shape - 1.0) * x.ln() - x - ln_gamma(shape)).exp()
            }
            AlternativeSpec::Lognormal { sigma } => {
                let l = x.ln();
                (-l * l / (2.0 * sigma * sigma)).exp()
                    / (sigma * x * (2.0 * std::f64::consts::PI).sqrt())
            }
            AlternativeSpec::ChiSquare { dof } => {
                let k = 0.5 * dof;
                ((k - 1.0) * x.ln() - 0.5 * x - k * std::f64::consts::LN_2 - ln_gamma(k)).exp()
            }
            AlternativeSpec::Beta { alpha, beta } => {
                if x >= 1.0 {
                    return 0.0;
                }
                ((alpha - 1.0) * x.ln() + (beta - 1.0) * (-x).ln_1p() + ln_gamma(alpha + beta)
                    - ln_gamma(alpha)
                    - ln_gamma(beta))
                .exp()
            }
            AlternativeSpec::Lindley { theta } => {
                theta * theta / (theta + 1.0) * (1.0 + x) * (-theta * x).exp()
            }
        }
    }

    fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        match *self {
            AlternativeSpec::Weibull { shape } => (-x.powf(shape)).exp(),
            AlternativeSpec::Gamma { shape } => sd::Gamma::new(shape, 1.0)
                .expect("validated gamma shape")
                .sf(x),
            AlternativeSpec::Lognormal { sigma } => sd::LogNormal::new(0.0, sigma)
                .expect("validated lognormal sigma")
                .sf(x),
            AlternativeSpec::ChiSquare { dof } => sd::ChiSquared::new(dof)
                .expect("validated degrees of freedom")
                .sf(x),
            AlternativeSpec::Beta { alpha, beta } => {
                if x >= 1.0 {
                    return 0.0;
                }
                sd::Beta::new(alpha, beta)
                    .expect("validated beta shapes")
                    .sf(x)
            }
            AlternativeSpec::Lindley { theta } => {
                (1.0 + theta * x / (theta + 1.0)) * (-theta * x).exp()
            }
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            AlternativeSpec::Weibull { shape } => -(-x.powf(shape)).exp_m1(),
            AlternativeSpec::Gamma { shape } => sd::Gamma::new(shape, 1.0)
                .expect("validated gamma shape")
                .cdf(x),
            AlternativeSpec::Lognormal { sigma } => sd::LogNormal::new(0.0, sigma)
                .expect("validated lognormal sigma")
                .cdf(x),
            AlternativeSpec::ChiSquare { dof } => sd::ChiSquared::new(dof)
                .expect("validated degrees of freedom")
                .cdf(x),
            AlternativeSpec::Beta { alpha, beta } => {
                if x >= 1.0 {
                    return 1.0;
                }
                sd::Beta::new(alpha, beta)
                    .expect("validated beta shapes")
                    .cdf(x)
            }
            AlternativeSpec::Lindley { .. } => 1.0 - self.survival(x),
        }
    }

    fn upper_support(&self) -> f64 {
        match self {
            AlternativeSpec::Beta { .. } => 1.0,
            _ => f64::INFINITY,
        }
    }

    fn inverse_survival(&self, q: f64) -> f64 {
        match *self {
            AlternativeSpec::Weibull { shape } => (-q.ln()).powf(shape.recip()),
            AlternativeSpec::Lognormal { sigma } => {
                let z = sd::Normal::standard().inverse_cdf(q);
                (-sigma * z).exp()
            }
            // F(x) = x^α
            AlternativeSpec::Beta { alpha, beta: 1.0 } => ((-q).ln_1p() / alpha).exp(),
            // S(x) = (1 − x)^θ
            AlternativeSpec::Beta { alpha: 1.0, beta } => -(q.ln() / beta).exp_m1(),
            _ => solve_inverse_survival(self, q),
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        match *self {
            AlternativeSpec::Weibull { shape } => {
                let w = WeibullParams { scale: 1.0, shape };
                sample_weibull(&w, n, rng)
            }
            AlternativeSpec::Gamma { shape } => {
                let d = Gamma::new(shape, 1.0).expect("validated gamma shape");
                d.sample_iter(rng).take(n).collect()
            }
            AlternativeSpec::Lognormal { sigma } => {
                let d = LogNormal::new(0.0, sigma).expect("validated lognormal sigma");
                d.sample_iter(rng).take(n).collect()
            }
            AlternativeSpec::ChiSquare { dof } => {
                let d = ChiSquared::new(dof).expect("validated degrees of freedom");
                d.sample_iter(rng).take(n).collect()
            }
            AlternativeSpec::Beta { alpha, beta } => {
                let d = Beta::new(alpha, beta).expect("validated beta shapes");
                d.sample_iter(rng).take(n).collect()
            }
            AlternativeSpec::Lindley { theta } => {
                // Mixture: Exp(θ) w.p. θ/(θ+1), otherwise Gamma(2, rate θ).
                let exp = Exp::new(theta).expect("validated Lindley theta");
                let gamma = Gamma::new(2.0, theta.recip()).expect("validated Lindley theta");
                let p_exp = theta / (theta + 1.0);
                (0..n)
                    .map(|_| {
                        if rng.random::<f64>() < p_exp {
                            exp.sample(rng)
                        } else {
                            gamma.sample(rng)
                        }
                    })
                    .collect()
            }
        }
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

/// Draws `n` i.i.d. lifetimes from an alternative family.
pub fn sample_alternative<R: Rng + ?Sized>(
    spec: &AlternativeSpec,
    n: usize,
    rng: &mut R,
) -> Vec<f64> {
    spec.sample(rng, n)
}

// Newton on log-survival, safeguarded by a bracket.
fn solve_inverse_survival<L: Lifetime + ?Sized>(law: &L, q: f64) -> f64 {
    if q >= 1.0 {
        return 0.0;
    }
    if q <= 0.0 {
        return law.upper_support();
    }
    let target = q.ln();
    let upper = law.upper_support();
    let mut lo = 0.0;
    let mut hi = if upper.is_finite() { upper } else { 1.0 };
    if !upper.is_finite() {
        while law.survival(hi) > q {
            lo = hi;
            hi *= 2.0;
            if hi > 1e300 {
                return f64::INFINITY;
            }
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let s = law.survival(x);
        let h = s.ln() - target;
        if h > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if h == 0.0 || (hi - lo) <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
        let hazard = law.density(x) / s;
        let mut next = x + h / hazard;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * x.abs() {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// Censoring mechanism with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CensoringSpec {
    /// Every lifetime is observed.
    None,
    /// `C ~ Exp(rate)`.
    Exponential { rate: f64 },
    /// `C ~ Uniform(0, upper)`.
    Uniform { upper: f64 },
    /// Koziol–Green: the survival function of `C` is `S_X^β`.
    KoziolGreen { beta: f64 },
}

/// The censoring mechanism without its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CensoringModel {
    None,
    Exponential,
    Uniform,
    KoziolGreen,
}

impl CensoringModel {
    pub fn name(self) -> &'static str {
        match self {
            CensoringModel::None => "none",
            CensoringModel::Exponential => "exponential",
            CensoringModel::Uniform => "uniform",
            CensoringModel::KoziolGreen => "koziol-green",
        }
    }
}

impl FromStr for CensoringModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(CensoringModel::None),
            "exponential" | "exp" => Ok(CensoringModel::Exponential),
            "uniform" | "unif" => Ok(CensoringModel::Uniform),
            "koziol-green" | "kg" | "koziolgreen" => Ok(CensoringModel::KoziolGreen),
            other => Err(Error::Config(format!("unknown censoring model '{other}'"))),
        }
    }
}

impl CensoringSpec {
    pub fn new(model: CensoringModel, param: f64) -> Result<Self> {
        if model != CensoringModel::None && !(param.is_finite() && param > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{} censoring parameter must be positive, got {param}",
                model.name()
            )));
        }
        Ok(match model {
            CensoringModel::None => CensoringSpec::None,
            CensoringModel::Exponential => CensoringSpec::Exponential { rate: param },
            CensoringModel::Uniform => CensoringSpec::Uniform { upper: param },
            CensoringModel::KoziolGreen => CensoringSpec::KoziolGreen { beta: param },
        })
    }

    pub fn model(&self) -> CensoringModel {
        match self {
            CensoringSpec::None => CensoringModel::None,
            CensoringSpec::Exponential { .. } => CensoringModel::Exponential,
            CensoringSpec::Uniform { .. } => CensoringModel::Uniform,
            CensoringSpec::KoziolGreen { .. } => CensoringModel::KoziolGreen,
        }
    }

    pub fn param(&self) -> Option<f64> {
        match *self {
            CensoringSpec::None => None,
            CensoringSpec::Exponential { rate } => Some(rate),
            CensoringSpec::Uniform { upper } => Some(upper),
            CensoringSpec::KoziolGreen { beta } => Some(beta),
        }
    }
}

impl fmt::Display for CensoringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            None => f.write_str("none"),
            Some(p) => write!(f, "{}({p:.6})", self.model().name()),
        }
    }
}

/// Probability that an observation is censored, `P(C < X)`, computed by
/// quadrature of the lifetime survival function against the censoring law.
pub fn censoring_probability<L: Lifetime + ?Sized>(
    lifetime: &L,
    spec: &CensoringSpec,
) -> Result<f64> {
    let quad = Quadrature::new().abs_tol(1e-11).max_panels(20_000);
    let upper = lifetime.upper_support();
    match *spec {
        CensoringSpec::None => Ok(0.0),
        CensoringSpec::KoziolGreen { beta } => Ok(beta / (1.0 + beta)),
        // ∫ μe^{−μc} S(c) dc = ∫ e^{−s} S(s/μ) ds
        CensoringSpec::Exponential { rate } => {
            let integrand = |s: f64| (-s).exp() * lifetime.survival(s / rate);
            if upper.is_finite() {
                quad.integrate(integrand, 0.0, upper * rate)
                    .map(|r| r.value)
            } else {
                quad.integrate_to_infinity(integrand, 0.0).map(|r| r.value)
            }
        }
        // (1/b) ∫_0^b S(c) dc
        CensoringSpec::Uniform { upper: b } => {
            let end = b.min(upper);
            quad.integrate(|c| lifetime.survival(c), 0.0, end)
                .map(|r| r.value / b)
        }
    }
}

/// Chooses the censoring parameter so that `P(C < X)` equals `target`.
///
/// Koziol–Green is solved in closed form (`β = p/(1−p)`); exponential rate and
/// uniform endpoint are found by bisection on the quadrature-computed
/// censoring probability, which is monotone in either parameter.
pub fn calibrate_censoring<L: Lifetime + ?Sized>(
    model: CensoringModel,
    lifetime: &L,
    target: f64,
) -> Result<CensoringSpec> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "target censoring proportion must lie in (0, 1), got {target}"
        )));
    }
    match model {
        CensoringModel::None => Err(Error::Calibration(format!(
            "model 'none' cannot produce censoring proportion {target}"
        ))),
        CensoringModel::KoziolGreen => Ok(CensoringSpec::KoziolGreen {
            beta: target / (1.0 - target),
        }),
        CensoringModel::Exponential => {
            // increasing in the rate
            let p = |log_rate: f64| {
                censoring_probability(
                    lifetime,
                    &CensoringSpec::Exponential {
                        rate: log_rate.exp(),
                    },
                )
            };
            let log_rate = bisect_monotone(p, target, true)?;
            Ok(CensoringSpec::Exponential {
                rate: log_rate.exp(),
            })
        }
        CensoringModel::Uniform => {
            // decreasing in the endpoint
            let p = |log_upper: f64| {
                censoring_probability(
                    lifetime,
                    &CensoringSpec::Uniform {
                        upper: log_upper.exp(),
                    },
                )
            };
            let log_upper = bisect_monotone(p, target, false)?;
            Ok(CensoringSpec::Uniform {
                upper: log_upper.exp(),
            })
        }
    }
}

// Bisection in log-parameter space for a monotone map onto (0, 1).
fn bisect_monotone<F>(mut prob: F, target: f64, increasing: bool) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let below = |p: f64| if increasing { p < target } else { p > target };
    let (mut lo, mut hi) = (-1.0, 1.0);
    let mut expansions = 0;
    while !below(prob(lo)?) {
        lo -= 2.0;
        expansions += 1;
        if expansions > 40 {
            return Err(Error::Calibration(format!(
                "could not bracket censoring proportion {target}"
            )));
        }
    }
    expansions = 0;
    while below(prob(hi)?) {
        hi += 2.0;
        expansions += 1;
        if expansions > 40 {
            return Err(Error::Calibration(format!(
                "could not bracket censoring proportion {target}"
            )));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let p = prob(mid)?;
        if (p - target).abs() < 1e-12 || hi - lo < 1e-13 {
            return Ok(mid);
        }
        if below(p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Right-censored observations `(tⱼ, δⱼ)`; `δⱼ = true` marks an observed event.
#[derive(Debug, Clone, PartialEq)]
pub struct CensoredSample {
    times: Vec<f64>,
    deltas: Vec<bool>,
}

impl CensoredSample {
    pub fn new(times: Vec<f64>, deltas: Vec<bool>) -> Result<Self> {
        if times.len() != deltas.len() {
            return Err(Error::InvalidParameter(format!(
                "{} times but {} indicators",
                times.len(),
                deltas.len()
            )));
        }
        if let Some((i, t)) = times
            .iter()
            .enumerate()
            .find(|(_, t)| !(t.is_finite() && **t > 0.0))
        {
            return Err(Error::Domain(format!(
                "observation {} has non-positive or non-finite time {t}",
                i + 1
            )));
        }
        Ok(Self { times, deltas })
    }

    /// A complete sample: every lifetime observed.
    pub fn uncensored(times: Vec<f64>) -> Result<Self> {
        let deltas = vec![true; times.len()];
        Self::new(times, deltas)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn deltas(&self) -> &[bool] {
        &self.deltas
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Number of observed events `d = Σδⱼ`.
    pub fn events(&self) -> usize {
        self.deltas.iter().filter(|&&d| d).count()
    }

    pub fn censored_fraction(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        1.0 - self.events() as f64 / self.len() as f64
    }

    /// The same sample with every time multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.times.iter().map(|t| t * factor).collect(),
            self.deltas.clone(),
        )
    }
}

/// Observes `Tⱼ = min(Xⱼ, Cⱼ)`, `δⱼ = 1{Xⱼ ≤ Cⱼ}`.
pub fn censor(lifetimes: &[f64], censoring_times: &[f64]) -> Result<CensoredSample> {
    let (times, deltas) = lifetimes
        .iter()
        .zip(censoring_times)
        .map(|(&x, &c)| if x <= c { (x, true) } else { (c, false) })
        .unzip();
    CensoredSample::new(times, deltas)
}

/// Draws a censored sample: lifetimes first, then censoring times, so that
/// `CensoringSpec::None` consumes exactly the lifetime draws.
pub fn sample_censored<L, R>(
    lifetime: &L,
    censoring: &CensoringSpec,
    n: usize,
    rng: &mut R,
) -> Result<CensoredSample>
where
    L: Lifetime + ?Sized,
    R: Rng + ?Sized,
{
    let lifetimes = lifetime.sample(rng, n);
    let censoring_times: Vec<f64> = match *censoring {
        CensoringSpec::None => return CensoredSample::uncensored(lifetimes),
        CensoringSpec::Exponential { rate } => {
            let d = Exp::new(rate).map_err(|e| Error::InvalidParameter(e.to_string()))?;
            d.sample_iter(&mut *rng).take(n).collect()
        }
        CensoringSpec::Uniform { upper } => (0..n)
            .map(|_| {
                let u: f64 = Open01.sample(rng);
                upper * u
            })
            .collect(),
        CensoringSpec::KoziolGreen { beta } => (0..n)
            .map(|_| {
                let u: f64 = Open01.sample(rng);
                // S_C(c) = S_X(c)^β  ⇒  C = S_X⁻¹(V^{1/β}), V uniform
                lifetime.inverse_survival(u.powf(beta.recip()))
            })
            .collect(),
    };
    // Censoring times of zero cannot be observed; push them to the smallest
    // positive value.
    let censoring_times: Vec<f64> = censoring_times
        .into_iter()
        .map(|c| c.max(f64::MIN_POSITIVE))
        .collect();
    censor(&lifetimes, &censoring_times)
}
