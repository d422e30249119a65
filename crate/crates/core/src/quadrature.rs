//! Globally adaptive Gauss–Kronrod (7/15 point) quadrature.
//!
//! Used for deterministic censoring calibration and as the brute-force
//! reference for the closed-form test statistics. The error estimate is the
//! raw |K15 − G7| difference, which is conservative for smooth integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integrator settings.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_panels: 4000,
        }
    }
}

impl Quadrature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }

    pub fn rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    pub fn max_panels(mut self, panels: usize) -> Self {
        self.max_panels = panels.max(1);
        self
    }

    /// Integrates `f` over the finite interval `[a, b]`.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<Integral>
    where
        F: FnMut(f64) -> f64,
    {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!(
                "finite integration limits required, got [{a}, {b}]"
            )));
        }
        if a == b {
            return Ok(Integral {
                value: 0.0,
                error: 0.0,
                evaluations: 0,
            });
        }
        let first = kronrod_panel(&mut f, a, b)?;
        let mut evaluations = 15;
        let mut value = first.value;
        let mut error = first.error;
        let mut heap = BinaryHeap::new();
        heap.push(first);

        while error > self.abs_tol.max(self.rel_tol * value.abs()) {
            if heap.len() >= self.max_panels {
                return Err(Error::Numeric(format!(
                    "quadrature did not reach tolerance {:e} on [{a}, {b}] after {} panels \
                     (estimate {value}, error {error:e})",
                    self.abs_tol,
                    heap.len()
                )));
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                return Err(Error::Numeric(format!(
                    "quadrature panel [{}, {}] cannot be subdivided further",
                    worst.a, worst.b
                )));
            }
            let left = kronrod_panel(&mut f, worst.a, mid)?;
            let right = kronrod_panel(&mut f, mid, worst.b)?;
            evaluations += 30;
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
        }

        // Re-sum to shed accumulated cancellation from the running updates.
        let value = heap.iter().map(|p| p.value).sum();
        let error = heap.iter().map(|p| p.error).sum();
        Ok(Integral {
            value,
            error,
            evaluations,
        })
    }

    /// Integrates `f` over `[a, ∞)` via the substitution `x = a + t / (1 − t)`.
    pub fn integrate_to_infinity<F>(&self, mut f: F, a: f64) -> Result<Integral>
    where
        F: FnMut(f64) -> f64,
    {
        self.integrate(
            |t| {
                let s = 1.0 - t;
                let x = a + t / s;
                let v = f(x) / (s * s);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            },
            0.0,
            1.0,
        )
    }
}

fn kronrod_panel<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> f64,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    if !value.is_finite() {
        return Err(Error::Numeric(format!(
            "integrand is not finite on [{a}, {b}]"
        )));
    }
    Ok(Panel { a, b, value, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact() {
        let q = Quadrature::new();
        let r = q
            .integrate(|x| x.powi(5) - 3.0 * x * x + 1.0, -1.0, 2.0)
            .unwrap();
        // ∫ = [x^6/6 - x^3 + x] from -1 to 2
        let exact = (64.0 / 6.0 - 8.0 + 2.0) - (1.0 / 6.0 + 1.0 - 1.0);
        assert!((r.value - exact).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_gaussian() {
        // ∫ cos(3t) e^{-t²} dt over R = √π e^{-9/4}
        let q = Quadrature::new().abs_tol(1e-13);
        let r = q
            .integrate(|t| (3.0 * t).cos() * (-t * t).exp(), -12.0, 12.0)
            .unwrap();
        let exact = PI.sqrt() * (-2.25f64).exp();
        assert!((r.value - exact).abs() < 1e-12, "{} vs {exact}", r.value);
    }

    #[test]
    fn semi_infinite_exponential() {
        let r = Quadrature::new()
            .integrate_to_infinity(|x| x * (-x).exp(), 0.0)
            .unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn endpoint_singularity_converges() {
        // ∫_0^1 x^{-1/2} dx = 2
        let r = Quadrature::new()
            .abs_tol(1e-9)
            .integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0)
            .unwrap();
        assert!((r.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn panel_budget_exhaustion_is_reported() {
        let err = Quadrature::new()
            .abs_tol(1e-14)
            .max_panels(3)
            .integrate(|x| (50.0 * x).sin().abs(), 0.0, 10.0)
            .unwrap_err();
        assert!(matches!(err, Error::Numeric(_)));
    }
}
