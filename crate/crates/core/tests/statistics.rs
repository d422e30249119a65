mod common;

use proptest::prelude::*;
use weibull_gof::distributions::{ev01_cdf, ev01_quantile, CensoredSample};
use weibull_gof::estimation::{KaplanMeierFit, TransformedSample};
use weibull_gof::quadrature::Quadrature;
use weibull_gof::resampling::statistics_of;
use weibull_gof::statistics::{
    krit_integrand, stat_cm, stat_kr, stat_ks, stat_oracle, stat_s1, stat_s2, StatisticKind,
    StatisticSpec, Weight,
};

#[test]
fn stein_closed_forms_match_quadrature() {
    let mut rng = common::rng(31);
    for i in 0..25 {
        let s = common::random_censored_sample(&mut rng, 3 + i % 8);
        let (ts, km) = common::fitted(&s);
        for a in [1.0, 5.0, 10.0] {
            let s1 = stat_s1(&ts, &km, a).unwrap().value;
            let o1 = stat_oracle(&ts, &km, Weight::Gaussian, a).unwrap().value;
            assert!(((s1 - o1) / o1).abs() < 1e-6, "S1 a={a}: {s1} vs {o1}");
            let s2 = stat_s2(&ts, &km, a).unwrap().value;
            let o2 = stat_oracle(&ts, &km, Weight::Laplace, a).unwrap().value;
            assert!(((s2 - o2) / o2).abs() < 1e-6, "S2 a={a}: {s2} vs {o2}");
        }
    }
}

#[test]
fn kr_over_m_converges_to_the_integral() {
    let mut rng = common::rng(32);
    let quad = Quadrature::new().abs_tol(1e-12).max_panels(20_000);
    for _ in 0..10 {
        let s = common::random_censored_sample(&mut rng, 40);
        let (ts, km) = common::fitted(&s);
        let integral = quad
            .integrate(|t| krit_integrand(&ts, &km, -5.0, t), -1.0, 0.0)
            .unwrap()
            .value;
        for m in [100, 1000, 10_000] {
            let kr = stat_kr(&ts, &km, -5.0, m).unwrap().value / m as f64;
            assert!(
                (kr - integral).abs() < 1e-3 * integral.max(1e-3),
                "m={m}: {kr} vs {integral}"
            );
        }
    }
}

// n ∫₀¹ (Gₙ(G⁻¹(u)) − u)² du by the midpoint rule.
fn cm_grid(ts: &TransformedSample, km: &KaplanMeierFit) -> f64 {
    let cells = 400_000;
    let h = 1.0 / cells as f64;
    let sum: f64 = (0..cells)
        .map(|i| {
            let u = (i as f64 + 0.5) * h;
            let gap = km.cdf(ev01_quantile(u)) - u;
            gap * gap
        })
        .sum();
    ts.len() as f64 * sum * h
}

// sup |Gₙ − G| over both one-sided limits at every jump and a dense grid.
fn ks_brute(km: &KaplanMeierFit) -> f64 {
    let mut best: f64 = 0.0;
    for &y in km.support() {
        let g = ev01_cdf(y);
        best = best
            .max((km.cdf(y) - g).abs())
            .max((km.left_limit(y) - g).abs());
    }
    for i in 0..20_000 {
        let y = -12.0 + 16.0 * i as f64 / 20_000.0;
        best = best.max((km.cdf(y) - ev01_cdf(y)).abs());
    }
    best
}

#[test]
fn edf_statistics_match_brute_force() {
    let mut rng = common::rng(33);
    for i in 0..20 {
        let s = common::random_censored_sample(&mut rng, 5 + 3 * i);
        let (ts, km) = common::fitted(&s);
        let ks = stat_ks(&ts, &km).unwrap().value;
        assert!((ks - ks_brute(&km)).abs() < 1e-12, "KS {ks}");
        let cm = stat_cm(&ts, &km).unwrap().value;
        let grid = cm_grid(&ts, &km);
        assert!((cm - grid).abs() < 1e-4 * cm.max(1e-2), "CM {cm} vs {grid}");
    }
}

fn sample_strategy() -> impl Strategy<Value = CensoredSample> {
    prop::collection::vec((0.01f64..50.0, prop::bool::weighted(0.8)), 6..30)
        .prop_filter("needs three distinct events", |rows| {
            let mut ev: Vec<f64> = rows.iter().filter(|r| r.1).map(|r| r.0).collect();
            ev.sort_by(f64::total_cmp);
            ev.dedup();
            ev.len() >= 3
        })
        .prop_map(|rows| {
            let (t, d) = rows.into_iter().unzip();
            CensoredSample::new(t, d).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn statistics_are_nonnegative(s in sample_strategy()) {
        let specs = StatisticSpec::standard_set();
        let values = statistics_of(&s, &specs).unwrap();
        for (spec, v) in specs.iter().zip(values) {
            prop_assert!(v.is_finite());
            prop_assert!(v >= -1e-12, "{} = {}", spec, v);
            if spec.kind() == StatisticKind::KS {
                prop_assert!(v <= 1.0);
            }
        }
    }

    #[test]
    fn statistics_ignore_scale_and_power(s in sample_strategy(), c in 0.05f64..20.0, k in 0.3f64..3.0) {
        let specs = StatisticSpec::standard_set();
        let base = statistics_of(&s, &specs).unwrap();
        let moved = CensoredSample::new(
            s.times().iter().map(|t| c * t.powf(k)).collect(),
            s.deltas().to_vec(),
        ).unwrap();
        let other = statistics_of(&moved, &specs).unwrap();
        for ((spec, a), b) in specs.iter().zip(base).zip(other) {
            prop_assert!((a - b).abs() < 1e-6 * (1.0 + a.abs()), "{}: {} vs {}", spec, a, b);
        }
    }
}
