//! All ten test statistics on a dataset, plus the quadrature check of the
//! closed forms.
//!
//! cargo run --example test_statistics

use weibull_gof::estimation::{km_jumps, transform, weibull_mle};
use weibull_gof::harness::data::Bundled;
use weibull_gof::statistics::{evaluate, stat_oracle, StatisticKind, StatisticSpec, Weight};

fn main() -> weibull_gof::Result<()> {
    let data = Bundled::LeukemiaSurvival.sample();
    let ts = transform(&data, &weibull_mle(&data)?)?;
    let km = km_jumps(&ts)?;
    for spec in StatisticSpec::standard_set() {
        let value = evaluate(&spec, &ts, &km)?.value;
        let check = match spec.kind() {
            StatisticKind::S1 => Some(stat_oracle(&ts, &km, Weight::Gaussian, spec.a())?.value),
            StatisticKind::S2 => Some(stat_oracle(&ts, &km, Weight::Laplace, spec.a())?.value),
            _ => None,
        };
        match check {
            Some(q) => println!(
                "{:<8} {value:>12.6}   quadrature {q:>12.6}",
                spec.to_string()
            ),
            None => println!("{:<8} {value:>12.6}", spec.to_string()),
        }
    }
    Ok(())
}
