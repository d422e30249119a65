//! Parametric bootstrap p-values for a censored dataset.
//!
//! cargo run --release --example bootstrap_p_values

use weibull_gof::harness::data::Bundled;
use weibull_gof::resampling::p_values;
use weibull_gof::statistics::StatisticSpec;

fn main() -> weibull_gof::Result<()> {
    let data = Bundled::RemissionTimes.sample();
    let (pvals, draws) = p_values(&data, &StatisticSpec::standard_set(), 1999, 42)?;
    for p in &pvals {
        println!(
            "{:<8} W={:>10.5}  p={:.4} (se {:.4})",
            p.spec.to_string(),
            p.statistic,
            p.p_value,
            p.se
        );
    }
    println!("redraw rate {:.4}", draws.redraw_rate());
    if let Some(w) = draws.warning() {
        println!("warning: {w}");
    }
    Ok(())
}
