//! Null critical values, with and without censoring.
//!
//! cargo run --release --example critical_values

use weibull_gof::resampling::{monte_carlo_critical_values, CensoringPlan};
use weibull_gof::statistics::StatisticSpec;

fn main() -> weibull_gof::Result<()> {
    let specs = [
        StatisticSpec::ks(),
        StatisticSpec::cm(),
        StatisticSpec::s1(5.0)?,
        StatisticSpec::s2(5.0)?,
    ];
    for plan in ["none", "exponential:0.2"] {
        let plan: CensoringPlan = plan.parse()?;
        for alpha in [0.10, 0.05] {
            let cv = monte_carlo_critical_values(50, &specs, plan, 2000, alpha, 7)?;
            let cells: Vec<String> = cv
                .iter()
                .map(|c| format!("{}={:.4}", c.spec, c.value))
                .collect();
            println!("n=50 {plan:<16} alpha={alpha:.2}  {}", cells.join(" "));
        }
    }
    Ok(())
}
