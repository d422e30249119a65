//! Warp-speed power for one alternative under several censoring models.
//!
//! cargo run --release --example power_study

use weibull_gof::resampling::{warp_speed_power, CensoringTail, PowerStudyConfig};
use weibull_gof::statistics::StatisticSpec;

fn main() -> weibull_gof::Result<()> {
    for censoring in ["none", "exponential:0.1", "uniform:0.1", "koziol-green:0.1"] {
        let config = PowerStudyConfig {
            lifetime: "gamma:3".parse()?,
            censoring: censoring.parse()?,
            n: 100,
            reps: 1000,
            alpha: 0.10,
            seed: 2024,
            statistics: StatisticSpec::standard_set(),
            censoring_tail: CensoringTail::default(),
        };
        let result = warp_speed_power(&config)?;
        let cells: Vec<String> = result
            .entries
            .iter()
            .map(|e| format!("{}={:.2}", e.spec, e.power))
            .collect();
        println!("Gamma(3) {censoring:<16} {}", cells.join(" "));
    }
    Ok(())
}
