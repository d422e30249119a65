//! Kaplan–Meier estimate on the extreme-value scale.
//!
//! cargo run --example kaplan_meier

use weibull_gof::distributions::ev01_cdf;
use weibull_gof::estimation::{km_jumps, km_jumps_with, transform, weibull_mle, LastJump};
use weibull_gof::harness::data::Bundled;

fn main() -> weibull_gof::Result<()> {
    let data = Bundled::RemissionTimes.sample();
    let ts = transform(&data, &weibull_mle(&data)?)?;
    let km = km_jumps(&ts)?;
    println!(
        "{:>8} {:>5} {:>8} {:>8} {:>8}",
        "Y", "event", "jump", "G_n", "EV cdf"
    );
    for (j, ((&y, &d), &g)) in ts
        .y()
        .iter()
        .zip(ts.deltas())
        .zip(km.cumulative())
        .enumerate()
    {
        if j % 6 == 0 || j + 1 == ts.len() {
            println!(
                "{y:>8.3} {:>5} {:>8.5} {g:>8.4} {:>8.4}",
                u8::from(d),
                km.jumps()[j],
                ev01_cdf(y)
            );
        }
    }
    let defective = km_jumps_with(&ts, LastJump::EventsOnly)?;
    println!(
        "total mass: leftover {:.6}, events only {:.6}",
        km.total_mass(),
        defective.total_mass()
    );
    Ok(())
}
