//! Calibrating exponential, uniform and Koziol–Green censoring to a target
//! proportion, checked against simulation.
//!
//! cargo run --example censoring_models

use rand::SeedableRng;
use weibull_gof::distributions::{
    calibrate_censoring, censoring_probability, sample_censored, AlternativeSpec, CensoringModel,
};

fn main() -> weibull_gof::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for law in ["w:1.5", "ln:0.5", "beta:0.5,1", "lind:0.5"] {
        let law: AlternativeSpec = law.parse()?;
        for model in [
            CensoringModel::Exponential,
            CensoringModel::Uniform,
            CensoringModel::KoziolGreen,
        ] {
            let spec = calibrate_censoring(model, &law, 0.2)?;
            let exact = censoring_probability(&law, &spec)?;
            let observed = sample_censored(&law, &spec, 20_000, &mut rng)?.censored_fraction();
            println!(
                "{:<12} {:<28} P(C<X)={exact:.4} simulated {observed:.4}",
                law.to_string(),
                spec.to_string()
            );
        }
    }
    Ok(())
}
