//! Goodness-of-fit tests for the Weibull distribution with randomly
//! right-censored data.
//!
//! The pipeline is: fit the Weibull model by maximum likelihood
//! ([`estimation::weibull_mle`]), map the observations to the standard
//! extreme value scale ([`estimation::transform`]), estimate their
//! distribution by Kaplan–Meier ([`estimation::km_jumps`]), and measure the
//! departure from EV(0,1) with one of the statistics in [`statistics`].
//! Null distributions come from the parametric bootstrap in [`resampling`].

pub mod distributions;
pub mod error;
pub mod estimation;
pub mod harness;
pub mod quadrature;
pub mod resampling;
pub mod statistics;

pub use error::{Error, Result};
