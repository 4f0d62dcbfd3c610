//! Discrete-time epidemic model of measles incidence with vaccination
//! campaigns, two-stage inference, and scenario forecasting.
//!
//! The crate builds up from a semi-monthly transmission model with a hidden
//! incidence/susceptible state:
//!
//! * [`model`] — domain types, the deterministic equations, and exact
//!   log-densities of the observation and transmission distributions;
//! * [`simulate`] — synthetic demography and forward simulation of the full
//!   stochastic process;
//! * [`stage1`] — reporting-rate estimation by regressing cumulative
//!   adjusted births on cumulative reported incidence (robust SEs);
//! * [`mcmc`] — Metropolis-Hastings over model parameters and the latent
//!   incidence path, with per-iteration reporting-rate plug-in;
//! * [`forecast`] — posterior-predictive projection under hypothetical
//!   campaign scenarios;
//! * [`io`] — CSV ingestion and output writers.
//!
//! Model math is generic over the scalar type (`f32`/`f64`); the pipeline
//! works with the `f64` aliases exported below.

pub mod error;
pub mod model;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Scalar type used by the estimation pipeline.
pub type Real = f64;

/// Demographic inputs at pipeline precision.
pub type Demography = model::DemographicSeries<Real>;
/// Campaign calendar at pipeline precision.
pub type Calendar = model::SiaCalendar<Real>;
/// Model parameters at pipeline precision.
pub type Params = model::ModelParams<Real>;
/// Latent incidence/susceptible path at pipeline precision.
pub type Latent = model::LatentPath<Real>;
/// Reporting-rate bundle at pipeline precision.
pub type Reporting = model::ReportingRate<Real>;
