//! Domain types and the deterministic equations of the transmission model.
//!
//! The model runs on a semi-monthly grid: month `m` owns the two semi-months
//! `t = 2m-1` and `t = 2m` (all indices 1-based). True incidence is integer,
//! susceptible counts are real, and vaccination campaigns remove a fraction
//! of the susceptible pool frozen at the semi-month right before the
//! campaign began.

mod density;
mod equations;
mod types;

pub use density::{
    binomial_logpmf, negbin_logpmf, sample_binomial, sample_negbin, sample_negbin_capped,
};
pub use equations::{
    adjusted_births, beta_ar, conditional_mean, reconstruct_susceptibles, sia_removal,
};
pub use types::{
    DemographicSeries, LatentPath, ModelParams, ReportingRate, SiaCalendar, SiaPhase, TimeIndex,
};

/// Mixing exponent on previous incidence in the autoregressive term.
/// Fixed by the discrete-time approximation, never estimated.
pub const MIXING_ALPHA: f64 = 0.975;

/// Length of the yearly seasonal cycle in semi-months.
pub const SEASONAL_PERIOD: f64 = 24.0;

/// Default first-dose measles vaccine efficacy used for adjusted births.
pub const DEFAULT_MCV1_EFFICACY: f64 = 0.87;

/// Semi-months per year.
pub const SEMI_MONTHS_PER_YEAR: usize = 24;
