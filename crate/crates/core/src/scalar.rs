//! Scalar abstraction for the model math.
//!
//! All deterministic model equations and log-densities are generic over a
//! floating-point scalar so they can run at `f32` or `f64`. The stochastic
//! machinery (simulator, samplers, IO) works with the concrete `f64`
//! aliases exported from the crate root.

use num_traits::{Float, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::AddAssign;

/// Floating-point scalar with the special functions the model needs.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + AddAssign + Sum + Display + Debug + Send + Sync + 'static
{
    /// Natural log of the gamma function.
    fn ln_gamma(self) -> Self;

    /// Shorthand for converting an `f64` constant into this scalar type.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable in scalar type")
    }
}

impl Scalar for f64 {
    fn ln_gamma(self) -> f64 {
        statrs::function::gamma::ln_gamma(self)
    }
}

impl Scalar for f32 {
    fn ln_gamma(self) -> f32 {
        statrs::function::gamma::ln_gamma(self as f64) as f32
    }
}
