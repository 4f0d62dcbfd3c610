use rand::{Rng, RngExt};
use rand_distr::{Binomial, Distribution, Gamma, Poisson};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Negative-binomial log-pmf in the mean/dispersion parameterization:
/// mean `lambda`, variance `lambda * (1 + lambda/dispersion)`. Equivalent
/// to a success count of `dispersion` and success probability
/// `dispersion / (dispersion + lambda)`.
pub fn negbin_logpmf<R: Scalar>(x: u64, lambda: R, dispersion: R) -> Result<R> {
    if !lambda.is_finite() || !(lambda > R::zero()) {
        return Err(Error::Domain(format!("mean {lambda} must be positive")));
    }
    if !dispersion.is_finite() || !(dispersion > R::zero()) {
        return Err(Error::Domain(format!(
            "dispersion {dispersion} must be positive"
        )));
    }
    let xf = R::from_u64(x).unwrap();
    let total = dispersion + lambda;
    Ok((xf + dispersion).ln_gamma() - dispersion.ln_gamma() - (xf + R::one()).ln_gamma()
        + dispersion * (dispersion / total).ln()
        + xf * (lambda / total).ln())
}

/// Binomial log-pmf via log-gamma, stable for trial counts up to 1e7 and
/// beyond. `rho` must lie in (0,1]; a reported count exceeding the trial
/// count is a domain error.
pub fn binomial_logpmf<R: Scalar>(c: u64, n: u64, rho: R) -> Result<R> {
    if c > n {
        return Err(Error::Domain(format!("count {c} exceeds trials {n}")));
    }
    if !rho.is_finite() || !(rho > R::zero() && rho <= R::one()) {
        return Err(Error::Domain(format!(
            "reporting probability {rho} must lie in (0,1]"
        )));
    }
    let nf = R::from_u64(n).unwrap();
    let cf = R::from_u64(c).unwrap();
    let choose =
        (nf + R::one()).ln_gamma() - (cf + R::one()).ln_gamma() - (nf - cf + R::one()).ln_gamma();
    let success = if c == 0 { R::zero() } else { cf * rho.ln() };
    let failure = if c == n {
        R::zero()
    } else {
        (nf - cf) * (R::one() - rho).ln()
    };
    Ok(choose + success + failure)
}

/// One negative-binomial draw (gamma-Poisson mixture) with mean `lambda`
/// and dispersion `dispersion`.
pub fn sample_negbin<G: Rng + ?Sized>(rng: &mut G, lambda: f64, dispersion: f64) -> u64 {
    let gamma = Gamma::new(dispersion, lambda / dispersion)
        .expect("positive lambda and dispersion checked upstream");
    let rate: f64 = gamma.sample(rng);
    if rate <= 0.0 {
        return 0;
    }
    Poisson::new(rate).expect("positive rate").sample(rng) as u64
}

/// A negative-binomial draw conditioned on `x <= cap`. Rejection sampling
/// first; if the cap cuts off most of the mass, falls back to inverse-CDF
/// within the retained support, walking down from the cap.
pub fn sample_negbin_capped<G: Rng + ?Sized>(
    rng: &mut G,
    lambda: f64,
    dispersion: f64,
    cap: u64,
) -> u64 {
    const REJECTION_TRIES: usize = 64;
    for _ in 0..REJECTION_TRIES {
        let x = sample_negbin(rng, lambda, dispersion);
        if x <= cap {
            return x;
        }
    }

    // Mass above the cap dominates: accumulate pmf downward from the cap
    // until the remaining tail is negligible, then invert.
    let logpmf_cap = negbin_logpmf::<f64>(cap, lambda, dispersion)
        .expect("parameters validated by rejection phase");
    let mut weights = vec![1.0f64]; // pmf(x)/pmf(cap) for x = cap, cap-1, ...
    let mut rel = 1.0f64;
    let mut total = 1.0f64;
    let mut x = cap;
    while x > 0 {
        // pmf(x-1)/pmf(x) = x/(x-1+phi) * (phi+lambda)/lambda
        rel *= (x as f64) / (x as f64 - 1.0 + dispersion) * (dispersion + lambda) / lambda;
        if !rel.is_finite() {
            break;
        }
        weights.push(rel);
        total += rel;
        x -= 1;
        if rel < total * 1e-16 && logpmf_cap + rel.ln() < -700.0 {
            break;
        }
        if rel < total * 1e-18 {
            break;
        }
    }
    let u: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (offset, w) in weights.iter().enumerate() {
        acc += w;
        if u <= acc {
            return cap - offset as u64;
        }
    }
    cap.saturating_sub(weights.len() as u64 - 1)
}

/// One binomial draw with `n` trials and success probability `rho`.
pub fn sample_binomial<G: Rng + ?Sized>(rng: &mut G, n: u64, rho: f64) -> u64 {
    if n == 0 {
        return 0;
    }
    Binomial::new(n, rho)
        .expect("probability validated upstream")
        .sample(rng)
}
