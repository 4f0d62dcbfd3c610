use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::types::{LatentPath, ModelParams, SiaCalendar};
use super::{MIXING_ALPHA, SEASONAL_PERIOD};

/// Births entering the susceptible pool: 9-month-olds losing maternal
/// immunity who were not effectively vaccinated through routine delivery,
/// `L * (1 - R * efficacy)`.
pub fn adjusted_births<R: Scalar>(nine_month_olds: R, ri_coverage: R, efficacy: R) -> Result<R> {
    if !(nine_month_olds >= R::zero()) || !nine_month_olds.is_finite() {
        return Err(Error::Domain(format!(
            "9-month-old count {nine_month_olds} must be non-negative"
        )));
    }
    if !(ri_coverage >= R::zero() && ri_coverage <= R::one()) {
        return Err(Error::Domain(format!(
            "RI coverage {ri_coverage} must lie in [0,1]"
        )));
    }
    if !(efficacy >= R::zero() && efficacy <= R::one()) {
        return Err(Error::Domain(format!(
            "vaccine efficacy {efficacy} must lie in [0,1]"
        )));
    }
    Ok(nine_month_olds * (R::one() - ri_coverage * efficacy))
}

/// Seasonal log transmission rate at semi-month `t`:
/// `gamma1 + gamma2*t + gamma3*sin(2*pi*t/24) + gamma4*cos(2*pi*t/24)`.
///
/// `t` is the 1-based grid index; values <= 0 arise only when evaluating a
/// burn-in stretch before the observation window and extend the same
/// function.
pub fn beta_ar<R: Scalar>(t: i64, params: &ModelParams<R>) -> R {
    let tf = R::from_i64(t).unwrap();
    let angle = R::of(2.0 * std::f64::consts::PI / SEASONAL_PERIOD) * tf;
    params.gamma1 + params.gamma2 * tf + params.gamma3 * angle.sin() + params.gamma4 * angle.cos()
}

/// Conditional mean of new infections at semi-month `t` given the previous
/// semi-month: `exp(beta_ar(t)) * I^alpha * S / N + exp(beta_endemic) * N`.
///
/// `0^alpha` is 0, so extinct epidemics stay extinct in the autoregressive
/// term; the endemic term keeps the mean strictly positive.
pub fn conditional_mean<R: Scalar>(
    i_prev: R,
    s_prev: R,
    n_prev: R,
    t: i64,
    params: &ModelParams<R>,
) -> Result<R> {
    if !(n_prev > R::zero()) || !n_prev.is_finite() {
        return Err(Error::Domain(format!(
            "population {n_prev} must be positive"
        )));
    }
    if !(i_prev >= R::zero()) {
        return Err(Error::Domain(format!(
            "incidence {i_prev} must be non-negative"
        )));
    }
    let ar = beta_ar(t, params).exp() * i_prev.powf(R::of(MIXING_ALPHA)) * s_prev / n_prev;
    Ok(ar + params.beta_endemic.exp() * n_prev)
}

/// Susceptibles removed by a campaign phase covering fraction `delta` of
/// its target: `efficacy * S_at_campaign_start * delta`.
pub fn sia_removal<R: Scalar>(s_at_campaign_start: R, delta: R, efficacy: R) -> R {
    efficacy * s_at_campaign_start * delta
}

/// Roll the balancing equation forward from `S_1 = s1`:
/// `S_t = S_{t-1} + B_t - I_t - S*_t` for t >= 2, with campaign removals
/// taken from susceptibles frozen at each campaign's start.
///
/// `incidence` and `births` are full-length series aligned with the grid;
/// their first entries do not enter the recursion. Any negative susceptible
/// count is an error carrying the offending semi-month, never clamped.
pub fn reconstruct_susceptibles<R: Scalar>(
    incidence: &[u64],
    births: &[R],
    s1: R,
    calendar: &SiaCalendar<R>,
    efficacy: R,
) -> Result<LatentPath<R>> {
    let len = incidence.len();
    if births.len() != len {
        return Err(Error::Length(format!(
            "incidence has {len} semi-months, births {}",
            births.len()
        )));
    }
    if len == 0 {
        return Err(Error::Length("empty series".into()));
    }
    if !(s1 >= R::zero()) {
        return Err(Error::Domain(format!(
            "initial susceptibles {s1} must be non-negative"
        )));
    }
    if let Some(last) = calendar.last_phase_t() {
        if last > len {
            return Err(Error::Length(format!(
                "campaign phase at t={last} lies beyond the series (T={len})"
            )));
        }
    }

    let mut susceptibles = Vec::with_capacity(len);
    let mut removals = vec![R::zero(); len];
    susceptibles.push(s1);
    for t0 in 1..len {
        let t = t0 + 1;
        let removal = match calendar.phase_at(t) {
            Some(phase) => {
                let s_k = susceptibles[phase.campaign_start - 1];
                sia_removal(s_k, phase.delta, efficacy)
            }
            None => R::zero(),
        };
        removals[t0] = removal;
        let s = susceptibles[t0 - 1] + births[t0] - R::from_u64(incidence[t0]).unwrap() - removal;
        if !(s >= R::zero()) {
            return Err(Error::Realizability {
                t,
                reason: format!("susceptibles fall to {s}"),
            });
        }
        susceptibles.push(s);
    }
    Ok(LatentPath {
        incidence: incidence.to_vec(),
        susceptibles,
        sia_removals: removals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SiaCalendar;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(gamma: (f64, f64, f64, f64)) -> ModelParams<f64> {
        ModelParams {
            gamma1: gamma.0,
            gamma2: gamma.1,
            gamma3: gamma.2,
            gamma4: gamma.3,
            beta_endemic: -12.0,
            dispersion: 10.0,
            theta: 0.056,
            sia_efficacy: 0.4,
        }
    }

    #[test]
    fn adjusted_births_examples() {
        assert_relative_eq!(adjusted_births(1000.0, 0.0, 0.87).unwrap(), 1000.0);
        assert_relative_eq!(adjusted_births(1000.0, 1.0, 0.87).unwrap(), 130.0);
        // Independent recomputation: 500 * (1 - 0.7*0.87) = 500 - 500*0.609.
        let direct = 500.0 - 500.0 * (0.7 * 0.87);
        assert_relative_eq!(adjusted_births(500.0, 0.7, 0.87).unwrap(), 195.5);
        assert_relative_eq!(adjusted_births(500.0, 0.7, 0.87).unwrap(), direct);
    }

    #[test]
    fn adjusted_births_rejects_out_of_range() {
        assert!(adjusted_births(-1.0, 0.5, 0.87).is_err());
        assert!(adjusted_births(10.0, 1.5, 0.87).is_err());
        assert!(adjusted_births(10.0, 0.5, -0.1).is_err());
        assert!(adjusted_births(f64::NAN, 0.5, 0.87).is_err());
    }

    #[test]
    fn beta_ar_trig_examples() {
        // t=24: sin(2*pi)=0, cos(2*pi)=1.
        assert_relative_eq!(
            beta_ar(24, &params((3.0, 0.0, 0.2, 0.5))),
            3.5,
            epsilon = 1e-12
        );
        // t=6: sin(pi/2)=1, cos(pi/2)=0.
        assert_relative_eq!(
            beta_ar(6, &params((3.0, 0.0, 0.2, 0.5))),
            3.2,
            epsilon = 1e-12
        );
        // t=12: 1 + 0.12 + 0.3*sin(pi) - 0.2*cos(pi) = 1.32.
        assert_relative_eq!(
            beta_ar(12, &params((1.0, 0.01, 0.3, -0.2))),
            1.32,
            epsilon = 1e-12
        );
    }

    proptest! {
        #[test]
        fn beta_ar_periodic_without_trend(
            t in 1i64..2000,
            g1 in -5.0f64..5.0,
            g3 in -2.0f64..2.0,
            g4 in -2.0f64..2.0,
        ) {
            let p = params((g1, 0.0, g3, g4));
            let a = beta_ar(t, &p);
            let b = beta_ar(t + 24, &p);
            prop_assert!((a - b).abs() < 1e-9);
        }

        #[test]
        fn conditional_mean_monotone(
            i in 0u64..100_000,
            s in 0.0f64..1_000_000.0,
            di in 1u64..1_000,
            ds in 1.0f64..10_000.0,
        ) {
            let p = params((3.0, 0.0, 0.2, 0.5));
            let n = 2_000_000.0;
            let base = conditional_mean(i as f64, s, n, 10, &p).unwrap();
            let more_i = conditional_mean((i + di) as f64, s, n, 10, &p).unwrap();
            let more_s = conditional_mean(i as f64, s + ds, n, 10, &p).unwrap();
            prop_assert!(base > 0.0);
            prop_assert!(more_i >= base);
            prop_assert!(more_s >= base);
        }

        #[test]
        fn sia_removal_scales_linearly(
            s in 0.0f64..1e7,
            delta in 0.0f64..1.0,
            p in 0.0f64..1.0,
            c in 0.25f64..4.0,
        ) {
            prop_assert_eq!(sia_removal(s, 0.0, p), 0.0);
            let base = sia_removal(s, delta, p);
            prop_assert!((sia_removal(s * c, delta, p) - c * base).abs() <= 1e-9 * base.abs().max(1.0) * c);
        }
    }

    #[test]
    fn conditional_mean_examples() {
        let mut p = params((3.0, 0.0, 0.2, 0.5));

        // Extinct AR term: only the endemic part survives.
        let lam = conditional_mean(0.0, 1000.0, 10_000.0, 5, &p).unwrap();
        assert_relative_eq!(lam, (-12.0f64).exp() * 10_000.0, max_relative = 1e-12);

        // I=1, S=N, beta_ar = 0 at t=24 with gamma=(0,0,0,0).
        p.gamma1 = 0.0;
        p.gamma3 = 0.0;
        p.gamma4 = 0.0;
        let n = 5_000.0;
        let lam = conditional_mean(1.0, n, n, 24, &p).unwrap();
        assert_relative_eq!(lam, 1.0 + n * (-12.0f64).exp(), max_relative = 1e-12);

        // Direct high-precision evaluation of the full expression.
        let p2 = params((0.0, 0.0, 0.0, 0.0));
        let mut with_ar3 = p2;
        with_ar3.gamma1 = 3.0;
        let lam = conditional_mean(100.0, 5_000.0, 100_000.0, 24, &with_ar3).unwrap();
        let expect = 3.0f64.exp() * 100.0f64.powf(0.975) * (5_000.0 / 100_000.0)
            + (-12.0f64).exp() * 100_000.0;
        assert_relative_eq!(lam, expect, max_relative = 1e-12);
        assert_relative_eq!(lam, 89.6, max_relative = 0.01);
    }

    #[test]
    fn conditional_mean_rejects_bad_population() {
        let p = params((3.0, 0.0, 0.2, 0.5));
        assert!(conditional_mean(1.0, 10.0, 0.0, 1, &p).is_err());
        assert!(conditional_mean(1.0, 10.0, -5.0, 1, &p).is_err());
        assert!(conditional_mean(-1.0, 10.0, 5.0, 1, &p).is_err());
    }

    #[test]
    fn sia_removal_examples() {
        assert_relative_eq!(sia_removal(10_000.0, 0.0, 0.4), 0.0);
        assert_relative_eq!(sia_removal(10_000.0, 0.5, 0.4), 2000.0);
        assert_relative_eq!(
            sia_removal(8437.0, 1.0, 0.499),
            4210.063,
            max_relative = 1e-12
        );
    }

    #[test]
    fn reconstruct_stationary_pool() {
        let cal = SiaCalendar::empty();
        let path = reconstruct_susceptibles(&[0; 10], &[0.0; 10], 100.0, &cal, 0.4).unwrap();
        assert!(path.susceptibles.iter().all(|&s| s == 100.0));
        assert!(path.sia_removals.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn reconstruct_additive_bookkeeping() {
        // S1=100, then two steps of B=10, I=5 each: S = (100, 105, 110).
        let cal = SiaCalendar::empty();
        let path =
            reconstruct_susceptibles(&[0, 5, 5], &[0.0, 10.0, 10.0], 100.0, &cal, 0.4).unwrap();
        assert_eq!(path.susceptibles, vec![100.0, 105.0, 110.0]);
        path.check_balance(&[0.0, 10.0, 10.0]).unwrap();
    }

    #[test]
    fn reconstruct_flags_negative_susceptibles() {
        let cal = SiaCalendar::empty();
        let err = reconstruct_susceptibles(&[0, 50, 80], &[0.0, 10.0, 10.0], 100.0, &cal, 0.0)
            .unwrap_err();
        match err {
            Error::Realizability { t, .. } => assert_eq!(t, 3),
            other => panic!("expected realizability error, got {other}"),
        }
    }

    #[test]
    fn reconstruct_applies_campaign_removal() {
        // Single full-coverage phase at t=4 with k=3, efficacy 1: removes all
        // of S_3.
        let cal = SiaCalendar::single_campaign(&[(4, 1.0)]).unwrap();
        let births = [0.0, 10.0, 10.0, 10.0, 10.0];
        let path = reconstruct_susceptibles(&[0; 5], &births, 100.0, &cal, 1.0).unwrap();
        assert_eq!(path.susceptibles[2], 120.0);
        assert_eq!(path.sia_removals[3], 120.0);
        assert_eq!(path.susceptibles[3], 120.0 + 10.0 - 120.0);
        path.check_balance(&births).unwrap();
    }

    proptest! {
        /// Without campaigns the rolled-forward series matches the
        /// independent cumulative-sum form S_t = S_1 + sum(B) - sum(I).
        #[test]
        fn reconstruct_matches_cumulative_sums(
            flows in proptest::collection::vec((0u64..50, 0.0f64..100.0), 1..40),
            s1 in 1_000.0f64..10_000.0,
        ) {
            let incidence: Vec<u64> = flows.iter().map(|f| f.0).collect();
            let births: Vec<f64> = flows.iter().map(|f| f.1).collect();
            let cal = SiaCalendar::empty();
            let path = reconstruct_susceptibles(&incidence, &births, s1, &cal, 0.4).unwrap();

            let mut cum_b = 0.0;
            let mut cum_i = 0.0;
            for t0 in 1..incidence.len() {
                cum_b += births[t0];
                cum_i += incidence[t0] as f64;
                let direct = s1 + cum_b - cum_i;
                prop_assert!((path.susceptibles[t0] - direct).abs() <= 1e-9 * direct.abs().max(1.0));
            }
        }

        /// The balancing identity holds bitwise on every constructed path.
        #[test]
        fn reconstruct_balance_exact(
            flows in proptest::collection::vec((0u64..30, 0.0f64..200.0), 2..60),
            s1 in 5_000.0f64..50_000.0,
        ) {
            let incidence: Vec<u64> = flows.iter().map(|f| f.0).collect();
            let births: Vec<f64> = flows.iter().map(|f| f.1).collect();
            let cal = SiaCalendar::single_campaign(&[(2, 0.3)]).unwrap();
            let path = reconstruct_susceptibles(&incidence, &births, s1, &cal, 0.25).unwrap();
            prop_assert!(path.check_balance(&births).is_ok());
        }
    }
}
