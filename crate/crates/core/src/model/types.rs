use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point on the semi-monthly grid together with the month that owns it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimeIndex {
    /// 1-based semi-month index.
    pub t: usize,
    /// 1-based month index; month `m` owns `t = 2m-1` and `t = 2m`.
    pub m: usize,
}

impl TimeIndex {
    pub fn from_semi_month(t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::Domain("semi-month index is 1-based".into()));
        }
        Ok(TimeIndex { t, m: t.div_ceil(2) })
    }

    /// The two semi-months owned by month `m`.
    pub fn semi_months_of(m: usize) -> (usize, usize) {
        (2 * m - 1, 2 * m)
    }

    pub fn month_of(t: usize) -> usize {
        t.div_ceil(2)
    }

    pub fn is_first_half(&self) -> bool {
        self.t % 2 == 1
    }
}

/// Known per-semi-month inputs: total population, 9-month-old children,
/// routine MCV1 coverage among them, and the derived adjusted births.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DemographicSeries<R> {
    n: Vec<R>,
    l: Vec<R>,
    r: Vec<R>,
    b: Vec<R>,
}

impl<R: Scalar> DemographicSeries<R> {
    /// Build a series from raw inputs, deriving `B` via the adjusted-births
    /// equation with the given vaccine efficacy.
    pub fn new(n: Vec<R>, l: Vec<R>, r: Vec<R>, efficacy: R) -> Result<Self> {
        let b = l
            .iter()
            .zip(&r)
            .map(|(&lt, &rt)| super::adjusted_births(lt, rt, efficacy))
            .collect::<Result<Vec<R>>>()?;
        Self::from_parts(n, l, r, b)
    }

    /// Build a series with adjusted births already computed. The 9-month-old
    /// and coverage columns are filled degenerately (`L = B`, `R = 0`) so the
    /// invariants still hold.
    pub fn with_adjusted_births(n: Vec<R>, b: Vec<R>) -> Result<Self> {
        let l = b.clone();
        let r = vec![R::zero(); b.len()];
        Self::from_parts(n, l, r, b)
    }

    pub fn from_parts(n: Vec<R>, l: Vec<R>, r: Vec<R>, b: Vec<R>) -> Result<Self> {
        let len = n.len();
        if l.len() != len || r.len() != len || b.len() != len {
            return Err(Error::Length(format!(
                "demographic vectors disagree: N={}, L={}, R={}, B={}",
                n.len(),
                l.len(),
                r.len(),
                b.len()
            )));
        }
        for (t0, (((&nt, &lt), &rt), &bt)) in n.iter().zip(&l).zip(&r).zip(&b).enumerate() {
            let t = t0 + 1;
            if !(nt > R::zero()) || !nt.is_finite() {
                return Err(Error::Domain(format!("N_{t} = {nt} must be positive")));
            }
            if !(lt >= R::zero()) {
                return Err(Error::Domain(format!("L_{t} = {lt} must be non-negative")));
            }
            if !(rt >= R::zero() && rt <= R::one()) {
                return Err(Error::Domain(format!("R_{t} = {rt} must lie in [0,1]")));
            }
            if !(bt >= R::zero()) {
                return Err(Error::Domain(format!("B_{t} = {bt} must be non-negative")));
            }
            if bt > lt {
                return Err(Error::Domain(format!(
                    "B_{t} = {bt} exceeds the 9-month-old cohort L_{t} = {lt}"
                )));
            }
        }
        Ok(DemographicSeries { n, l, r, b })
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    pub fn population(&self) -> &[R] {
        &self.n
    }

    pub fn nine_month_olds(&self) -> &[R] {
        &self.l
    }

    pub fn ri_coverage(&self) -> &[R] {
        &self.r
    }

    pub fn births(&self) -> &[R] {
        &self.b
    }

    /// Restrict to semi-months `1..=keep` (used to cut a training window).
    pub fn truncated(&self, keep: usize) -> Self {
        DemographicSeries {
            n: self.n[..keep].to_vec(),
            l: self.l[..keep].to_vec(),
            r: self.r[..keep].to_vec(),
            b: self.b[..keep].to_vec(),
        }
    }

    /// The slice of semi-months `from..` as a new series (0-based offset).
    pub fn tail(&self, from: usize) -> Self {
        DemographicSeries {
            n: self.n[from..].to_vec(),
            l: self.l[from..].to_vec(),
            r: self.r[from..].to_vec(),
            b: self.b[from..].to_vec(),
        }
    }

    /// Monthly adjusted births: `B_m = B_{2m-1} + B_{2m}`.
    pub fn monthly_births(&self) -> Vec<R> {
        self.b.chunks_exact(2).map(|p| p[0] + p[1]).collect()
    }
}

/// One campaign phase: at semi-month `t` a fraction `delta` of the
/// campaign's target population is covered, removing susceptibles measured
/// at `campaign_start` (the semi-month right before the campaign began).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiaPhase<R> {
    pub t: usize,
    pub delta: R,
    pub campaign_start: usize,
}

/// Campaign calendar on the semi-monthly grid. `delta` is zero at every
/// semi-month not listed as a phase.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SiaCalendar<R> {
    phases: Vec<SiaPhase<R>>,
}

impl<R: Scalar> SiaCalendar<R> {
    pub fn empty() -> Self {
        SiaCalendar { phases: Vec::new() }
    }

    pub fn new(mut phases: Vec<SiaPhase<R>>) -> Result<Self> {
        phases.sort_by_key(|p| p.t);
        for pair in phases.windows(2) {
            if pair[0].t == pair[1].t {
                return Err(Error::Domain(format!(
                    "duplicate campaign phase at t={}",
                    pair[0].t
                )));
            }
        }
        for p in &phases {
            if p.campaign_start == 0 || p.campaign_start >= p.t {
                return Err(Error::Domain(format!(
                    "campaign start k={} must satisfy 1 <= k < t={}",
                    p.campaign_start, p.t
                )));
            }
            if !(p.delta >= R::zero() && p.delta <= R::one()) {
                return Err(Error::Domain(format!(
                    "phase fraction delta={} at t={} must lie in [0,1]",
                    p.delta, p.t
                )));
            }
        }
        // Campaigns are identified by a shared start; their phase spans must
        // not interleave and each must cover at most its whole target.
        let mut campaigns: Vec<(usize, usize, R)> = Vec::new(); // (k, last_t, sum_delta)
        for p in &phases {
            match campaigns.iter_mut().find(|c| c.0 == p.campaign_start) {
                Some(c) => {
                    c.1 = c.1.max(p.t);
                    c.2 = c.2 + p.delta;
                }
                None => campaigns.push((p.campaign_start, p.t, p.delta)),
            }
        }
        campaigns.sort_by_key(|c| c.0);
        for c in &campaigns {
            if c.2 > R::one() + R::of(1e-9) {
                return Err(Error::Domain(format!(
                    "campaign starting after t={} covers {} > 1 of its target",
                    c.0, c.2
                )));
            }
        }
        for pair in campaigns.windows(2) {
            if pair[1].0 < pair[0].1 {
                return Err(Error::Domain(format!(
                    "campaigns overlap: one starting after t={} begins before the campaign \
                     starting after t={} has finished (last phase t={})",
                    pair[1].0, pair[0].0, pair[0].1
                )));
            }
        }
        Ok(SiaCalendar { phases })
    }

    /// Convenience constructor for one campaign: `k` is set to the semi-month
    /// right before the first phase.
    pub fn single_campaign(phases: &[(usize, R)]) -> Result<Self> {
        let first = phases
            .iter()
            .map(|&(t, _)| t)
            .min()
            .ok_or_else(|| Error::Domain("campaign needs at least one phase".into()))?;
        let k = first - 1;
        Self::new(
            phases
                .iter()
                .map(|&(t, delta)| SiaPhase {
                    t,
                    delta,
                    campaign_start: k,
                })
                .collect(),
        )
    }

    pub fn phases(&self) -> &[SiaPhase<R>] {
        &self.phases
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phase_at(&self, t: usize) -> Option<&SiaPhase<R>> {
        self.phases.iter().find(|p| p.t == t)
    }

    /// Fraction of the target covered at semi-month `t` (zero off-phase).
    pub fn delta_at(&self, t: usize) -> R {
        self.phase_at(t).map_or_else(R::zero, |p| p.delta)
    }

    pub fn last_phase_t(&self) -> Option<usize> {
        self.phases.iter().map(|p| p.t).max()
    }

    /// True if any phase falls inside the month range `[m0, m1]` (1-based,
    /// inclusive).
    pub fn has_phase_in_months(&self, m0: usize, m1: usize) -> bool {
        self.phases.iter().any(|p| {
            let m = TimeIndex::month_of(p.t);
            m >= m0 && m <= m1
        })
    }

    /// Shift every phase and campaign start by `offset` semi-months.
    pub fn shifted(&self, offset: i64) -> Result<Self> {
        let phases = self
            .phases
            .iter()
            .map(|p| {
                let t = p.t as i64 + offset;
                let k = p.campaign_start as i64 + offset;
                if t < 2 || k < 1 {
                    return Err(Error::Domain(format!(
                        "shift by {offset} pushes phase t={} off the grid",
                        p.t
                    )));
                }
                Ok(SiaPhase {
                    t: t as usize,
                    delta: p.delta,
                    campaign_start: k as usize,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(phases)
    }
}

/// Model parameters. The mixing exponent and the seasonal period are fixed
/// constants of the model (`MIXING_ALPHA`, `SEASONAL_PERIOD`), not fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams<R> {
    /// Seasonal transmission intercept.
    pub gamma1: R,
    /// Linear trend in the seasonal log rate, per semi-month.
    pub gamma2: R,
    /// Seasonal sine amplitude.
    pub gamma3: R,
    /// Seasonal cosine amplitude.
    pub gamma4: R,
    /// Log endemic (reintroduction) rate per person.
    pub beta_endemic: R,
    /// Negative-binomial dispersion; smaller means more overdispersion.
    pub dispersion: R,
    /// Initial susceptible fraction of the population.
    pub theta: R,
    /// Fraction of susceptibles immunized by a complete campaign.
    pub sia_efficacy: R,
}

impl<R: Scalar> ModelParams<R> {
    pub fn validate(&self) -> Result<()> {
        if !(self.dispersion > R::zero()) || !self.dispersion.is_finite() {
            return Err(Error::Domain(format!(
                "dispersion {} must be positive",
                self.dispersion
            )));
        }
        if !(self.theta > R::zero() && self.theta < R::one()) {
            return Err(Error::Domain(format!(
                "theta {} must lie in (0,1)",
                self.theta
            )));
        }
        if !(self.sia_efficacy >= R::zero() && self.sia_efficacy <= R::one()) {
            return Err(Error::Domain(format!(
                "SIA efficacy {} must lie in [0,1]",
                self.sia_efficacy
            )));
        }
        for (name, v) in [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("gamma3", self.gamma3),
            ("gamma4", self.gamma4),
            ("beta_endemic", self.beta_endemic),
        ] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} = {v} must be finite")));
            }
        }
        Ok(())
    }
}

/// Reporting-rate bundle handed from stage 1 to stage 2: the rate itself,
/// the point estimate of its inverse, and that estimate's standard error.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ReportingRate<R> {
    pub rho: R,
    pub kappa_hat: R,
    pub kappa_se: R,
}

impl<R: Scalar> ReportingRate<R> {
    pub fn from_kappa(kappa_hat: R, kappa_se: R) -> Result<Self> {
        if !(kappa_hat >= R::one()) {
            return Err(Error::Domain(format!(
                "kappa {kappa_hat} must be >= 1 (rho in (0,1])"
            )));
        }
        if !(kappa_se >= R::zero()) || !kappa_se.is_finite() {
            return Err(Error::Domain(format!(
                "kappa standard error {kappa_se} must be non-negative"
            )));
        }
        Ok(ReportingRate {
            rho: kappa_hat.recip(),
            kappa_hat,
            kappa_se,
        })
    }

    /// A known rate with no estimation uncertainty.
    pub fn exact(rho: R) -> Result<Self> {
        if !(rho > R::zero() && rho <= R::one()) {
            return Err(Error::Domain(format!("rho {rho} must lie in (0,1]")));
        }
        Ok(ReportingRate {
            rho,
            kappa_hat: rho.recip(),
            kappa_se: R::zero(),
        })
    }
}

/// Paired latent series: integer true incidence, real susceptibles, and the
/// campaign removals that entered the balancing equation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatentPath<R> {
    pub incidence: Vec<u64>,
    pub susceptibles: Vec<R>,
    pub sia_removals: Vec<R>,
}

impl<R: Scalar> LatentPath<R> {
    pub fn len(&self) -> usize {
        self.incidence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.incidence.is_empty()
    }

    /// Verify the balancing identity `S_t = S_{t-1} + B_t - I_t - S*_t`
    /// exactly (bitwise, using the canonical evaluation order) for t >= 2.
    pub fn check_balance(&self, births: &[R]) -> Result<()> {
        if births.len() != self.len() || self.susceptibles.len() != self.len() {
            return Err(Error::Length(
                "balance check needs births aligned with the path".into(),
            ));
        }
        for t0 in 1..self.len() {
            let expected = self.susceptibles[t0 - 1] + births[t0]
                - R::from_u64(self.incidence[t0]).unwrap()
                - self.sia_removals[t0];
            if expected != self.susceptibles[t0] {
                return Err(Error::Realizability {
                    t: t0 + 1,
                    reason: format!(
                        "balancing identity broken: S = {}, flows give {}",
                        self.susceptibles[t0], expected
                    ),
                });
            }
        }
        Ok(())
    }

    /// Check `I_1 <= S_1`, `I_t <= S_{t-1}` for t >= 2, and
    /// `0 <= S_t <= N_t` everywhere.
    pub fn check_realizability(&self, population: &[R]) -> Result<()> {
        if population.len() != self.len() {
            return Err(Error::Length(
                "realizability check needs population aligned with the path".into(),
            ));
        }
        for t0 in 0..self.len() {
            let s = self.susceptibles[t0];
            if !(s >= R::zero()) {
                return Err(Error::Realizability {
                    t: t0 + 1,
                    reason: format!("susceptibles {s} negative"),
                });
            }
            if s > population[t0] {
                return Err(Error::Realizability {
                    t: t0 + 1,
                    reason: format!("susceptibles {s} exceed population {}", population[t0]),
                });
            }
            let i = R::from_u64(self.incidence[t0]).unwrap();
            let pool = self.susceptibles[t0.saturating_sub(1)];
            if i > pool {
                return Err(Error::Realizability {
                    t: t0 + 1,
                    reason: format!("incidence {i} exceeds susceptible pool {pool}"),
                });
            }
        }
        Ok(())
    }

    /// Monthly sums of true incidence; errors on odd-length paths.
    pub fn monthly_incidence(&self) -> Result<Vec<u64>> {
        if self.len() % 2 != 0 {
            return Err(Error::Length(format!(
                "path length {} is odd; months need both semi-months",
                self.len()
            )));
        }
        Ok(self
            .incidence
            .chunks_exact(2)
            .map(|p| p[0] + p[1])
            .collect())
    }
}
