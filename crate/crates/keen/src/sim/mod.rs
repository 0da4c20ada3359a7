//! Time integration of the model.
//!
//! Two steppers are provided: classic fixed-step RK4 and an embedded
//! Dormand-Prince 5(4) pair with PI step-size control. The driver samples
//! trajectories on a regular grid, watches for explosive debt, for the
//! employment rate leaving the wage-response domain, and for sustained
//! convergence toward a known rest point. Basin sampling and parameter
//! sweeps live in [`sweep`] (re-exported here).

pub mod sweep;

pub use sweep::{
    basin_sample, sweep, BasinGrid, BasinOutcome, BasinResult, GridAxis, KappaSpec, ParamField,
    SweepAxis, SweepRootEntry, SweepRow, SweepTable,
};

use crate::equilibria::{find_d0_roots, interior_equilibrium, RootSearch};
use crate::error::KeenError;
use crate::model::{keen_vector_field, EconomyParams, InvestmentFunction, PhillipsCurve, State};
use serde::{Deserialize, Serialize};

/// Consecutive sub-threshold samples required before convergence counts.
pub const CONVERGENCE_SAMPLES: usize = 5;
/// A matched rest point must lie within this multiple of `eq_tol`.
pub const CONVERGENCE_MATCH_FACTOR: f64 = 10.0;

// Dormand-Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// PI controller settings (standard for this pair).
const SAFETY: f64 = 0.9;
const PI_BETA: f64 = 0.04;
const PI_EXPO: f64 = 0.2 - PI_BETA * 0.75;
const SHRINK_LIMIT: f64 = 0.2;
const GROWTH_LIMIT: f64 = 10.0;

fn axpy<const N: usize>(y: &[f64; N], k: &[f64; N], h: f64) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += h * k[i];
    }
    out
}

/// One classic RK4 step. An initial coordinate that every stage multiplies
/// by (an invariant plane) stays exactly zero.
pub fn rk4_step<const N: usize, F>(
    f: &mut F,
    t: f64,
    y: &[f64; N],
    h: f64,
) -> Result<[f64; N], KeenError>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N], KeenError>,
{
    let k1 = f(t, y)?;
    let k2 = f(t + 0.5 * h, &axpy(y, &k1, 0.5 * h))?;
    let k3 = f(t + 0.5 * h, &axpy(y, &k2, 0.5 * h))?;
    let k4 = f(t + h, &axpy(y, &k3, h))?;
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

/// Fixed-step RK4 over `[t0, t1]` (either direction), recording every step.
///
/// `step` is a positive magnitude; it is rounded down so a whole number of
/// steps lands exactly on `t1`. Returns `(t, y)` pairs including both ends.
pub fn rk4_integrate<const N: usize, F>(
    mut f: F,
    y0: [f64; N],
    t0: f64,
    t1: f64,
    step: f64,
) -> Result<Vec<(f64, [f64; N])>, KeenError>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N], KeenError>,
{
    if !(step > 0.0) || !step.is_finite() {
        return Err(KeenError::invalid(format!(
            "rk4_integrate step must be positive and finite, got {step}"
        )));
    }
    if !t0.is_finite() || !t1.is_finite() || t0 == t1 {
        return Err(KeenError::invalid(format!(
            "rk4_integrate needs a finite nonempty span, got [{t0}, {t1}]"
        )));
    }
    let span = t1 - t0;
    let n = (span.abs() / step).ceil().max(1.0) as usize;
    let h = span / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut t = t0;
    let mut y = y0;
    out.push((t, y));
    for k in 1..=n {
        y = rk4_step(&mut f, t, &y, h)?;
        for v in y {
            if !v.is_finite() {
                return Err(KeenError::Blowup { t, state: y.to_vec() });
            }
        }
        t = t0 + span * k as f64 / n as f64;
        out.push((t, y));
    }
    Ok(out)
}

/// One trial Dormand-Prince step: next state, scaled error norm, and the
/// last stage (which is the first stage of the following step).
#[allow(clippy::too_many_arguments)]
fn dopri5_step<const N: usize, F>(
    f: &mut F,
    t: f64,
    y: &[f64; N],
    h: f64,
    k1: &[f64; N],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<([f64; N], f64, [f64; N]), KeenError>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N], KeenError>,
{
    let mut stage = *y;
    for i in 0..N {
        stage[i] = y[i] + h * A21 * k1[i];
    }
    let k2 = f(t + C2 * h, &stage)?;
    for i in 0..N {
        stage[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    }
    let k3 = f(t + C3 * h, &stage)?;
    for i in 0..N {
        stage[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    }
    let k4 = f(t + C4 * h, &stage)?;
    for i in 0..N {
        stage[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    }
    let k5 = f(t + C5 * h, &stage)?;
    for i in 0..N {
        stage[i] =
            y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    }
    let k6 = f(t + h, &stage)?;
    let mut y_new = *y;
    for i in 0..N {
        y_new[i] =
            y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    }
    let k7 = f(t + h, &y_new)?;

    let mut err_sq = 0.0;
    for i in 0..N {
        let e = h
            * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let sc = abs_tol + rel_tol * y[i].abs().max(y_new[i].abs());
        err_sq += (e / sc) * (e / sc);
    }
    Ok((y_new, (err_sq / N as f64).sqrt(), k7))
}

/// Stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    FixedRk4 {
        step: f64,
    },
    AdaptiveRk45 {
        rel_tol: f64,
        abs_tol: f64,
        min_step: f64,
        max_step: f64,
    },
}

/// Integration run settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub method: Method,
    /// Final time in years.
    pub t_end: f64,
    /// Sample spacing in years.
    pub sample_interval: f64,
    /// Debt magnitude treated as divergence.
    pub d_explode: f64,
    /// Field-norm threshold for convergence detection.
    pub eq_tol: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            method: Method::AdaptiveRk45 {
                rel_tol: 1e-8,
                abs_tol: 1e-10,
                min_step: 1e-12,
                max_step: 1.0,
            },
            t_end: 100.0,
            sample_interval: 1.0,
            d_explode: 1e6,
            eq_tol: 1e-8,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<(), KeenError> {
        match self.method {
            Method::FixedRk4 { step } => {
                if !(step > 0.0) || !step.is_finite() {
                    return Err(KeenError::InvalidConfig {
                        what: format!("fixed step must be positive and finite, got {step}"),
                    });
                }
            }
            Method::AdaptiveRk45 { rel_tol, abs_tol, min_step, max_step } => {
                if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
                    return Err(KeenError::InvalidConfig {
                        what: format!("rel_tol must lie in (0, 1e-3], got {rel_tol}"),
                    });
                }
                if !(abs_tol > 0.0) || !abs_tol.is_finite() {
                    return Err(KeenError::InvalidConfig {
                        what: format!("abs_tol must be positive, got {abs_tol}"),
                    });
                }
                if !(min_step > 0.0 && min_step < max_step) || !max_step.is_finite() {
                    return Err(KeenError::InvalidConfig {
                        what: format!(
                            "need 0 < min_step < max_step < inf, got [{min_step}, {max_step}]"
                        ),
                    });
                }
            }
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(KeenError::InvalidConfig {
                what: format!("t_end must be positive and finite, got {}", self.t_end),
            });
        }
        if !(self.sample_interval > 0.0 && self.sample_interval <= self.t_end) {
            return Err(KeenError::InvalidConfig {
                what: format!(
                    "sample_interval must lie in (0, t_end], got {}",
                    self.sample_interval
                ),
            });
        }
        if !(self.d_explode > 0.0) {
            return Err(KeenError::InvalidConfig {
                what: format!("d_explode must be positive, got {}", self.d_explode),
            });
        }
        if !(self.eq_tol > 0.0) {
            return Err(KeenError::InvalidConfig {
                what: format!("eq_tol must be positive, got {}", self.eq_tol),
            });
        }
        Ok(())
    }
}

/// Rest point a trajectory was matched against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvergedTarget {
    /// Collapsed wages and employment at a stationary debt ratio.
    TrivialDeflation { d0: f64 },
    /// The interior rest point.
    Interior { omega: f64, lambda: f64, d: f64 },
}

impl ConvergedTarget {
    pub fn state(&self) -> State {
        match *self {
            ConvergedTarget::TrivialDeflation { d0 } => State::new(0.0, 0.0, d0),
            ConvergedTarget::Interior { omega, lambda, d } => State::new(omega, lambda, d),
        }
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Termination {
    /// Integrated through the full horizon.
    ReachedTEnd,
    /// Field norm stayed below `eq_tol` for five consecutive samples and a
    /// known rest point lies within `10 * eq_tol`.
    ConvergedTo { target: ConvergedTarget, distance: f64 },
    /// `|d|` exceeded `d_explode`.
    ExplosiveDebt { t: f64, d: f64 },
    /// The employment rate reached the wage-response domain boundary.
    DomainExit { t: f64, lambda: f64 },
}

/// Step-level counters for a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationStats {
    pub steps_accepted: u64,
    pub steps_rejected: u64,
    pub min_step: f64,
    pub max_step: f64,
    pub field_evaluations: u64,
}

impl IntegrationStats {
    fn new() -> Self {
        IntegrationStats {
            steps_accepted: 0,
            steps_rejected: 0,
            min_step: f64::INFINITY,
            max_step: 0.0,
            field_evaluations: 0,
        }
    }

    fn record_accept(&mut self, h: f64) {
        self.steps_accepted += 1;
        let h = h.abs();
        if h < self.min_step {
            self.min_step = h;
        }
        if h > self.max_step {
            self.max_step = h;
        }
    }

    fn finalize(&mut self) {
        if !self.min_step.is_finite() {
            self.min_step = 0.0;
        }
    }
}

/// Sampled solution of the three-variable system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub termination: Termination,
    pub stats: IntegrationStats,
}

enum Advance {
    Reached,
    DomainExit,
}

/// Shared driver state for one run.
struct Driver<'a, const N: usize> {
    cfg: &'a IntegratorConfig,
    stats: IntegrationStats,
    /// FSAL cache for the adaptive method.
    k1: Option<[f64; N]>,
    h: f64,
    facold: f64,
}

impl<'a, const N: usize> Driver<'a, N> {
    fn new(cfg: &'a IntegratorConfig) -> Self {
        let h = match cfg.method {
            Method::FixedRk4 { step } => step,
            Method::AdaptiveRk45 { max_step, .. } => max_step.min(cfg.sample_interval),
        };
        Driver { cfg, stats: IntegrationStats::new(), k1: None, h, facold: 1e-4 }
    }

    /// Advance `(t, y)` to exactly `target`, or stop at the wage-response
    /// domain boundary. Non-finite states are hard errors.
    fn advance<F>(
        &mut self,
        f: &mut F,
        t: &mut f64,
        y: &mut [f64; N],
        target: f64,
    ) -> Result<Advance, KeenError>
    where
        F: FnMut(f64, &[f64; N]) -> Result<[f64; N], KeenError>,
    {
        match self.cfg.method {
            Method::FixedRk4 { step } => self.advance_fixed(f, t, y, target, step),
            Method::AdaptiveRk45 { rel_tol, abs_tol, min_step, max_step } => {
                self.advance_adaptive(f, t, y, target, rel_tol, abs_tol, min_step, max_step)
            }
        }
    }

    fn advance_fixed<F>(
        &mut self,
        f: &mut F,
        t: &mut f64,
        y: &mut [f64; N],
        target: f64,
        step: f64,
    ) -> Result<Advance, KeenError>
    where
        F: FnMut(f64, &[f64; N]) -> Result<[f64; N], KeenError>,
    {
        let span = target - *t;
        let n = (span / step).ceil().max(1.0) as usize;
        let h = span / n as f64;
        let t0 = *t;
        for k in 1..=n {
            let next = match rk4_step(f, *t, y, h) {
                Ok(v) => v,
                Err(KeenError::Domain { .. }) => return Ok(Advance::DomainExit),
                Err(e) => return Err(e),
            };
            self.stats.field_evaluations += 4;
            if next.iter().any(|v| !v.is_finite()) {
                return Err(KeenError::Blowup { t: *t, state: y.to_vec() });
            }
            *y = next;
            *t = if k == n { target } else { t0 + span * k as f64 / n as f64 };
            self.stats.record_accept(h);
        }
        Ok(Advance::Reached)
    }

    #[allow(clippy::too_many_arguments)]
    fn advance_adaptive<F>(
        &mut self,
        f: &mut F,
        t: &mut f64,
        y: &mut [f64; N],
        target: f64,
        rel_tol: f64,
        abs_tol: f64,
        min_step: f64,
        max_step: f64,
    ) -> Result<Advance, KeenError>
    where
        F: FnMut(f64, &[f64; N]) -> Result<[f64; N], KeenError>,
    {
        while *t < target {
            if self.k1.is_none() {
                let k = match f(*t, y) {
                    Ok(v) => v,
                    Err(KeenError::Domain { .. }) => return Ok(Advance::DomainExit),
                    Err(e) => return Err(e),
                };
                self.stats.field_evaluations += 1;
                self.k1 = Some(k);
            }
            let remaining = target - *t;
            // The final sliver of a segment may undercut min_step.
            let h = self.h.max(min_step).min(max_step).min(remaining);
            let at_floor = h <= min_step;
            let hits_target = h >= remaining * (1.0 - 1e-12);

            let k1 = self.k1.unwrap();
            let trial = dopri5_step(f, *t, y, h, &k1, abs_tol, rel_tol);
            self.stats.field_evaluations += 6;
            let (y_new, err, k7) = match trial {
                Ok(v) => v,
                Err(KeenError::Domain { .. }) => {
                    // A stage left the domain. Resolve the boundary by
                    // shrinking; once the floor still fails, exit.
                    if at_floor {
                        return Ok(Advance::DomainExit);
                    }
                    self.h = (h * 0.5).max(min_step);
                    self.stats.steps_rejected += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };

            if !err.is_finite() {
                if at_floor {
                    return Err(KeenError::Blowup { t: *t, state: y.to_vec() });
                }
                self.h = (h * SHRINK_LIMIT).max(min_step);
                self.stats.steps_rejected += 1;
                continue;
            }

            if err <= 1.0 {
                if y_new.iter().any(|v| !v.is_finite()) {
                    return Err(KeenError::Blowup { t: *t, state: y.to_vec() });
                }
                *y = y_new;
                *t = if hits_target { target } else { *t + h };
                self.stats.record_accept(h);
                self.k1 = Some(k7);

                let fac11 = if err > 0.0 { err.powf(PI_EXPO) } else { 0.0 };
                let fac = (fac11 / self.facold.powf(PI_BETA) / SAFETY)
                    .clamp(1.0 / GROWTH_LIMIT, 1.0 / SHRINK_LIMIT);
                self.h = (h / fac).min(max_step);
                self.facold = err.max(1e-4);
            } else {
                if at_floor {
                    return Err(KeenError::numeric(format!(
                        "adaptive step size underflow at t = {t}: min_step {min_step} still \
                         exceeds the error tolerance"
                    )));
                }
                self.stats.steps_rejected += 1;
                let fac11 = err.powf(PI_EXPO);
                self.h = (h / (fac11 / SAFETY).min(1.0 / SHRINK_LIMIT)).max(min_step);
            }
        }
        Ok(Advance::Reached)
    }
}

/// Sample times `k * sample_interval` capped by `t_end`, which is always
/// the last entry.
fn sample_times(cfg: &IntegratorConfig) -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = 1u64;
    loop {
        let t = k as f64 * cfg.sample_interval;
        if t >= cfg.t_end * (1.0 - 1e-12) {
            break;
        }
        out.push(t);
        k += 1;
    }
    out.push(cfg.t_end);
    out
}

/// Rest points to match converging trajectories against: every collapsed
/// root in a wide scan plus the interior point when it exists.
fn known_targets(
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
) -> Vec<ConvergedTarget> {
    let search = RootSearch { interval: (-1000.0, 1000.0), samples: 200_000 };
    let mut targets: Vec<ConvergedTarget> = find_d0_roots(p, kap, &search)
        .unwrap_or_default()
        .into_iter()
        .map(|d0| ConvergedTarget::TrivialDeflation { d0 })
        .collect();
    if let Ok(s) = interior_equilibrium(p, phi, kap) {
        targets.push(ConvergedTarget::Interior { omega: s.omega, lambda: s.lam, d: s.d });
    }
    targets
}

/// Integrate the three-variable system from `s0`, sampling on a regular
/// grid and stopping early on divergence, domain exit, or convergence.
pub fn integrate(
    s0: &State,
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
    cfg: &IntegratorConfig,
) -> Result<Trajectory, KeenError> {
    cfg.validate()?;
    let mut field = |t: f64, y: &[f64; 3]| {
        let _ = t;
        keen_vector_field(&State::from_array(*y), p, phi, kap)
    };

    let mut times = vec![0.0];
    let mut states = vec![*s0];
    let mut t = 0.0;
    let mut y = s0.as_array();
    let mut driver: Driver<3> = Driver::new(cfg);
    let mut targets: Option<Vec<ConvergedTarget>> = None;
    let mut quiet_samples = 0usize;

    // Evaluates convergence bookkeeping at a freshly recorded sample.
    // Returns a termination when the trajectory has settled onto a known
    // rest point; Err(()) flags a sample where the field is not evaluable.
    let check_sample = |y: &[f64; 3],
                        quiet: &mut usize,
                        targets: &mut Option<Vec<ConvergedTarget>>|
     -> Result<Option<Termination>, ()> {
        let s = State::from_array(*y);
        let f = match keen_vector_field(&s, p, phi, kap) {
            Ok(f) => f,
            Err(_) => return Err(()),
        };
        let norm = (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt();
        if norm < cfg.eq_tol {
            *quiet += 1;
        } else {
            *quiet = 0;
        }
        if *quiet >= CONVERGENCE_SAMPLES {
            let list = targets.get_or_insert_with(|| known_targets(p, phi, kap));
            let mut best: Option<(f64, ConvergedTarget)> = None;
            for tgt in list.iter() {
                let dist = s.distance(&tgt.state());
                if best.as_ref().map(|(b, _)| dist < *b).unwrap_or(true) {
                    best = Some((dist, *tgt));
                }
            }
            if let Some((dist, tgt)) = best {
                if dist < CONVERGENCE_MATCH_FACTOR * cfg.eq_tol {
                    return Ok(Some(Termination::ConvergedTo { target: tgt, distance: dist }));
                }
            }
        }
        Ok(None)
    };

    // The initial sample participates in the convergence count.
    match check_sample(&y, &mut quiet_samples, &mut targets) {
        Ok(Some(term)) => {
            driver.stats.finalize();
            return Ok(Trajectory { times, states, termination: term, stats: driver.stats });
        }
        Ok(None) => {}
        Err(_) => {
            return Err(KeenError::Domain {
                function: "integrate",
                detail: format!("initial state is outside the field domain: {s0:?}"),
            })
        }
    }

    let mut termination = Termination::ReachedTEnd;
    'outer: for target_t in sample_times(cfg) {
        match driver.advance(&mut field, &mut t, &mut y, target_t)? {
            Advance::Reached => {}
            Advance::DomainExit => {
                if t > *times.last().unwrap() {
                    times.push(t);
                    states.push(State::from_array(y));
                }
                termination = Termination::DomainExit { t, lambda: y[1] };
                break 'outer;
            }
        }
        times.push(t);
        states.push(State::from_array(y));
        if y[2].abs() > cfg.d_explode {
            termination = Termination::ExplosiveDebt { t, d: y[2] };
            break 'outer;
        }
        match check_sample(&y, &mut quiet_samples, &mut targets) {
            Ok(Some(term)) => {
                termination = term;
                break 'outer;
            }
            Ok(None) => {}
            Err(_) => {
                termination = Termination::DomainExit { t, lambda: y[1] };
                break 'outer;
            }
        }
    }

    driver.stats.finalize();
    Ok(Trajectory { times, states, termination, stats: driver.stats })
}

/// Sampled solution of the two-variable wage/employment cycle, with the
/// conserved quantity evaluated at every sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodwinTrajectory {
    pub times: Vec<f64>,
    /// `(omega, lambda)` pairs.
    pub states: Vec<[f64; 2]>,
    /// `omega/nu - (1/nu - alpha - beta - delta) ln omega + phi1 lambda
    /// - (phi0 + alpha) ln lambda`, constant along exact solutions.
    pub conserved: Vec<f64>,
    pub termination: Termination,
    pub stats: IntegrationStats,
}

/// The conserved quantity of the two-variable cycle.
pub fn goodwin_conserved(omega: f64, lam: f64, p: &EconomyParams, phi0: f64, phi1: f64) -> f64 {
    if omega <= 0.0 || lam <= 0.0 {
        return f64::NAN;
    }
    omega / p.nu - (1.0 / p.nu - p.alpha - p.beta - p.delta) * omega.ln() + phi1 * lam
        - (phi0 + p.alpha) * lam.ln()
}

/// Integrate the two-variable cycle with a linear wage response.
///
/// `d_explode` and `eq_tol` from the config are not used: the orbits are
/// closed curves, so the run always covers the full horizon unless it
/// blows up numerically.
pub fn integrate_goodwin(
    omega0: f64,
    lambda0: f64,
    p: &EconomyParams,
    phi0: f64,
    phi1: f64,
    cfg: &IntegratorConfig,
) -> Result<GoodwinTrajectory, KeenError> {
    cfg.validate()?;
    if !(omega0 > 0.0) || !(lambda0 > 0.0) {
        return Err(KeenError::invalid(format!(
            "the cycle needs positive initial shares, got ({omega0}, {lambda0})"
        )));
    }
    let mut field = |_t: f64, y: &[f64; 2]| -> Result<[f64; 2], KeenError> {
        Ok(crate::model::goodwin_vector_field(y[0], y[1], p, phi0, phi1))
    };
    let mut times = vec![0.0];
    let mut states = vec![[omega0, lambda0]];
    let mut conserved = vec![goodwin_conserved(omega0, lambda0, p, phi0, phi1)];
    let mut t = 0.0;
    let mut y = [omega0, lambda0];
    let mut driver: Driver<2> = Driver::new(cfg);
    for target_t in sample_times(cfg) {
        match driver.advance(&mut field, &mut t, &mut y, target_t)? {
            Advance::Reached => {}
            Advance::DomainExit => unreachable!("the cycle field is total"),
        }
        times.push(t);
        states.push(y);
        conserved.push(goodwin_conserved(y[0], y[1], p, phi0, phi1));
    }
    driver.stats.finalize();
    Ok(GoodwinTrajectory {
        times,
        states,
        conserved,
        termination: Termination::ReachedTEnd,
        stats: driver.stats,
    })
}
