//! Location of the system's rest points.
//!
//! On the `omega = lambda = 0` line the debt ratio is stationary exactly when
//! `F(d) = d (r - kappa(1 - r d)/nu + delta) + kappa(1 - r d) - 1` vanishes;
//! `find_d0_roots` locates every such root in an interval. The interior rest
//! point and the degenerate `omega = 0` line family have closed forms.

use crate::error::KeenError;
use crate::model::{Assumption, EconomyParams, InvestmentFunction, PhillipsCurve, State};
use serde::{Deserialize, Serialize};

/// Bisection stops when the bracket is this wide; Newton runs from there.
const BISECTION_WIDTH: f64 = 1e-6;
/// Newton polish target on |F(d)|.
const NEWTON_RESIDUAL: f64 = 1e-12;
const NEWTON_MAX_ITERS: usize = 100;
/// Roots closer than this are reported once.
const ROOT_DEDUP: f64 = 1e-8;

/// Stationarity residual of the debt ratio on the `omega = lambda = 0` line.
pub fn d0_residual(d: f64, p: &EconomyParams, kap: &InvestmentFunction) -> f64 {
    let pi = 1.0 - p.r * d;
    let inv = kap.eval(pi);
    d * (p.r - inv / p.nu + p.delta) + inv - 1.0
}

/// Analytic derivative of [`d0_residual`] with respect to `d`.
pub fn d0_residual_prime(d: f64, p: &EconomyParams, kap: &InvestmentFunction) -> f64 {
    let pi = 1.0 - p.r * d;
    let inv = kap.eval(pi);
    let kp = kap.prime(pi);
    (p.r + p.delta) - inv / p.nu + p.r * kp * (d - p.nu) / p.nu
}

/// Scan interval and resolution for root location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootSearch {
    /// Closed interval scanned for sign changes.
    pub interval: (f64, f64),
    /// Number of scan sub-intervals. At least 100.
    pub samples: usize,
}

impl Default for RootSearch {
    fn default() -> Self {
        RootSearch {
            interval: (-1000.0, 1000.0),
            samples: 100_000,
        }
    }
}

impl RootSearch {
    pub fn validate(&self) -> Result<(), KeenError> {
        let (lo, hi) = self.interval;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(KeenError::invalid(format!(
                "root search interval must be finite with lo < hi, got [{lo}, {hi}]"
            )));
        }
        if self.samples < 100 {
            return Err(KeenError::invalid(format!(
                "root search needs at least 100 samples, got {}",
                self.samples
            )));
        }
        Ok(())
    }
}

/// Find every stationary debt ratio on the `omega = lambda = 0` line inside
/// the search interval.
///
/// Sign changes from an even scan are bracketed, bisected to width 1e-6, and
/// polished with Newton's method using the analytic derivative until
/// `|F(d)| < 1e-12` or 100 iterations. Newton steps that leave the bracket
/// fall back to continued bisection, which cannot escape. Roots are returned
/// sorted ascending, deduplicated at 1e-8.
pub fn find_d0_roots(
    p: &EconomyParams,
    kap: &InvestmentFunction,
    search: &RootSearch,
) -> Result<Vec<f64>, KeenError> {
    search.validate()?;
    let (lo, hi) = search.interval;
    let n = search.samples;
    let step = (hi - lo) / n as f64;

    let eval = |d: f64| -> Result<f64, KeenError> {
        let v = d0_residual(d, p, kap);
        if !v.is_finite() {
            return Err(KeenError::numeric(format!(
                "stationarity residual is not finite at d = {d}"
            )));
        }
        Ok(v)
    };

    let mut roots: Vec<f64> = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = eval(lo)?;
    for i in 1..=n {
        let x = if i == n { hi } else { lo + i as f64 * step };
        let f = eval(x)?;
        if f_prev == 0.0 {
            roots.push(polish(x_prev, x_prev, x, p, kap));
        } else if f_prev * f < 0.0 {
            let seed = bisect(x_prev, x, f_prev, p, kap);
            roots.push(polish(seed, x_prev, x, p, kap));
        }
        x_prev = x;
        f_prev = f;
    }
    if f_prev == 0.0 {
        roots.push(hi);
    }

    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() < ROOT_DEDUP);
    Ok(roots)
}

fn bisect(mut lo: f64, mut hi: f64, f_lo: f64, p: &EconomyParams, kap: &InvestmentFunction) -> f64 {
    let mut f_lo = f_lo;
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let f_mid = d0_residual(mid, p, kap);
        if f_mid == 0.0 {
            return mid;
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    0.5 * (lo + hi)
}

fn polish(seed: f64, blo: f64, bhi: f64, p: &EconomyParams, kap: &InvestmentFunction) -> f64 {
    let mut x = seed;
    let mut best = seed;
    let mut best_f = d0_residual(seed, p, kap).abs();
    for _ in 0..NEWTON_MAX_ITERS {
        let f = d0_residual(x, p, kap);
        if f.abs() < best_f {
            best = x;
            best_f = f.abs();
        }
        if f.abs() < NEWTON_RESIDUAL {
            return x;
        }
        let fp = d0_residual_prime(x, p, kap);
        if fp == 0.0 || !fp.is_finite() {
            break;
        }
        let next = x - f / fp;
        // Newton can escape near-flat stretches; stay inside the bracket.
        if !next.is_finite() || next < blo || next > bhi {
            break;
        }
        x = next;
    }
    best
}

/// Interior rest point where wages, employment, and debt are all stationary.
///
/// Employment pins wage growth to `alpha`; the profit share pins investment
/// to the balanced-growth share. Range failures of either inverse are
/// reported as the named assumption that guarantees them.
pub fn interior_equilibrium(
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
) -> Result<State, KeenError> {
    let b = p.balanced_investment_share();
    let pi_bar = kap.inverse(b).map_err(|e| KeenError::Assumption {
        assumption: Assumption::KappaFloor,
        detail: format!("cannot invert investment at the balanced-growth share: {e}"),
    })?;
    let lam = phi.inverse(p.alpha).map_err(|e| KeenError::Assumption {
        assumption: Assumption::PhillipsOriginBelowAlpha,
        detail: format!("cannot invert the Phillips curve at alpha: {e}"),
    })?;
    let d = (b - pi_bar) / p.growth_rate();
    let omega = 1.0 - pi_bar - p.r * d;
    Ok(State::new(omega, lam, d))
}

/// Diagnostics for the degenerate family of rest points `(0, lambda, d1)`.
///
/// The family exists only under a parameter coincidence: the debt level that
/// balances growth must also leave the profit share at the inverted value.
/// Both residuals are reported; `present` requires both below `tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineCheck {
    /// Debt ratio from the growth-balance condition.
    pub d1: f64,
    /// Debt ratio from debt stationarity at `omega = 0`, when defined.
    pub d_star: Option<f64>,
    /// Profit share that pins investment to the balanced-growth share.
    pub pi_target: f64,
    /// `|1 - r d1 - pi_target|`.
    pub coincidence_residual: f64,
    /// `|d1 - d_star|`, when `d_star` is defined.
    pub stationarity_residual: Option<f64>,
    pub present: bool,
}

/// Check whether the `(0, lambda, d1)` line family of rest points exists.
pub fn line_equilibrium_check(
    p: &EconomyParams,
    kap: &InvestmentFunction,
    tol: f64,
) -> Result<LineCheck, KeenError> {
    if !(tol >= 0.0) {
        return Err(KeenError::invalid(format!(
            "line coincidence tolerance must be non-negative, got {tol}"
        )));
    }
    let b = p.balanced_investment_share();
    let pi_target = kap.inverse(b).map_err(|e| KeenError::Assumption {
        assumption: Assumption::KappaFloor,
        detail: format!("cannot invert investment at the balanced-growth share: {e}"),
    })?;
    let d1 = (b - pi_target) / p.growth_rate();
    let coincidence_residual = (1.0 - p.r * d1 - pi_target).abs();

    let denom = p.growth_rate() - p.r;
    let (d_star, stationarity_residual) = if denom == 0.0 {
        (None, None)
    } else {
        let ds = (b - 1.0) / denom;
        (Some(ds), Some((d1 - ds).abs()))
    };
    let present = coincidence_residual < tol
        && stationarity_residual.map(|res| res < tol).unwrap_or(false);
    Ok(LineCheck {
        d1,
        d_star,
        pi_target,
        coincidence_residual,
        stationarity_residual,
        present,
    })
}

/// Kinds of rest points the system supports, for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquilibriumKind {
    /// Collapsed wages and employment with a finite stationary debt ratio.
    TrivialDeflation { d0: f64, pi0: f64 },
    /// All three variables stationary and finite.
    Interior { state: State },
    /// Degenerate line family at collapsed wages.
    LineSegment { d1: f64, coincidence_residual: f64 },
    /// Debt grows without bound; reached asymptotically, never located.
    ExplosiveDebt,
}
