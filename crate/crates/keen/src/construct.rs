//! Constructive synthesis of investment functions.
//!
//! Two workflows live here. The first picks a negative debt ratio below an
//! admissible bound and builds an exponential investment function whose
//! collapsed-wage rest point at that debt level has a fully negative
//! spectrum, returning a certificate of every gate that was checked. The
//! second asks when the two debt-direction eigenvalues can vanish
//! simultaneously, which reduces to a quadratic in the balanced investment
//! share; both the direct discriminant test and a published closed-form
//! bound on the floor `c` are reported side by side because they do not
//! always agree.

use crate::equilibria::d0_residual;
use crate::error::KeenError;
use crate::model::{Assumption, EconomyParams, InvestmentFunction, PhillipsCurve};
use crate::stability::origin_linearization;
use serde::{Deserialize, Serialize};

/// A constructed function must reproduce stationarity at `d0` this tightly.
pub const CONSTRUCTION_RESIDUAL_GATE: f64 = 1e-10;

/// Upper bound on debt ratios admissible for the stable construction:
/// `(nu*(alpha+beta+delta) - 1) / (alpha+beta - r)`.
///
/// Requires the balanced investment share below one and the interest rate
/// below the trend growth rate `alpha + beta`; the bound is then negative.
pub fn admissible_d0_bound(p: &EconomyParams) -> Result<f64, KeenError> {
    let b = p.balanced_investment_share();
    if !(b < 1.0) {
        return Err(KeenError::Assumption {
            assumption: Assumption::InvestmentShareFeasible,
            detail: format!("nu*(alpha+beta+delta) = {b} must be < 1"),
        });
    }
    if !(p.r < p.alpha + p.beta) {
        return Err(KeenError::Assumption {
            assumption: Assumption::InterestBelowGrowth,
            detail: format!(
                "interest rate r = {} must be < alpha + beta = {}",
                p.r,
                p.alpha + p.beta
            ),
        });
    }
    Ok((b - 1.0) / (p.alpha + p.beta - p.r))
}

/// Investment share that makes `d` a rest point of the debt equation:
/// `(1 - d*(r+delta)) / (1 - d/nu)`. Pole at `d = nu`.
pub fn kappa_at_equilibrium(d: f64, p: &EconomyParams) -> Result<f64, KeenError> {
    let denom = 1.0 - d / p.nu;
    if denom == 0.0 {
        return Err(KeenError::Domain {
            function: "kappa_at_equilibrium",
            detail: format!("pole at d = nu = {}", p.nu),
        });
    }
    Ok((1.0 - d * (p.r + p.delta)) / denom)
}

/// Lower bound on the exponential sensitivity `kappa2` that makes the debt
/// eigenvalue negative at `d0`:
/// `(c - nu*(r+delta) + k0) / (k0 * r * (d0 - nu))` with
/// `k0 = kappa_at_equilibrium(d0) - c`.
///
/// The admissible region is `(max(0, bound), +inf)`.
pub fn kappa2_lower_bound(c: f64, d0: f64, p: &EconomyParams) -> Result<f64, KeenError> {
    let floor_cap = p.nu * (p.r + p.delta);
    if !(c < floor_cap) {
        return Err(KeenError::Constraint {
            name: "investment_floor",
            detail: format!("require c < nu*(r+delta): c = {c}, nu*(r+delta) = {floor_cap}"),
        });
    }
    let k0 = kappa_at_equilibrium(d0, p)? - c;
    if !(k0 > 0.0) {
        return Err(KeenError::Constraint {
            name: "exponential_amplitude",
            detail: format!(
                "require kappa_at_equilibrium(d0) - c > 0: got k0 = {k0} at d0 = {d0}"
            ),
        });
    }
    Ok((c - floor_cap + k0) / (k0 * p.r * (d0 - p.nu)))
}

/// Build an investment function pinned so that `(0, 0, d0)` is a rest
/// point, without any admissibility gates.
///
/// `kappa(pi0)` is set to [`kappa_at_equilibrium`] at `pi0 = 1 - r*d0` by
/// solving for the amplitude, so the stationarity residual at `d0` vanishes
/// by construction. Stability is not checked; use [`build_kappa`] for the
/// fully gated version.
pub fn realize_kappa(
    d0: f64,
    c: f64,
    kappa2: f64,
    p: &EconomyParams,
) -> Result<InvestmentFunction, KeenError> {
    let k0 = kappa_at_equilibrium(d0, p)? - c;
    if !(k0 > 0.0) {
        return Err(KeenError::Constraint {
            name: "exponential_amplitude",
            detail: format!(
                "require kappa_at_equilibrium(d0) - c > 0: got k0 = {k0} at d0 = {d0}"
            ),
        });
    }
    let pi0 = 1.0 - p.r * d0;
    let kappa1 = k0 * (-kappa2 * pi0).exp();
    if !kappa1.is_finite() || kappa1 <= 0.0 {
        return Err(KeenError::numeric(format!(
            "amplitude recovery overflowed: k0 = {k0}, kappa2*pi0 = {}",
            kappa2 * pi0
        )));
    }
    InvestmentFunction::new(c, kappa1, kappa2)
}

/// Record of a successful stable construction: every input, every derived
/// quantity, and the resulting spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub d0: f64,
    pub admissible_bound: f64,
    pub c: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa2_lower_bound: f64,
    pub pi0: f64,
    pub kappa_at_pi0: f64,
    pub k0_at_pi0: f64,
    pub residual: f64,
    pub eigenvalues: [f64; 3],
}

/// Gated construction of a locally stable collapsed-wage rest point at a
/// chosen negative debt ratio `d0`.
///
/// Checks, in order: feasibility of the economy (balanced share below one,
/// interest below trend growth), wage response at zero employment below
/// `alpha`, `d0` strictly below [`admissible_d0_bound`], `c` strictly below
/// `nu*(r+delta)`, and `kappa2` strictly above `max(0, lower bound)`. On
/// success the returned function makes `d0` stationary to 1e-10 and all
/// three eigenvalues of the linearization at `(0, 0, d0)` are negative.
pub fn build_kappa(
    d0: f64,
    c: f64,
    kappa2: f64,
    p: &EconomyParams,
    phi: &PhillipsCurve,
) -> Result<(InvestmentFunction, ConstructionCertificate), KeenError> {
    let bound = admissible_d0_bound(p)?;
    if !(phi.at_zero() < p.alpha) {
        return Err(KeenError::Assumption {
            assumption: Assumption::PhillipsOriginBelowAlpha,
            detail: format!(
                "wage response at zero employment = {} must be < alpha = {}",
                phi.at_zero(),
                p.alpha
            ),
        });
    }
    if !(d0 < bound) {
        return Err(KeenError::Constraint {
            name: "admissible_debt",
            detail: format!("require d0 < {bound}: got d0 = {d0}"),
        });
    }
    let lb = kappa2_lower_bound(c, d0, p)?;
    let effective_lb = lb.max(0.0);
    if !(kappa2 > effective_lb) {
        return Err(KeenError::Constraint {
            name: "kappa2_lower_bound",
            detail: format!(
                "require kappa2 > max(0, {lb}) = {effective_lb}: got kappa2 = {kappa2}"
            ),
        });
    }
    let kap = realize_kappa(d0, c, kappa2, p)?;

    let residual = d0_residual(d0, p, &kap);
    if !(residual.abs() < CONSTRUCTION_RESIDUAL_GATE) {
        return Err(KeenError::numeric(format!(
            "constructed function misses stationarity at d0 = {d0}: residual {residual:e}"
        )));
    }
    let j = origin_linearization(p, phi, &kap, d0);
    let eigenvalues = [j[0][0], j[1][1], j[2][2]];
    if eigenvalues.iter().any(|&e| !(e < 0.0)) {
        return Err(KeenError::Constraint {
            name: "negative_spectrum",
            detail: format!("expected three negative eigenvalues, got {eigenvalues:?}"),
        });
    }

    let pi0 = 1.0 - p.r * d0;
    let kappa_at_pi0 = kappa_at_equilibrium(d0, p)?;
    let cert = ConstructionCertificate {
        d0,
        admissible_bound: bound,
        c,
        kappa1: kap.kappa1,
        kappa2,
        kappa2_lower_bound: lb,
        pi0,
        kappa_at_pi0,
        k0_at_pi0: kappa_at_pi0 - c,
        residual,
        eigenvalues,
    };
    Ok((kap, cert))
}

/// Real quadratic `a*x^2 + b*x + c` with a numerically stable root finder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticCoeffs {
    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }

    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    /// Real roots in ascending order: two (possibly equal) when the
    /// discriminant is nonnegative, none when negative, one in the linear
    /// case `a = 0`. Fully degenerate input (`a = b = 0`) is an error.
    pub fn roots(&self) -> Result<Vec<f64>, KeenError> {
        if self.a == 0.0 {
            if self.b == 0.0 {
                return Err(KeenError::numeric(
                    "degenerate quadratic: both leading coefficients are zero",
                ));
            }
            return Ok(vec![-self.c / self.b]);
        }
        let disc = self.discriminant();
        if disc < 0.0 {
            return Ok(Vec::new());
        }
        // Citardauq pairing avoids cancellation between -b and the radical.
        let sq = disc.sqrt();
        let q = -0.5 * (self.b + if self.b >= 0.0 { sq } else { -sq });
        let r1 = q / self.a;
        let r2 = if q != 0.0 { self.c / q } else { 0.0 };
        let mut out = vec![r1, r2];
        out.sort_by(|x, y| x.partial_cmp(y).unwrap());
        Ok(out)
    }
}

/// Quadratic in the balanced investment share `B` whose roots make both
/// debt-direction eigenvalues vanish at the reconstructed debt level:
/// coefficients `(-mu, -1 + mu*(1-A) + mu*c, A - mu*(1-A)*c)` with
/// `A = nu*(r+delta)` and `mu = r*kappa2/(r+delta)`.
pub fn double_zero_quadratic(
    c: f64,
    kappa2: f64,
    p: &EconomyParams,
) -> Result<QuadraticCoeffs, KeenError> {
    let rd = p.r + p.delta;
    if rd == 0.0 {
        return Err(KeenError::Domain {
            function: "double_zero_quadratic",
            detail: "r + delta = 0 makes the reconstruction degenerate".to_string(),
        });
    }
    let a_value = p.nu * rd;
    let mu = p.r * kappa2 / rd;
    Ok(QuadraticCoeffs {
        a: -mu,
        b: -1.0 + mu * (1.0 - a_value) + mu * c,
        c: a_value - mu * (1.0 - a_value) * c,
    })
}

/// Debt level reconstructed from a balanced-share root: `(1 - B) / (r + delta)`.
pub fn d_for_double_zero_root(p: &EconomyParams, b_root: f64) -> Result<f64, KeenError> {
    let rd = p.r + p.delta;
    if rd == 0.0 {
        return Err(KeenError::Domain {
            function: "d_for_double_zero_root",
            detail: "r + delta = 0 makes the reconstruction degenerate".to_string(),
        });
    }
    Ok((1.0 - b_root) / rd)
}

/// Outcome of the double-zero necessary-condition query.
///
/// `numeric_condition_met` comes from the sign of the quadratic
/// discriminant and is the ground truth. The `closed_form_*` fields
/// evaluate a published bound on `c` (`c <= 1 - A - 2*sqrt(s)` or
/// `c >= 1 - A + 2*sqrt(s)` with radicand `s = (r+delta)*(1-2A)/(r*kappa2)`)
/// as a diagnostic; the two verdicts are reported independently and are not
/// forced to agree. A negative radicand makes the closed-form bound hold
/// vacuously; a nonpositive `r*kappa2` makes it inapplicable (`None`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoubleZeroQuery {
    pub a_value: f64,
    pub quadratic: QuadraticCoeffs,
    pub discriminant: f64,
    pub b_roots: Vec<f64>,
    pub d_candidates: Vec<f64>,
    pub numeric_condition_met: bool,
    pub closed_form_condition_met: Option<bool>,
    pub closed_form_bounds: Option<(f64, f64)>,
    pub closed_form_radicand: Option<f64>,
    pub one_minus_a: f64,
    pub one_minus_two_a: f64,
}

/// Decide whether both debt-direction eigenvalues can vanish at once for
/// the given floor `c` and sensitivity `kappa2`.
pub fn double_zero_necessary(
    c: f64,
    kappa2: f64,
    p: &EconomyParams,
) -> Result<DoubleZeroQuery, KeenError> {
    if !(kappa2 > 0.0) {
        return Err(KeenError::invalid(format!(
            "double_zero_necessary requires kappa2 > 0, got {kappa2}"
        )));
    }
    let quadratic = double_zero_quadratic(c, kappa2, p)?;
    let rd = p.r + p.delta;
    let a_value = p.nu * rd;
    let discriminant = quadratic.discriminant();
    let b_roots = quadratic.roots()?;
    let mut d_candidates = Vec::with_capacity(b_roots.len());
    for &b in &b_roots {
        d_candidates.push(d_for_double_zero_root(p, b)?);
    }
    let numeric_condition_met = !b_roots.is_empty();

    let one_minus_a = 1.0 - a_value;
    let one_minus_two_a = 1.0 - 2.0 * a_value;
    let rk2 = p.r * kappa2;
    let (met, bounds, radicand) = if rk2 > 0.0 {
        let s = rd * one_minus_two_a / rk2;
        if s < 0.0 {
            // Imaginary radical: the bound excludes no value of c.
            (Some(true), None, Some(s))
        } else {
            let t = 2.0 * s.sqrt();
            let lo = one_minus_a - t;
            let hi = one_minus_a + t;
            (Some(c <= lo || c >= hi), Some((lo, hi)), Some(s))
        }
    } else {
        (None, None, None)
    };

    Ok(DoubleZeroQuery {
        a_value,
        quadratic,
        discriminant,
        b_roots,
        d_candidates,
        numeric_condition_met,
        closed_form_condition_met: met,
        closed_form_bounds: bounds,
        closed_form_radicand: radicand,
        one_minus_a,
        one_minus_two_a,
    })
}

/// Realize a double-zero candidate: adjust `beta` so the balanced share
/// equals `b_root`, then pin an investment function at the reconstructed
/// debt level. Returns the adjusted economy, the function, and that level.
///
/// At the result, the employment- and debt-direction eigenvalues of the
/// collapsed-wage linearization both vanish to rounding error.
pub fn realize_double_zero(
    c: f64,
    kappa2: f64,
    b_root: f64,
    p: &EconomyParams,
) -> Result<(EconomyParams, InvestmentFunction, f64), KeenError> {
    if !(b_root > c) {
        return Err(KeenError::Constraint {
            name: "root_above_floor",
            detail: format!("require b_root > c for a positive amplitude: {b_root} <= {c}"),
        });
    }
    let d = d_for_double_zero_root(p, b_root)?;
    let beta = b_root / p.nu - p.delta - p.alpha;
    let adjusted = EconomyParams::new(p.nu, p.alpha, beta, p.delta, p.r)?;
    let pi0 = 1.0 - adjusted.r * d;
    let kappa1 = (b_root - c) * (-kappa2 * pi0).exp();
    if !kappa1.is_finite() || kappa1 <= 0.0 {
        return Err(KeenError::numeric(format!(
            "amplitude recovery overflowed: kappa2*pi0 = {}",
            kappa2 * pi0
        )));
    }
    let kap = InvestmentFunction::new(c, kappa1, kappa2)?;
    Ok((adjusted, kap, d))
}
