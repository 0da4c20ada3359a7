//! Core model state, parameters, behavioural curves, and vector fields.
//!
//! The three-variable system tracks the wage share `omega`, the employment
//! rate `lambda`, and the private debt-to-output ratio `d`. Wages respond to
//! employment through a Phillips curve and investment responds to the net
//! profit share through an exponential investment function.

use crate::error::KeenError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Structural parameters of the economy. All rates are per year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomyParams {
    /// Capital-to-output ratio (years of output per unit of capital).
    pub nu: f64,
    /// Labour productivity growth rate.
    pub alpha: f64,
    /// Labour force growth rate.
    pub beta: f64,
    /// Capital depreciation rate.
    pub delta: f64,
    /// Real interest rate on outstanding debt.
    pub r: f64,
}

impl EconomyParams {
    pub fn new(nu: f64, alpha: f64, beta: f64, delta: f64, r: f64) -> Result<Self, KeenError> {
        let p = EconomyParams {
            nu,
            alpha,
            beta,
            delta,
            r,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), KeenError> {
        let all = [self.nu, self.alpha, self.beta, self.delta, self.r];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(KeenError::invalid("economy parameters must be finite"));
        }
        if self.nu <= 0.0 {
            return Err(KeenError::invalid(format!(
                "capital-to-output ratio nu must be positive, got {}",
                self.nu
            )));
        }
        if self.delta < 0.0 {
            return Err(KeenError::invalid(format!(
                "depreciation rate delta must be non-negative, got {}",
                self.delta
            )));
        }
        if self.alpha + self.beta <= 0.0 {
            return Err(KeenError::invalid(format!(
                "combined growth rate alpha + beta must be positive, got {}",
                self.alpha + self.beta
            )));
        }
        Ok(())
    }

    /// Real growth rate of potential output, `alpha + beta`.
    pub fn growth_rate(&self) -> f64 {
        self.alpha + self.beta
    }

    /// Investment share that sustains balanced growth: `nu (alpha+beta+delta)`.
    pub fn balanced_investment_share(&self) -> f64 {
        self.nu * (self.alpha + self.beta + self.delta)
    }

    /// Investment share pinned by interest and depreciation: `nu (r+delta)`.
    pub fn interest_investment_share(&self) -> f64 {
        self.nu * (self.r + self.delta)
    }
}

/// Wage-bargaining curve: maps the employment rate to real wage growth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum PhillipsCurve {
    /// `Phi(lambda) = -phi0 + phi1 * lambda`, defined for all real `lambda`.
    Linear { phi0: f64, phi1: f64 },
    /// `Phi(lambda) = phi1 / (1 - lambda)^2 - phi0`, defined on `[0, 1)`.
    Rational { phi0: f64, phi1: f64 },
}

impl PhillipsCurve {
    pub fn linear(phi0: f64, phi1: f64) -> Result<Self, KeenError> {
        Self::check_coeffs(phi0, phi1)?;
        Ok(PhillipsCurve::Linear { phi0, phi1 })
    }

    pub fn rational(phi0: f64, phi1: f64) -> Result<Self, KeenError> {
        Self::check_coeffs(phi0, phi1)?;
        Ok(PhillipsCurve::Rational { phi0, phi1 })
    }

    fn check_coeffs(phi0: f64, phi1: f64) -> Result<(), KeenError> {
        if !phi0.is_finite() || !phi1.is_finite() || phi0 <= 0.0 || phi1 <= 0.0 {
            return Err(KeenError::invalid(format!(
                "Phillips coefficients must be finite and positive, got phi0 = {phi0}, phi1 = {phi1}"
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), KeenError> {
        let (PhillipsCurve::Linear { phi0, phi1 } | PhillipsCurve::Rational { phi0, phi1 }) = self;
        Self::check_coeffs(*phi0, *phi1)
    }

    /// Wage growth at employment rate `lam`.
    pub fn eval(&self, lam: f64) -> Result<f64, KeenError> {
        match *self {
            PhillipsCurve::Linear { phi0, phi1 } => Ok(-phi0 + phi1 * lam),
            PhillipsCurve::Rational { phi0, phi1 } => {
                if !(0.0..1.0).contains(&lam) {
                    return Err(KeenError::Domain {
                        function: "phillips",
                        detail: format!("rational form requires lambda in [0, 1), got {lam}"),
                    });
                }
                let one_minus = 1.0 - lam;
                Ok(phi1 / (one_minus * one_minus) - phi0)
            }
        }
    }

    /// Slope of the curve at `lam`. Positive everywhere on the domain.
    pub fn slope(&self, lam: f64) -> Result<f64, KeenError> {
        match *self {
            PhillipsCurve::Linear { phi1, .. } => Ok(phi1),
            PhillipsCurve::Rational { phi1, .. } => {
                if !(0.0..1.0).contains(&lam) {
                    return Err(KeenError::Domain {
                        function: "phillips_slope",
                        detail: format!("rational form requires lambda in [0, 1), got {lam}"),
                    });
                }
                let one_minus = 1.0 - lam;
                Ok(2.0 * phi1 / (one_minus * one_minus * one_minus))
            }
        }
    }

    /// Employment rate at which wage growth equals `y`.
    ///
    /// For the rational form the range is `[Phi(0), +inf)`; values below
    /// `Phi(0)` have no preimage in `[0, 1)` and yield a range error.
    pub fn inverse(&self, y: f64) -> Result<f64, KeenError> {
        match *self {
            PhillipsCurve::Linear { phi0, phi1 } => Ok((y + phi0) / phi1),
            PhillipsCurve::Rational { phi0, phi1 } => {
                let floor = phi1 - phi0;
                if y < floor {
                    return Err(KeenError::InverseRange {
                        function: "phillips",
                        target: y,
                        requirement: format!("rational form requires y >= Phi(0) = {floor}"),
                    });
                }
                Ok(1.0 - (phi1 / (y + phi0)).sqrt())
            }
        }
    }

    /// Wage growth at zero employment, `Phi(0)`. Defined for both forms.
    pub fn at_zero(&self) -> f64 {
        match *self {
            PhillipsCurve::Linear { phi0, .. } => -phi0,
            PhillipsCurve::Rational { phi0, phi1 } => phi1 - phi0,
        }
    }

    /// Upper end of the domain, if the curve has one.
    pub fn domain_sup(&self) -> Option<f64> {
        match self {
            PhillipsCurve::Linear { .. } => None,
            PhillipsCurve::Rational { .. } => Some(1.0),
        }
    }
}

/// Exponential investment function `kappa(x) = c + kappa1 * exp(kappa2 * x)`,
/// mapping the net profit share to the investment share of output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvestmentFunction {
    /// Investment floor: the limit of `kappa` as profits fall without bound.
    pub c: f64,
    /// Scale of the exponential part. Positive.
    pub kappa1: f64,
    /// Sensitivity of investment to profits. Positive.
    pub kappa2: f64,
}

impl InvestmentFunction {
    pub fn new(c: f64, kappa1: f64, kappa2: f64) -> Result<Self, KeenError> {
        let k = InvestmentFunction { c, kappa1, kappa2 };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<(), KeenError> {
        if ![self.c, self.kappa1, self.kappa2]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(KeenError::invalid(
                "investment function coefficients must be finite",
            ));
        }
        if self.kappa1 <= 0.0 || self.kappa2 <= 0.0 {
            return Err(KeenError::invalid(format!(
                "investment function requires kappa1 > 0 and kappa2 > 0, got kappa1 = {}, kappa2 = {}",
                self.kappa1, self.kappa2
            )));
        }
        Ok(())
    }

    /// Investment share at net profit share `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.c + self.exponential_part(x)
    }

    /// The exponential part `kappa1 * exp(kappa2 * x)` alone.
    pub fn exponential_part(&self, x: f64) -> f64 {
        self.kappa1 * (self.kappa2 * x).exp()
    }

    /// Derivative `kappa2 * kappa1 * exp(kappa2 * x)`.
    pub fn prime(&self, x: f64) -> f64 {
        self.kappa2 * self.exponential_part(x)
    }

    /// Profit share at which investment equals `y`. Requires `y > c`.
    pub fn inverse(&self, y: f64) -> Result<f64, KeenError> {
        if y <= self.c {
            return Err(KeenError::InverseRange {
                function: "kappa",
                target: y,
                requirement: format!("exponential form requires y > floor c = {}", self.c),
            });
        }
        Ok(((y - self.c) / self.kappa1).ln() / self.kappa2)
    }

    /// Limit of investment as the profit share falls without bound.
    pub fn floor(&self) -> f64 {
        self.c
    }
}

/// Instantaneous state of the three-variable system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    /// Wage share of output.
    pub omega: f64,
    /// Employment rate.
    #[serde(rename = "lambda")]
    pub lam: f64,
    /// Debt-to-output ratio.
    pub d: f64,
}

impl State {
    pub fn new(omega: f64, lam: f64, d: f64) -> Self {
        State { omega, lam, d }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.omega, self.lam, self.d]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        State {
            omega: a[0],
            lam: a[1],
            d: a[2],
        }
    }

    /// Euclidean distance to another state.
    pub fn distance(&self, other: &State) -> f64 {
        let dw = self.omega - other.omega;
        let dl = self.lam - other.lam;
        let dd = self.d - other.d;
        (dw * dw + dl * dl + dd * dd).sqrt()
    }
}

/// Net profit share `pi = 1 - omega - r d`.
pub fn net_profit(s: &State, p: &EconomyParams) -> f64 {
    1.0 - s.omega - p.r * s.d
}

/// Right-hand side of the three-variable system:
///
/// ```text
/// omega' = omega (Phi(lambda) - alpha)
/// lambda' = lambda (kappa(pi)/nu - alpha - beta - delta)
/// d'      = d (r - kappa(pi)/nu + delta) + kappa(pi) - (1 - omega)
/// ```
///
/// The `omega = 0` and `lambda = 0` planes are invariant: each component
/// carries its own state factor, so a zero coordinate stays exactly zero.
pub fn keen_vector_field(
    s: &State,
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
) -> Result<[f64; 3], KeenError> {
    let pi = net_profit(s, p);
    let wage_growth = phi.eval(s.lam)?;
    let inv = kap.eval(pi);
    let g = inv / p.nu;
    Ok([
        s.omega * (wage_growth - p.alpha),
        s.lam * (g - (p.alpha + p.beta + p.delta)),
        s.d * (p.r - g + p.delta) + inv - (1.0 - s.omega),
    ])
}

/// Two-variable wage/employment system with a linear Phillips curve and all
/// profits invested:
///
/// ```text
/// omega' = omega (-phi0 + phi1 lambda - alpha)
/// lambda' = lambda ((1 - omega)/nu - alpha - beta - delta)
/// ```
pub fn goodwin_vector_field(
    omega: f64,
    lam: f64,
    p: &EconomyParams,
    phi0: f64,
    phi1: f64,
) -> [f64; 2] {
    [
        omega * (-phi0 + phi1 * lam - p.alpha),
        lam * ((1.0 - omega) / p.nu - (p.alpha + p.beta + p.delta)),
    ]
}

/// Named qualitative requirements on the model ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    /// The investment function is smooth on the real line.
    KappaSmooth,
    /// The investment function is strictly increasing.
    KappaIncreasing,
    /// The investment floor sits below the balanced-growth share:
    /// `c < nu (alpha + beta + delta)`.
    KappaFloor,
    /// The investment function exceeds the balanced-growth share for large
    /// profits.
    KappaCeiling,
    /// Investment falls off at least exponentially as profits collapse.
    KappaTailDecay,
    /// The Phillips curve is strictly increasing.
    PhillipsIncreasing,
    /// Wage growth at zero employment is below productivity growth:
    /// `Phi(0) < alpha`.
    PhillipsOriginBelowAlpha,
    /// The balanced-growth investment share is feasible:
    /// `nu (alpha + beta + delta) < 1`.
    InvestmentShareFeasible,
    /// The real interest rate is below the real growth rate: `r < alpha + beta`.
    InterestBelowGrowth,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Assumption::KappaSmooth => "kappa_smooth",
            Assumption::KappaIncreasing => "kappa_increasing",
            Assumption::KappaFloor => "kappa_floor",
            Assumption::KappaCeiling => "kappa_ceiling",
            Assumption::KappaTailDecay => "kappa_tail_decay",
            Assumption::PhillipsIncreasing => "phillips_increasing",
            Assumption::PhillipsOriginBelowAlpha => "phillips_origin_below_alpha",
            Assumption::InvestmentShareFeasible => "investment_share_feasible",
            Assumption::InterestBelowGrowth => "interest_below_growth",
        };
        f.write_str(s)
    }
}

/// Outcome of checking one assumption.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionCheck {
    pub assumption: Assumption,
    pub passed: bool,
    /// Human-readable comparison with the numbers that were checked.
    pub note: String,
}

/// Full assumption audit for a parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub checks: Vec<AssumptionCheck>,
}

impl AssumptionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &AssumptionCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, a: Assumption) -> Option<&AssumptionCheck> {
        self.checks.iter().find(|c| c.assumption == a)
    }
}

/// Audit every qualitative requirement for the supplied ingredients.
///
/// Checks that hold identically for the exponential investment family and
/// for validly constructed Phillips curves are still listed, marked passed,
/// with a note saying why.
pub fn validate_assumptions(
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
) -> AssumptionReport {
    let b = p.balanced_investment_share();
    let mut checks = Vec::new();

    checks.push(AssumptionCheck {
        assumption: Assumption::KappaSmooth,
        passed: true,
        note: "exponential family is smooth on the whole real line".to_string(),
    });
    checks.push(AssumptionCheck {
        assumption: Assumption::KappaIncreasing,
        passed: kap.kappa1 > 0.0 && kap.kappa2 > 0.0,
        note: format!(
            "kappa' = kappa2 * kappa1 * exp(kappa2 x) > 0 since kappa1 = {} and kappa2 = {}",
            kap.kappa1, kap.kappa2
        ),
    });
    checks.push(AssumptionCheck {
        assumption: Assumption::KappaFloor,
        passed: kap.c < b,
        note: format!(
            "floor c = {} vs balanced-growth share nu(alpha+beta+delta) = {}",
            kap.c, b
        ),
    });
    checks.push(AssumptionCheck {
        assumption: Assumption::KappaCeiling,
        passed: true,
        note: "kappa grows without bound as profits rise (kappa2 > 0)".to_string(),
    });
    checks.push(AssumptionCheck {
        assumption: Assumption::KappaTailDecay,
        passed: true,
        note: "exponential family decays to its floor exponentially fast".to_string(),
    });
    let slope_ok = match phi {
        PhillipsCurve::Linear { phi1, .. } | PhillipsCurve::Rational { phi1, .. } => *phi1 > 0.0,
    };
    checks.push(AssumptionCheck {
        assumption: Assumption::PhillipsIncreasing,
        passed: slope_ok,
        note: "slope is positive everywhere on the curve's domain".to_string(),
    });
    let phi0_val = phi.at_zero();
    checks.push(AssumptionCheck {
        assumption: Assumption::PhillipsOriginBelowAlpha,
        passed: phi0_val < p.alpha,
        note: format!("Phi(0) = {} vs alpha = {}", phi0_val, p.alpha),
    });
    checks.push(AssumptionCheck {
        assumption: Assumption::InvestmentShareFeasible,
        passed: b < 1.0,
        note: format!("nu(alpha+beta+delta) = {b} vs 1"),
    });
    checks.push(AssumptionCheck {
        assumption: Assumption::InterestBelowGrowth,
        passed: p.r < p.growth_rate(),
        note: format!("r = {} vs alpha + beta = {}", p.r, p.growth_rate()),
    });

    AssumptionReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_params() -> EconomyParams {
        EconomyParams::new(3.0, 0.05, 0.03, 0.1, 0.03).unwrap()
    }

    fn example_phillips() -> PhillipsCurve {
        let denom = 1.0 - 0.04 * 0.04;
        PhillipsCurve::rational(0.04 / denom, 0.04f64.powi(3) / denom).unwrap()
    }

    fn example_kappa() -> InvestmentFunction {
        InvestmentFunction::new(0.34, 0.0836, 0.6829).unwrap()
    }

    #[test]
    fn economy_params_reject_bad_values() {
        assert!(EconomyParams::new(0.0, 0.05, 0.03, 0.1, 0.03).is_err());
        assert!(EconomyParams::new(3.0, 0.05, 0.03, -0.1, 0.03).is_err());
        assert!(EconomyParams::new(3.0, -0.05, 0.05, 0.1, 0.03).is_err());
        assert!(EconomyParams::new(3.0, f64::NAN, 0.03, 0.1, 0.03).is_err());
        assert!(EconomyParams::new(3.0, 0.05, 0.03, 0.1, -0.02).is_ok());
    }

    #[test]
    fn net_profit_hand_values() {
        let p = example_params();
        assert_eq!(net_profit(&State::new(0.0, 0.0, 0.0), &p), 1.0);
        let pi = net_profit(&State::new(0.0, 0.0, -9.21), &p);
        assert!((pi - 1.2763).abs() < 1e-12);
        let pi = net_profit(&State::new(0.9, 0.9, 1.0), &p);
        assert!((pi - 0.07).abs() < 1e-12);
    }

    #[test]
    fn rational_phillips_matches_hand_values() {
        let phi = example_phillips();
        // phi1 - phi0 = (0.04^3 - 0.04) / (1 - 0.04^2) = -0.04 exactly.
        assert!((phi.at_zero() + 0.04).abs() < 1e-15);
        assert!(phi.eval(1.0).is_err());
        assert!(phi.eval(-0.01).is_err());
        assert!(phi.eval(0.97).unwrap() > 0.0);
        let slope = phi.slope(0.9).unwrap();
        assert!(slope > 0.0);
    }

    #[test]
    fn linear_phillips_inverse_round_trip() {
        let phi = PhillipsCurve::linear(0.04, 0.38).unwrap();
        let lam = phi.inverse(0.15).unwrap();
        assert!((lam - 0.5).abs() < 1e-14);
        assert!((phi.eval(lam).unwrap() - 0.15).abs() < 1e-14);
    }

    #[test]
    fn rational_phillips_inverse_matches_bisection() {
        let phi = example_phillips();
        let target = 0.05;
        let lam = phi.inverse(target).unwrap();
        // Independent bisection on [0, 1) for the same preimage.
        let (mut lo, mut hi) = (0.0_f64, 1.0 - 1e-12);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if phi.eval(mid).unwrap() < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lam - 0.5 * (lo + hi)).abs() < 1e-10);
        assert!((lam - 0.973_321_473_574_389_6).abs() < 1e-12);
    }

    #[test]
    fn rational_phillips_inverse_range_error() {
        let phi = example_phillips();
        let err = phi.inverse(-0.05).unwrap_err();
        assert!(matches!(err, KeenError::InverseRange { function: "phillips", .. }));
    }

    #[test]
    fn kappa_eval_and_inverse() {
        let kap = example_kappa();
        // Frozen from a 40-digit evaluation of 0.34 + 0.0836 exp(0.6829 * 1.2763).
        assert!((kap.eval(1.2763) - 0.539_862_332_111_396_8).abs() < 1e-14);
        let x = kap.inverse(0.54).unwrap();
        assert!((kap.eval(x) - 0.54).abs() < 1e-14);
        assert!(kap.inverse(0.34).is_err());
        assert!(kap.inverse(0.2).is_err());
        assert!((kap.floor() - 0.34).abs() == 0.0);
    }

    #[test]
    fn kappa_prime_identity() {
        let kap = example_kappa();
        for x in [-3.0, -0.5, 0.0, 0.7, 1.2763, 4.0] {
            let direct = kap.prime(x);
            let identity = kap.kappa2 * (kap.eval(x) - kap.c);
            assert!((direct - identity).abs() <= 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn keen_field_vanishes_when_kappa_balances() {
        // kappa(1) = 1 exactly: c = 0.5, kappa1 = 0.5 / e, kappa2 = 1.
        let p = example_params();
        let phi = PhillipsCurve::linear(0.04, 0.3).unwrap();
        let kap = InvestmentFunction::new(0.5, 0.5 / std::f64::consts::E, 1.0).unwrap();
        let f = keen_vector_field(&State::new(0.0, 0.0, 0.0), &p, &phi, &kap).unwrap();
        assert_eq!(f[0], 0.0);
        assert_eq!(f[1], 0.0);
        assert!(f[2].abs() < 1e-15);
    }

    #[test]
    fn keen_field_matches_frozen_point() {
        let p = example_params();
        let phi = example_phillips();
        let kap = example_kappa();
        let f = keen_vector_field(&State::new(0.8, 0.9, 0.1), &p, &phi, &kap).unwrap();
        // Frozen from a 40-digit independent evaluation.
        assert!((f[0] - (-0.066_923_076_923_076_92)).abs() < 1e-14);
        assert!((f[1] - (-0.031_308_468_321_332_64)).abs() < 1e-14);
        assert!((f[2] - 0.234_117_157_631_261_5).abs() < 1e-13);
    }

    #[test]
    fn goodwin_field_matches_hand_values() {
        let p = example_params();
        let f = goodwin_vector_field(0.7, 0.85, &p, 0.04, 0.12);
        assert!((f[0] - 0.0084).abs() < 1e-15);
        assert!((f[1] - (-0.068)).abs() < 1e-15);
        // Interior rest point: lambda* = (phi0 + alpha)/phi1, omega* = 1 - nu(alpha+beta+delta).
        let lam_star = (0.04 + p.alpha) / 0.12;
        let omega_star = 1.0 - p.balanced_investment_share();
        let f = goodwin_vector_field(omega_star, lam_star, &p, 0.04, 0.12);
        assert!(f[0].abs() < 1e-15 && f[1].abs() < 1e-15);
    }

    #[test]
    fn keen_with_unit_investment_is_not_goodwin() {
        // Restricting the full system to d = 0 does not reduce it to the
        // two-variable system: kappa(1 - omega) differs from 1 - omega.
        let p = example_params();
        let phi0 = 0.04;
        let phi1 = 0.12;
        let phi = PhillipsCurve::linear(phi0, phi1).unwrap();
        let kap = example_kappa();
        let s = State::new(0.7, 0.85, 0.0);
        let keen = keen_vector_field(&s, &p, &phi, &kap).unwrap();
        let goodwin = goodwin_vector_field(0.7, 0.85, &p, phi0, phi1);
        assert!((keen[0] - goodwin[0]).abs() < 1e-15); // wage equations agree
        assert!((keen[1] - goodwin[1]).abs() > 1e-3); // employment equations differ
    }

    #[test]
    fn assumption_report_example_values() {
        let p = example_params();
        let report = validate_assumptions(&p, &example_phillips(), &example_kappa());
        assert!(report.all_passed());
        // Raising the floor above the balanced-growth share fails exactly one check.
        let high_floor = InvestmentFunction::new(0.6, 0.0836, 0.6829).unwrap();
        let report = validate_assumptions(&p, &example_phillips(), &high_floor);
        assert!(!report.all_passed());
        let failed: Vec<_> = report.failed().collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].assumption, Assumption::KappaFloor);
    }

    #[test]
    fn assumption_report_flags_interest_and_share() {
        let p = EconomyParams::new(3.0, 0.05, 0.03, 0.3, 0.09).unwrap();
        let report = validate_assumptions(&p, &example_phillips(), &example_kappa());
        assert!(!report.get(Assumption::InvestmentShareFeasible).unwrap().passed);
        assert!(!report.get(Assumption::InterestBelowGrowth).unwrap().passed);
    }
}
