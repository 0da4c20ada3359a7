//! Grid tooling: basin-of-attraction sampling over initial conditions and
//! parameter sweeps with per-point rest-point spectra.
//!
//! Both walk their grids in row-major order with the last coordinate
//! fastest, run points in parallel, and return rows in grid order so the
//! output is deterministic regardless of scheduling.

use super::{integrate, ConvergedTarget, IntegratorConfig, Termination};
use crate::construct::realize_kappa;
use crate::equilibria::{find_d0_roots, RootSearch};
use crate::error::KeenError;
use crate::model::{EconomyParams, InvestmentFunction, PhillipsCurve, State};
use crate::stability::{origin_eigenvalues, Classification, StabilityReport, MARGINAL_TOL};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Hard cap on basin grid size.
pub const MAX_BASIN_POINTS: usize = 1_000_000;
/// Hard cap on sweep size.
pub const MAX_SWEEP_POINTS: usize = 10_000;
/// Hard cap on swept axes.
pub const MAX_SWEEP_AXES: usize = 2;

/// Evenly spaced axis with `count` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn validate(&self) -> Result<(), KeenError> {
        if !self.min.is_finite() || !self.max.is_finite() || self.min > self.max {
            return Err(KeenError::InvalidConfig {
                what: format!("grid axis needs finite min <= max, got [{}, {}]", self.min, self.max),
            });
        }
        if self.count == 0 {
            return Err(KeenError::InvalidConfig {
                what: "grid axis needs at least one point".to_string(),
            });
        }
        if self.count == 1 && self.min != self.max {
            return Err(KeenError::InvalidConfig {
                what: format!(
                    "a single-point axis must have min == max, got [{}, {}]",
                    self.min, self.max
                ),
            });
        }
        Ok(())
    }

    pub fn value_at(&self, i: usize) -> f64 {
        if self.count == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
        }
    }
}

/// Initial-condition box for basin sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasinGrid {
    pub omega: GridAxis,
    pub lambda: GridAxis,
    pub d: GridAxis,
}

impl BasinGrid {
    pub fn validate(&self) -> Result<(), KeenError> {
        self.omega.validate()?;
        self.lambda.validate()?;
        self.d.validate()?;
        let total = self
            .omega
            .count
            .checked_mul(self.lambda.count)
            .and_then(|v| v.checked_mul(self.d.count))
            .unwrap_or(usize::MAX);
        if total > MAX_BASIN_POINTS {
            return Err(KeenError::InvalidConfig {
                what: format!("basin grid has {total} points, cap is {MAX_BASIN_POINTS}"),
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.omega.count * self.lambda.count * self.d.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point at flat index `i`, omega slowest, d fastest.
    pub fn point(&self, i: usize) -> State {
        let di = i % self.d.count;
        let li = (i / self.d.count) % self.lambda.count;
        let wi = i / (self.d.count * self.lambda.count);
        State::new(
            self.omega.value_at(wi),
            self.lambda.value_at(li),
            self.d.value_at(di),
        )
    }
}

/// Per-point outcome label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "label", rename_all = "snake_case")]
pub enum BasinOutcome {
    ReachedTEnd,
    Converged { target: ConvergedTarget, distance: f64 },
    ExplosiveDebt { t: f64 },
    DomainExit { t: f64 },
    Failed { message: String },
}

impl BasinOutcome {
    /// Summary key; converged points name their target.
    pub fn key(&self) -> String {
        match self {
            BasinOutcome::ReachedTEnd => "reached_t_end".to_string(),
            BasinOutcome::Converged { target: ConvergedTarget::TrivialDeflation { d0 }, .. } => {
                format!("converged(d0={d0:.4})")
            }
            BasinOutcome::Converged { target: ConvergedTarget::Interior { .. }, .. } => {
                "converged(interior)".to_string()
            }
            BasinOutcome::ExplosiveDebt { .. } => "explosive_debt".to_string(),
            BasinOutcome::DomainExit { .. } => "domain_exit".to_string(),
            BasinOutcome::Failed { .. } => "failed".to_string(),
        }
    }
}

/// Labeled basin grid with per-label counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasinResult {
    pub grid: BasinGrid,
    /// One outcome per grid point, in grid order.
    pub outcomes: Vec<BasinOutcome>,
    /// `(label, count)` pairs, sorted by label.
    pub summary: Vec<(String, usize)>,
}

/// Integrate from every grid point and label each by its termination.
/// Per-point failures become labels, never errors.
pub fn basin_sample(
    grid: &BasinGrid,
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
    cfg: &IntegratorConfig,
) -> Result<BasinResult, KeenError> {
    grid.validate()?;
    cfg.validate()?;
    let outcomes: Vec<BasinOutcome> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let s0 = grid.point(i);
            match integrate(&s0, p, phi, kap, cfg) {
                Ok(traj) => match traj.termination {
                    Termination::ReachedTEnd => BasinOutcome::ReachedTEnd,
                    Termination::ConvergedTo { target, distance } => {
                        BasinOutcome::Converged { target, distance }
                    }
                    Termination::ExplosiveDebt { t, .. } => BasinOutcome::ExplosiveDebt { t },
                    Termination::DomainExit { t, .. } => BasinOutcome::DomainExit { t },
                },
                Err(e) => BasinOutcome::Failed { message: e.to_string() },
            }
        })
        .collect();

    let mut counts = std::collections::BTreeMap::new();
    for o in &outcomes {
        *counts.entry(o.key()).or_insert(0usize) += 1;
    }
    Ok(BasinResult {
        grid: *grid,
        outcomes,
        summary: counts.into_iter().collect(),
    })
}

/// Scalar parameter selectable for sweeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamField {
    Nu,
    Alpha,
    Beta,
    Delta,
    R,
    C,
    Kappa1,
    Kappa2,
}

impl std::fmt::Display for ParamField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ParamField::Nu => "nu",
            ParamField::Alpha => "alpha",
            ParamField::Beta => "beta",
            ParamField::Delta => "delta",
            ParamField::R => "r",
            ParamField::C => "c",
            ParamField::Kappa1 => "kappa1",
            ParamField::Kappa2 => "kappa2",
        };
        f.write_str(name)
    }
}

/// Investment-function input for a sweep: either literal parameters or a
/// pin-at-`d0` build request resolved per point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "request", rename_all = "snake_case")]
pub enum KappaSpec {
    Literal { c: f64, kappa1: f64, kappa2: f64 },
    Build { d0: f64, c: f64, kappa2: f64 },
}

impl KappaSpec {
    fn apply(&mut self, field: ParamField, value: f64) -> Result<(), KeenError> {
        match self {
            KappaSpec::Literal { c, kappa1, kappa2 } => match field {
                ParamField::C => *c = value,
                ParamField::Kappa1 => *kappa1 = value,
                ParamField::Kappa2 => *kappa2 = value,
                _ => unreachable!("economy fields are routed to EconomyParams"),
            },
            KappaSpec::Build { c, kappa2, .. } => match field {
                ParamField::C => *c = value,
                ParamField::Kappa2 => *kappa2 = value,
                ParamField::Kappa1 => {
                    return Err(KeenError::InvalidConfig {
                        what: "kappa1 is derived under a build request and cannot be swept"
                            .to_string(),
                    })
                }
                _ => unreachable!("economy fields are routed to EconomyParams"),
            },
        }
        Ok(())
    }

    fn resolve(&self, p: &EconomyParams) -> Result<InvestmentFunction, KeenError> {
        match *self {
            KappaSpec::Literal { c, kappa1, kappa2 } => {
                InvestmentFunction::new(c, kappa1, kappa2)
            }
            KappaSpec::Build { d0, c, kappa2 } => realize_kappa(d0, c, kappa2, p),
        }
    }
}

/// One swept parameter and the values it takes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub field: ParamField,
    pub values: Vec<f64>,
}

impl SweepAxis {
    pub fn linspace(field: ParamField, min: f64, max: f64, count: usize) -> Self {
        let axis = GridAxis { min, max, count };
        SweepAxis {
            field,
            values: (0..count).map(|i| axis.value_at(i)).collect(),
        }
    }
}

/// Spectrum at one collapsed-wage root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRootEntry {
    pub d0: f64,
    pub eigenvalues: [f64; 3],
    /// Sign of each eigenvalue: -1, 0 (within the marginal band), or 1.
    pub signs: [i8; 3],
    pub classification: Classification,
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Swept values, in axis order.
    pub values: Vec<f64>,
    pub roots: Vec<SweepRootEntry>,
    /// Failure note when this point could not be evaluated.
    pub error: Option<String>,
}

/// Sweep output: axis order plus rows in row-major grid order
/// (last axis fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub fields: Vec<ParamField>,
    pub rows: Vec<SweepRow>,
}

fn eig_sign(e: f64) -> i8 {
    if e > MARGINAL_TOL {
        1
    } else if e < -MARGINAL_TOL {
        -1
    } else {
        0
    }
}

fn sweep_point(
    base_p: &EconomyParams,
    phi: &PhillipsCurve,
    base_kappa: &KappaSpec,
    axes: &[SweepAxis],
    values: &[f64],
    search: &RootSearch,
) -> Result<Vec<SweepRootEntry>, KeenError> {
    let mut p = *base_p;
    let mut ks = *base_kappa;
    for (axis, &v) in axes.iter().zip(values) {
        match axis.field {
            ParamField::Nu => p.nu = v,
            ParamField::Alpha => p.alpha = v,
            ParamField::Beta => p.beta = v,
            ParamField::Delta => p.delta = v,
            ParamField::R => p.r = v,
            other => ks.apply(other, v)?,
        }
    }
    p.validate()?;
    let kap = ks.resolve(&p)?;
    let roots = find_d0_roots(&p, &kap, search)?;
    let mut out = Vec::with_capacity(roots.len());
    for d0 in roots {
        let ev = origin_eigenvalues(&p, phi, &kap, d0)?;
        out.push(SweepRootEntry {
            d0,
            eigenvalues: ev,
            signs: [eig_sign(ev[0]), eig_sign(ev[1]), eig_sign(ev[2])],
            classification: StabilityReport::from_real(ev).classification,
        });
    }
    Ok(out)
}

/// Evaluate rest-point spectra over a parameter grid.
///
/// With no axes the table has a single row at the base configuration.
/// Axis combinations that cannot be built (for instance sweeping `kappa1`
/// under a build request) fail the whole sweep; per-point evaluation
/// failures are recorded in the affected row instead.
pub fn sweep(
    base_p: &EconomyParams,
    phi: &PhillipsCurve,
    base_kappa: &KappaSpec,
    axes: &[SweepAxis],
    search: &RootSearch,
) -> Result<SweepTable, KeenError> {
    if axes.len() > MAX_SWEEP_AXES {
        return Err(KeenError::InvalidConfig {
            what: format!("at most {MAX_SWEEP_AXES} sweep axes supported, got {}", axes.len()),
        });
    }
    let mut total = 1usize;
    for axis in axes {
        if axis.values.is_empty() {
            return Err(KeenError::InvalidConfig {
                what: format!("sweep axis {} has no values", axis.field),
            });
        }
        if axis.values.iter().any(|v| !v.is_finite()) {
            return Err(KeenError::InvalidConfig {
                what: format!("sweep axis {} contains non-finite values", axis.field),
            });
        }
        total = total.saturating_mul(axis.values.len());
    }
    if total > MAX_SWEEP_POINTS {
        return Err(KeenError::InvalidConfig {
            what: format!("sweep has {total} points, cap is {MAX_SWEEP_POINTS}"),
        });
    }
    if matches!(base_kappa, KappaSpec::Build { .. })
        && axes.iter().any(|a| a.field == ParamField::Kappa1)
    {
        return Err(KeenError::InvalidConfig {
            what: "kappa1 is derived under a build request and cannot be swept".to_string(),
        });
    }
    search.validate()?;

    let rows: Vec<SweepRow> = (0..total)
        .into_par_iter()
        .map(|flat| {
            // Row-major decode, last axis fastest.
            let mut values = vec![0.0; axes.len()];
            let mut rem = flat;
            for (ai, axis) in axes.iter().enumerate().rev() {
                values[ai] = axis.values[rem % axis.values.len()];
                rem /= axis.values.len();
            }
            match sweep_point(base_p, phi, base_kappa, axes, &values, search) {
                Ok(roots) => SweepRow { values, roots, error: None },
                Err(e) => SweepRow { values: values.clone(), roots: Vec::new(), error: Some(e.to_string()) },
            }
        })
        .collect();

    Ok(SweepTable {
        fields: axes.iter().map(|a| a.field).collect(),
        rows,
    })
}
