//! Run configuration: strict JSON schema, dotted-path `--set` overrides,
//! and resolution into library types.
//!
//! Every block rejects unknown keys so a typo'd parameter fails loudly
//! instead of silently running with a default.

use crate::Failure;
use keen::{
    EconomyParams, IntegratorConfig, InvestmentFunction, KappaSpec, Method, ParamField,
    PhillipsCurve, RootSearch, State, SweepAxis,
};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub economy: EconomyBlock,
    pub phillips: PhillipsBlock,
    pub kappa: KappaBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integrator: Option<IntegratorBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulate: Option<SimulateBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepBlock>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomyBlock {
    pub nu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub r: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhillipsBlock {
    /// `"linear"` or `"rational"`.
    pub form: String,
    pub phi0: f64,
    pub phi1: f64,
}

/// Investment curve: either literal parameters `{c, kappa1, kappa2}` or a
/// construction request `{build: {d0, c, kappa2}}`. Exactly one shape.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build: Option<BuildBlock>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildBlock {
    pub d0: f64,
    pub c: f64,
    pub kappa2: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_interval: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_explode: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq_tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodBlock {
    /// `"adaptive_rk45"` or `"fixed_rk4"`.
    pub method: String,
    /// Fixed-step size; `fixed_rk4` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_step: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateBlock {
    pub initial: InitialBlock,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialBlock {
    pub omega: f64,
    pub lambda: f64,
    pub d: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub axes: Vec<AxisBlock>,
}

/// One sweep axis: explicit `values` or an evenly spaced
/// `min`/`max`/`count` range. Exactly one shape.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisBlock {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

/// Library-typed view of a validated configuration.
pub struct Resolved {
    pub economy: EconomyParams,
    pub phillips: PhillipsCurve,
    pub kappa: ResolvedKappa,
    pub integrator: IntegratorConfig,
    pub search: RootSearch,
    pub initial: Option<State>,
    pub sweep_axes: Option<Vec<SweepAxis>>,
}

#[derive(Debug, Clone)]
pub enum ResolvedKappa {
    Literal(InvestmentFunction),
    Build { d0: f64, c: f64, kappa2: f64 },
}

impl ResolvedKappa {
    /// A concrete investment function: literal parameters as given, build
    /// requests realized by pinning stationarity at their `d0` (without
    /// the admissibility gates; `build-kappa` is the gated path).
    pub fn investment(&self, p: &EconomyParams) -> Result<InvestmentFunction, Failure> {
        match self {
            ResolvedKappa::Literal(k) => Ok(*k),
            ResolvedKappa::Build { d0, c, kappa2 } => {
                keen::realize_kappa(*d0, *c, *kappa2, p).map_err(Failure::from_keen)
            }
        }
    }

    pub fn to_spec(&self) -> KappaSpec {
        match self {
            ResolvedKappa::Literal(k) => KappaSpec::Literal {
                c: k.c,
                kappa1: k.kappa1,
                kappa2: k.kappa2,
            },
            ResolvedKappa::Build { d0, c, kappa2 } => KappaSpec::Build {
                d0: *d0,
                c: *c,
                kappa2: *kappa2,
            },
        }
    }
}

/// Read, override, parse, and structurally validate a configuration file.
pub fn load(path: &Path, sets: &[String]) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::Usage(format!("cannot read config {}: {e}", path.display()))
    })?;
    if sets.is_empty() {
        // Parsing straight from text keeps line/column info in diagnostics.
        return serde_json::from_str(&text).map_err(|e| {
            Failure::Usage(format!("config {}: {e}", path.display()))
        });
    }
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
        Failure::Usage(format!("config {}: {e}", path.display()))
    })?;
    for spec in sets {
        apply_set(&mut value, spec)?;
    }
    serde_json::from_value(value).map_err(|e| {
        Failure::Usage(format!("config {} (after --set overrides): {e}", path.display()))
    })
}

/// Apply one `key.path=value` override to the raw JSON document. The value
/// is parsed as JSON when possible and taken as a string otherwise.
fn apply_set(root: &mut serde_json::Value, spec: &str) -> Result<(), Failure> {
    let (path, raw) = spec.split_once('=').ok_or_else(|| {
        Failure::Usage(format!("--set expects KEY=VALUE, got `{spec}`"))
    })?;
    let leaf: serde_json::Value = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let parts: Vec<&str> = path.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Failure::Usage(format!("--set key `{path}` has an empty segment")));
    }
    let mut cur = root;
    for part in &parts[..parts.len() - 1] {
        let obj = cur.as_object_mut().ok_or_else(|| {
            Failure::Usage(format!("--set {path}: `{part}` is not inside an object"))
        })?;
        cur = obj
            .entry(part.to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    let obj = cur.as_object_mut().ok_or_else(|| {
        Failure::Usage(format!("--set {path}: target is not an object"))
    })?;
    obj.insert(parts[parts.len() - 1].to_string(), leaf);
    Ok(())
}

fn parse_field(name: &str) -> Result<ParamField, Failure> {
    Ok(match name {
        "nu" => ParamField::Nu,
        "alpha" => ParamField::Alpha,
        "beta" => ParamField::Beta,
        "delta" => ParamField::Delta,
        "r" => ParamField::R,
        "c" => ParamField::C,
        "kappa1" => ParamField::Kappa1,
        "kappa2" => ParamField::Kappa2,
        other => {
            return Err(Failure::Usage(format!(
                "unknown sweep field `{other}` (expected nu, alpha, beta, delta, r, c, kappa1, or kappa2)"
            )))
        }
    })
}

impl RunConfig {
    /// Convert into library types, validating every block.
    pub fn resolve(&self) -> Result<Resolved, Failure> {
        let economy = EconomyParams::new(
            self.economy.nu,
            self.economy.alpha,
            self.economy.beta,
            self.economy.delta,
            self.economy.r,
        )
        .map_err(Failure::from_keen)?;

        let phillips = match self.phillips.form.as_str() {
            "linear" => PhillipsCurve::linear(self.phillips.phi0, self.phillips.phi1),
            "rational" => PhillipsCurve::rational(self.phillips.phi0, self.phillips.phi1),
            other => {
                return Err(Failure::Usage(format!(
                    "phillips.form must be \"linear\" or \"rational\", got \"{other}\""
                )))
            }
        }
        .map_err(Failure::from_keen)?;

        let kappa = self.resolve_kappa()?;
        let integrator = self.resolve_integrator()?;
        integrator.validate().map_err(Failure::from_keen)?;

        let defaults = RootSearch::default();
        let block = self.search.clone().unwrap_or(SearchBlock { interval: None, samples: None });
        let search = RootSearch {
            interval: block
                .interval
                .map(|iv| (iv[0], iv[1]))
                .unwrap_or(defaults.interval),
            samples: block.samples.unwrap_or(defaults.samples),
        };
        search.validate().map_err(Failure::from_keen)?;

        let initial = self
            .simulate
            .as_ref()
            .map(|s| State::new(s.initial.omega, s.initial.lambda, s.initial.d));

        let sweep_axes = match &self.sweep {
            None => None,
            Some(block) => {
                let mut axes = Vec::with_capacity(block.axes.len());
                for axis in &block.axes {
                    axes.push(axis.resolve()?);
                }
                Some(axes)
            }
        };

        Ok(Resolved { economy, phillips, kappa, integrator, search, initial, sweep_axes })
    }

    fn resolve_kappa(&self) -> Result<ResolvedKappa, Failure> {
        let k = &self.kappa;
        match (k.c, k.kappa1, k.kappa2, &k.build) {
            (Some(c), Some(kappa1), Some(kappa2), None) => {
                InvestmentFunction::new(c, kappa1, kappa2)
                    .map(ResolvedKappa::Literal)
                    .map_err(Failure::from_keen)
            }
            (None, None, None, Some(b)) => Ok(ResolvedKappa::Build {
                d0: b.d0,
                c: b.c,
                kappa2: b.kappa2,
            }),
            _ => Err(Failure::Usage(
                "kappa must be exactly one of {c, kappa1, kappa2} or {build: {d0, c, kappa2}}"
                    .to_string(),
            )),
        }
    }

    fn resolve_integrator(&self) -> Result<IntegratorConfig, Failure> {
        let defaults = IntegratorConfig::default();
        let Some(block) = &self.integrator else {
            return Ok(defaults);
        };
        let method = match &block.method {
            None => defaults.method,
            Some(m) => m.resolve()?,
        };
        Ok(IntegratorConfig {
            method,
            t_end: block.t_end.unwrap_or(defaults.t_end),
            sample_interval: block.sample_interval.unwrap_or(defaults.sample_interval),
            d_explode: block.d_explode.unwrap_or(defaults.d_explode),
            eq_tol: block.eq_tol.unwrap_or(defaults.eq_tol),
        })
    }
}

impl MethodBlock {
    fn resolve(&self) -> Result<Method, Failure> {
        match self.method.as_str() {
            "fixed_rk4" => {
                if self.rel_tol.is_some()
                    || self.abs_tol.is_some()
                    || self.min_step.is_some()
                    || self.max_step.is_some()
                {
                    return Err(Failure::Usage(
                        "fixed_rk4 takes only `step`; tolerance settings belong to adaptive_rk45"
                            .to_string(),
                    ));
                }
                let step = self.step.ok_or_else(|| {
                    Failure::Usage("fixed_rk4 requires a `step` setting".to_string())
                })?;
                Ok(Method::FixedRk4 { step })
            }
            "adaptive_rk45" => {
                if self.step.is_some() {
                    return Err(Failure::Usage(
                        "`step` belongs to fixed_rk4; adaptive_rk45 uses min_step/max_step"
                            .to_string(),
                    ));
                }
                let Method::AdaptiveRk45 {
                    rel_tol: dr,
                    abs_tol: da,
                    min_step: dmin,
                    max_step: dmax,
                } = IntegratorConfig::default().method
                else {
                    unreachable!("the default method is adaptive")
                };
                Ok(Method::AdaptiveRk45 {
                    rel_tol: self.rel_tol.unwrap_or(dr),
                    abs_tol: self.abs_tol.unwrap_or(da),
                    min_step: self.min_step.unwrap_or(dmin),
                    max_step: self.max_step.unwrap_or(dmax),
                })
            }
            other => Err(Failure::Usage(format!(
                "integrator.method.method must be \"adaptive_rk45\" or \"fixed_rk4\", got \"{other}\""
            ))),
        }
    }
}

impl AxisBlock {
    fn resolve(&self) -> Result<SweepAxis, Failure> {
        let field = parse_field(&self.field)?;
        match (&self.values, self.min, self.max, self.count) {
            (Some(values), None, None, None) => Ok(SweepAxis {
                field,
                values: values.clone(),
            }),
            (None, Some(min), Some(max), Some(count)) => {
                if count == 0 {
                    return Err(Failure::Usage(format!(
                        "sweep axis {} needs count >= 1",
                        self.field
                    )));
                }
                Ok(SweepAxis::linspace(field, min, max, count))
            }
            _ => Err(Failure::Usage(format!(
                "sweep axis {} must give either `values` or all of `min`, `max`, `count`",
                self.field
            ))),
        }
    }
}
