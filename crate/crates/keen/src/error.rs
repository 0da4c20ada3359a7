//! Error type shared by every module in the crate.

use crate::model::Assumption;
use thiserror::Error;

/// Errors produced by model evaluation, equilibrium location, construction,
/// and integration.
///
/// Variants are grouped by how a caller should react:
/// `InvalidParameter` and `InvalidConfig` are caller bugs (bad arguments),
/// `Domain`/`InverseRange`/`Assumption`/`Constraint`/`StaleRoot` are
/// well-posed rejections of the requested computation, and `Numeric`/`Blowup`
/// mean the computation itself failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KeenError {
    /// An argument violated a structural requirement (positivity, finiteness,
    /// ordering) before any model computation started.
    #[error("invalid parameter: {what}")]
    InvalidParameter { what: String },

    /// A run or grid description is self-inconsistent.
    #[error("invalid configuration: {what}")]
    InvalidConfig { what: String },

    /// A curve was evaluated outside its domain.
    #[error("domain violation in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// An inverse was requested for a value outside the function's range.
    #[error("{function} cannot be inverted at {target}: {requirement}")]
    InverseRange {
        function: &'static str,
        target: f64,
        requirement: String,
    },

    /// A named model assumption does not hold for the supplied parameters.
    #[error("assumption failed ({assumption}): {detail}")]
    Assumption {
        assumption: Assumption,
        detail: String,
    },

    /// A construction-step constraint does not hold for the supplied inputs.
    #[error("constraint failed ({name}): {detail}")]
    Constraint { name: &'static str, detail: String },

    /// A debt value passed as an equilibrium no longer solves the deflation
    /// stationarity equation to the required residual.
    #[error("stale equilibrium root d0 = {d0}: |residual| = {residual:.3e} exceeds {gate:.0e}")]
    StaleRoot { d0: f64, residual: f64, gate: f64 },

    /// A numeric procedure failed (non-finite evaluation, step underflow,
    /// iteration breakdown).
    #[error("numeric failure: {what}")]
    Numeric { what: String },

    /// Integration produced a non-finite state. Carries the last good sample.
    #[error("numeric blow-up at t = {t}: last good state {state:?}")]
    Blowup { t: f64, state: Vec<f64> },
}

impl KeenError {
    pub fn numeric(what: impl Into<String>) -> Self {
        KeenError::Numeric { what: what.into() }
    }

    pub fn invalid(what: impl Into<String>) -> Self {
        KeenError::InvalidParameter { what: what.into() }
    }
}
