//! Keen debt-dynamics model: a three-variable ODE system for the wage
//! share, the employment rate, and the private debt ratio, together with
//! its rest points, their spectral classification, constructive synthesis
//! of stable configurations, and simulation tooling.

pub mod construct;
pub mod equilibria;
pub mod error;
pub mod model;
pub mod sim;
pub mod stability;

pub use construct::{
    admissible_d0_bound, build_kappa, double_zero_necessary, double_zero_quadratic,
    kappa2_lower_bound, kappa_at_equilibrium, realize_double_zero, realize_kappa,
    ConstructionCertificate, DoubleZeroQuery, QuadraticCoeffs,
};
pub use equilibria::{
    d0_residual, d0_residual_prime, find_d0_roots, interior_equilibrium, line_equilibrium_check,
    EquilibriumKind, LineCheck, RootSearch,
};
pub use error::KeenError;
pub use model::{
    goodwin_vector_field, keen_vector_field, net_profit, validate_assumptions, Assumption,
    AssumptionCheck, AssumptionReport, EconomyParams, InvestmentFunction, PhillipsCurve, State,
};
pub use sim::{
    basin_sample, goodwin_conserved, integrate, integrate_goodwin, rk4_integrate, rk4_step, sweep,
    BasinGrid, BasinOutcome, BasinResult, ConvergedTarget, GoodwinTrajectory, GridAxis,
    IntegrationStats, IntegratorConfig, KappaSpec, Method, ParamField, SweepAxis, SweepRootEntry,
    SweepRow, SweepTable, Termination, Trajectory,
};
pub use stability::{
    classify, eigenvalues_3x3, jacobian_at_origin, numeric_jacobian, origin_eigenvalues,
    origin_linearization, Classification, StabilityReport,
};
