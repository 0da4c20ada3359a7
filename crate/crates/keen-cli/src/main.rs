//! `keen`: command-line front end for the wage-share / employment / debt
//! dynamics library. Subcommands load a strict JSON configuration, run one
//! analysis, and emit deterministic JSON or CSV.
//!
//! Exit codes: 0 success, 2 domain or assumption failure, 64 usage or
//! parse error, 70 internal numeric failure.

mod config;
mod output;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{Resolved, ResolvedKappa, RunConfig};
use keen::{
    build_kappa, classify, d0_residual, double_zero_necessary, eigenvalues_3x3, find_d0_roots,
    integrate, interior_equilibrium, keen_vector_field, line_equilibrium_check, net_profit,
    numeric_jacobian, origin_eigenvalues, sweep, validate_assumptions, AssumptionCheck,
    Classification, ConstructionCertificate, DoubleZeroQuery, IntegrationStats, KeenError,
    LineCheck, StabilityReport, State, SweepTable, Termination,
};
use serde::Serialize;
use std::io::IsTerminal;
use std::path::PathBuf;

/// A command failure carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 64: bad invocation, unparsable or structurally invalid config.
    Usage(String),
    /// Exit 2: the configuration is well-formed but outside the model's
    /// domain (failed assumption, violated constraint, stale root).
    Domain(String),
    /// Exit 70: internal numeric failure (overflow, blowup, I/O).
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Domain(_) => 2,
            Failure::Internal(_) => 70,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Internal(m) => m,
        }
    }

    pub fn from_keen(e: KeenError) -> Self {
        match &e {
            KeenError::InvalidConfig { .. } => Failure::Usage(e.to_string()),
            KeenError::Numeric { .. } | KeenError::Blowup { .. } => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "keen",
    version,
    about = "Wage-share / employment / debt dynamics: equilibria, stability, construction, simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Audit the model assumptions for a configuration.
    Validate(RunArgs),
    /// Locate rest points and classify their spectra.
    Equilibria(RunArgs),
    /// Integrate a trajectory and emit plot-ready data.
    Simulate(RunArgs),
    /// Construct an investment curve pinned at a chosen debt level.
    #[command(name = "build-kappa")]
    BuildKappa(RunArgs),
    /// Evaluate the necessary condition for a double-zero spectrum.
    #[command(name = "double-zero")]
    DoubleZero(RunArgs),
    /// Sweep parameters and tabulate rest-point spectra.
    Sweep(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to a JSON run configuration.
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Dotted-path override applied before validation,
    /// e.g. --set kappa.c=0.35 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Directory for output files (created if missing); without it, data
    /// goes to stdout.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Data file format for simulate and sweep.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn print_error(msg: &str) {
    let color = std::env::var_os("NO_COLOR").map_or(true, |v| v.is_empty())
        && std::io::stderr().is_terminal();
    if color {
        eprintln!("\x1b[1;31merror:\x1b[0m {msg}");
    } else {
        eprintln!("error: {msg}");
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            print_error(f.message());
            std::process::exit(f.code());
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let args = match &cli.command {
        Cmd::Validate(a)
        | Cmd::Equilibria(a)
        | Cmd::Simulate(a)
        | Cmd::BuildKappa(a)
        | Cmd::DoubleZero(a)
        | Cmd::Sweep(a) => a,
    };
    let cfg = config::load(&args.config, &args.set)?;
    let resolved = cfg.resolve()?;
    match &cli.command {
        Cmd::Validate(a) => cmd_validate(&cfg, &resolved, a),
        Cmd::Equilibria(a) => cmd_equilibria(&resolved, a),
        Cmd::Simulate(a) => cmd_simulate(&cfg, &resolved, a),
        Cmd::BuildKappa(a) => cmd_build_kappa(&resolved, a),
        Cmd::DoubleZero(a) => cmd_double_zero(&resolved, a),
        Cmd::Sweep(a) => cmd_sweep(&resolved, a),
    }
}

#[derive(Serialize)]
struct ToolInfo {
    name: &'static str,
    version: &'static str,
}

fn tool() -> ToolInfo {
    ToolInfo { name: "keen", version: env!("CARGO_PKG_VERSION") }
}

fn class_str(c: Classification) -> &'static str {
    match c {
        Classification::Stable => "stable",
        Classification::Unstable => "unstable",
        Classification::Marginal => "marginal",
    }
}

/// Write `text` into `<out>/<name>` when an output directory was given.
fn write_if_out(args: &RunArgs, name: &str, text: &str) -> Result<(), Failure> {
    let Some(dir) = &args.out else {
        return Ok(());
    };
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::Internal(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, text)
        .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))
}

/// Data files go to the output directory when given, otherwise to stdout.
fn emit_data(args: &RunArgs, name: &str, text: &str) -> Result<(), Failure> {
    if args.out.is_some() {
        write_if_out(args, name, text)
    } else {
        print!("{text}");
        Ok(())
    }
}

fn emit_report(args: &RunArgs, name: &str, text: &str) -> Result<(), Failure> {
    print!("{text}");
    write_if_out(args, name, text)
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    tool: ToolInfo,
    all_passed: bool,
    checks: &'a [AssumptionCheck],
}

fn cmd_validate(_cfg: &RunConfig, res: &Resolved, args: &RunArgs) -> Result<i32, Failure> {
    let kap = res.kappa.investment(&res.economy)?;
    let report = validate_assumptions(&res.economy, &res.phillips, &kap);
    let doc = ValidateReport {
        tool: tool(),
        all_passed: report.all_passed(),
        checks: &report.checks,
    };
    emit_report(args, "assumptions.json", &output::to_json(&doc))?;
    if report.all_passed() {
        Ok(0)
    } else {
        let names: Vec<String> = report.failed().map(|c| c.assumption.to_string()).collect();
        print_error(&format!(
            "{} assumption(s) failed: {}",
            names.len(),
            names.join(", ")
        ));
        Ok(2)
    }
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct RootEntry {
    kind: &'static str,
    d0: f64,
    pi0: f64,
    residual: f64,
    eigenvalues: [f64; 3],
    classification: &'static str,
}

#[derive(Serialize)]
struct InteriorEntry {
    state: State,
    field_residual: f64,
    eigenvalues: Option<Vec<ComplexOut>>,
    classification: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct EquilibriaReport {
    tool: ToolInfo,
    collapsed_wage_roots: Vec<RootEntry>,
    interior: Option<InteriorEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interior_error: Option<String>,
    line_family: LineCheck,
    explosive_debt: &'static str,
}

fn cmd_equilibria(res: &Resolved, args: &RunArgs) -> Result<i32, Failure> {
    let p = &res.economy;
    let phi = &res.phillips;
    let kap = res.kappa.investment(p)?;

    let roots = find_d0_roots(p, &kap, &res.search).map_err(Failure::from_keen)?;
    let mut collapsed = Vec::with_capacity(roots.len());
    for d0 in roots {
        let ev = origin_eigenvalues(p, phi, &kap, d0).map_err(Failure::from_keen)?;
        collapsed.push(RootEntry {
            kind: "collapsed_wage",
            d0,
            pi0: 1.0 - p.r * d0,
            residual: d0_residual(d0, p, &kap),
            eigenvalues: ev,
            classification: class_str(StabilityReport::from_real(ev).classification),
        });
    }

    let (interior, interior_error) = match interior_equilibrium(p, phi, &kap) {
        Ok(state) => {
            let field_residual = match keen_vector_field(&state, p, phi, &kap) {
                Ok(f) => f.iter().map(|x| x * x).sum::<f64>().sqrt(),
                Err(_) => f64::NAN,
            };
            let (eigenvalues, classification, note) =
                match numeric_jacobian(&state, p, phi, &kap, 1e-6) {
                    Ok(j) => {
                        let ev = eigenvalues_3x3(&j);
                        let out: Vec<ComplexOut> =
                            ev.iter().map(|e| ComplexOut { re: e.re, im: e.im }).collect();
                        (Some(out), Some(class_str(classify(&ev))), None)
                    }
                    Err(e) => (None, None, Some(format!("jacobian unavailable: {e}"))),
                };
            (
                Some(InteriorEntry { state, field_residual, eigenvalues, classification, note }),
                None,
            )
        }
        Err(e) => (None, Some(e.to_string())),
    };

    let line_family = line_equilibrium_check(p, &kap, 1e-9).map_err(Failure::from_keen)?;

    let doc = EquilibriaReport {
        tool: tool(),
        collapsed_wage_roots: collapsed,
        interior,
        interior_error,
        line_family,
        explosive_debt: "the limit state (0, 0, +inf) is dynamic, detected as an explosive-debt termination",
    };
    emit_report(args, "equilibria.json", &output::to_json(&doc))?;
    Ok(0)
}

#[derive(Serialize)]
struct TrajectoryMeta<'a> {
    tool: ToolInfo,
    termination: &'a Termination,
    stats: &'a IntegrationStats,
    samples: usize,
    columns: [&'static str; 5],
    config: &'a RunConfig,
}

#[derive(Serialize)]
struct TrajectoryDoc<'a> {
    tool: ToolInfo,
    termination: &'a Termination,
    stats: &'a IntegrationStats,
    columns: [&'static str; 5],
    samples: Vec<[f64; 5]>,
    config: &'a RunConfig,
}

const TRAJECTORY_COLUMNS: [&str; 5] = ["t", "omega", "lambda", "d", "pi"];

fn cmd_simulate(cfg: &RunConfig, res: &Resolved, args: &RunArgs) -> Result<i32, Failure> {
    let initial = res.initial.ok_or_else(|| {
        Failure::Usage("simulate requires a `simulate` block with an initial state".to_string())
    })?;
    let p = &res.economy;
    let kap = res.kappa.investment(p)?;
    let traj =
        integrate(&initial, p, &res.phillips, &kap, &res.integrator).map_err(Failure::from_keen)?;

    match args.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = traj
                .times
                .iter()
                .zip(&traj.states)
                .map(|(t, s)| {
                    vec![
                        output::fmt_float(*t),
                        output::fmt_float(s.omega),
                        output::fmt_float(s.lam),
                        output::fmt_float(s.d),
                        output::fmt_float(net_profit(s, p)),
                    ]
                })
                .collect();
            let csv_text = output::to_csv(&TRAJECTORY_COLUMNS, &rows);
            let meta = TrajectoryMeta {
                tool: tool(),
                termination: &traj.termination,
                stats: &traj.stats,
                samples: traj.times.len(),
                columns: TRAJECTORY_COLUMNS,
                config: cfg,
            };
            let meta_text = output::to_json(&meta);
            if args.out.is_some() {
                write_if_out(args, "trajectory.csv", &csv_text)?;
                write_if_out(args, "trajectory.meta.json", &meta_text)?;
            } else {
                print!("{csv_text}");
                eprint!("{meta_text}");
            }
        }
        Format::Json => {
            let samples: Vec<[f64; 5]> = traj
                .times
                .iter()
                .zip(&traj.states)
                .map(|(t, s)| [*t, s.omega, s.lam, s.d, net_profit(s, p)])
                .collect();
            let doc = TrajectoryDoc {
                tool: tool(),
                termination: &traj.termination,
                stats: &traj.stats,
                columns: TRAJECTORY_COLUMNS,
                samples,
                config: cfg,
            };
            emit_data(args, "trajectory.json", &output::to_json(&doc))?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct KappaOut {
    c: f64,
    kappa1: f64,
    kappa2: f64,
}

#[derive(Serialize)]
struct BuildReport {
    tool: ToolInfo,
    kappa: KappaOut,
    certificate: ConstructionCertificate,
}

fn cmd_build_kappa(res: &Resolved, args: &RunArgs) -> Result<i32, Failure> {
    let ResolvedKappa::Build { d0, c, kappa2 } = res.kappa else {
        return Err(Failure::Usage(
            "build-kappa requires a kappa build request: {\"build\": {\"d0\": ..., \"c\": ..., \"kappa2\": ...}}"
                .to_string(),
        ));
    };
    let (kap, certificate) =
        build_kappa(d0, c, kappa2, &res.economy, &res.phillips).map_err(Failure::from_keen)?;
    let doc = BuildReport {
        tool: tool(),
        kappa: KappaOut { c: kap.c, kappa1: kap.kappa1, kappa2: kap.kappa2 },
        certificate,
    };
    emit_report(args, "kappa.json", &output::to_json(&doc))?;
    Ok(0)
}

#[derive(Serialize)]
struct DoubleZeroReport {
    tool: ToolInfo,
    c: f64,
    kappa2: f64,
    query: DoubleZeroQuery,
}

fn cmd_double_zero(res: &Resolved, args: &RunArgs) -> Result<i32, Failure> {
    let (c, kappa2) = match &res.kappa {
        ResolvedKappa::Literal(k) => (k.c, k.kappa2),
        ResolvedKappa::Build { c, kappa2, .. } => (*c, *kappa2),
    };
    let query = double_zero_necessary(c, kappa2, &res.economy).map_err(Failure::from_keen)?;
    let doc = DoubleZeroReport { tool: tool(), c, kappa2, query };
    emit_report(args, "double_zero.json", &output::to_json(&doc))?;
    Ok(0)
}

#[derive(Serialize)]
struct SweepReport<'a> {
    tool: ToolInfo,
    table: &'a SweepTable,
}

fn cmd_sweep(res: &Resolved, args: &RunArgs) -> Result<i32, Failure> {
    let axes = res.sweep_axes.as_ref().ok_or_else(|| {
        Failure::Usage("sweep requires a `sweep` block with axes".to_string())
    })?;
    let table = sweep(&res.economy, &res.phillips, &res.kappa.to_spec(), axes, &res.search)
        .map_err(Failure::from_keen)?;

    match args.format {
        Format::Csv => {
            let mut header: Vec<&str> = Vec::new();
            let field_names: Vec<String> = table.fields.iter().map(|f| f.to_string()).collect();
            header.extend(field_names.iter().map(|s| s.as_str()));
            header.extend([
                "point",
                "root_index",
                "d0",
                "eigenvalue_1",
                "eigenvalue_2",
                "eigenvalue_3",
                "sign_1",
                "sign_2",
                "sign_3",
                "classification",
                "error",
            ]);
            let mut rows: Vec<Vec<String>> = Vec::new();
            for (pi, row) in table.rows.iter().enumerate() {
                let values: Vec<String> =
                    row.values.iter().map(|v| output::fmt_float(*v)).collect();
                if row.roots.is_empty() {
                    let mut rec = values.clone();
                    rec.push(pi.to_string());
                    rec.extend(std::iter::repeat_n(String::new(), 9));
                    rec.push(row.error.clone().unwrap_or_default());
                    rows.push(rec);
                    continue;
                }
                for (ri, root) in row.roots.iter().enumerate() {
                    let mut rec = values.clone();
                    rec.push(pi.to_string());
                    rec.push(ri.to_string());
                    rec.push(output::fmt_float(root.d0));
                    for ev in root.eigenvalues {
                        rec.push(output::fmt_float(ev));
                    }
                    for s in root.signs {
                        rec.push(s.to_string());
                    }
                    rec.push(class_str(root.classification).to_string());
                    rec.push(row.error.clone().unwrap_or_default());
                    rows.push(rec);
                }
            }
            emit_data(args, "sweep.csv", &output::to_csv(&header, &rows))?;
        }
        Format::Json => {
            let doc = SweepReport { tool: tool(), table: &table };
            emit_data(args, "sweep.json", &output::to_json(&doc))?;
        }
    }
    Ok(0)
}
