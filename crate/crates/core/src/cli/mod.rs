//! Command-line frontend.
//!
//! ```text
//! lubridrag <command> [--model noslip|slip|corrugated] [--h F] [--eps F] [--alpha F]
//!           [--beta-s F] [--beta-p F] [--lambda F] [--beta-eff F] [--r0 F] [--tol F]
//!           [--grid name=start:stop:count[:log]]... [--n INT] [--h0 F] [--v0 F]
//!           [--t-max F] [--format csv|json] [--output PATH] [--threads INT]
//! ```
//!
//! Exit status is 0 on success, 1 on a numerical failure (with
//! `{"error": {"kind", "message"}}` on stderr) and 2 on a usage error.

pub mod grid;
pub mod schema;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::corrugated::{self, CorrugationData};
use crate::dynamics::{self, DragModel, NoSlipDrag, ShiftedWallDrag, SlipDrag, Trajectory};
use crate::error::Error;
use crate::estimate::DragEstimate;
use crate::geometry::{GapProfile, DEFAULT_R0};
use crate::noslip::{self, AlphaConstants};
use crate::oracle1d::{self, ProfileProblem};
use crate::quad::QuadConfig;
use crate::slip::{self, SlipParams};

pub use grid::{GridAxis, GRID_NAMES};
pub use table::{format_float, Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// One drag evaluation (exact integral, or bounds for a corrugated wall).
    Drag,
    /// Closed-form asymptotics only, with the regime parameter and branch.
    Asym,
    /// Exact and asymptotic drag over a Cartesian parameter grid.
    Sweep,
    /// Discrete variational oracle against the closed-form profile.
    Oracle,
    /// Contact dynamics.
    Simulate,
    /// λ_α and μ_α.
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Noslip,
    Slip,
    Corrugated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "lubridrag",
    version,
    about = "Drag on a solid approaching a wall in Stokes flow"
)]
#[command(allow_negative_numbers = true)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Model::Noslip)]
    pub model: Model,
    /// Gap between the solid and the wall.
    #[arg(long)]
    pub h: Option<f64>,
    /// Roughness (or corrugation) amplitude.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Roughness exponent, 0 <= alpha < 1.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Slip length on the solid.
    #[arg(long)]
    pub beta_s: Option<f64>,
    /// Slip length on the wall.
    #[arg(long)]
    pub beta_p: Option<f64>,
    /// Corrugation depth.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Effective slip of the corrugated wall.
    #[arg(long)]
    pub beta_eff: Option<f64>,
    /// Radial cutoff of the lubrication integral.
    #[arg(long, default_value_t = DEFAULT_R0)]
    pub r0: f64,
    /// Quadrature tolerance (drag, asym, sweep) or step tolerance (simulate).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Sweep axis `name=start:stop:count[:log]`; repeatable, first is slowest.
    #[arg(long)]
    pub grid: Vec<GridAxis>,
    /// Oracle grid points.
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Initial gap for simulate.
    #[arg(long, default_value_t = 0.1)]
    pub h0: f64,
    /// Initial velocity for simulate; negative approaches the wall.
    #[arg(long, default_value_t = -1.0)]
    pub v0: f64,
    /// Time horizon for simulate.
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    /// Defaults to csv for sweep and simulate, json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweep; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
}

pub const DEFAULT_SIM_TOL: f64 = 1e-8;

/// Model parameters of one evaluation point.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_eff: Option<f64>,
    pub r0: f64,
}

const PARAM_COLUMNS: [&str; 8] = ["h", "eps", "alpha", "beta_s", "beta_p", "lambda", "beta_eff", "r0"];

impl Params {
    fn from_args(a: &Args) -> Self {
        Params {
            h: a.h,
            eps: a.eps,
            alpha: a.alpha,
            beta_s: a.beta_s,
            beta_p: a.beta_p,
            lambda: a.lambda,
            beta_eff: a.beta_eff,
            r0: a.r0,
        }
    }

    fn set(&mut self, name: &str, v: f64) {
        match name {
            "h" => self.h = Some(v),
            "eps" => self.eps = Some(v),
            "alpha" => self.alpha = Some(v),
            "beta_s" => self.beta_s = Some(v),
            "beta_p" => self.beta_p = Some(v),
            "lambda" => self.lambda = Some(v),
            "beta_eff" => self.beta_eff = Some(v),
            _ => unreachable!("grid names are validated at parse time"),
        }
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.h.into(),
            self.eps.into(),
            self.alpha.into(),
            self.beta_s.into(),
            self.beta_p.into(),
            self.lambda.into(),
            self.beta_eff.into(),
            self.r0.into(),
        ]
    }

    fn require(v: Option<f64>, flag: &str, model: Model) -> Result<f64, Failure> {
        v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for the {} model", model_name(model))))
    }

    fn gap(&self, model: Model) -> Result<f64, Failure> {
        let h = Self::require(self.h, "h", model)?;
        if !(h > 0.0 && h.is_finite()) {
            return Err(Failure::Usage(format!("--h must be a finite positive gap, got {h}")));
        }
        Ok(h)
    }

    fn profile(&self) -> Result<GapProfile, Failure> {
        let p = GapProfile::rough(self.eps.unwrap_or(0.0), self.alpha.unwrap_or(0.0))?;
        Ok(p.with_r0(self.r0)?)
    }

    fn slip(&self, model: Model) -> Result<SlipParams, Failure> {
        let bs = Self::require(self.beta_s, "beta-s", model)?;
        let bp = Self::require(self.beta_p, "beta-p", model)?;
        if !(bs > 0.0 && bp > 0.0) {
            return Err(Failure::Usage(format!("slip lengths must be > 0, got ({bs}, {bp})")));
        }
        Ok(SlipParams::new(bs, bp)?)
    }

    fn corrugation(&self, model: Model) -> Result<CorrugationData, Failure> {
        let eps = Self::require(self.eps, "eps", model)?;
        let lambda = Self::require(self.lambda, "lambda", model)?;
        Ok(CorrugationData::new(eps, lambda)?)
    }

    fn shifted_beta(&self, model: Model) -> Result<f64, Failure> {
        let b = Self::require(self.beta_eff, "beta-eff", model)?;
        if !(b >= 0.0 && b.is_finite()) {
            return Err(Failure::Usage(format!("--beta-eff must be finite and >= 0, got {b}")));
        }
        Ok(b)
    }

    /// Checks everything `model` needs, without computing.
    fn validate(&self, model: Model, with_shifted: bool) -> Result<(), Failure> {
        self.gap(model)?;
        match model {
            Model::Noslip => {
                self.profile()?;
            }
            Model::Slip => {
                self.profile()?;
                self.slip(model)?;
            }
            Model::Corrugated => {
                self.corrugation(model)?;
                if with_shifted || self.beta_eff.is_some() {
                    self.shifted_beta(model)?;
                }
            }
        }
        Ok(())
    }
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::Noslip => "noslip",
        Model::Slip => "slip",
        Model::Corrugated => "corrugated",
    }
}

/// Why a run failed, and hence its exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(msg) => Failure::Usage(msg),
            other => Failure::Numerical(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) | Failure::Io(_) => 1,
        }
    }
}

/// The artifact produced by a command, in both output formats.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub table: Table,
}

fn quad_cfg(tol: Option<f64>) -> Result<QuadConfig, Failure> {
    match tol {
        None => Ok(QuadConfig::default()),
        Some(t) if t > 0.0 && t.is_finite() => Ok(QuadConfig::with_tol(t)),
        Some(t) => Err(Failure::Usage(format!("--tol must be > 0, got {t}"))),
    }
}

fn estimate_columns() -> Vec<&'static str> {
    let mut c = vec!["model"];
    c.extend(PARAM_COLUMNS);
    c.extend(["value", "method", "beta", "branch", "err_estimate", "out_of_regime"]);
    c
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn enum_tag<T: Serialize>(x: &T) -> String {
    match to_value(x) {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn estimate_row(model: Model, p: &Params, e: &DragEstimate) -> Vec<Cell> {
    let mut row = vec![Cell::from(model_name(model))];
    row.extend(p.cells());
    row.push(e.value.into());
    row.push(Cell::Text(enum_tag(&e.method)));
    row.push(e.regime.map(|r| r.beta).into());
    row.push(e.regime.map_or(Cell::Empty, |r| Cell::Text(enum_tag(&r.branch))));
    row.push(e.err_estimate.into());
    row.push(e.out_of_regime.into());
    row
}

fn single_estimate(command: Command, model: Model, p: &Params, e: &DragEstimate) -> Output {
    let mut obj = Map::new();
    obj.insert("command".into(), to_value(&command));
    obj.insert("model".into(), to_value(&model));
    obj.insert("params".into(), to_value(p));
    if let Value::Object(fields) = to_value(e) {
        obj.extend(fields);
    }
    let mut table = Table::new(estimate_columns());
    table.push(estimate_row(model, p, e));
    Output {
        json: Value::Object(obj),
        table,
    }
}

fn cmd_drag(args: &Args) -> Result<Output, Failure> {
    let p = Params::from_args(args);
    p.validate(args.model, false)?;
    let cfg = quad_cfg(args.tol)?;
    let h = p.gap(args.model)?;
    match args.model {
        Model::Noslip => {
            let e = noslip::drag_integral(&p.profile()?, h, &cfg)?;
            Ok(single_estimate(Command::Drag, args.model, &p, &e))
        }
        Model::Slip => {
            let e = slip::drag_integral_slip(&p.profile()?, h, &p.slip(args.model)?, &cfg)?;
            Ok(single_estimate(Command::Drag, args.model, &p, &e))
        }
        Model::Corrugated => {
            let (lower, upper) = corrugated::drag_bounds(h, &p.corrugation(args.model)?)?;
            let shifted = match p.beta_eff {
                Some(b) => Some(corrugated::shifted_wall_drag(h, p.eps.unwrap_or(0.0), b)?),
                None => None,
            };
            let json = json!({
                "command": "drag",
                "model": "corrugated",
                "params": to_value(&p),
                "lower": to_value(&lower),
                "upper": to_value(&upper),
                "shifted": to_value(&shifted),
            });
            let mut table = Table::new(estimate_columns());
            for e in [Some(lower), shifted, Some(upper)].iter().flatten() {
                table.push(estimate_row(args.model, &p, e));
            }
            Ok(Output { json, table })
        }
    }
}

fn asym_estimate(model: Model, p: &Params) -> Result<DragEstimate, Failure> {
    let h = p.gap(model)?;
    Ok(match model {
        Model::Noslip => noslip::asym_drag(h, p.eps.unwrap_or(0.0), p.alpha.unwrap_or(0.0))?,
        Model::Slip => slip::hocking_asym(h, &p.slip(model)?)?,
        Model::Corrugated => corrugated::shifted_wall_drag(h, p.eps.unwrap_or(0.0), p.shifted_beta(model)?)?,
    })
}

fn cmd_asym(args: &Args) -> Result<Output, Failure> {
    let p = Params::from_args(args);
    if args.model == Model::Corrugated {
        Params::require(p.eps, "eps", args.model)?;
        p.shifted_beta(args.model)?;
        p.gap(args.model)?;
    } else {
        p.validate(args.model, false)?;
    }
    let e = asym_estimate(args.model, &p)?;
    Ok(single_estimate(Command::Asym, args.model, &p, &e))
}

fn sweep_columns(model: Model) -> Vec<&'static str> {
    let mut c: Vec<&'static str> = PARAM_COLUMNS.to_vec();
    match model {
        Model::Noslip | Model::Slip => {
            c.extend([
                "exact",
                "exact_err",
                "asym",
                "asym_beta",
                "asym_branch",
                "out_of_regime",
                "ratio",
            ]);
        }
        Model::Corrugated => c.extend(["lower", "shifted", "upper"]),
    }
    c
}

fn sweep_point(model: Model, p: &Params, cfg: &QuadConfig) -> Result<Vec<Cell>, Failure> {
    let mut row = p.cells();
    let h = p.gap(model)?;
    match model {
        Model::Noslip | Model::Slip => {
            let exact = if model == Model::Noslip {
                noslip::drag_integral(&p.profile()?, h, cfg)?
            } else {
                slip::drag_integral_slip(&p.profile()?, h, &p.slip(model)?, cfg)?
            };
            let asym = asym_estimate(model, p)?;
            row.push(exact.value.into());
            row.push(exact.err_estimate.into());
            row.push(asym.value.into());
            row.push(asym.regime.map(|r| r.beta).into());
            row.push(asym.regime.map_or(Cell::Empty, |r| Cell::Text(enum_tag(&r.branch))));
            row.push(asym.out_of_regime.into());
            row.push((exact.value / asym.value).into());
        }
        Model::Corrugated => {
            let (lower, upper) = corrugated::drag_bounds(h, &p.corrugation(model)?)?;
            let shifted = match p.beta_eff {
                Some(b) => Some(corrugated::shifted_wall_drag(h, p.eps.unwrap_or(0.0), b)?.value),
                None => None,
            };
            row.push(lower.value.into());
            row.push(shifted.into());
            row.push(upper.value.into());
        }
    }
    Ok(row)
}

fn table_to_json_rows(table: &Table) -> Value {
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(c, cell)| {
                    let v = match cell {
                        Cell::Num(x) => json!(x),
                        Cell::Text(s) if s == "true" || s == "false" => json!(s == "true"),
                        Cell::Text(s) => json!(s),
                        Cell::Empty => Value::Null,
                    };
                    (c.clone(), v)
                })
                .collect();
            Value::Object(obj)
        })
        .collect();
    Value::Array(rows)
}

fn cmd_sweep(args: &Args) -> Result<Output, Failure> {
    let mut seen = Vec::new();
    for axis in &args.grid {
        if seen.contains(&axis.name) {
            return Err(Failure::Usage(format!("grid axis `{}` given twice", axis.name)));
        }
        seen.push(axis.name.clone());
    }
    let base = Params::from_args(args);
    let points: Vec<Params> = grid::cartesian(&args.grid)
        .into_iter()
        .map(|values| {
            let mut p = base;
            for (axis, v) in args.grid.iter().zip(values) {
                p.set(&axis.name, v);
            }
            p
        })
        .collect();
    for p in &points {
        p.validate(args.model, false)?;
    }
    let cfg = quad_cfg(args.tol)?;
    let threads = match args.threads {
        Some(0) => return Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Io(io::Error::other(e)))?;
    let model = args.model;
    let rows: Vec<Result<Vec<Cell>, Failure>> =
        pool.install(|| points.par_iter().map(|p| sweep_point(model, p, &cfg)).collect());
    let mut table = Table::new(sweep_columns(model));
    for row in rows {
        table.push(row?);
    }
    let json = json!({
        "command": "sweep",
        "model": to_value(&model),
        "rows": table_to_json_rows(&table),
    });
    Ok(Output { json, table })
}

fn cmd_oracle(args: &Args) -> Result<Output, Failure> {
    let p = Params::from_args(args);
    let problem = match args.model {
        Model::Noslip => ProfileProblem::clamped(args.n),
        Model::Slip => {
            // The per-radius problem on the axis, where the local gap is h.
            let h = p.gap(args.model)?;
            let rc = slip::robin_coeffs(&GapProfile::smooth(), h, 0.0, &p.slip(args.model)?)?;
            ProfileProblem::robin(rc.alpha_s, rc.alpha_p, args.n)
        }
        Model::Corrugated => {
            return Err(Failure::Usage("the oracle supports the noslip and slip models".into()));
        }
    };
    let report = oracle1d::compare_to_closed_form(&problem)?;
    let sol = oracle1d::minimize_profile(&problem)?;
    let (slope0, slope1) = sol.boundary_slopes();
    let json = json!({
        "command": "oracle",
        "model": to_value(&args.model),
        "bc": to_value(&problem.bc),
        "n": problem.n,
        "oracle_energy": report.oracle_energy,
        "closed_form_energy": report.closed_form_energy,
        "energy_gap": report.energy_gap,
        "continuum_gap": report.continuum_gap(),
        "max_abs_gap": report.max_abs_gap,
        "boundary_slopes": [slope0, slope1],
    });
    let (a_s, a_p) = match problem.bc {
        oracle1d::BoundaryCondition::Clamped => (None, None),
        oracle1d::BoundaryCondition::Robin { alpha_s, alpha_p } => (Some(alpha_s), Some(alpha_p)),
    };
    let mut table = Table::new([
        "bc",
        "alpha_s",
        "alpha_p",
        "n",
        "oracle_energy",
        "closed_form_energy",
        "energy_gap",
        "continuum_gap",
        "max_abs_gap",
        "slope_0",
        "slope_1",
    ]);
    table.push(vec![
        Cell::Text(enum_tag(&json["bc"]["kind"])),
        a_s.into(),
        a_p.into(),
        (problem.n as f64).into(),
        report.oracle_energy.into(),
        report.closed_form_energy.into(),
        report.energy_gap.into(),
        report.continuum_gap().into(),
        report.max_abs_gap.into(),
        slope0.into(),
        slope1.into(),
    ]);
    Ok(Output { json, table })
}

fn drag_handle(model: Model, p: &Params) -> Result<Box<dyn DragModel>, Failure> {
    let cfg = QuadConfig::default();
    Ok(match model {
        Model::Noslip => Box::new(NoSlipDrag {
            profile: p.profile()?,
            cfg,
        }),
        Model::Slip => Box::new(SlipDrag {
            profile: p.profile()?,
            slip: p.slip(model)?,
            cfg,
        }),
        Model::Corrugated => Box::new(ShiftedWallDrag {
            eps: Params::require(p.eps, "eps", model)?,
            beta: p.shifted_beta(model)?,
        }),
    })
}

fn trajectory_table(traj: &Trajectory) -> Table {
    let mut table = Table::new(["t", "h", "v"]);
    for s in &traj.samples {
        table.push(vec![s.t.into(), s.h.into(), s.v.into()]);
    }
    table
}

fn cmd_simulate(args: &Args) -> Result<Output, Failure> {
    let p = Params {
        h: None,
        ..Params::from_args(args)
    };
    let drag = drag_handle(args.model, &p)?;
    let tol = match args.tol {
        None => DEFAULT_SIM_TOL,
        Some(t) if t > 0.0 => t,
        Some(t) => return Err(Failure::Usage(format!("--tol must be > 0, got {t}"))),
    };
    let traj = dynamics::simulate(drag.as_ref(), args.h0, args.v0, args.t_max, tol)?;
    let json = json!({
        "command": "simulate",
        "model": to_value(&args.model),
        "params": to_value(&p),
        "h0": args.h0,
        "v0": args.v0,
        "t_max": args.t_max,
        "tol": tol,
        "outcome": to_value(&traj.outcome),
        "samples": to_value(&traj.samples),
    });
    Ok(Output {
        table: trajectory_table(&traj),
        json,
    })
}

/// α values tabulated when `constants` gets no `--alpha`.
pub const CONSTANTS_ALPHAS: [f64; 10] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn cmd_constants(args: &Args) -> Result<Output, Failure> {
    let cfg = quad_cfg(args.tol)?;
    let alphas: Vec<f64> = match args.alpha {
        Some(a) => vec![a],
        None => CONSTANTS_ALPHAS.to_vec(),
    };
    let mut table = Table::new(["alpha", "lambda_alpha", "mu_alpha"]);
    let mut entries = Vec::new();
    for &a in &alphas {
        let c = AlphaConstants::new(a, &cfg)?;
        table.push(vec![a.into(), c.lambda_alpha.into(), c.mu_alpha.into()]);
        entries.push(json!({"alpha": a, "lambda_alpha": c.lambda_alpha, "mu_alpha": c.mu_alpha}));
    }
    let json = if args.alpha.is_some() {
        let mut obj = json!({"command": "constants"});
        if let (Value::Object(o), Value::Object(e)) = (&mut obj, entries.remove(0)) {
            o.extend(e);
        }
        obj
    } else {
        json!({"command": "constants", "rows": entries})
    };
    Ok(Output { json, table })
}

/// Runs one parsed command.
pub fn execute(args: &Args) -> Result<Output, Failure> {
    match args.command {
        Command::Drag => cmd_drag(args),
        Command::Asym => cmd_asym(args),
        Command::Sweep => cmd_sweep(args),
        Command::Oracle => cmd_oracle(args),
        Command::Simulate => cmd_simulate(args),
        Command::Constants => cmd_constants(args),
    }
}

fn default_format(c: Command) -> Format {
    match c {
        Command::Sweep | Command::Simulate => Format::Csv,
        _ => Format::Json,
    }
}

fn emit<W: Write>(out: &Output, format: Format, mut w: W) -> io::Result<()> {
    match format {
        Format::Csv => out.table.write_csv(&mut w)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &out.json)?;
            writeln!(w)?;
        }
    }
    w.flush()
}

/// JSON error payload written to stderr on a numerical failure.
pub fn error_json(kind: &str, message: &str) -> Value {
    json!({"error": {"kind": kind, "message": message}})
}

/// Parses `argv` (program name first), runs the command and writes the
/// artifact to `stdout` or `--output`. Returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let result = execute(&args).and_then(|out| {
        let format = args.format.unwrap_or(default_format(args.command));
        match &args.output {
            Some(path) => emit(&out, format, BufWriter::new(File::create(path)?))?,
            None => emit(&out, format, &mut *stdout)?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                }
                Failure::Numerical(e) => {
                    let _ = writeln!(stderr, "{}", error_json(e.kind(), &e.to_string()));
                }
                Failure::Io(e) => {
                    let _ = writeln!(stderr, "{}", error_json("io", &e.to_string()));
                }
            }
            f.exit_code()
        }
    }
}
