//! Command-line front end.
//!
//! Every subcommand writes either CSV (fixed column order, 12 significant
//! digits, `\n` line endings) or a single JSON document. CSV output is
//! accompanied by a JSON sidecar holding the run manifest and any summary;
//! it goes to `<output>.json` when `--output` is given and to stderr
//! otherwise. JSON output embeds the manifest under `"manifest"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::grid::LogGrid;
use crate::hyperangular::{
    effective_potential, efimov_constants, solve_branches, tabulate_branch_with_tol,
    AdiabaticBranch, EffectivePotential, Regularization, DEFAULT_TOL,
};
use crate::meanfield::{classify_stability, energy_density, MatterModel, Stabilizer, Statistics};
use crate::radial::{
    collapse_probe, find_spectrum, integrate_radial, node_analysis, RadialOptions, RadialSolution,
    DEFAULT_TOL_E, WINDOW_FRACTION,
};
use crate::system::{make_config, LengthUnit, SystemConfig, IDENTICAL_PARTICLE_MU};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_FORBIDDEN: i32 = 3;

const UNITS: &str = "hbar = m = 1; lengths in the input length unit L; energies in hbar^2/(m L^2)";

#[derive(Debug, Parser)]
#[command(
    name = "efimov-lab",
    version,
    about = "Three-body zero-range collapse toolkit"
)]
pub struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "EFIMOV_LAB_THREADS")]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Solver tolerance (command specific default).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Universal constants b and C.
    Constants,
    /// Tabulate an adiabatic branch and its effective potential.
    Potential(PotentialArgs),
    /// Regularized bound-state tower.
    Spectrum(SpectrumArgs),
    /// Node positions of a bound state or a fixed-energy solution.
    Nodes(NodesArgs),
    /// Homogeneous-matter equation of state and stability.
    Meanfield(MeanfieldArgs),
    /// Several hyperangular branches at one x.
    Branches(BranchesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    None,
    HardWall,
    Cap,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SystemArgs {
    /// Scattering length; `inf` for unitarity.
    #[arg(long, default_value_t = f64::INFINITY, allow_hyphen_values = true)]
    #[serde(serialize_with = "extended_float")]
    pub a: f64,
    /// Reduced-mass parameter of the scaled coordinates.
    #[arg(long, default_value_t = IDENTICAL_PARTICLE_MU)]
    pub mu: f64,
}

impl SystemArgs {
    fn config(&self) -> Result<SystemConfig, Error> {
        make_config(self.a, self.mu, LengthUnit::R)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PotentialArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 1e-3)]
    pub rho_min: f64,
    #[arg(long, default_value_t = 1e3)]
    pub rho_max: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    #[arg(long, value_enum, default_value_t = Scheme::None)]
    pub regularization: Scheme,
    /// Regularization radius.
    #[arg(long = "r")]
    pub r: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long = "r", default_value_t = 1.0)]
    pub r: f64,
    /// Outer box; defaults to 1e8 R.
    #[arg(long)]
    pub rho_max: Option<f64>,
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    #[arg(long, value_enum, default_value_t = Scheme::HardWall)]
    pub regularization: Scheme,
    #[arg(long, default_value_t = RadialOptions::default().points_per_unit)]
    pub points_per_unit: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NodesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long = "r", default_value_t = 1.0)]
    pub r: f64,
    #[arg(long)]
    pub rho_max: Option<f64>,
    /// Bound-state level to analyse (hard-wall tower).
    #[arg(long, default_value_t = 4, conflicts_with_all = ["energy", "analytic"])]
    pub level: usize,
    /// Fixed negative energy; the inner cutoff is moved `decades` below R.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "analytic")]
    pub energy: Option<f64>,
    #[arg(long, default_value_t = 10)]
    pub decades: usize,
    /// Closed-form `sqrt(rho) sin(b ln(rho/R))` self-test.
    #[arg(long)]
    pub analytic: bool,
    #[arg(long, default_value_t = RadialOptions::default().points_per_unit)]
    pub points_per_unit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizerKind {
    None,
    ThreeBody,
    DensityDependent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatisticsArg {
    Bose,
    Fermi,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeanfieldArgs {
    #[arg(long, value_enum)]
    pub statistics: StatisticsArg,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: f64,
    #[arg(long, value_enum, default_value_t = StabilizerKind::None)]
    pub stabilizer: StabilizerKind,
    #[arg(long, default_value_t = 0.0)]
    pub t3: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Stabilizer prefactor; conventional default when omitted.
    #[arg(long)]
    pub c3: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub n_max: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BranchesArgs {
    /// Dimensionless `rho / (sqrt(mu) a)`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value_t = 3)]
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub tolerances: BTreeMap<String, f64>,
    pub units: String,
    pub version: String,
    /// Unix seconds; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
}

impl RunManifest {
    fn new(command: &str, params: Value, tolerances: &[(&str, f64)]) -> Self {
        Self {
            command: command.to_string(),
            params,
            tolerances: tolerances
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            units: UNITS.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: timestamp(),
        }
    }
}

fn timestamp() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse().ok())
    {
        return t;
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Numbers as JSON numbers, infinities as the strings `"inf"` / `"-inf"`.
fn extended_float<S: serde::Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&fmt_num(*v))
    }
}

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unregularized => EXIT_FORBIDDEN,
            _ => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_NUMERICAL,
        message: format!("i/o error: {e}"),
    }
}

/// Formats with 12 significant digits in scientific notation.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.11e}")
    }
}

/// A command result: CSV table, JSON body and the extra summary fields.
struct Output {
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
    json: Value,
    summary: Option<Value>,
}

impl Output {
    fn csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// the primary output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_NUMERICAL
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let result = match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError {
                    code: EXIT_NUMERICAL,
                    message: format!("thread pool: {e}"),
                })?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }?;
    let (output, manifest) = result;
    let manifest = serde_json::to_value(&manifest).expect("manifest serializes");

    match cli.format {
        Format::Json => {
            let mut body = output.json;
            body["manifest"] = manifest;
            let text = serde_json::to_string_pretty(&body).expect("json serializes") + "\n";
            emit(cli, &text, out)
        }
        Format::Csv => {
            emit(cli, &output.csv(), out)?;
            let mut sidecar = json!({ "manifest": manifest });
            if let Some(summary) = output.summary {
                sidecar["summary"] = summary;
            }
            let text = serde_json::to_string_pretty(&sidecar).expect("json serializes") + "\n";
            match &cli.output {
                Some(path) => {
                    let mut p = path.clone().into_os_string();
                    p.push(".json");
                    std::fs::write(PathBuf::from(p), text).map_err(io_error)
                }
                None => err.write_all(text.as_bytes()).map_err(io_error),
            }
        }
    }
}

fn emit(cli: &Cli, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(io_error),
        None => out.write_all(text.as_bytes()).map_err(io_error),
    }
}

fn dispatch(cli: &Cli) -> Result<(Output, RunManifest), CliError> {
    match &cli.command {
        Command::Constants => cmd_constants(cli.tol),
        Command::Potential(a) => cmd_potential(a, cli.tol),
        Command::Spectrum(a) => cmd_spectrum(a, cli.tol),
        Command::Nodes(a) => cmd_nodes(a, cli.tol),
        Command::Meanfield(a) => cmd_meanfield(a),
        Command::Branches(a) => cmd_branches(a, cli.tol),
    }
}

fn positive(name: &'static str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::invalid(name, format!("must be positive, got {v}")).into())
    }
}

fn regularization(scheme: Scheme, r: f64) -> Regularization {
    match scheme {
        Scheme::None => Regularization::None,
        Scheme::HardWall => Regularization::HardWall { r },
        Scheme::Cap => Regularization::Cap { r },
    }
}

fn cmd_constants(tol: Option<f64>) -> Result<(Output, RunManifest), CliError> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    let c = efimov_constants(tol)?;
    let output = Output {
        header: &["b", "C", "residual"],
        rows: vec![vec![fmt_num(c.b), fmt_num(c.c), fmt_num(c.residual)]],
        json: json!({ "b": c.b, "C": c.c, "residual": c.residual }),
        summary: None,
    };
    Ok((
        output,
        RunManifest::new("constants", json!({}), &[("tol", tol)]),
    ))
}

/// Branch of the given system on `[lo, hi]`; a constant branch at unitarity.
fn branch_for(
    config: &SystemConfig,
    lo: f64,
    hi: f64,
    points: usize,
    index: usize,
    tol: f64,
) -> Result<AdiabaticBranch, Error> {
    let grid = LogGrid::new(lo, hi, points)?;
    tabulate_branch_with_tol(config, &grid, index, tol)
}

fn cmd_potential(
    args: &PotentialArgs,
    tol: Option<f64>,
) -> Result<(Output, RunManifest), CliError> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    let config = args.system.config()?;
    let branch = branch_for(
        &config,
        args.rho_min,
        args.rho_max,
        args.points,
        args.branch,
        tol,
    )?;
    let r = match (args.regularization, args.r) {
        (Scheme::None, _) => 0.0,
        (_, Some(r)) => positive("R", r)?,
        (_, None) => return Err(Error::invalid("R", "required with a regularization").into()),
    };
    let potential = effective_potential(branch, regularization(args.regularization, r))?;
    let v = potential.tabulate();
    let branch = &potential.branch;
    let mut rows = Vec::with_capacity(v.len());
    let mut records = Vec::with_capacity(v.len());
    for (i, &rho) in branch.grid.values().iter().enumerate() {
        let nu2 = branch.nu_squared[i];
        let x = config.x_of_rho(rho);
        rows.push(vec![
            fmt_num(rho),
            fmt_num(x),
            fmt_num(nu2),
            fmt_num(nu2 - 4.0),
            fmt_num(v[i]),
        ]);
        records.push(json!({
            "rho": rho, "x": x, "nu_squared": nu2, "lambda": nu2 - 4.0,
            "v_eff": if v[i].is_finite() { json!(v[i]) } else { Value::Null },
        }));
    }
    let output = Output {
        header: &["rho", "x", "nu_squared", "lambda", "v_eff"],
        rows,
        json: json!({ "rows": records }),
        summary: None,
    };
    let params = serde_json::to_value(args).expect("params serialize");
    Ok((
        output,
        RunManifest::new("potential", params, &[("tol", tol)]),
    ))
}

fn radial_options(points_per_unit: f64) -> Result<RadialOptions, CliError> {
    Ok(RadialOptions {
        points_per_unit: positive("points_per_unit", points_per_unit)?,
    })
}

/// Effective potential from `lo` to `hi` for the spectrum and node commands.
fn system_potential(
    config: &SystemConfig,
    lo: f64,
    hi: f64,
    reg: Regularization,
) -> Result<EffectivePotential, Error> {
    let branch = if config.is_unitary() {
        branch_for(config, lo, hi, 16, 0, DEFAULT_TOL)?
    } else {
        let grid = LogGrid::with_density(lo, hi, 50.0)?;
        tabulate_branch_with_tol(config, &grid, 0, DEFAULT_TOL)?
    };
    effective_potential(branch, reg)
}

fn cmd_spectrum(args: &SpectrumArgs, tol: Option<f64>) -> Result<(Output, RunManifest), CliError> {
    let tol = tol.unwrap_or(DEFAULT_TOL_E);
    if args.regularization == Scheme::None {
        return Err(Error::Unregularized.into());
    }
    let r = positive("R", args.r)?;
    let rho_max = args.rho_max.unwrap_or(1e8 * r);
    let config = args.system.config()?;
    let potential = system_potential(&config, r, rho_max, regularization(args.regularization, r))?;
    let options = radial_options(args.points_per_unit)?;
    let spectrum = find_spectrum(&potential, rho_max, args.levels, tol, &options)?;

    let states = &spectrum.states;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (n, s) in states.iter().enumerate() {
        let ratio = states.get(n + 1).map(|next| s.energy / next.energy);
        let flag = if s.box_contaminated {
            "box"
        } else {
            "interior"
        };
        rows.push(vec![
            n.to_string(),
            fmt_num(s.energy),
            fmt_num(s.kappa),
            s.node_count.to_string(),
            ratio.map(fmt_num).unwrap_or_default(),
            flag.to_string(),
        ]);
        records.push(json!({
            "n": n, "E_n": s.energy, "kappa_n": s.kappa, "node_count": s.node_count,
            "ratio_to_next": ratio, "flag": flag,
        }));
    }
    let summary = json!({
        "interior_ratios": spectrum.interior_ratios(),
        "reference_ratio": efimov_constants(1e-12)?.energy_ratio(),
        "energy_floor": spectrum.energy_floor,
        "energy_ceiling": spectrum.energy_ceiling,
    });
    let output = Output {
        header: &["n", "E_n", "kappa_n", "node_count", "ratio_to_next", "flag"],
        rows,
        json: json!({ "levels": records, "summary": summary }),
        summary: Some(summary),
    };
    let mut params = serde_json::to_value(args).expect("params serialize");
    params["rho_max"] = json!(rho_max);
    Ok((
        output,
        RunManifest::new("spectrum", params, &[("tol_E", tol)]),
    ))
}

fn cmd_nodes(args: &NodesArgs, tol: Option<f64>) -> Result<(Output, RunManifest), CliError> {
    let tol = tol.unwrap_or(DEFAULT_TOL_E);
    let r = positive("R", args.r)?;
    let rho_max = args.rho_max.unwrap_or(1e8 * r);
    let consts = efimov_constants(1e-12)?;
    let config = args.system.config()?;
    let options = radial_options(args.points_per_unit)?;
    let mut summary = json!({ "reference_ratio": consts.node_ratio() });

    let (solution, mode) = if args.analytic {
        // K decades of sqrt(rho) sin(b ln(rho / R)), sampled in ln(rho).
        let decades = args.decades.max(1) as f64;
        let points = (decades * 10f64.ln() * options.points_per_unit).ceil() as usize;
        let step = decades * 10f64.ln() / points as f64;
        let samples = (0..=points)
            .map(|i| {
                let t = step * i as f64;
                let rho = r * t.exp();
                (rho, rho.sqrt() * (consts.b * t).sin())
            })
            .collect();
        let window = r * 10f64.powf(decades);
        (
            RadialSolution::from_samples(0.0, r, samples, window),
            "analytic",
        )
    } else if let Some(energy) = args.energy {
        let cutoff = r * 10f64.powi(-(args.decades as i32));
        let potential = system_potential(
            &config,
            cutoff,
            rho_max,
            Regularization::HardWall { r: cutoff },
        )?;
        let run = integrate_radial(&potential, energy, rho_max, &options)?;
        let kappa = (-2.0 * energy).sqrt();
        let mut window = WINDOW_FRACTION / kappa;
        if !config.is_unitary() {
            window = window.min(WINDOW_FRACTION * config.scattering_length().abs());
        }
        let unreg = system_potential(&config, cutoff, rho_max, Regularization::None)?;
        let probe = collapse_probe(&unreg, energy, r, args.decades, rho_max, &options)?;
        summary["node_counts"] = json!(probe.node_counts);
        summary["nodes_per_decade"] = json!(probe.nodes_per_decade());
        summary["nodes_per_decade_r_squared"] = json!(probe.fit.r_squared);
        summary["reference_nodes_per_decade"] = json!(consts.nodes_per_decade());
        (
            RadialSolution::from_samples(energy, cutoff, run.samples, window),
            "fixed_energy",
        )
    } else {
        let potential = system_potential(&config, r, rho_max, Regularization::HardWall { r })?;
        let spectrum = find_spectrum(&potential, rho_max, args.level + 1, tol, &options)?;
        let state = spectrum.states.get(args.level).cloned().ok_or_else(|| {
            Error::NotConverged(format!(
                "level {} not found below the box (found {})",
                args.level,
                spectrum.states.len()
            ))
        })?;
        (state, "level")
    };

    let analysis = node_analysis(&solution)?;
    summary["mode"] = json!(mode);
    summary["energy"] = json!(solution.energy);
    summary["fitted_ratio"] = json!(analysis.mean_ratio);
    summary["std_ratio"] = json!(analysis.std_ratio);
    summary["window_max"] = json!(solution.window_max);

    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (k, &rho) in analysis.window_nodes.iter().enumerate() {
        let ratio = (k > 0).then(|| rho / analysis.window_nodes[k - 1]);
        rows.push(vec![
            k.to_string(),
            fmt_num(rho),
            ratio.map(fmt_num).unwrap_or_default(),
        ]);
        records.push(json!({ "k": k, "rho_k": rho, "ratio": ratio }));
    }
    let output = Output {
        header: &["k", "rho_k", "ratio"],
        rows,
        json: json!({ "nodes": records, "summary": summary }),
        summary: Some(summary),
    };
    let mut params = serde_json::to_value(args).expect("params serialize");
    params["rho_max"] = json!(rho_max);
    Ok((output, RunManifest::new("nodes", params, &[("tol_E", tol)])))
}

fn cmd_meanfield(args: &MeanfieldArgs) -> Result<(Output, RunManifest), CliError> {
    let statistics = match args.statistics {
        StatisticsArg::Bose => Statistics::Bose,
        StatisticsArg::Fermi => Statistics::Fermi,
    };
    let stabilizer = match args.stabilizer {
        StabilizerKind::None => Stabilizer::None,
        StabilizerKind::ThreeBody => Stabilizer::ThreeBody { t3: args.t3 },
        StabilizerKind::DensityDependent => Stabilizer::DensityDependent {
            t3: args.t3,
            alpha: args.alpha,
        },
    };
    let model = MatterModel::new(statistics, args.t0, stabilizer, args.c3)?;
    let report = classify_stability(&model)?;
    let n_max = positive("n_max", args.n_max)?;
    if args.points == 0 {
        return Err(Error::invalid("points", "must be > 0").into());
    }
    let mut rows = Vec::with_capacity(args.points);
    let mut records = Vec::with_capacity(args.points);
    for i in 1..=args.points {
        let n = n_max * i as f64 / args.points as f64;
        let eps = energy_density(&model, n)?;
        rows.push(vec![fmt_num(n), fmt_num(eps), fmt_num(eps / n)]);
        records.push(json!({ "n": n, "epsilon": eps, "epsilon_per_particle": eps / n }));
    }
    let report_value = serde_json::to_value(&report).expect("report serializes");
    let output = Output {
        header: &["n", "epsilon", "epsilon_per_particle"],
        rows,
        json: json!({ "rows": records, "report": report_value }),
        summary: Some(json!({ "report": report_value })),
    };
    let mut params = serde_json::to_value(args).expect("params serialize");
    params["c3"] = json!(model.c3);
    params["c3_is_default"] = json!(model.c3_is_default);
    Ok((
        output,
        RunManifest::new("meanfield", params, &[("n_sat_rel", 1e-10)]),
    ))
}

fn cmd_branches(args: &BranchesArgs, tol: Option<f64>) -> Result<(Output, RunManifest), CliError> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    let branches = solve_branches(args.x, args.count, tol)?;
    let rows = branches
        .iter()
        .map(|b| {
            vec![
                b.branch_index.to_string(),
                fmt_num(b.value),
                fmt_num(b.lambda()),
                fmt_num(b.residual),
            ]
        })
        .collect();
    let records: Vec<Value> = branches
        .iter()
        .map(|b| {
            json!({
                "index": b.branch_index, "nu_squared": b.value,
                "lambda": b.lambda(), "residual": b.residual,
            })
        })
        .collect();
    let output = Output {
        header: &["index", "nu_squared", "lambda", "residual"],
        rows,
        json: json!({ "x": args.x, "branches": records }),
        summary: None,
    };
    let params = serde_json::to_value(args).expect("params serialize");
    Ok((
        output,
        RunManifest::new("branches", params, &[("tol", tol)]),
    ))
}
