//! Command-line front end: `law`, `bounds`, `sweep` and `simulate`.
//!
//! Every flag can also be given in a JSON config file (`--config`), with the
//! same key names in snake case; flags override the file. When `--out` is set
//! the effective configuration is written next to the output as
//! `<out>.config.json`, which can be fed back through `--config`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundReport};
use crate::error::{Error, Result};
use crate::gaussian::{w2_1d, w2_1d_sq, Gaussian};
use crate::grid::{GridSpec, Spacing};
use crate::models::ModelParams;
use crate::montecarlo::{self, SimConfig, BOOTSTRAP_RESAMPLES};
use crate::reduction::{reduce_coupled, reduce_oscillator, CoupledParams, OscillatorParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub const LAW_HEADER: [&str; 7] = [
    "t",
    "mean_full",
    "var_full",
    "mean_reduced",
    "var_reduced",
    "w2",
    "w2_sq",
];
pub const BOUNDS_HEADER: [&str; 6] = ["bound_name", "t", "exact_sq", "bound", "margin", "satisfied"];
pub const SWEEP_HEADER: [&str; 5] = ["param", "value", "sup_w2_sq", "bound", "ratio"];
pub const SIMULATE_HEADER: [&str; 9] = [
    "t",
    "emp_mean",
    "emp_var",
    "emp_w2_vs_reduced",
    "se_mean",
    "se_var",
    "se_w2",
    "analytic_w2",
    "z_score",
];

const DEFAULT_SIM_TIMES: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Parser)]
#[command(name = "modred", version, about = "Invariant-manifold reduction of linear SDEs with Wasserstein-2 certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate original and reduced laws of the retained coordinate and their distance.
    Law(RunArgs),
    /// Check every explicit bound on a time grid; exit 1 on any violation.
    Bounds(RunArgs),
    /// Sup-over-grid distance against the uniform bound for a parameter sweep.
    Sweep(RunArgs),
    /// Monte-Carlo cross-check of the closed-form laws.
    Simulate(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    #[default]
    Oscillator,
    Coupled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// JSON file with any of the options below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// Inverse temperature; `inf` gives the noise-free dynamics.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Second self-interaction; defaults to `a`.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub sigma1: Option<f64>,
    #[arg(long)]
    pub sigma2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x2: Option<f64>,
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub t_count: Option<usize>,
    #[arg(long)]
    pub t_spacing: Option<Spacing>,
    /// `name=v1,v2,...`
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub paths: Option<usize>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Run configuration as read from a config file or echoed to the sidecar.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "beta_value")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_spacing: Option<Spacing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

/// `beta` may be `"inf"` in JSON, which has no infinite numbers.
mod beta_value {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(b) if b.is_infinite() => s.serialize_str("inf"),
            Some(b) => s.serialize_f64(*b),
            None => s.serialize_none(),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        match Option::<Raw>::deserialize(d)? {
            None => Ok(None),
            Some(Raw::Num(v)) => Ok(Some(v)),
            Some(Raw::Text(s)) => s
                .parse::<f64>()
                .map(Some)
                .map_err(|_| serde::de::Error::custom(format!("invalid beta '{s}'"))),
        }
    }
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($f:ident),*) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f.clone(); } )*
    };
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("invalid config {}: {e}", path.display())))
    }

    /// File values overridden by any flag that was given.
    pub fn from_args(args: &RunArgs) -> Result<Self> {
        let mut cfg = match &args.config {
            Some(path) => Self::from_file(path)?,
            None => Self::default(),
        };
        overlay!(
            cfg, args, model, gamma, omega, beta, x0, v0, a, d, k, sigma1, sigma2, x1, x2,
            t_start, t_end, t_count, t_spacing, sweep, seed, dt, paths, steps, out, format
        );
        Ok(cfg)
    }

    /// The model described by this configuration, with defaults filled in.
    pub fn model_params(&self) -> Result<ModelParams> {
        let osc_only = [("gamma", self.gamma), ("omega", self.omega), ("beta", self.beta), ("x0", self.x0), ("v0", self.v0)];
        let cpl_only = [
            ("a", self.a),
            ("d", self.d),
            ("k", self.k),
            ("sigma1", self.sigma1),
            ("sigma2", self.sigma2),
            ("x1", self.x1),
            ("x2", self.x2),
        ];
        let stray = |fields: &[(&str, Option<f64>)], model: &str| -> Result<()> {
            match fields.iter().find(|(_, v)| v.is_some()) {
                Some((name, _)) => Err(Error::Config(format!("--{name} does not apply to the {model} model"))),
                None => Ok(()),
            }
        };
        match self.model.unwrap_or_default() {
            ModelKind::Oscillator => {
                stray(&cpl_only, "oscillator")?;
                let p = OscillatorParams {
                    gamma: self.gamma.unwrap_or(5.0),
                    omega: self.omega.unwrap_or(2.0),
                    beta: self.beta.unwrap_or(1.0),
                    x0: self.x0.unwrap_or(1.0),
                    v0: self.v0.unwrap_or(0.0),
                };
                p.validate()?;
                Ok(ModelParams::Oscillator(p))
            }
            ModelKind::Coupled => {
                stray(&osc_only, "coupled")?;
                let a = self.a.unwrap_or(-1.0);
                let p = CoupledParams {
                    a,
                    d: self.d.unwrap_or(a),
                    k: self.k.unwrap_or(1.0),
                    sigma1: self.sigma1.unwrap_or(1.0),
                    sigma2: self.sigma2.unwrap_or(1.0),
                    x1: self.x1.unwrap_or(1.0),
                    x2: self.x2.unwrap_or(0.0),
                };
                p.validate()?;
                Ok(ModelParams::Coupled(p))
            }
        }
    }

    fn explicit_grid(&self) -> bool {
        self.t_start.is_some() || self.t_end.is_some() || self.t_count.is_some() || self.t_spacing.is_some()
    }

    /// Explicit grid if any `t_*` option is set, otherwise the default
    /// verification grid of `params`.
    pub fn time_grid(&self, params: &ModelParams) -> Result<Vec<f64>> {
        if !self.explicit_grid() {
            return Ok(bounds::default_grid(params));
        }
        let (slow, _) = params.rates();
        GridSpec {
            start: self.t_start.unwrap_or(0.0),
            end: self.t_end.unwrap_or(20.0 / slow),
            count: self.t_count.unwrap_or(60),
            spacing: self.t_spacing.unwrap_or_default(),
        }
        .build()
    }

    pub fn sweep_spec(&self) -> Result<Option<(String, Vec<f64>)>> {
        self.sweep.as_deref().map(parse_sweep).transpose()
    }

    /// `self` with `name` set to `value`, keeping `d = a` for identical oscillators.
    fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        let mut c = self.clone();
        let slot = match name {
            "gamma" => &mut c.gamma,
            "omega" => &mut c.omega,
            "beta" => &mut c.beta,
            "x0" => &mut c.x0,
            "v0" => &mut c.v0,
            "a" => {
                if self.d.is_none() {
                    c.d = Some(value);
                }
                &mut c.a
            }
            "d" => &mut c.d,
            "k" => &mut c.k,
            "sigma1" => &mut c.sigma1,
            "sigma2" => &mut c.sigma2,
            "x1" => &mut c.x1,
            "x2" => &mut c.x2,
            other => return Err(Error::Config(format!("cannot sweep unknown parameter '{other}'"))),
        };
        *slot = Some(value);
        Ok(c)
    }
}

pub fn parse_sweep(spec: &str) -> Result<(String, Vec<f64>)> {
    let (name, values) = spec
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("sweep must look like name=v1,v2,..., got '{spec}'")))?;
    let values = values
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("invalid sweep value '{v}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::Config("empty sweep".into()));
    }
    Ok((name.trim().to_string(), values))
}

/// A cell of an output table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Flag(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_num(*v),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or_else(|| serde_json::Value::String(format_num(*v))),
            Cell::Text(s) => serde_json::Value::String(s.clone()),
            Cell::Flag(b) => serde_json::Value::Bool(*b),
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Config(format!("csv output: {e}"));
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(io)?;
        }
        w.into_inner().map_err(|e| Error::Config(format!("csv output: {e}")))
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| self.header.iter().cloned().zip(row.iter().map(Cell::json)).collect())
            .collect();
        let mut out = serde_json::to_vec_pretty(&rows).map_err(|e| Error::Config(e.to_string()))?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Closed-form law table.
pub fn law_table(params: &ModelParams, grid: &[f64]) -> Result<Table> {
    crate::grid::validate(grid)?;
    let mut table = Table::new(&LAW_HEADER);
    for &t in grid {
        let full = params.full_marginal(t)?;
        let red = params.reduced_law(t)?;
        let sq = w2_1d_sq(&full, &red);
        table.rows.push(
            [t, full.mean, full.var, red.mean, red.var, sq.sqrt(), sq]
                .into_iter()
                .map(Cell::Num)
                .collect(),
        );
    }
    Ok(table)
}

fn bound_rows(table: &mut Table, reports: &[BoundReport], prefix: &[Cell]) {
    for r in reports {
        let mut row = prefix.to_vec();
        row.extend([
            Cell::Text(r.kind.name().into()),
            Cell::Num(r.t),
            Cell::Num(r.exact_sq),
            Cell::Num(r.bound),
            Cell::Num(r.margin),
            Cell::Flag(r.satisfied),
        ]);
        table.rows.push(row);
    }
}

/// Bound reports, one block per sweep value when sweeping. Returns the table
/// and whether every bound held.
pub fn bounds_table(cfg: &RunConfig) -> Result<(Table, bool)> {
    match cfg.sweep_spec()? {
        None => {
            let params = cfg.model_params()?;
            let reports = bounds::verify_bounds(&params, &cfg.time_grid(&params)?)?;
            let mut table = Table::new(&BOUNDS_HEADER);
            bound_rows(&mut table, &reports, &[]);
            Ok((table, reports.iter().all(|r| r.satisfied)))
        }
        Some((name, values)) => {
            let header: Vec<&str> = ["param", "value"].into_iter().chain(BOUNDS_HEADER).collect();
            let mut table = Table::new(&header);
            let mut ok = true;
            for v in values {
                let c = cfg.with_param(&name, v)?;
                let params = c.model_params()?;
                let reports = bounds::verify_bounds(&params, &c.time_grid(&params)?)?;
                ok &= reports.iter().all(|r| r.satisfied);
                bound_rows(&mut table, &reports, &[Cell::Text(name.clone()), Cell::Num(v)]);
            }
            Ok((table, ok))
        }
    }
}

/// Sup-over-grid `W2²` against the uniform bound for each sweep value.
pub fn sweep_table(cfg: &RunConfig) -> Result<Table> {
    let (name, values) = cfg
        .sweep_spec()?
        .ok_or_else(|| Error::Config("sweep needs --sweep name=v1,v2,...".into()))?;
    let mut table = Table::new(&SWEEP_HEADER);
    for v in values {
        let c = cfg.with_param(&name, v)?;
        let params = c.model_params()?;
        let sup = bounds::sup_w2_sq(&params, &c.time_grid(&params)?)?;
        let bound = bounds::uniform_bound(&params)?;
        table.rows.push(vec![
            Cell::Text(name.clone()),
            Cell::Num(v),
            Cell::Num(sup),
            Cell::Num(bound),
            Cell::Num(sup / bound),
        ]);
    }
    Ok(table)
}

/// Effective simulation settings: `(config, record times)`.
pub fn sim_settings(cfg: &RunConfig, params: &ModelParams) -> Result<(SimConfig, Vec<f64>)> {
    let dt = cfg.dt.unwrap_or(1e-3);
    let times = if cfg.explicit_grid() {
        cfg.time_grid(params)?
    } else {
        DEFAULT_SIM_TIMES.to_vec()
    };
    let last = times.last().copied().unwrap_or(0.0);
    let sim = SimConfig {
        dt,
        n_steps: cfg.steps.unwrap_or(((last / dt).round() as usize).max(1)),
        n_paths: cfg.paths.unwrap_or(100_000),
        seed: cfg.seed.unwrap_or(0),
    };
    Ok((sim, times))
}

/// Monte-Carlo table. The original model uses stream seed `seed`, the reduced
/// one `seed + 1` and the bootstrap `seed + 2`.
pub fn simulate_table(cfg: &RunConfig) -> Result<Table> {
    let params = cfg.model_params()?;
    let (sim, times) = sim_settings(cfg, &params)?;
    let (full_model, init, reduced, x0) = match params {
        ModelParams::Oscillator(p) => (p.full_model(), Gaussian::from(p.initial_state()), reduce_oscillator(&p)?, p.x0),
        ModelParams::Coupled(p) => (p.full_model(), Gaussian::from(p.initial_state()), reduce_coupled(&p)?, p.x1),
    };
    let full = montecarlo::simulate(&full_model, &init, &sim, &times)?;
    let red_cfg = SimConfig {
        seed: sim.seed.wrapping_add(1),
        ..sim
    };
    let red_init = Gaussian::from(crate::gaussian::Gaussian1::point_mass(x0));
    let red = montecarlo::simulate(&reduced.linear_model(), &red_init, &red_cfg, &times)?;

    let mut table = Table::new(&SIMULATE_HEADER);
    for (f, r) in full.iter().zip(&red) {
        let xs = f.coordinate(1)?;
        let ys = r.coordinate(1)?;
        let m = montecarlo::moment_estimates(&xs)?;
        let emp = montecarlo::empirical_w2_1d(&xs, &ys)?;
        let se = montecarlo::bootstrap_w2_se(&xs, &ys, BOOTSTRAP_RESAMPLES, sim.seed.wrapping_add(2))?;
        let analytic = w2_1d(&params.full_marginal(f.t)?, &params.reduced_law(f.t)?);
        let z = if se > 0.0 {
            (emp - analytic) / se
        } else if emp == analytic {
            0.0
        } else {
            (emp - analytic).signum() * f64::INFINITY
        };
        table.rows.push(
            [f.t, m.mean, m.var, emp, m.se_mean, m.se_var, se, analytic, z]
                .into_iter()
                .map(Cell::Num)
                .collect(),
        );
    }
    Ok(table)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".config.json");
    PathBuf::from(name)
}

fn emit(cfg: &RunConfig, table: &Table) -> Result<()> {
    let bytes = table.render(cfg.format.unwrap_or_default())?;
    match &cfg.out {
        Some(path) => {
            let io = |e: std::io::Error| Error::Config(format!("cannot write {}: {e}", path.display()));
            fs::write(path, bytes).map_err(io)?;
            let mut echo = serde_json::to_vec_pretty(cfg).map_err(|e| Error::Config(e.to_string()))?;
            echo.push(b'\n');
            fs::write(sidecar_path(path), echo).map_err(io)?;
        }
        None => {
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Error::Config(format!("cannot write output: {e}")))?;
        }
    }
    Ok(())
}

/// Caps the global worker pool from `MODRED_THREADS` (0 or unset = automatic).
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("MODRED_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("MODRED_THREADS must be a non-negative integer, got '{raw}'")))?;
    if n > 0 {
        // a pool that is already initialised keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs one command and returns its exit status.
pub fn run(cli: Cli) -> Result<i32> {
    configure_threads()?;
    let (Command::Law(args) | Command::Bounds(args) | Command::Sweep(args) | Command::Simulate(args)) = &cli.command;
    let cfg = RunConfig::from_args(args)?;
    match cli.command {
        Command::Law(_) => {
            let params = cfg.model_params()?;
            emit(&cfg, &law_table(&params, &cfg.time_grid(&params)?)?)?;
            Ok(EXIT_OK)
        }
        Command::Bounds(_) => {
            let (table, ok) = bounds_table(&cfg)?;
            emit(&cfg, &table)?;
            if ok {
                Ok(EXIT_OK)
            } else {
                eprintln!("error: bound violated");
                Ok(EXIT_VIOLATION)
            }
        }
        Command::Sweep(_) => {
            emit(&cfg, &sweep_table(&cfg)?)?;
            Ok(EXIT_OK)
        }
        Command::Simulate(_) => {
            emit(&cfg, &simulate_table(&cfg)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args`, runs, and maps errors to a one-line diagnostic and exit 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}
