//! Command-line front end.
//!
//! Settings come from flags, then an optional `key = value` config file,
//! then defaults. All output is CSV with a header row; floats are written
//! with 17 significant digits so identical runs give identical bytes.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::approx::{Approximant, Form};
use crate::diagnostics::{
    appendix_quantities, catalog_threshold, lower_bound_from_report, make_grid, AppendixReport, ErrorExperiment,
    EvalGrid, LowerBoundCheck,
};
use crate::energy::{weighted_potential, EnergyReport};
use crate::error::Error;
use crate::functions::TestFunction;
use crate::optimizer::{solve, IterRecord, SolveResult, SolverConfig};
use crate::weights::{get_weight, Builtin, Weight, DEFAULT_EPSILON};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const DEFAULT_N_LIST: [usize; 4] = [9, 17, 33, 65];
pub const DEFAULT_QUAD_ORDER: usize = 32;

#[derive(Debug, Parser)]
#[command(name = "hardy-points", version, about = "Sampling points and interpolation in weighted Hardy spaces on a strip")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Optimal points: `index,a`.
    Points,
    /// Interpolant on the grid: `x,f,approx,abs_error`.
    Approx,
    /// Error sweep over n: `n,err_I,err_II,certificate`.
    Errors,
    /// Error sweep against sinc interpolation: `n,err_I,err_II,err_sinc`.
    CompareSinc,
    /// Potential lower bound on the grid: `x,u_plus_q,bound`.
    Bound,
    /// Energy report, lower-bound check and appendix quantities: `quantity,value`.
    Diag,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Built-in weight name (w1..w7).
    #[arg(long, global = true)]
    pub weight: Option<String>,
    /// Strip width reduction for weights whose nominal width is a boundary.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Comma-separated list of n.
    #[arg(long = "n-list", global = true)]
    pub n_list: Option<String>,
    /// Barycentric formula, I or II.
    #[arg(long, global = true)]
    pub form: Option<String>,
    /// f1..f7 or weight-itself; defaults to the weight's paired function.
    #[arg(long, global = true)]
    pub function: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x1: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub xlast: Option<f64>,
    #[arg(long = "grid-count", global = true)]
    pub grid_count: Option<usize>,
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Take full Newton steps without backtracking.
    #[arg(long = "pure-newton", global = true)]
    pub pure_newton: bool,
    #[arg(long = "quad-order", global = true)]
    pub quad_order: Option<usize>,
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub weight: String,
    pub epsilon: f64,
    pub ns: Vec<usize>,
    pub form: Form,
    pub function: Option<TestFunction>,
    pub x1: Option<f64>,
    pub x_last: Option<f64>,
    pub grid_count: Option<usize>,
    pub out: Option<PathBuf>,
    pub pure_newton: bool,
    pub quad_order: usize,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(e) if e.is_usage() => EXIT_USAGE,
            CliError::Lib(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

const CONFIG_KEYS: [&str; 12] = [
    "weight",
    "epsilon",
    "n",
    "n-list",
    "form",
    "function",
    "x1",
    "xlast",
    "grid-count",
    "out",
    "pure-newton",
    "quad-order",
];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", lineno + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| CliError::Usage(format!("cannot parse {key} = `{v}`")))
}

fn parse_n_list(v: &str) -> CliResult<Vec<usize>> {
    let ns = v
        .split(',')
        .map(|s| parse_value::<usize>("n-list", s.trim()))
        .collect::<CliResult<Vec<_>>>()?;
    if ns.is_empty() {
        return Err(CliError::Usage("n-list is empty".into()));
    }
    Ok(ns)
}

fn parse_bool(key: &str, v: &str) -> CliResult<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(CliError::Usage(format!("cannot parse {key} = `{v}` as a boolean"))),
    }
}

impl RunConfig {
    /// Merges flags over the config file over defaults.
    pub fn resolve(command: Command, flags: &Flags, file: &BTreeMap<String, String>) -> CliResult<Self> {
        let get = |key: &str| file.get(key).map(String::as_str);
        let weight = flags
            .weight
            .clone()
            .or_else(|| get("weight").map(str::to_string))
            .ok_or_else(|| CliError::Usage("missing --weight".into()))?;
        let epsilon = match (flags.epsilon, get("epsilon")) {
            (Some(e), _) => e,
            (None, Some(v)) => parse_value("epsilon", v)?,
            (None, None) => DEFAULT_EPSILON,
        };
        let ns = match (&flags.n_list, flags.n, get("n-list"), get("n")) {
            (Some(list), _, _, _) => parse_n_list(list)?,
            (None, Some(n), _, _) => vec![n],
            (None, None, Some(list), _) => parse_n_list(list)?,
            (None, None, None, Some(n)) => vec![parse_value("n", n)?],
            (None, None, None, None) => match command {
                Command::Errors | Command::CompareSinc => DEFAULT_N_LIST.to_vec(),
                _ => return Err(CliError::Usage("missing --n".into())),
            },
        };
        let form = match flags.form.as_deref().or(get("form")) {
            Some(v) => v.parse::<Form>()?,
            None => Form::I,
        };
        let function = flags
            .function
            .as_deref()
            .or(get("function"))
            .map(TestFunction::from_name)
            .transpose()?;
        let opt_f64 = |flag: Option<f64>, key: &str| -> CliResult<Option<f64>> {
            match (flag, get(key)) {
                (Some(v), _) => Ok(Some(v)),
                (None, Some(v)) => parse_value(key, v).map(Some),
                (None, None) => Ok(None),
            }
        };
        let x1 = opt_f64(flags.x1, "x1")?;
        let x_last = opt_f64(flags.xlast, "xlast")?;
        let grid_count = match (flags.grid_count, get("grid-count")) {
            (Some(c), _) => Some(c),
            (None, Some(v)) => Some(parse_value("grid-count", v)?),
            (None, None) => None,
        };
        let out = flags.out.clone().or_else(|| get("out").map(PathBuf::from));
        let pure_newton = flags.pure_newton || get("pure-newton").map(|v| parse_bool("pure-newton", v)).transpose()?.unwrap_or(false);
        let quad_order = match (flags.quad_order, get("quad-order")) {
            (Some(q), _) => q,
            (None, Some(v)) => parse_value("quad-order", v)?,
            (None, None) => DEFAULT_QUAD_ORDER,
        };
        Ok(RunConfig {
            command,
            weight,
            epsilon,
            ns,
            form,
            function,
            x1,
            x_last,
            grid_count,
            out,
            pure_newton,
            quad_order,
        })
    }

    fn weight(&self) -> CliResult<Weight> {
        Ok(get_weight(&self.weight, self.epsilon)?)
    }

    fn single_n(&self) -> CliResult<usize> {
        match self.ns.as_slice() {
            [n] => Ok(*n),
            _ => Err(CliError::Usage(format!("`{}` takes a single --n", command_name(self.command)))),
        }
    }

    fn solver(&self) -> SolverConfig {
        SolverConfig {
            damping: !self.pure_newton,
            ..SolverConfig::default()
        }
    }

    fn function_for(&self, wt: &Weight) -> TestFunction {
        self.function
            .unwrap_or_else(|| wt.builtin().map_or(TestFunction::WeightItself, TestFunction::for_weight))
    }

    fn grid(&self, wt: &Weight) -> CliResult<EvalGrid> {
        let threshold = wt.builtin().map_or(1e-20, catalog_threshold);
        let symmetric = wt.builtin().is_none_or(Builtin::is_even);
        let base = make_grid(wt, threshold, symmetric)?;
        Ok(EvalGrid::new(
            self.x1.unwrap_or(base.x1),
            self.x_last.unwrap_or(base.x_last),
            self.grid_count.unwrap_or(base.count),
        )?)
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Points => "points",
        Command::Approx => "approx",
        Command::Errors => "errors",
        Command::CompareSinc => "compare-sinc",
        Command::Bound => "bound",
        Command::Diag => "diag",
    }
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Output of one command: CSV plus an optional human-readable summary.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub csv: String,
    pub summary: Option<String>,
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = String::new();
    s.push_str(header);
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn solve_for(cfg: &RunConfig, wt: &Weight, n: usize) -> CliResult<SolveResult> {
    if n < 2 {
        return Err(CliError::Usage(format!("n must be at least 2, got {n}")));
    }
    Ok(solve(wt, n, &cfg.solver())?)
}

pub fn cmd_points(cfg: &RunConfig) -> CliResult<Output> {
    let wt = cfg.weight()?;
    let sol = solve_for(cfg, &wt, cfg.single_n()?)?;
    let rows = sol
        .points
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &a)| vec![(i + 1).to_string(), fmt_f64(a)]);
    Ok(Output {
        csv: csv("index,a", rows),
        summary: None,
    })
}

pub fn cmd_approx(cfg: &RunConfig) -> CliResult<Output> {
    let wt = cfg.weight()?;
    let func = cfg.function_for(&wt);
    let sol = solve_for(cfg, &wt, cfg.single_n()?)?;
    let f = |x: f64| func.eval(&wt, x);
    let app = Approximant::new(&wt, &sol.points, f, cfg.form)?;
    let grid = cfg.grid(&wt)?;
    let mut rows = Vec::with_capacity(grid.count);
    for &x in grid.points() {
        let (fx, ax) = (f(x), app.eval(x)?);
        rows.push(vec![fmt_f64(x), fmt_f64(fx), fmt_f64(ax), fmt_f64((fx - ax).abs())]);
    }
    Ok(Output {
        csv: csv("x,f,approx,abs_error", rows),
        summary: None,
    })
}

fn experiment(cfg: &RunConfig, wt: Weight, func: TestFunction, with_sinc: bool) -> CliResult<ErrorExperiment> {
    let mut ex = ErrorExperiment::catalog(wt, func, cfg.epsilon)?;
    ex.grid = cfg.grid(&ex.weight)?;
    ex.solver = cfg.solver();
    ex.with_sinc = with_sinc;
    Ok(ex)
}

fn check_ns(ns: &[usize]) -> CliResult<()> {
    match ns.iter().find(|&&n| n < 2) {
        Some(n) => Err(CliError::Usage(format!("n must be at least 2, got {n}"))),
        None => Ok(()),
    }
}

pub fn cmd_errors(cfg: &RunConfig) -> CliResult<Output> {
    check_ns(&cfg.ns)?;
    let wt = cfg.weight()?;
    let func = cfg.function_for(&wt);
    let table = experiment(cfg, wt, func, false)?.table(&cfg.ns)?;
    let rows = table
        .rows
        .iter()
        .map(|r| vec![r.n.to_string(), fmt_f64(r.err_i), fmt_f64(r.err_ii), fmt_f64(r.certificate)]);
    Ok(Output {
        csv: csv("n,err_I,err_II,certificate", rows),
        summary: None,
    })
}

pub fn cmd_compare_sinc(cfg: &RunConfig) -> CliResult<Output> {
    check_ns(&cfg.ns)?;
    let wt = cfg.weight()?;
    let sinc_weights = [Builtin::W4, Builtin::W5, Builtin::W6, Builtin::W7];
    let b = wt.builtin().filter(|b| sinc_weights.contains(b)).ok_or_else(|| {
        CliError::Usage(format!("compare-sinc supports w4, w5, w6, w7; got `{}`", wt.name()))
    })?;
    let func = cfg.function.unwrap_or(TestFunction::for_weight(b));
    if func.paired_weight() != Some(b) {
        return Err(Error::Mismatch {
            function: func.name().to_string(),
            weight: wt.name().to_string(),
        }
        .into());
    }
    let table = experiment(cfg, wt, func, true)?.table(&cfg.ns)?;
    let rows = table.rows.iter().map(|r| {
        vec![
            r.n.to_string(),
            fmt_f64(r.err_i),
            fmt_f64(r.err_ii),
            fmt_f64(r.err_sinc.unwrap_or(f64::NAN)),
        ]
    });
    Ok(Output {
        csv: csv("n,err_I,err_II,err_sinc", rows),
        summary: None,
    })
}

pub fn cmd_bound(cfg: &RunConfig) -> CliResult<Output> {
    let wt = cfg.weight()?;
    let sol = solve_for(cfg, &wt, cfg.single_n()?)?;
    let grid = cfg.grid(&wt)?;
    let chk = lower_bound_from_report(&wt, &sol.points, &sol.energy_report, &grid);
    let rows = grid
        .points()
        .iter()
        .map(|&x| vec![fmt_f64(x), fmt_f64(weighted_potential(&wt, &sol.points, x)), fmt_f64(chk.bound)]);
    Ok(Output {
        csv: csv("x,u_plus_q,bound", rows),
        summary: Some(lower_bound_summary(&chk)),
    })
}

fn lower_bound_summary(chk: &LowerBoundCheck) -> String {
    format!(
        "lower bound: min U+Q = {} at x = {}, F/(n-1) = {}, gap = {:e}, {}\n",
        fmt_f64(chk.min_value),
        fmt_f64(chk.argmin),
        fmt_f64(chk.bound),
        chk.min_value - chk.bound,
        if chk.pass { "pass" } else { "FAIL" }
    )
}

fn diag_rows(rep: &EnergyReport, chk: &LowerBoundCheck, app: &AppendixReport) -> Vec<(&'static str, f64)> {
    let mut rows = vec![
        ("n", rep.n as f64),
        ("energy", rep.energy),
        ("grad_inf_norm", rep.grad_inf_norm),
        ("f_d", rep.f_d),
        ("certificate", rep.certificate),
        ("lower_bound_min", chk.min_value),
        ("lower_bound_argmin", chk.argmin),
        ("lower_bound_target", chk.bound),
        ("lower_bound_pass", f64::from(u8::from(chk.pass))),
        ("h_sep", app.h_sep),
        ("max_gap", app.max_gap),
        ("c_d", app.c_d),
        ("applicable", f64::from(u8::from(app.applicable))),
        ("end_gap", app.end_gap),
        ("quad_order", app.quad_order as f64),
        ("s_quad_sum", app.s_quad_sum),
        ("t_quad_sum", app.t_quad_sum),
        ("e1", app.e1),
    ];
    if let Some(b) = &app.bounds {
        rows.extend([
            ("s_bound_sum", b.s_bound_sum),
            ("t_bound_sum", b.t_bound_sum),
            ("t_bound_sum_published", b.t_bound_sum_published),
            ("big_c_n", b.big_c_n),
            ("big_c_n_published", b.big_c_n_published),
            ("assembled_bound", b.assembled_bound),
            ("assembled_bound_published", b.assembled_bound_published),
        ]);
    }
    rows
}

pub fn cmd_diag(cfg: &RunConfig) -> CliResult<Output> {
    let wt = cfg.weight()?;
    let n = cfg.single_n()?;
    let sol = solve_for(cfg, &wt, n)?;
    let grid = cfg.grid(&wt)?;
    let rep = &sol.energy_report;
    let chk = lower_bound_from_report(&wt, &sol.points, rep, &grid);
    let app = appendix_quantities(&wt, &sol.points, cfg.quad_order)?;

    let mut text = String::new();
    let _ = writeln!(text, "weight {} (d = {}), n = {n}, {} iterations", wt.name(), fmt_f64(wt.d()), sol.iterations);
    let _ = writeln!(
        text,
        "energy = {}, |grad| = {:e}, F = {}, certificate = {:e}",
        fmt_f64(rep.energy),
        rep.grad_inf_norm,
        fmt_f64(rep.f_d),
        rep.certificate
    );
    text.push_str(&lower_bound_summary(&chk));
    let _ = writeln!(
        text,
        "h_sep = {}, max gap = {}, c_d = {}, bounds {}",
        fmt_f64(app.h_sep),
        fmt_f64(app.max_gap),
        fmt_f64(app.c_d),
        if app.applicable { "applicable" } else { "not applicable (a gap exceeds 1)" }
    );

    let rows = diag_rows(rep, &chk, &app)
        .into_iter()
        .map(|(k, v)| vec![k.to_string(), fmt_f64(v)]);
    Ok(Output {
        csv: csv("quantity,value", rows),
        summary: Some(text),
    })
}

pub fn execute(cfg: &RunConfig) -> CliResult<Output> {
    match cfg.command {
        Command::Points => cmd_points(cfg),
        Command::Approx => cmd_approx(cfg),
        Command::Errors => cmd_errors(cfg),
        Command::CompareSinc => cmd_compare_sinc(cfg),
        Command::Bound => cmd_bound(cfg),
        Command::Diag => cmd_diag(cfg),
    }
}

fn dump_trace(trace: &[IterRecord], err: &mut dyn Write) {
    let _ = writeln!(err, "iteration,energy,step_inf_norm,damping");
    for r in trace {
        let _ = writeln!(
            err,
            "{},{},{},{}",
            r.iteration,
            fmt_f64(r.energy),
            fmt_f64(r.step_inf_norm),
            fmt_f64(r.damping)
        );
    }
}

fn run_parsed(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let file = match &cli.flags.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => BTreeMap::new(),
    };
    let cfg = RunConfig::resolve(cli.command, &cli.flags, &file)?;
    let output = execute(&cfg)?;
    if let Some(summary) = &output.summary {
        let _ = err.write_all(summary.as_bytes());
    }
    match &cfg.out {
        Some(path) => fs::write(path, &output.csv)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => out
            .write_all(output.csv.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))?,
    }
    Ok(())
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_parsed(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Lib(lib) = &e {
                if let Some(trace) = lib.trace() {
                    dump_trace(trace, err);
                }
            }
            e.exit_code()
        }
    }
}
