//! Command-line front end: reads a JSON problem description, runs one
//! computation and writes JSON or CSV.
//!
//! Exit codes: 0 success, 1 a `verify` property failed, 2 invalid input,
//! 3 numerical failure (the error is serialized to standard output).

pub mod report;
pub mod spec;
pub mod verify;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dbr_core::boundary::{caratheodory, clark, kernel_convergence, radius, DEFAULT_CLARK_GRID, RADIAL_LEVELS};
use dbr_core::cyclic::{cyclicity, spectrum_crosscheck};
use dbr_core::space::{density_residual, embed, kernel, kernel_diagonal, make_context, SpaceContext};
use serde_json::{json, Value};
use thiserror::Error;

use spec::ProblemSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Validation { message: String, line: Option<usize>, column: Option<usize> },
    #[error(transparent)]
    Core(#[from] dbr_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::Validation { message: message.into(), line: None, column: None }
    }

    pub fn from_json(e: serde_json::Error) -> Self {
        CliError::Validation { message: format!("malformed spec: {e}"), line: Some(e.line()), column: Some(e.column()) }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } | CliError::Io(_) => EXIT_VALIDATION,
            CliError::Core(e) if e.is_validation() => EXIT_VALIDATION,
            CliError::Core(_) => EXIT_NUMERICAL,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Validation { message, line, column } => json!({
                "error": "ValidationError",
                "message": message,
                "details": {"line": line, "column": column},
            }),
            CliError::Core(e) => report::error(e),
            CliError::Io(e) => json!({"error": "IoError", "message": e.to_string(), "details": {}}),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dbr", version, about = "Computations in de Branges-Rovnyak spaces of polynomial row symbols")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Problem description (JSON); standard input when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Use a named fixture as the symbol (ZERO, SARASON, ROW2, FLAT, TRUNC(d)).
    #[arg(long, global = true, value_name = "NAME")]
    pub fixture: Option<String>,
    #[arg(long, global = true, value_name = "X")]
    pub tol_factor: Option<f64>,
    #[arg(long, global = true, value_name = "K")]
    pub grid_log2: Option<u32>,
    #[arg(long, global = true, value_name = "M")]
    pub max_iter: Option<usize>,
    /// Seed for the randomized property suite.
    #[arg(long, global = true, value_name = "S")]
    pub seed: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Mate, outer factor, boundary spectrum and factorization residuals.
    Analyze,
    /// Norm and plus part of the polynomial `f`.
    Norm,
    /// Reproducing kernel at `w` (optionally truncated at `N` terms).
    Kernel,
    /// Clark measure for `xi` (`N` overrides the grid size).
    Clark,
    /// Boundary report at `lambda`, with kernel norms along `radii`.
    Caratheodory,
    /// Cyclicity certificate for `f`.
    Cyclic,
    /// Density residuals at `w` for degrees 0..=N.
    Density,
    /// Point-evaluation residuals on the circle at degree `N`.
    Crosscheck,
    /// Runs the invariant suite on the symbol.
    Verify,
}

impl Command {
    fn supports_csv(self) -> bool {
        matches!(self, Command::Density | Command::Crosscheck | Command::Clark | Command::Verify)
    }
}

/// Rendered output and the exit code it implies.
struct Output {
    body: String,
    code: i32,
}

pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => match emit(&cli, &out.body, stdout) {
            Ok(()) => out.code,
            Err(e) => fail(&e, stdout, stderr),
        },
        Err(e) => fail(&e, stdout, stderr),
    }
}

fn fail(e: &CliError, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "dbr: {e}");
    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&e.to_json()).unwrap_or_default());
    e.exit_code()
}

fn emit(cli: &Cli, body: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn load_spec(cli: &Cli, stdin: &mut dyn Read) -> Result<ProblemSpec, CliError> {
    let mut spec = match (&cli.spec, &cli.fixture) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
            ProblemSpec::parse(&text)?
        }
        (None, Some(name)) => ProblemSpec::for_fixture(name),
        (None, None) => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            ProblemSpec::parse(&text)?
        }
    };
    if let Some(name) = &cli.fixture {
        if spec.b.is_some() {
            return Err(CliError::invalid("--fixture conflicts with `B` in the problem file"));
        }
        spec.fixture = Some(name.clone());
    }
    let t = spec.tolerances.get_or_insert_with(Default::default);
    if cli.tol_factor.is_some() {
        t.tol_factor = cli.tol_factor;
    }
    if cli.grid_log2.is_some() {
        t.grid_log2 = cli.grid_log2;
    }
    if cli.max_iter.is_some() {
        t.max_iter = cli.max_iter;
    }
    if cli.seed.is_some() {
        t.seed = cli.seed;
    }
    if *t == Default::default() {
        spec.tolerances = None;
    }
    spec.validate()?;
    Ok(spec)
}

fn context(spec: &ProblemSpec) -> Result<SpaceContext<f64>, CliError> {
    Ok(make_context(spec.symbol()?, spec.tolerances())?)
}

fn json_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn csv_body(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::invalid(format!("csv: {e}"));
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

/// CSV number: shortest round-trip digits in scientific notation.
fn num(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:e}")
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output, CliError> {
    if cli.format == Format::Csv && !cli.command.supports_csv() {
        return Err(CliError::invalid(format!("{:?} has no CSV form; use --format json", cli.command).to_lowercase()));
    }
    let spec = load_spec(cli, stdin)?;
    let ctx = context(&spec)?;
    let csv = cli.format == Format::Csv;
    let ok = |body| Ok(Output { body, code: EXIT_OK });
    match cli.command {
        Command::Analyze => ok(json_body(&report::context(&ctx))),
        Command::Norm => {
            let el = embed(&ctx, &spec.f_poly()?)?;
            ok(json_body(&report::element(&el, &ctx)))
        }
        Command::Kernel => {
            let w = spec.w_point()?;
            let k = kernel(&ctx, w, spec.n)?;
            let diag = (w.norm() < 1.0).then(|| kernel_diagonal(&ctx, w));
            ok(json_body(&report::kernel(&k, diag, &ctx)))
        }
        Command::Clark => {
            let xi = spec.xi_vec()?;
            let grid = spec.n.unwrap_or(DEFAULT_CLARK_GRID);
            let m = clark(&ctx, &xi, grid)?;
            if csv {
                let n = m.density.len();
                let rows = m.density.iter().enumerate().map(|(j, &v)| {
                    vec![num(std::f64::consts::TAU * j as f64 / n as f64), num(v)]
                });
                ok(csv_body(&["theta", "density"], rows)?)
            } else {
                ok(json_body(&report::clark(&m)))
            }
        }
        Command::Caratheodory => {
            let lambda = spec.lambda_point()?;
            let r = caratheodory(&ctx, lambda)?;
            let radii: Vec<f64> =
                spec.radii.clone().unwrap_or_else(|| RADIAL_LEVELS.map(radius::<f64>).collect());
            let conv = if r.satisfies_caratheodory { Some(kernel_convergence(&ctx, lambda, &radii)?) } else { None };
            ok(json_body(&report::boundary(&r, conv.as_deref().map(|v| (radii.as_slice(), v)))))
        }
        Command::Cyclic => ok(json_body(&report::cyclicity(&cyclicity(&ctx, &spec.f_poly()?)?))),
        Command::Density => {
            let w = spec.w_point()?;
            if w.norm() >= 1.0 {
                return Err(CliError::invalid("density needs |w| < 1"));
            }
            let n = spec.n_value()?;
            let rows = (0..=n).map(|k| density_residual(&ctx, w, k).map(|p| (k, p.residual))).collect::<Result<Vec<_>, _>>()?;
            if csv {
                ok(csv_body(&["N", "residual"], rows.iter().map(|&(k, r)| vec![k.to_string(), num(r)]))?)
            } else {
                let rows: Vec<Value> = rows.iter().map(|&(k, r)| json!({"N": k, "residual": report::real(r)})).collect();
                ok(json_body(&json!({"w": report::c(w), "rows": rows})))
            }
        }
        Command::Crosscheck => {
            let x = spectrum_crosscheck(&ctx, spec.n_value()?)?;
            if csv {
                let rows = x.entries.iter().map(|e| {
                    vec![num(e.lambda.re), num(e.lambda.im), e.member.to_string(), num(e.residual)]
                });
                ok(csv_body(&["lambda_re", "lambda_im", "member", "residual"], rows)?)
            } else {
                ok(json_body(&report::crosscheck(&x)))
            }
        }
        Command::Verify => {
            let props = verify::run(&ctx, spec.tolerances().seed)?;
            let all = props.iter().all(|p| p.pass);
            let code = if all { EXIT_OK } else { EXIT_PROPERTY_FAILED };
            let body = if csv {
                let rows = props.iter().map(|p| {
                    vec![p.name.to_string(), p.pass.to_string(), num(p.value), num(p.tolerance)]
                });
                csv_body(&["property", "pass", "value", "tolerance"], rows)?
            } else {
                let list: Vec<Value> = props
                    .iter()
                    .map(|p| json!({"name": p.name, "pass": p.pass, "value": report::real(p.value), "tolerance": p.tolerance}))
                    .collect();
                json_body(&json!({"pass": all, "properties": list}))
            };
            Ok(Output { body, code })
        }
    }
}
