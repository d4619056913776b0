//! `exactfit` command-line front end.
//!
//! Exit codes: 0 ok, 1 usage, 2 data, 3 domain, 4 verification mismatch. Payload goes
//! to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::{
    detect_format, display_f64, fit_bytes, parse_dataset, parse_model, serialize_model,
    FittedModel, InputFormat, IoError, ModelKind, OutputFormat,
};
use crate::numeric::{format_scalar, Arith, Rational, Scalar};
use crate::oracles::{verify, Oracle};
use crate::FitError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Upper bound on the number of points a `--grid` may expand to.
const MAX_GRID_POINTS: usize = 1_000_000;

const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(
    name = "exactfit",
    version,
    about = "Exact-fit interpolation in monomial form"
)]
pub struct InvocationConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a model through every data point
    Fit(FitArgs),
    /// Evaluate a saved model
    Eval(EvalArgs),
    /// Compare the tableau fit against classical interpolation
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKindArg {
    Poly,
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArithArg {
    Exact,
    F64,
}

impl From<ArithArg> for Arith {
    fn from(a: ArithArg) -> Self {
        match a {
            ArithArg::Exact => Arith::Exact,
            ArithArg::F64 => Arith::F64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AgainstArg {
    Newton,
    Vandermonde,
    Barycentric,
    All,
}

impl AgainstArg {
    fn oracles(self) -> Vec<Oracle> {
        match self {
            AgainstArg::Newton => vec![Oracle::Newton],
            AgainstArg::Vandermonde => vec![Oracle::Vandermonde],
            AgainstArg::Barycentric => vec![Oracle::Barycentric],
            AgainstArg::All => Oracle::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Data file, or `-` for stdin
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Input format; detected from the content when omitted
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormatArg>,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[arg(long, value_enum)]
    pub model: ModelKindArg,
    /// Defaults to exact for poly and f64 for exp
    #[arg(long, value_enum)]
    pub arith: Option<ArithArg>,
    #[command(flatten)]
    pub input: InputArgs,
    /// Output file, or `-` for stdout
    #[arg(long, default_value = "-")]
    pub output: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("points").required(true).args(["at", "grid"]))]
pub struct EvalArgs {
    /// JSON model document written by `fit --format json`
    #[arg(long)]
    pub model_file: String,
    /// Comma-separated evaluation points
    #[arg(long)]
    pub at: Option<String>,
    /// Inclusive grid START:STOP:STEP
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub against: AgainstArg,
    #[arg(long, value_enum, default_value = "exact")]
    pub arith: ArithArg,
    /// Relative tolerance for f64 mode
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Domain(String),
    Mismatch,
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Mismatch => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Domain(m) => m.clone(),
            CliError::Mismatch => "verification failed".to_owned(),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        if e.is_domain() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Data(e.to_string())
        }
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        if e.is_domain() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Data(e.to_string())
        }
    }
}

/// Runs one invocation against the given streams and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match InvocationConfig::try_parse_from(args) {
        Ok(config) => config,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &config.command {
        Command::Fit(args) => cmd_fit(args, stdin, stdout),
        Command::Eval(args) => cmd_eval(args, stdin, stdout),
        Command::Verify(args) => cmd_verify(args, stdin, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "exactfit: {}", e.message());
            e.exit_code()
        }
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
    let mut bytes = Vec::new();
    if path == "-" {
        stdin
            .read_to_end(&mut bytes)
            .map_err(|e| CliError::Data(format!("cannot read stdin: {e}")))?;
    } else {
        bytes = fs::read(path).map_err(|e| CliError::Data(format!("cannot read {path}: {e}")))?;
    }
    Ok(bytes)
}

fn write_sink(path: &str, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), CliError> {
    if path == "-" {
        stdout
            .write_all(bytes)
            .map_err(|e| CliError::Data(format!("cannot write stdout: {e}")))
    } else {
        fs::write(path, bytes).map_err(|e| CliError::Data(format!("cannot write {path}: {e}")))
    }
}

fn input_format(args: &InputArgs, bytes: &[u8]) -> InputFormat {
    match args.input_format {
        Some(InputFormatArg::Csv) => InputFormat::Csv,
        Some(InputFormatArg::Json) => InputFormat::Json,
        None if args.input.ends_with(".json") => InputFormat::Json,
        None if args.input.ends_with(".csv") => InputFormat::Csv,
        None => detect_format(bytes),
    }
}

fn cmd_fit(args: &FitArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), CliError> {
    let bytes = read_source(&args.input.input, stdin)?;
    let kind = match args.model {
        ModelKindArg::Poly => ModelKind::Poly,
        ModelKindArg::Exp => ModelKind::Exp,
    };
    let arith = args.arith.map_or_else(|| kind.default_arith(), Arith::from);
    let mut doc = fit_bytes(&bytes, input_format(&args.input, &bytes), kind, arith)?;
    if args.input.input != "-" {
        doc = doc.with_input(args.input.input.clone());
    }
    let format = match args.format {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Json => OutputFormat::Json,
    };
    write_sink(&args.output, &serialize_model(&doc, format), stdout)
}

/// Evaluation points, parsed exactly so grids step without accumulated rounding.
fn eval_points(args: &EvalArgs) -> Result<Vec<Rational>, CliError> {
    let parse =
        |text: &str| Rational::parse_text(text.trim()).map_err(|e| CliError::Usage(e.to_string()));
    if let Some(at) = &args.at {
        return at.split(',').map(parse).collect();
    }
    let grid = args.grid.as_deref().unwrap_or_default();
    let parts: Vec<&str> = grid.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "--grid expects START:STOP:STEP, got {grid:?}"
        )));
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if step <= Rational::zero() {
        return Err(CliError::Usage("--grid step must be positive".to_owned()));
    }
    if start > stop {
        return Err(CliError::Usage(
            "--grid start must not exceed stop".to_owned(),
        ));
    }
    let mut points = Vec::new();
    let mut x = start;
    while x <= stop {
        if points.len() == MAX_GRID_POINTS {
            return Err(CliError::Usage(format!(
                "--grid expands to more than {MAX_GRID_POINTS} points"
            )));
        }
        points.push(x.clone());
        x = x + step.clone();
    }
    Ok(points)
}

fn cmd_eval(
    args: &EvalArgs,
    _stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let bytes = fs::read(&args.model_file)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", args.model_file)))?;
    let doc = parse_model(&bytes)?;
    let points = eval_points(args)?;
    let mut out = String::new();
    for x in &points {
        let line = match &doc.model {
            FittedModel::PolyExact(m) => {
                format!("{},{}", format_scalar(x), format_scalar(&m.eval(x)))
            }
            FittedModel::PolyF64(m) => {
                let x = x.to_f64();
                format!("{},{}", format_scalar(&x), format_scalar(&m.eval(&x)))
            }
            FittedModel::Exp(m) => {
                let x = x.to_f64();
                format!("{},{}", format_scalar(&x), display_f64(m.eval(x)))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    write_sink(&args.output, out.as_bytes(), stdout)
}

fn verify_all<S: Scalar>(
    bytes: &[u8],
    format: InputFormat,
    oracles: &[Oracle],
    tol: f64,
    out: &mut String,
) -> Result<bool, CliError> {
    let ds = parse_dataset::<S>(bytes, format)?;
    let mut all_pass = true;
    for &oracle in oracles {
        let report = verify(&ds, oracle, tol)?;
        all_pass &= report.pass;
        out.push_str(&report.to_string());
        out.push('\n');
    }
    Ok(all_pass)
}

fn cmd_verify(
    args: &VerifyArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    let bytes = read_source(&args.input.input, stdin)?;
    let format = input_format(&args.input, &bytes);
    let oracles = args.against.oracles();
    let mut out = String::new();
    let all_pass = match Arith::from(args.arith) {
        Arith::Exact => verify_all::<Rational>(&bytes, format, &oracles, args.tol, &mut out)?,
        Arith::F64 => verify_all::<f64>(&bytes, format, &oracles, args.tol, &mut out)?,
    };
    write_sink("-", out.as_bytes(), stdout)?;
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}
