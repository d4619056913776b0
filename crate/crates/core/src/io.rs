//! Point-set ingestion (CSV, JSON) and model persistence (formula text, JSON documents).

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::models::{fit_exponential, fit_polynomial, DataSet, ExponentialModel, PolynomialModel};
use crate::numeric::{Arith, Rational, Scalar};
use crate::FitError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("input contains no data points")]
    Empty,
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("duplicate x value on lines {first_line} and {second_line}")]
    DuplicateLines {
        first_line: usize,
        second_line: usize,
    },
    #[error("duplicate x value at $[{first}] and $[{second}]")]
    DuplicateEntries { first: usize, second: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema violation at {path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Fit(#[from] FitError),
}

impl IoError {
    pub fn is_domain(&self) -> bool {
        match self {
            IoError::Domain(_) => true,
            IoError::Fit(e) => e.is_domain(),
            _ => false,
        }
    }

    fn schema(path: impl Into<String>, reason: impl Into<String>) -> Self {
        IoError::Schema {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

/// JSON when the first non-blank byte opens an array, CSV otherwise.
pub fn detect_format(bytes: &[u8]) -> InputFormat {
    match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'[') => InputFormat::Json,
        _ => InputFormat::Csv,
    }
}

/// Parses a point set, preserving input order so the first point stays the base point.
///
/// CSV: comma-delimited `x,y` rows, fields trimmed, blank lines skipped, optional `x,y`
/// header on the first non-blank line. JSON: an array of `{"x": .., "y": ..}` objects
/// whose values are numbers or number strings.
pub fn parse_dataset<S: Scalar>(bytes: &[u8], format: InputFormat) -> Result<DataSet<S>, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|_| IoError::Encoding)?;
    match format {
        InputFormat::Csv => parse_csv(text),
        InputFormat::Json => parse_json_points(text),
    }
}

fn parse_csv<S: Scalar>(text: &str) -> Result<DataSet<S>, IoError> {
    let mut points = Vec::new();
    let mut lines = Vec::new();
    let mut seen_row = false;
    for (index, raw) in text.split('\n').enumerate() {
        let line = index + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        let first_row = !seen_row;
        seen_row = true;
        if first_row
            && fields.len() == 2
            && fields[0].eq_ignore_ascii_case("x")
            && fields[1].eq_ignore_ascii_case("y")
        {
            continue;
        }
        if fields.len() != 2 {
            return Err(IoError::MalformedRow {
                line,
                reason: format!("expected 2 fields, found {}", fields.len()),
            });
        }
        let parse = |field: &str| {
            S::parse_text(field).map_err(|e| IoError::MalformedRow {
                line,
                reason: e.to_string(),
            })
        };
        points.push((parse(fields[0])?, parse(fields[1])?));
        lines.push(line);
    }
    if points.is_empty() {
        return Err(IoError::Empty);
    }
    DataSet::new(points).map_err(|e| match e {
        FitError::DuplicateNode { first, second } => IoError::DuplicateLines {
            first_line: lines[first],
            second_line: lines[second],
        },
        other => other.into(),
    })
}

fn parse_json_points<S: Scalar>(text: &str) -> Result<DataSet<S>, IoError> {
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let entries = root
        .as_array()
        .ok_or_else(|| IoError::schema("$", "expected an array of points"))?;
    if entries.is_empty() {
        return Err(IoError::Empty);
    }
    let mut points = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let object = entry
            .as_object()
            .ok_or_else(|| IoError::schema(format!("$[{i}]"), "expected an object"))?;
        let x = number_field::<S>(object, &format!("$[{i}]"), "x")?;
        let y = number_field::<S>(object, &format!("$[{i}]"), "y")?;
        points.push((x, y));
    }
    DataSet::new(points).map_err(|e| match e {
        FitError::DuplicateNode { first, second } => IoError::DuplicateEntries { first, second },
        other => other.into(),
    })
}

fn number_field<S: Scalar>(
    object: &Map<String, Value>,
    parent: &str,
    key: &str,
) -> Result<S, IoError> {
    let path = format!("{parent}.{key}");
    let value = object
        .get(key)
        .ok_or_else(|| IoError::schema(&path, "missing field"))?;
    number_value(value, &path)
}

/// Numbers keep their literal text (arbitrary-precision JSON), so exact mode parses
/// `0.1` as `1/10` rather than as the nearest binary64.
fn number_value<S: Scalar>(value: &Value, path: &str) -> Result<S, IoError> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(IoError::schema(path, "expected a number or number string")),
    };
    S::parse_text(&text).map_err(|e| IoError::schema(path, e.to_string()))
}

/// Which model form to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Poly,
    Exp,
}

impl ModelKind {
    /// Exact for polynomials, binary64 for exponentials.
    pub fn default_arith(self) -> Arith {
        match self {
            ModelKind::Poly => Arith::Exact,
            ModelKind::Exp => Arith::F64,
        }
    }
}

/// Parses a point set and fits the requested model in the requested arithmetic.
///
/// Exponential fits accept either arithmetic for the basis matrix; the stored model is
/// always binary64.
pub fn fit_bytes(
    bytes: &[u8],
    format: InputFormat,
    kind: ModelKind,
    arith: Arith,
) -> Result<ModelDocument, IoError> {
    fn fit<S: Scalar>(
        bytes: &[u8],
        format: InputFormat,
        kind: ModelKind,
    ) -> Result<ModelDocument, IoError>
    where
        FittedModel: From<PolynomialModel<S>>,
    {
        let ds = parse_dataset::<S>(bytes, format)?;
        let model = match kind {
            ModelKind::Poly => FittedModel::from(fit_polynomial(&ds)?),
            ModelKind::Exp => FittedModel::Exp(fit_exponential(&ds)?),
        };
        Ok(ModelDocument::new(model, ds.len()))
    }
    match arith {
        Arith::Exact => fit::<Rational>(bytes, format, kind),
        Arith::F64 => fit::<f64>(bytes, format, kind),
    }
}

/// A fitted model in one of its persisted forms.
#[derive(Debug, Clone, PartialEq)]
pub enum FittedModel {
    PolyExact(PolynomialModel<Rational>),
    PolyF64(PolynomialModel<f64>),
    Exp(ExponentialModel),
}

impl FittedModel {
    pub fn kind(&self) -> &'static str {
        match self {
            FittedModel::PolyExact(_) | FittedModel::PolyF64(_) => "poly",
            FittedModel::Exp(_) => "exp",
        }
    }

    pub fn arith(&self) -> Arith {
        match self {
            FittedModel::PolyExact(_) => Arith::Exact,
            FittedModel::PolyF64(_) | FittedModel::Exp(_) => Arith::F64,
        }
    }
}

impl From<PolynomialModel<Rational>> for FittedModel {
    fn from(m: PolynomialModel<Rational>) -> Self {
        FittedModel::PolyExact(m)
    }
}

impl From<PolynomialModel<f64>> for FittedModel {
    fn from(m: PolynomialModel<f64>) -> Self {
        FittedModel::PolyF64(m)
    }
}

impl From<ExponentialModel> for FittedModel {
    fn from(m: ExponentialModel) -> Self {
        FittedModel::Exp(m)
    }
}

/// Persisted model plus provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDocument {
    pub model: FittedModel,
    pub points: usize,
    pub input: Option<String>,
}

impl ModelDocument {
    pub fn new(model: impl Into<FittedModel>, points: usize) -> Self {
        ModelDocument {
            model: model.into(),
            points,
            input: None,
        }
    }

    pub fn with_input(mut self, input: impl Into<String>) -> Self {
        self.input = Some(input.into());
        self
    }
}

pub fn serialize_model(doc: &ModelDocument, format: OutputFormat) -> Vec<u8> {
    let mut out = match format {
        OutputFormat::Text => formula(&doc.model),
        OutputFormat::Json => document_json(doc).to_string(),
    };
    out.push('\n');
    out.into_bytes()
}

/// Human-readable formula, e.g. `Y = 3 + (13/6)*X + (1/6)*X^2`.
pub fn formula(model: &FittedModel) -> String {
    match model {
        FittedModel::PolyExact(m) => poly_formula(m.coefficients()),
        FittedModel::PolyF64(m) => poly_formula(m.coefficients()),
        FittedModel::Exp(m) => exp_formula(m),
    }
}

fn poly_formula<S: Scalar>(coefficients: &[S]) -> String {
    let mut terms = Vec::new();
    for (j, c) in coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        terms.push(match j {
            0 => c.to_string(),
            1 => format!("({c})*X"),
            _ => format!("({c})*X^{j}"),
        });
    }
    if terms.is_empty() {
        terms.push("0".to_owned());
    }
    format!("Y = {}", terms.join(" + "))
}

fn exp_formula(model: &ExponentialModel) -> String {
    let mut out = format!("Y = {}", display_f64(model.base_value()));
    for (j, a) in model.factors().into_iter().enumerate() {
        let shown = display_f64(a);
        if shown == "1" {
            continue;
        }
        match j {
            0 => out.push_str(&format!(" * ({shown})")),
            1 => out.push_str(&format!(" * ({shown})^X")),
            _ => out.push_str(&format!(" * ({shown})^(X^{j})")),
        }
    }
    out
}

/// Rounds to 12 significant digits, then prints the shortest decimal of the result.
/// Used wherever a transcendental result is shown to a reader.
pub fn display_f64(value: f64) -> String {
    if !value.is_finite() || value == 0.0 {
        return value.to_string();
    }
    let rounded: f64 = format!("{value:.11e}").parse().unwrap_or(value);
    rounded.to_string()
}

fn document_json(doc: &ModelDocument) -> Value {
    let mut object = match &doc.model {
        FittedModel::PolyExact(m) => json!({
            "model": "poly",
            "arith": "exact",
            "coefficients": m.coefficients().iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        FittedModel::PolyF64(m) => json!({
            "model": "poly",
            "arith": "f64",
            "coefficients": m.coefficients(),
        }),
        FittedModel::Exp(m) => json!({
            "model": "exp",
            "arith": "f64",
            "p": m.base_value(),
            "log_coefficients": m.log_coefficients(),
            "factors": m.factors(),
        }),
    };
    let map = object.as_object_mut().expect("object literal");
    map.insert("points".to_owned(), json!(doc.points));
    if let Some(input) = &doc.input {
        map.insert("input".to_owned(), json!(input));
    }
    object
}

/// Reads a model document back. Exact coefficients are parsed exactly; `factors` in an
/// exponential document are derived data and only type-checked.
pub fn parse_model(bytes: &[u8]) -> Result<ModelDocument, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|_| IoError::Encoding)?;
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let object = root
        .as_object()
        .ok_or_else(|| IoError::schema("$", "expected an object"))?;

    let kind = string_field(object, "model")?;
    let arith = string_field(object, "arith")?;
    let points = object
        .get("points")
        .ok_or_else(|| IoError::schema("$.points", "missing field"))?
        .as_u64()
        .ok_or_else(|| IoError::schema("$.points", "expected a non-negative integer"))?;
    let input = match object.get("input") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(IoError::schema("$.input", "expected a string")),
    };

    let model = match (kind.as_str(), arith.as_str()) {
        ("poly", "exact") => FittedModel::PolyExact(PolynomialModel::from_coefficients(
            number_array(object, "coefficients")?,
        )),
        ("poly", "f64") => FittedModel::PolyF64(PolynomialModel::from_coefficients(number_array(
            object,
            "coefficients",
        )?)),
        ("exp", "f64") => {
            let p: f64 = number_value(
                object
                    .get("p")
                    .ok_or_else(|| IoError::schema("$.p", "missing field"))?,
                "$.p",
            )?;
            if p <= 0.0 {
                return Err(IoError::Domain(format!(
                    "exponential model requires p > 0, found {p}"
                )));
            }
            let betas: Vec<f64> = number_array(object, "log_coefficients")?;
            if let Some(factors) = object.get("factors") {
                let factors = factors
                    .as_array()
                    .ok_or_else(|| IoError::schema("$.factors", "expected an array"))?;
                if let Some(i) = factors.iter().position(|f| !f.is_number()) {
                    return Err(IoError::schema(
                        format!("$.factors[{i}]"),
                        "expected a number",
                    ));
                }
            }
            FittedModel::Exp(ExponentialModel::new(p, betas)?)
        }
        ("poly" | "exp", other) => {
            let reason = if kind == "exp" {
                format!("exponential models are stored as \"f64\", found {other:?}")
            } else {
                format!("expected \"exact\" or \"f64\", found {other:?}")
            };
            return Err(IoError::schema("$.arith", reason));
        }
        (other, _) => {
            return Err(IoError::schema(
                "$.model",
                format!("expected \"poly\" or \"exp\", found {other:?}"),
            ))
        }
    };

    Ok(ModelDocument {
        model,
        points: points as usize,
        input,
    })
}

fn string_field(object: &Map<String, Value>, key: &str) -> Result<String, IoError> {
    let path = format!("$.{key}");
    match object.get(key) {
        None => Err(IoError::schema(path, "missing field")),
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(IoError::schema(path, "expected a string")),
    }
}

fn number_array<S: Scalar>(object: &Map<String, Value>, key: &str) -> Result<Vec<S>, IoError> {
    let path = format!("$.{key}");
    let values = object
        .get(key)
        .ok_or_else(|| IoError::schema(&path, "missing field"))?
        .as_array()
        .ok_or_else(|| IoError::schema(&path, "expected an array"))?;
    if values.is_empty() {
        return Err(IoError::schema(&path, "expected at least one coefficient"));
    }
    values
        .iter()
        .enumerate()
        .map(|(i, v)| number_value(v, &format!("{path}[{i}]")))
        .collect()
}
