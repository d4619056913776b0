//! C ABI for `exactfit`.
//!
//! Models live behind the opaque `ExactfitModel` handle and are released with
//! `exactfit_model_free`. Strings returned through `char **` out-parameters are owned
//! by the caller and released with `exactfit_string_free`. Every fallible call returns
//! an `ExactfitStatus`; on failure `exactfit_last_error` describes the most recent
//! error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use exactfit::io::{
    detect_format, fit_bytes, formula, parse_dataset, parse_model, serialize_model, FittedModel,
    IoError, ModelDocument, ModelKind, OutputFormat,
};
use exactfit::oracles::{verify, Oracle};
use exactfit::{Arith, FitError, Rational, Scalar};

/// Status codes. Values 1-4 match the `exactfit` command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactfitStatus {
    Ok = 0,
    /// Invalid argument: unknown selector, bad length, or non-positive tolerance.
    InvalidArgument = 1,
    /// Malformed input, duplicate x, or an invalid model document.
    DataError = 2,
    /// Input outside the model's domain, e.g. a non-positive ordinate for `exp`.
    DomainError = 3,
    /// `exactfit_verify` found a disagreement with an oracle.
    VerificationMismatch = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

pub const EXACTFIT_MODEL_POLY: u32 = 0;
pub const EXACTFIT_MODEL_EXP: u32 = 1;

pub const EXACTFIT_ARITH_EXACT: u32 = 0;
pub const EXACTFIT_ARITH_F64: u32 = 1;
/// Exact for polynomial fits, f64 for exponential fits.
pub const EXACTFIT_ARITH_DEFAULT: u32 = 2;

pub const EXACTFIT_ORACLE_NEWTON: u32 = 0;
pub const EXACTFIT_ORACLE_VANDERMONDE: u32 = 1;
pub const EXACTFIT_ORACLE_BARYCENTRIC: u32 = 2;
pub const EXACTFIT_ORACLE_ALL: u32 = 3;

/// Opaque fitted model.
pub struct ExactfitModel {
    doc: ModelDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: ExactfitStatus,
    message: String,
}

impl Failure {
    fn new(status: ExactfitStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let status = if e.is_domain() {
            ExactfitStatus::DomainError
        } else {
            ExactfitStatus::DataError
        };
        Failure::new(status, e.to_string())
    }
}

impl From<FitError> for Failure {
    fn from(e: FitError) -> Self {
        IoError::from(e).into()
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ExactfitStatus {
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ExactfitStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("internal panic");
            ExactfitStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::new(
            ExactfitStatus::NullPointer,
            format!("{what} is null"),
        ))
    } else {
        Ok(())
    }
}

unsafe fn borrow_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    non_null(p, what)?;
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure::new(
            ExactfitStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

fn model_kind(kind: u32) -> Result<ModelKind, Failure> {
    match kind {
        EXACTFIT_MODEL_POLY => Ok(ModelKind::Poly),
        EXACTFIT_MODEL_EXP => Ok(ModelKind::Exp),
        other => Err(Failure::new(
            ExactfitStatus::InvalidArgument,
            format!("unknown model kind {other}"),
        )),
    }
}

fn arith(arith: u32, kind: ModelKind) -> Result<Arith, Failure> {
    match arith {
        EXACTFIT_ARITH_EXACT => Ok(Arith::Exact),
        EXACTFIT_ARITH_F64 => Ok(Arith::F64),
        EXACTFIT_ARITH_DEFAULT => Ok(kind.default_arith()),
        other => Err(Failure::new(
            ExactfitStatus::InvalidArgument,
            format!("unknown arithmetic {other}"),
        )),
    }
}

fn oracles(against: u32) -> Result<Vec<Oracle>, Failure> {
    match against {
        EXACTFIT_ORACLE_NEWTON => Ok(vec![Oracle::Newton]),
        EXACTFIT_ORACLE_VANDERMONDE => Ok(vec![Oracle::Vandermonde]),
        EXACTFIT_ORACLE_BARYCENTRIC => Ok(vec![Oracle::Barycentric]),
        EXACTFIT_ORACLE_ALL => Ok(Oracle::ALL.to_vec()),
        other => Err(Failure::new(
            ExactfitStatus::InvalidArgument,
            format!("unknown oracle {other}"),
        )),
    }
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s)
        .map_err(|_| Failure::new(ExactfitStatus::DataError, "string contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn give_model(out: *mut *mut ExactfitModel, doc: ModelDocument) {
    *out = Box::into_raw(Box::new(ExactfitModel { doc }));
}

/// Fits a model to CSV or JSON point text (format detected from the content).
///
/// # Safety
/// `data` must be a NUL-terminated string and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn exactfit_fit_text(
    data: *const c_char,
    kind: u32,
    arith_mode: u32,
    out: *mut *mut ExactfitModel,
) -> ExactfitStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = borrow_str(data, "data")?;
        let kind = model_kind(kind)?;
        let arith = arith(arith_mode, kind)?;
        let doc = fit_bytes(text.as_bytes(), detect_format(text.as_bytes()), kind, arith)?;
        give_model(out, doc);
        Ok(())
    })
}

/// Fits a model to `len` points given as parallel arrays. In exact mode each binary64
/// value is taken at its exact rational value.
///
/// # Safety
/// `xs` and `ys` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exactfit_fit_points(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    kind: u32,
    arith_mode: u32,
    out: *mut *mut ExactfitModel,
) -> ExactfitStatus {
    guard(|| {
        non_null(out, "out")?;
        non_null(xs, "xs")?;
        non_null(ys, "ys")?;
        if len == 0 {
            return Err(Failure::new(
                ExactfitStatus::InvalidArgument,
                "len must be positive",
            ));
        }
        let xs = std::slice::from_raw_parts(xs, len);
        let ys = std::slice::from_raw_parts(ys, len);
        if let Some(bad) = xs.iter().chain(ys).find(|v| !v.is_finite()) {
            return Err(Failure::new(
                ExactfitStatus::DataError,
                format!("non-finite value {bad}"),
            ));
        }
        let kind = model_kind(kind)?;
        let model: FittedModel = match arith(arith_mode, kind)? {
            Arith::Exact => {
                let to_exact = |v: &f64| Rational::from_f64(*v).expect("finite");
                let ds = exactfit::DataSet::from_columns(
                    xs.iter().map(to_exact).collect(),
                    ys.iter().map(to_exact).collect(),
                )?;
                match kind {
                    ModelKind::Poly => exactfit::fit_polynomial(&ds)?.into(),
                    ModelKind::Exp => exactfit::fit_exponential(&ds)?.into(),
                }
            }
            Arith::F64 => {
                let ds = exactfit::DataSet::from_columns(xs.to_vec(), ys.to_vec())?;
                match kind {
                    ModelKind::Poly => exactfit::fit_polynomial(&ds)?.into(),
                    ModelKind::Exp => exactfit::fit_exponential(&ds)?.into(),
                }
            }
        };
        give_model(out, ModelDocument::new(model, len));
        Ok(())
    })
}

/// Reads a JSON model document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_from_json(
    json: *const c_char,
    out: *mut *mut ExactfitModel,
) -> ExactfitStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = borrow_str(json, "json")?;
        let doc = parse_model(text.as_bytes())?;
        give_model(out, doc);
        Ok(())
    })
}

/// Writes the JSON model document to `*out`.
///
/// # Safety
/// `model` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_to_json(
    model: *const ExactfitModel,
    out: *mut *mut c_char,
) -> ExactfitStatus {
    guard(|| {
        non_null(model, "model")?;
        non_null(out, "out")?;
        let bytes = serialize_model(&(*model).doc, OutputFormat::Json);
        let text = String::from_utf8(bytes).expect("serializer emits UTF-8");
        give_string(out, text.trim_end().to_owned())
    })
}

/// Writes the human-readable formula to `*out`.
///
/// # Safety
/// `model` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_to_text(
    model: *const ExactfitModel,
    out: *mut *mut c_char,
) -> ExactfitStatus {
    guard(|| {
        non_null(model, "model")?;
        non_null(out, "out")?;
        give_string(out, formula(&(*model).doc.model))
    })
}

/// Evaluates the model at `x` in binary64.
///
/// # Safety
/// `model` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_eval(
    model: *const ExactfitModel,
    x: f64,
    out: *mut f64,
) -> ExactfitStatus {
    guard(|| {
        non_null(model, "model")?;
        non_null(out, "out")?;
        *out = match &(*model).doc.model {
            FittedModel::PolyExact(m) => {
                let x = Rational::from_f64(x).ok_or_else(|| {
                    Failure::new(ExactfitStatus::InvalidArgument, "x must be finite")
                })?;
                m.eval(&x).to_f64()
            }
            FittedModel::PolyF64(m) => m.eval(&x),
            FittedModel::Exp(m) => m.eval(x),
        };
        Ok(())
    })
}

/// Evaluates the model at a number given as text (`3`, `1/2`, `0.25`). Exact models
/// return an exact `p/q` string; other models return a binary64 decimal.
///
/// # Safety
/// `model` must come from this library; `x` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_eval_text(
    model: *const ExactfitModel,
    x: *const c_char,
    out: *mut *mut c_char,
) -> ExactfitStatus {
    guard(|| {
        non_null(model, "model")?;
        non_null(out, "out")?;
        let text = borrow_str(x, "x")?;
        let bad_x = |e: exactfit::NumericError| {
            Failure::new(ExactfitStatus::InvalidArgument, e.to_string())
        };
        let value = match &(*model).doc.model {
            FittedModel::PolyExact(m) => m
                .eval(&Rational::parse_text(text).map_err(bad_x)?)
                .to_string(),
            FittedModel::PolyF64(m) => m.eval(&f64::parse_text(text).map_err(bad_x)?).to_string(),
            FittedModel::Exp(m) => m.eval(f64::parse_text(text).map_err(bad_x)?).to_string(),
        };
        give_string(out, value)
    })
}

/// Model kind: `EXACTFIT_MODEL_POLY` or `EXACTFIT_MODEL_EXP`; `u32::MAX` for null.
///
/// # Safety
/// `model` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_kind(model: *const ExactfitModel) -> u32 {
    match model.as_ref().map(|m| &m.doc.model) {
        None => u32::MAX,
        Some(FittedModel::Exp(_)) => EXACTFIT_MODEL_EXP,
        Some(_) => EXACTFIT_MODEL_POLY,
    }
}

/// Number of coefficients (degree + 1); 0 for null.
///
/// # Safety
/// `model` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_len(model: *const ExactfitModel) -> usize {
    match model.as_ref().map(|m| &m.doc.model) {
        None => 0,
        Some(FittedModel::PolyExact(m)) => m.coefficients().len(),
        Some(FittedModel::PolyF64(m)) => m.coefficients().len(),
        Some(FittedModel::Exp(m)) => m.log_coefficients().len(),
    }
}

/// Copies the monomial coefficients (polynomial) or log coefficients (exponential) into
/// `buf`, ascending by power, rounded to binary64. `len` must equal `exactfit_model_len`.
///
/// # Safety
/// `model` must come from this library; `buf` must have room for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_coefficients(
    model: *const ExactfitModel,
    buf: *mut f64,
    len: usize,
) -> ExactfitStatus {
    guard(|| {
        non_null(model, "model")?;
        non_null(buf, "buf")?;
        let values: Vec<f64> = match &(*model).doc.model {
            FittedModel::PolyExact(m) => m.coefficients().iter().map(Scalar::to_f64).collect(),
            FittedModel::PolyF64(m) => m.coefficients().to_vec(),
            FittedModel::Exp(m) => m.log_coefficients().to_vec(),
        };
        if values.len() != len {
            return Err(Failure::new(
                ExactfitStatus::InvalidArgument,
                format!("buffer holds {len} values, model has {}", values.len()),
            ));
        }
        std::slice::from_raw_parts_mut(buf, len).copy_from_slice(&values);
        Ok(())
    })
}

/// Base value `p` of an exponential model.
///
/// # Safety
/// `model` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_base_value(
    model: *const ExactfitModel,
    out: *mut f64,
) -> ExactfitStatus {
    guard(|| {
        non_null(model, "model")?;
        non_null(out, "out")?;
        match &(*model).doc.model {
            FittedModel::Exp(m) => {
                *out = m.base_value();
                Ok(())
            }
            _ => Err(Failure::new(
                ExactfitStatus::InvalidArgument,
                "not an exponential model",
            )),
        }
    })
}

/// Checks the tableau fit of `data` against the selected oracles and writes one report
/// line per oracle to `*report`. Returns `VerificationMismatch` (with the report still
/// written) when any oracle disagrees.
///
/// # Safety
/// `data` must be NUL-terminated and `report` writable.
#[no_mangle]
pub unsafe extern "C" fn exactfit_verify(
    data: *const c_char,
    against: u32,
    arith_mode: u32,
    tolerance: f64,
    report: *mut *mut c_char,
) -> ExactfitStatus {
    guard(|| {
        non_null(report, "report")?;
        let text = borrow_str(data, "data")?;
        let oracles = oracles(against)?;
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Failure::new(
                ExactfitStatus::InvalidArgument,
                "tolerance must be positive",
            ));
        }
        let format = detect_format(text.as_bytes());
        let (lines, pass) = match arith(arith_mode, ModelKind::Poly)? {
            Arith::Exact => run_verify::<Rational>(text, format, &oracles, tolerance)?,
            Arith::F64 => run_verify::<f64>(text, format, &oracles, tolerance)?,
        };
        give_string(report, lines)?;
        if pass {
            Ok(())
        } else {
            Err(Failure::new(
                ExactfitStatus::VerificationMismatch,
                "verification failed",
            ))
        }
    })
}

fn run_verify<S: Scalar>(
    text: &str,
    format: exactfit::io::InputFormat,
    oracles: &[Oracle],
    tolerance: f64,
) -> Result<(String, bool), Failure> {
    let ds = parse_dataset::<S>(text.as_bytes(), format)?;
    let mut lines = Vec::with_capacity(oracles.len());
    let mut pass = true;
    for &oracle in oracles {
        let report = verify(&ds, oracle, tolerance)?;
        pass &= report.pass;
        lines.push(report.to_string());
    }
    Ok((lines.join("\n"), pass))
}

/// Message for the last failed call on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn exactfit_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `model` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn exactfit_model_free(model: *mut ExactfitModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn exactfit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
