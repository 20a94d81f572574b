//! C ABI over `walk-kernel`.
//!
//! Every entry point returns a [`WkStatus`] and writes results through out
//! pointers. On failure a message is kept per thread and can be read with
//! [`wk_last_error`]. Strings handed out by the library are owned by the
//! caller and released with [`wk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use walk_kernel::arith::Rat;
use walk_kernel::classify::{classify_named, ClassificationReport, ClassifyOptions};
use walk_kernel::model::{builtin_model, ModelFile, StepWeights};
use walk_kernel::series::enumerate;
use walk_kernel::verify::verify_all;
use walk_kernel::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownModel = 3,
    Computation = 4,
    Panic = 5,
    /// The query has no value for this report, e.g. `k` of a transcendental verdict.
    NoValue = 6,
}

/// A step set with rational weights.
pub struct WkModel {
    name: String,
    weights: StepWeights,
}

/// The outcome of a classification.
pub struct WkReport {
    inner: ClassificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(WkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownModel(_) => WkStatus::UnknownModel,
            Error::ParseRational(_)
            | Error::InvalidWeights(_)
            | Error::NoSteps
            | Error::TOutOfRange(_)
            | Error::ModelFile(_)
            | Error::UnknownSection(_) => WkStatus::InvalidArgument,
            _ => WkStatus::Computation,
        };
        Fail(code, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(WkStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            WkStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            WkStatus::Panic
        }
    }
}

/// # Safety
/// `p` is NULL or a NUL-terminated string valid for the call.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(WkStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` is NULL or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// The message for the last failing call on this thread, or "" after a
/// success. The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn wk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Looks up a built-in model by name.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_model_builtin(name: *const c_char, out: *mut *mut WkModel) -> WkStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let weights = builtin_model(name)?;
        let model = Box::new(WkModel { name: name.to_string(), weights });
        write_out(out, Box::into_raw(model), "out")
    })
}

/// Parses a model file of the form `{"d": {"i,j": "p/q", ...}, "name": ...}`.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_model_from_json(json: *const c_char, out: *mut *mut WkModel) -> WkStatus {
    guard(|| {
        let file: ModelFile = read_str(json, "json")?.parse()?;
        let weights = file.weights()?;
        let name = file.name.unwrap_or_else(|| "custom".into());
        write_out(out, Box::into_raw(Box::new(WkModel { name, weights })), "out")
    })
}

/// # Safety
/// `model` is NULL or came from `wk_model_builtin`/`wk_model_from_json` and
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn wk_model_free(model: *mut WkModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Classifies `model`. `t_samples` is a comma-separated list of rationals in
/// (0, 1), or NULL for the defaults; `k_max` or `n_max` of 0 selects the
/// default bound.
///
/// # Safety
/// `model` is a live model handle, `t_samples` is NULL or a NUL-terminated
/// string, and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_classify(
    model: *const WkModel,
    t_samples: *const c_char,
    k_max: u32,
    n_max: u32,
    out: *mut *mut WkReport,
) -> WkStatus {
    guard(|| {
        let model = model.as_ref().ok_or_else(|| null("model"))?;
        let mut opts = ClassifyOptions::default();
        if !t_samples.is_null() {
            opts.t_samples = read_str(t_samples, "t_samples")?
                .split(',')
                .map(|s| s.trim().parse::<Rat>())
                .collect::<Result<_, _>>()?;
        }
        if k_max > 0 {
            opts.k_max = k_max;
        }
        if n_max > 0 {
            opts.n_max = n_max;
        }
        let inner = classify_named(&model.weights, &model.name, &opts)?;
        write_out(out, Box::into_raw(Box::new(WkReport { inner })), "out")
    })
}

/// # Safety
/// `report` is NULL or came from `wk_classify` and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn wk_report_free(report: *mut WkReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Verdict name, e.g. `"DAlgebraic"`. Free with `wk_string_free`.
///
/// # Safety
/// `report` is a live report handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_report_verdict(report: *const WkReport, out: *mut *mut c_char) -> WkStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, owned_string(report.inner.verdict.name().to_string()), "out")
    })
}

/// The orbit index `k` of a D-algebraic verdict; `WK_STATUS_NO_VALUE` otherwise.
///
/// # Safety
/// `report` is a live report handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_report_k(report: *const WkReport, out: *mut i64) -> WkStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        match report.inner.k() {
            Some(k) => write_out(out, k, "out"),
            None => Err(Fail(WkStatus::NoValue, format!("verdict is {}", report.inner.verdict))),
        }
    })
}

/// The full report as JSON. Free with `wk_string_free`.
///
/// # Safety
/// `report` is a live report handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_report_json(report: *const WkReport, out: *mut *mut c_char) -> WkStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, owned_string(report.inner.to_json().to_string()), "out")
    })
}

/// Checks the three functional equations up to `t^order`. `all_zero` is set
/// to whether every residual vanishes.
///
/// # Safety
/// `model` is a live model handle, `t` is a NUL-terminated rational such as
/// `"1/2"`, and `all_zero` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_verify(
    model: *const WkModel,
    t: *const c_char,
    order: u32,
    all_zero: *mut bool,
) -> WkStatus {
    guard(|| {
        let model = model.as_ref().ok_or_else(|| null("model"))?;
        let t: Rat = read_str(t, "t")?.parse()?;
        if all_zero.is_null() {
            return Err(null("all_zero"));
        }
        let report = verify_all(&model.weights, &t, order as usize)?;
        write_out(all_zero, report.all_zero(), "all_zero")
    })
}

/// Weighted walk counts up to length `n` as CSV rows `n,i,j,"p/q"`. Free
/// with `wk_string_free`.
///
/// # Safety
/// `model` is a live model handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_enumerate_csv(model: *const WkModel, n: u32, out: *mut *mut c_char) -> WkStatus {
    guard(|| {
        let model = model.as_ref().ok_or_else(|| null("model"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, owned_string(enumerate(&model.weights, n as usize).to_csv()), "out")
    })
}

/// # Safety
/// `s` is NULL or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn wk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
