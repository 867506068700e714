//! C interface. Reports are opaque handles; every fallible call returns a
//! `RealradStatus` and leaves a message retrievable with
//! `realrad_last_error` on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use realrad::pipeline::{
    apply_coordinate_change, parse_matrix, run, CertificateReport, PipelineError, ProblemSpec, RunOptions, RunStatus,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealradStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Numerical = 5,
    Panic = 6,
}

/// Outcome of a sweep; values match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealradRunStatus {
    Certified = 0,
    ExhaustedT = 2,
    Infeasible = 3,
}

/// Run options. Zero orders mean "automatic"; a non-positive ball radius
/// disables the ball constraint.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RealradOptions {
    pub tau: f64,
    pub t_start: u32,
    pub t_max: u32,
    pub ball: f64,
    pub seed: u64,
    pub rational_tol: f64,
    pub auto_retry: bool,
}

/// Opaque result of a run.
pub struct RealradReport {
    report: CertificateReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: RealradStatus, msg: impl Into<String>) -> RealradStatus {
    set_error(msg);
    status
}

fn classify(e: &PipelineError) -> RealradStatus {
    match e {
        PipelineError::Parse(_) | PipelineError::Matrix(_) => RealradStatus::Parse,
        PipelineError::Invalid(_)
        | PipelineError::TooManyInequalities(_)
        | PipelineError::OrderBelowDegree { .. }
        | PipelineError::SingularMatrix => RealradStatus::InvalidInput,
        PipelineError::Solve(_) | PipelineError::Linalg(_) | PipelineError::Moment(_) => RealradStatus::Numerical,
    }
}

impl From<&RealradOptions> for RunOptions {
    fn from(o: &RealradOptions) -> Self {
        RunOptions {
            tau: o.tau,
            t_start: (o.t_start > 0).then_some(o.t_start),
            t_max: (o.t_max > 0).then_some(o.t_max),
            ball: (o.ball > 0.0).then_some(o.ball),
            seed: o.seed,
            rational_tol: o.rational_tol,
            auto_retry: o.auto_retry,
        }
    }
}

fn to_c_string(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, RealradStatus> {
    if p.is_null() {
        return Err(fail(RealradStatus::NullArgument, format!("{what} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(RealradStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// Default options (τ = 1e-8, automatic orders, no ball, seed 0).
#[no_mangle]
pub extern "C" fn realrad_options_default() -> RealradOptions {
    let d = RunOptions::default();
    RealradOptions {
        tau: d.tau,
        t_start: d.t_start.unwrap_or(0),
        t_max: d.t_max.unwrap_or(0),
        ball: d.ball.unwrap_or(0.0),
        seed: d.seed,
        rational_tol: d.rational_tol,
        auto_retry: d.auto_retry,
    }
}

/// Run the sweep on an input system given as text. `matrix` is an optional
/// coordinate change (same format as the CLI `--coord-change` file) and may
/// be NULL, as may `options`. On success `*out` receives a report to be
/// released with `realrad_report_free`.
///
/// # Safety
/// `text` and a non-NULL `matrix` must be NUL-terminated strings, `options`
/// NULL or valid, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn realrad_run_text(
    text: *const c_char,
    matrix: *const c_char,
    options: *const RealradOptions,
    out: *mut *mut RealradReport,
) -> RealradStatus {
    clear_error();
    if out.is_null() {
        return fail(RealradStatus::NullArgument, "out is NULL");
    }
    *out = ptr::null_mut();
    let text = match read_str(text, "text") {
        Ok(s) => s,
        Err(st) => return st,
    };
    let matrix = if matrix.is_null() {
        None
    } else {
        match read_str(matrix, "matrix") {
            Ok(s) => Some(s),
            Err(st) => return st,
        }
    };
    let opts = if options.is_null() { realrad_options_default() } else { *options };
    let result = catch_unwind(AssertUnwindSafe(|| -> Result<CertificateReport, PipelineError> {
        let mut spec = ProblemSpec::parse(text, RunOptions::from(&opts))?;
        if let Some(m) = matrix {
            spec = apply_coordinate_change(&spec, &parse_matrix(m)?)?;
        }
        run(&spec)
    }));
    match result {
        Ok(Ok(report)) => {
            *out = Box::into_raw(Box::new(RealradReport { report }));
            RealradStatus::Ok
        }
        Ok(Err(e)) => fail(classify(&e), e.to_string()),
        Err(_) => fail(RealradStatus::Panic, "internal panic"),
    }
}

/// # Safety
/// `report` must be NULL or a live handle from `realrad_run_text`.
#[no_mangle]
pub unsafe extern "C" fn realrad_report_free(report: *mut RealradReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

unsafe fn get<'a>(report: *const RealradReport) -> Option<&'a CertificateReport> {
    report.as_ref().map(|r| &r.report)
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn realrad_report_status(report: *const RealradReport) -> RealradRunStatus {
    match get(report).map(|r| r.status) {
        Some(RunStatus::Certified) => RealradRunStatus::Certified,
        Some(RunStatus::Infeasible) => RealradRunStatus::Infeasible,
        _ => RealradRunStatus::ExhaustedT,
    }
}

/// Certified order, or -1.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn realrad_report_certified_t(report: *const RealradReport) -> i32 {
    get(report).and_then(|r| r.certified_t).map_or(-1, |t| t as i32)
}

/// Whether the strong basis carries exact rational coefficients.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn realrad_report_is_exact(report: *const RealradReport) -> bool {
    get(report).is_some_and(|r| r.rationalized)
}

/// Number of strong basis elements.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn realrad_report_basis_len(report: *const RealradReport) -> usize {
    get(report).map_or(0, |r| r.strong_basis.len())
}

/// Element `i` of the strong basis as text, or NULL when out of range.
/// Free with `realrad_string_free`.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn realrad_report_basis_element(report: *const RealradReport, i: usize) -> *mut c_char {
    match get(report).and_then(|r| r.strong_basis.get(i)) {
        Some(s) => to_c_string(s),
        None => {
            set_error(format!("basis index {i} out of range"));
            ptr::null_mut()
        }
    }
}

/// Full report as pretty-printed JSON. Free with `realrad_string_free`.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn realrad_report_json(report: *const RealradReport) -> *mut c_char {
    let Some(r) = get(report) else {
        set_error("report is NULL");
        return ptr::null_mut();
    };
    match serde_json::to_string_pretty(r) {
        Ok(s) => to_c_string(&s),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// The per-order table printed by the CLI. Free with `realrad_string_free`.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn realrad_report_table(report: *const RealradReport) -> *mut c_char {
    get(report).map_or(ptr::null_mut(), |r| to_c_string(&r.to_table()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn realrad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn realrad_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn realrad_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
