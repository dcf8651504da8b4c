//! C ABI over the `fstirling` library.
//!
//! Every fallible call returns an [`FsStatus`] and writes its result through
//! an out pointer. On failure the out pointer is left untouched and
//! [`fs_last_error`] describes the problem. Strings handed out by this library
//! must be released with [`fs_string_free`], handles with their `*_free`
//! function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fstirling::convpoly::{sigma_eval, SigmaVariant};
use fstirling::fharmonic::{euler_sum_numeric, fharmonic_direct, EulerMode};
use fstirling::fspec::{FSpec, Setting, TValue};
use fstirling::report::Report;
use fstirling::stirling::Triangle;
use fstirling::suites::{run_suite, Suite, SuiteOptions};
use fstirling::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    OutOfRange = 5,
    Arithmetic = 6,
    OracleCap = 7,
    Io = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsSigmaVariant {
    Sigma = 0,
    SigmaTilde = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsEulerMode {
    HarmonicOverF = 0,
    FZeta = 1,
    FZeta2r = 2,
}

/// A validated `(f, t)` setting.
pub struct FsContext {
    setting: Setting,
}

/// A first-kind triangle with rows `0..=n_max`.
pub struct FsTriangle {
    inner: Triangle,
}

/// The reports of one verification suite.
pub struct FsReport {
    reports: Vec<Report>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(err: &Error) -> FsStatus {
    match err {
        Error::Parse(_) | Error::Json(_) => FsStatus::Parse,
        Error::Domain(_) | Error::Bivariate(_) => FsStatus::Domain,
        Error::OracleCap { .. } => FsStatus::OracleCap,
        Error::Io(_) => FsStatus::Io,
        Error::VariableMismatch { .. }
        | Error::OrderExceeded { .. }
        | Error::NotInvertible(_)
        | Error::OrderMismatch(..) => FsStatus::Arithmetic,
    }
}

struct Failure(FsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("panic: {msg}"));
            FsStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(FsStatus::NullPointer, format!("`{what}` is null"))
}

/// # Safety
/// `p` is null or a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(FsStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live value of type `T`.
unsafe fn read_handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|_| Failure(FsStatus::Panic, "interior NUL in output".to_string()))?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(c.into_raw());
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `f` (e.g. `linear:1,0`, `qpow:1`) and `t` (a rational or
/// `symbolic`) into a new context.
///
/// # Safety
/// `f` and `t` are NUL-terminated strings; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_context_new(f: *const c_char, t: *const c_char, out: *mut *mut FsContext) -> FsStatus {
    guard(|| {
        let f = FSpec::parse(read_str(f, "f")?)?;
        let t = TValue::parse(read_str(t, "t")?)?;
        let ctx = Box::new(FsContext { setting: Setting::new(f, t)? });
        write_out(out, Box::into_raw(ctx))
    })
}

/// # Safety
/// `ctx` is null or a context from [`fs_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_context_free(ctx: *mut FsContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Builds the first-kind triangle with rows `0..=n_max`.
///
/// # Safety
/// `ctx` is a live context; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_triangle_new(ctx: *const FsContext, n_max: usize, out: *mut *mut FsTriangle) -> FsStatus {
    guard(|| {
        let ctx = read_handle(ctx, "ctx")?;
        let tri = Triangle::for_setting(&ctx.setting, n_max)?;
        write_out(out, Box::into_raw(Box::new(FsTriangle { inner: tri })))
    })
}

/// # Safety
/// `tri` is null or a triangle from [`fs_triangle_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_triangle_free(tri: *mut FsTriangle) {
    if !tri.is_null() {
        drop(Box::from_raw(tri));
    }
}

/// Number of the last row, or 0 for a null handle.
///
/// # Safety
/// `tri` is null or a live triangle.
#[no_mangle]
pub unsafe extern "C" fn fs_triangle_n_max(tri: *const FsTriangle) -> usize {
    tri.as_ref().map_or(0, |t| t.inner.n_max())
}

/// Entry `[n, k]` as text, e.g. `11` or `1 + 2*t^-1`.
///
/// # Safety
/// `tri` is a live triangle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_triangle_entry(
    tri: *const FsTriangle,
    n: usize,
    k: usize,
    out: *mut *mut c_char,
) -> FsStatus {
    guard(|| {
        let tri = read_handle(tri, "tri")?;
        if n > tri.inner.n_max() || k > n {
            return Err(Failure(
                FsStatus::OutOfRange,
                format!("entry [{n}, {k}] outside rows 0..={}", tri.inner.n_max()),
            ));
        }
        write_string(out, tri.inner.entry(n, k).to_string())
    })
}

/// The whole triangle as JSON.
///
/// # Safety
/// `tri` is a live triangle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_triangle_to_json(tri: *const FsTriangle, out: *mut *mut c_char) -> FsStatus {
    guard(|| {
        let tri = read_handle(tri, "tri")?;
        write_string(out, tri.inner.to_json().to_string())
    })
}

/// `F_n^{(p)}(t)` summed directly, as text.
///
/// # Safety
/// `ctx` is a live context; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_harmonic(ctx: *const FsContext, p: usize, n: usize, out: *mut *mut c_char) -> FsStatus {
    guard(|| {
        let ctx = read_handle(ctx, "ctx")?;
        let v = fharmonic_direct(&ctx.setting.f, p, n, &ctx.setting.t_elem())?;
        write_string(out, v.to_string())
    })
}

/// `σ_n(x)` or `σ̃_n(x)` as text; needs `x > n`.
///
/// # Safety
/// `ctx` is a live context; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_sigma(
    ctx: *const FsContext,
    variant: FsSigmaVariant,
    n: usize,
    x: usize,
    out: *mut *mut c_char,
) -> FsStatus {
    guard(|| {
        let ctx = read_handle(ctx, "ctx")?;
        let variant = match variant {
            FsSigmaVariant::Sigma => SigmaVariant::Sigma,
            FsSigmaVariant::SigmaTilde => SigmaVariant::SigmaTilde,
        };
        write_string(out, sigma_eval(&ctx.setting, variant, n, x)?.to_string())
    })
}

/// Exact partial sum over `1 <= n <= terms` as a reduced fraction `a/b`.
/// Uses the context's `f` at `t = 1`.
///
/// # Safety
/// `ctx` is a live context; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_euler_sum(
    ctx: *const FsContext,
    r: u32,
    terms: usize,
    mode: FsEulerMode,
    out: *mut *mut c_char,
) -> FsStatus {
    guard(|| {
        let ctx = read_handle(ctx, "ctx")?;
        let mode = match mode {
            FsEulerMode::HarmonicOverF => EulerMode::HarmonicOverF,
            FsEulerMode::FZeta => EulerMode::FZeta,
            FsEulerMode::FZeta2r => EulerMode::FZeta2r,
        };
        write_string(out, euler_sum_numeric(&ctx.setting.f, r, terms, mode)?.to_string())
    })
}

/// Runs the named suite (e.g. `prop2`) for the context's setting. `max_n = 0`
/// keeps the suite's default bound.
///
/// # Safety
/// `ctx` is a live context; `suite` is a NUL-terminated string; `out` is
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_verify(
    ctx: *const FsContext,
    suite: *const c_char,
    max_n: usize,
    out: *mut *mut FsReport,
) -> FsStatus {
    guard(|| {
        let ctx = read_handle(ctx, "ctx")?;
        let suite: Suite = read_str(suite, "suite")?.parse()?;
        let opts = SuiteOptions { max_n: (max_n > 0).then_some(max_n), ..SuiteOptions::default() };
        let reports = run_suite(suite, &ctx.setting, &opts)?;
        write_out(out, Box::into_raw(Box::new(FsReport { reports })))
    })
}

/// # Safety
/// `report` is null or a report from [`fs_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_report_free(report: *mut FsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Total number of checked cells, or 0 for a null handle.
///
/// # Safety
/// `report` is null or a live report.
#[no_mangle]
pub unsafe extern "C" fn fs_report_cell_count(report: *const FsReport) -> usize {
    report.as_ref().map_or(0, |r| r.reports.iter().map(|x| x.cells.len()).sum())
}

/// Number of failing cells, or 0 for a null handle.
///
/// # Safety
/// `report` is null or a live report.
#[no_mangle]
pub unsafe extern "C" fn fs_report_failure_count(report: *const FsReport) -> usize {
    report.as_ref().map_or(0, |r| r.reports.iter().map(Report::failure_count).sum())
}

/// The reports as a JSON array.
///
/// # Safety
/// `report` is a live report; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_report_to_json(report: *const FsReport, out: *mut *mut c_char) -> FsStatus {
    guard(|| {
        let report = read_handle(report, "report")?;
        write_string(out, serde_json::to_string(&report.reports).map_err(Error::from)?)
    })
}
