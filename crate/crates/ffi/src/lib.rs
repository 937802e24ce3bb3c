//! C ABI for the charcycle engine.
//!
//! Jobs are parsed from the text job language into an opaque `CcJob`, run
//! into an opaque `CcReport`, and read back as text or JSON. Every call
//! returns a `CcStatus`; `cc_last_error` describes the most recent failure
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use charcycle::cli::{self, JobSpec, Report, RunOptions};
use charcycle::Error;

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The job text did not parse.
    Parse = 3,
    /// The engine failed (unresolved component, non-holonomic input, ...).
    Engine = 4,
    /// An internal panic was caught at the boundary.
    Internal = 5,
}

/// Run flags.
pub const CC_FLAG_VERTICES: u32 = 1;
/// Render as JSON instead of text.
pub const CC_FORMAT_JSON: u32 = 1;

/// A parsed job.
pub struct CcJob {
    spec: JobSpec,
}

/// The result of running a job.
pub struct CcReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> CcStatus {
    match cli::exit_code(e) {
        cli::exit::PARSE => CcStatus::Parse,
        _ => CcStatus::Engine,
    }
}

fn guard(f: impl FnOnce() -> CcStatus) -> CcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal error");
            CcStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CcStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(CcStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        CcStatus::InvalidUtf8
    })
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a job. On success `*out` owns a job to release with `cc_job_free`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_job_parse(text: *const c_char, out: *mut *mut CcJob) -> CcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return CcStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match cli::parse_job(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(CcJob { spec }));
                CcStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Releases a job. Null is ignored.
///
/// # Safety
/// `job` must come from `cc_job_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_job_free(job: *mut CcJob) {
    if !job.is_null() {
        drop(Box::from_raw(job));
    }
}

/// Runs a job. `flags` is a combination of `CC_FLAG_*`. On success `*out`
/// owns a report to release with `cc_report_free`.
///
/// # Safety
/// `job` must be a live job and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_run(job: *const CcJob, flags: u32, out: *mut *mut CcReport) -> CcStatus {
    guard(|| {
        if job.is_null() || out.is_null() {
            set_error("null argument");
            return CcStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let opts = RunOptions {
            vertices: flags & CC_FLAG_VERTICES != 0,
            ..RunOptions::default()
        };
        match cli::run(&(*job).spec, &opts) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(CcReport { report }));
                CcStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Number of warnings attached to a report (0 for null).
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn cc_report_warning_count(report: *const CcReport) -> usize {
    if report.is_null() {
        0
    } else {
        (*report).report.warnings.len()
    }
}

/// Renders a report; `format` is 0 for text or `CC_FORMAT_JSON`. On success
/// `*out` owns a string to release with `cc_string_free`.
///
/// # Safety
/// `report` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_report_render(report: *const CcReport, format: u32, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            set_error("null argument");
            return CcStatus::NullArgument;
        }
        let r = &(*report).report;
        let s = if format == CC_FORMAT_JSON {
            cli::render_json(r)
        } else {
            cli::render_text(r)
        };
        *out = CString::new(s).expect("no interior nul").into_raw();
        CcStatus::Ok
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` must come from `cc_run` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_report_free(report: *mut CcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
