//! C interface to `weil-jacobi`.
//!
//! A problem file is parsed into an opaque `WjProblem` handle. Commands write
//! a heap string through an out-pointer; release it with `wj_string_free`.
//! Every call returns a `WjStatus`; on anything but `Ok` (and the report
//! statuses) `wj_last_error` describes the failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weil_jacobi::cli::{self, CheckOptions};
use weil_jacobi::problem::{Problem, Suite};
use weil_jacobi::Error;

/// Status codes. The first three match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WjStatus {
    Ok = 0,
    IdentityFailure = 1,
    Structural = 2,
    Parse = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Parsed problem file.
pub struct WjProblem {
    inner: Problem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(err: &Error) -> WjStatus {
    set_error(err.to_string());
    match err {
        Error::Parse { .. } | Error::Semantic(_) => WjStatus::Parse,
        _ => WjStatus::Structural,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, WjStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(WjStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        WjStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, text: String) {
    let c = CString::new(text.replace('\0', " ")).expect("interior nul removed");
    *out = c.into_raw();
}

fn guarded(body: impl FnOnce() -> WjStatus) -> WjStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            WjStatus::Panic
        }
    }
}

/// Parses problem-file text into a new handle stored in `*out`.
///
/// # Safety
/// `source` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wj_problem_parse(source: *const c_char, out: *mut *mut WjProblem) -> WjStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return WjStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let src = match read_str(source) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match Problem::parse(src) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(WjProblem { inner }));
                WjStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `problem` must come from `wj_problem_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wj_problem_free(problem: *mut WjProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Structural validation. Writes the JSON report to `*json_out`.
///
/// # Safety
/// `problem` must be a live handle and `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wj_validate(problem: *const WjProblem, json_out: *mut *mut c_char) -> WjStatus {
    guarded(|| {
        if problem.is_null() || json_out.is_null() {
            set_error("null argument");
            return WjStatus::NullArgument;
        }
        let outcome = cli::validate(&(*problem).inner);
        write_string(json_out, outcome.to_json());
        status_of(outcome.exit_code)
    })
}

fn status_of(exit_code: u8) -> WjStatus {
    match exit_code {
        cli::EXIT_PASS => WjStatus::Ok,
        cli::EXIT_IDENTITY_FAILURE => WjStatus::IdentityFailure,
        _ => WjStatus::Structural,
    }
}

/// Runs identity suites. `suite` is a suite name, `"all"`, or null for the
/// file's own list. `samples == 0` is rejected.
///
/// # Safety
/// `problem` must be a live handle, `suite` null or a nul-terminated string,
/// and `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wj_check(
    problem: *const WjProblem,
    suite: *const c_char,
    seed: u64,
    samples: usize,
    json_out: *mut *mut c_char,
) -> WjStatus {
    guarded(|| {
        if problem.is_null() || json_out.is_null() {
            set_error("null argument");
            return WjStatus::NullArgument;
        }
        let suites = if suite.is_null() {
            None
        } else {
            match read_str(suite) {
                Ok("all") => Some(Suite::ALL.to_vec()),
                Ok(name) => match name.parse::<Suite>() {
                    Ok(s) => Some(vec![s]),
                    Err(msg) => {
                        set_error(msg);
                        return WjStatus::Parse;
                    }
                },
                Err(status) => return status,
            }
        };
        let options = CheckOptions { suites, seed: Some(seed), samples: Some(samples) };
        match cli::check(&(*problem).inner, &options) {
            Ok(outcome) => {
                write_string(json_out, outcome.to_json());
                status_of(outcome.exit_code)
            }
            Err(e) => fail(&e),
        }
    })
}

/// Evaluates `{f, g}` and writes its canonical text to `*out`.
///
/// # Safety
/// `problem` must be a live handle, `f` and `g` nul-terminated strings and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wj_bracket(
    problem: *const WjProblem,
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> WjStatus {
    guarded(|| {
        if problem.is_null() || out.is_null() {
            set_error("null argument");
            return WjStatus::NullArgument;
        }
        let (f, g) = match (read_str(f), read_str(g)) {
            (Ok(f), Ok(g)) => (f, g),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match cli::bracket(&(*problem).inner, f, g) {
            Ok(b) => {
                write_string(out, b.value.to_string());
                WjStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Frees a string returned through an out-pointer. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn wj_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
