use std::ffi::{c_char, CStr, CString};
use std::ptr;

use weil_jacobi_ffi::*;

const PLANE: &str = "\
algebra = truncated{ generators = [eps], relations = [eps^3] }
dim = 2
structure = lcs{ alpha = form1{ (1): 1 }, omega = form2{ (1,2): 1 } }
";

fn parse(src: &str) -> (WjStatus, *mut WjProblem) {
    let src = CString::new(src).unwrap();
    let mut handle = ptr::null_mut();
    let status = unsafe { wj_problem_parse(src.as_ptr(), &mut handle) };
    (status, handle)
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { wj_string_free(s) };
    text
}

fn last_error() -> String {
    let p = wj_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn bracket_through_handle() {
    let (status, h) = parse(PLANE);
    assert_eq!(status, WjStatus::Ok);
    let (f, g) = (CString::new("x2").unwrap(), CString::new("1").unwrap());
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wj_bracket(h, f.as_ptr(), g.as_ptr(), &mut out) }, WjStatus::Ok);
    assert_eq!(take(out), "1");
    assert!(wj_last_error().is_null());
    unsafe { wj_problem_free(h) };
}

#[test]
fn check_json_is_deterministic() {
    let (_, h) = parse(PLANE);
    let suite = CString::new("jacobi-axioms").unwrap();
    let run = || {
        let mut out = ptr::null_mut();
        let status = unsafe { wj_check(h, suite.as_ptr(), 9, 3, &mut out) };
        (status, take(out))
    };
    let (status, a) = run();
    assert_eq!(status, WjStatus::Ok);
    assert!(a.contains("\"seed\": 9"));
    assert_eq!(run().1, a);
    unsafe { wj_problem_free(h) };
}

#[test]
fn error_paths() {
    let (status, h) = parse("algebra = truncated{ generators = [e], relations = [e^2] }\ndim = 1\npoly f = 3/0\n");
    assert_eq!(status, WjStatus::Parse);
    assert!(h.is_null());
    assert!(last_error().contains("zero denominator"));

    let (_, h) = parse(PLANE);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wj_check(h, ptr::null(), 1, 0, &mut out) }, WjStatus::Structural);
    assert!(out.is_null());
    assert_eq!(last_error(), "empty sample set rejected");

    let bad = CString::new("everything").unwrap();
    assert_eq!(unsafe { wj_check(h, bad.as_ptr(), 1, 1, &mut out) }, WjStatus::Parse);
    assert_eq!(unsafe { wj_bracket(h, ptr::null(), ptr::null(), &mut out) }, WjStatus::NullArgument);
    assert_eq!(unsafe { wj_validate(ptr::null(), &mut out) }, WjStatus::NullArgument);
    unsafe { wj_problem_free(h) };
    unsafe { wj_problem_free(ptr::null_mut()) };
    unsafe { wj_string_free(ptr::null_mut()) };
}

#[test]
fn validate_reports_non_local_algebra() {
    let (_, h) = parse("algebra = table{ labels = [1, e], constants = [(1,1,1): 1] }\ndim = 1\n");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wj_validate(h, &mut out) }, WjStatus::IdentityFailure);
    assert!(take(out).contains("non-nilpotent non-unit part"));
    unsafe { wj_problem_free(h) };
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/weil_jacobi.h");
    for name in ["wj_problem_parse", "wj_problem_free", "wj_validate", "wj_check", "wj_bracket", "wj_string_free", "wj_last_error", "WJ_STATUS_IDENTITY_FAILURE"] {
        assert!(header.contains(name), "{name}");
    }
}
