use std::ffi::{c_char, CStr, CString};
use std::ptr;

use fstirling_ffi::*;

fn owned(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { fs_string_free(p) };
    s
}

fn last_error() -> String {
    let p = fs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn context(f: &str, t: &str) -> *mut FsContext {
    let (f, t) = (CString::new(f).unwrap(), CString::new(t).unwrap());
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { fs_context_new(f.as_ptr(), t.as_ptr(), &mut ctx) }, FsStatus::Ok);
    ctx
}

#[test]
fn classical_triangle_row() {
    let ctx = context("linear:1,0", "1");
    let mut tri = ptr::null_mut();
    unsafe {
        assert_eq!(fs_triangle_new(ctx, 6, &mut tri), FsStatus::Ok);
        assert_eq!(fs_triangle_n_max(tri), 6);
        let row: Vec<String> = (1..=4)
            .map(|k| {
                let mut out = ptr::null_mut();
                assert_eq!(fs_triangle_entry(tri, 4, k, &mut out), FsStatus::Ok);
                owned(out)
            })
            .collect();
        assert_eq!(row, ["6", "11", "6", "1"]);
        let mut out = ptr::null_mut();
        assert_eq!(fs_triangle_entry(tri, 7, 1, &mut out), FsStatus::OutOfRange);
        assert!(out.is_null());
        assert!(last_error().contains("[7, 1]"));
        let mut json = ptr::null_mut();
        assert_eq!(fs_triangle_to_json(tri, &mut json), FsStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&owned(json)).unwrap();
        assert!(v.is_object());
        fs_triangle_free(tri);
        fs_context_free(ctx);
    }
}

#[test]
fn values() {
    let ctx = context("linear:1,0", "1");
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(fs_harmonic(ctx, 2, 3, &mut out), FsStatus::Ok);
        assert_eq!(owned(out), "49/36");
        assert_eq!(fs_sigma(ctx, FsSigmaVariant::Sigma, 1, 5, &mut out), FsStatus::Ok);
        assert_eq!(owned(out), "1/2");
        assert_eq!(fs_sigma(ctx, FsSigmaVariant::SigmaTilde, 3, 3, &mut out), FsStatus::Domain);
        assert_eq!(fs_euler_sum(ctx, 2, 2, FsEulerMode::HarmonicOverF, &mut out), FsStatus::Ok);
        assert_eq!(owned(out), "21/16");
        assert_eq!(fs_euler_sum(ctx, 2, 0, FsEulerMode::FZeta, &mut out), FsStatus::Domain);
        fs_context_free(ctx);
    }
    let ctx = context("linear:2,1", "symbolic");
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(fs_harmonic(ctx, 1, 1, &mut out), FsStatus::Ok);
        assert!(owned(out).contains('t'));
        fs_context_free(ctx);
    }
}

#[test]
fn verify_suite() {
    let ctx = context("linear:2,1", "3/2");
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(fs_verify(ctx, c"prop2".as_ptr(), 4, &mut rep), FsStatus::Ok);
        assert!(fs_report_cell_count(rep) > 0);
        assert_eq!(fs_report_failure_count(rep), 0);
        let mut json = ptr::null_mut();
        assert_eq!(fs_report_to_json(rep, &mut json), FsStatus::Ok);
        assert!(owned(json).contains("\"prop2\""));
        fs_report_free(rep);
        let mut rep2 = ptr::null_mut();
        assert_eq!(fs_verify(ctx, c"nope".as_ptr(), 0, &mut rep2), FsStatus::Parse);
        assert!(rep2.is_null());
        fs_context_free(ctx);
    }
}

#[test]
fn bad_input_codes() {
    let mut ctx = ptr::null_mut();
    unsafe {
        assert_eq!(fs_context_new(c"linear:1".as_ptr(), c"1".as_ptr(), &mut ctx), FsStatus::Parse);
        assert!(ctx.is_null());
        assert_eq!(fs_context_new(c"qpow:1".as_ptr(), c"symbolic".as_ptr(), &mut ctx), FsStatus::Domain);
        assert_eq!(fs_context_new(ptr::null(), c"1".as_ptr(), &mut ctx), FsStatus::NullPointer);
        assert!(last_error().contains("`f`"));
        let bad = [0xffu8, 0];
        assert_eq!(fs_context_new(bad.as_ptr().cast(), c"1".as_ptr(), &mut ctx), FsStatus::InvalidUtf8);
        assert_eq!(fs_context_new(c"linear:1,0".as_ptr(), c"1".as_ptr(), ptr::null_mut()), FsStatus::NullPointer);
        let mut out = ptr::null_mut();
        assert_eq!(fs_harmonic(ptr::null(), 1, 1, &mut out), FsStatus::NullPointer);
        assert_eq!(fs_triangle_n_max(ptr::null()), 0);
        assert_eq!(fs_report_failure_count(ptr::null()), 0);
        fs_string_free(ptr::null_mut());
        fs_context_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(fs_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
