use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use motivic_hall_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mh_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mh_last_error()) }.to_str().unwrap().to_owned()
}

const S1: &str = r#"{"terms":[{"class":{"indecs":{"[1,0]":1}},"coeff":{"num":[[0,"1"]],"den":{}}}]}"#;
const S2: &str = r#"{"terms":[{"class":{"indecs":{"[0,1]":1}},"coeff":{"num":[[0,"1"]],"den":{}}}]}"#;

#[test]
fn class_round_trip() {
    unsafe {
        let mut gl = ptr::null_mut();
        assert_eq!(mh_class_gl(2, &mut gl), MhStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(mh_class_to_string(gl, &mut s), MhStatus::Ok);
        assert_eq!(take(s), "L^4 - L^3 - L^2 + L");
        let mut j = ptr::null_mut();
        assert_eq!(mh_class_to_json(gl, &mut j), MhStatus::Ok);
        let json = CString::new(take(j)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(mh_class_from_json(json.as_ptr(), &mut back), MhStatus::Ok);
        let mut eq = false;
        assert_eq!(mh_class_equal(gl, back, &mut eq), MhStatus::Ok);
        assert!(eq);
        let mut sum = ptr::null_mut();
        assert_eq!(mh_class_add(gl, back, &mut sum), MhStatus::Ok);
        let mut chi = 7;
        assert_eq!(mh_class_euler_characteristic(sum, &mut chi), MhStatus::Ok);
        assert_eq!(chi, 0);
        mh_class_free(gl);
        mh_class_free(back);
        mh_class_free(sum);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(mh_class_gl(0, &mut c), MhStatus::InvalidArgument);
        assert!(c.is_null());
        assert!(last_error().contains('0'));
        let bad = CString::new("{\"num\": 3}").unwrap();
        assert_eq!(mh_class_from_json(bad.as_ptr(), &mut c), MhStatus::Parse);
        assert_eq!(mh_class_gl(2, ptr::null_mut()), MhStatus::NullPointer);
        let json = CString::new(r#"{"num":[[0,"1"]],"den":{"1":1}}"#).unwrap();
        assert_eq!(mh_class_from_json(json.as_ptr(), &mut c), MhStatus::Ok);
        let mut chi = 0;
        assert_eq!(mh_class_euler_characteristic(c, &mut chi), MhStatus::NotRegular);
        mh_class_free(c);
        mh_class_free(ptr::null_mut());
    }
}

#[test]
fn a2_products_and_verification() {
    unsafe {
        let primes = [2u32, 3, 4, 5];
        let mut alg = ptr::null_mut();
        assert_eq!(mh_algebra_new(ptr::null(), 3, primes.as_ptr(), primes.len(), 1 << 20, &mut alg), MhStatus::Ok);
        let (s1, s2) = (CString::new(S1).unwrap(), CString::new(S2).unwrap());
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(mh_element_from_json(alg, s2.as_ptr(), &mut a), MhStatus::Ok);
        assert_eq!(mh_element_from_json(alg, s1.as_ptr(), &mut b), MhStatus::Ok);
        let mut p = ptr::null_mut();
        assert_eq!(mh_algebra_mul(alg, a, b, &mut p), MhStatus::Ok);
        let mut regular = false;
        assert_eq!(mh_element_is_regular(p, &mut regular), MhStatus::Ok);
        assert!(regular);
        let mut j = ptr::null_mut();
        assert_eq!(mh_element_to_json(p, &mut j), MhStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(j)).unwrap();
        assert_eq!(v["terms"].as_array().unwrap().len(), 2);

        let mut unit = ptr::null_mut();
        assert_eq!(mh_algebra_unit(alg, &mut unit), MhStatus::Ok);
        let mut q = ptr::null_mut();
        assert_eq!(mh_algebra_mul(alg, unit, a, &mut q), MhStatus::Ok);

        let suite = CString::new("conditions").unwrap();
        let behrend = CString::new("behrend").unwrap();
        let mut passed = true;
        let mut report = ptr::null_mut();
        assert_eq!(mh_verify(alg, suite.as_ptr(), behrend.as_ptr(), 1, &mut passed, &mut report), MhStatus::Ok);
        assert!(!passed);
        assert!(take(report).contains("multiplicativity"));
        assert_eq!(mh_verify(alg, suite.as_ptr(), behrend.as_ptr(), -1, &mut passed, &mut report), MhStatus::Ok);
        assert!(passed);
        take(report);
        assert_eq!(mh_verify(alg, suite.as_ptr(), behrend.as_ptr(), 3, &mut passed, &mut report), MhStatus::InvalidArgument);

        for x in [a, b, p, unit, q] {
            mh_element_free(x);
        }
        mh_algebra_free(alg);
    }
}

#[test]
fn window_errors_map_to_status() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(mh_algebra_new(ptr::null(), 1, ptr::null(), 0, 1 << 20, &mut alg), MhStatus::Ok);
        let (s1, s2) = (CString::new(S1).unwrap(), CString::new(S2).unwrap());
        let (mut a, mut b, mut p) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        mh_element_from_json(alg, s2.as_ptr(), &mut a);
        mh_element_from_json(alg, s1.as_ptr(), &mut b);
        assert_eq!(mh_algebra_mul(alg, a, b, &mut p), MhStatus::WindowExceeded);
        mh_element_free(a);
        mh_element_free(b);
        mh_algebra_free(alg);
        let bad = CString::new("{").unwrap();
        assert_eq!(mh_algebra_new(bad.as_ptr(), 1, ptr::null(), 0, 1, &mut alg), MhStatus::Parse);
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libmotivic_hall_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
