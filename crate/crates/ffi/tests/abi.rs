use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hardy_points_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hp_last_error_message()) }.to_string_lossy().into_owned()
}

fn weight(name: &str) -> *mut HpWeight {
    let name = CString::new(name).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { hp_weight_new(name.as_ptr(), 1e-10, &mut w) }, HpStatus::Ok);
    w
}

#[test]
fn solve_and_interpolate_round_trip() {
    let w = weight("w2");
    let mut d = 0.0;
    assert_eq!(unsafe { hp_weight_d(w, &mut d) }, HpStatus::Ok);
    assert!((d - std::f64::consts::FRAC_PI_4).abs() < 1e-9);

    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { hp_solve(w, 9, 1, &mut sol) }, HpStatus::Ok);
    let n = unsafe { hp_solution_len(sol) };
    assert_eq!(n, 9);
    let mut pts = vec![0.0; n];
    assert_eq!(unsafe { hp_solution_points(sol, pts.as_mut_ptr(), n) }, HpStatus::Ok);
    assert!(pts.windows(2).all(|p| p[0] < p[1]));
    assert!((pts[0] + pts[8]).abs() < 1e-12);

    let (mut f_d, mut cert, mut iters) = (0.0, 0.0, 0usize);
    assert_eq!(unsafe { hp_solution_report(sol, &mut f_d, &mut cert, &mut iters) }, HpStatus::Ok);
    assert!((cert - (-f_d / 9.0).exp()).abs() < 1e-15);
    assert!(iters > 0);

    let mut vals = vec![0.0; n];
    for (v, &a) in vals.iter_mut().zip(&pts) {
        assert_eq!(unsafe { hp_weight_eval(w, a, v) }, HpStatus::Ok);
    }
    let mut app = ptr::null_mut();
    assert_eq!(unsafe { hp_approx_new(w, sol, vals.as_ptr(), n, HP_FORM_II, &mut app) }, HpStatus::Ok);
    let (mut y, mut wx) = (0.0, 0.0);
    assert_eq!(unsafe { hp_approx_eval(app, 0.123, &mut y) }, HpStatus::Ok);
    assert_eq!(unsafe { hp_weight_eval(w, 0.123, &mut wx) }, HpStatus::Ok);
    assert!((y - wx).abs() <= 1e-13 * wx);
    assert_eq!(last_error(), "");

    unsafe {
        hp_approx_free(app);
        hp_solution_free(sol);
        hp_weight_free(w);
    }
}

#[test]
fn error_codes_and_messages() {
    let name = CString::new("nope").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { hp_weight_new(name.as_ptr(), 1e-10, &mut w) }, HpStatus::UnknownName);
    assert!(w.is_null());
    assert!(last_error().contains("w1, w2"));

    assert_eq!(unsafe { hp_weight_new(ptr::null(), 1e-10, &mut w) }, HpStatus::NullPointer);
    let good = CString::new("w1").unwrap();
    assert_eq!(unsafe { hp_weight_new(good.as_ptr(), 1e-10, ptr::null_mut()) }, HpStatus::NullPointer);

    let w = weight("w1");
    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { hp_solve(w, 1, 1, &mut sol) }, HpStatus::InvalidArgument);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { hp_solve(w, 5, 1, &mut sol) }, HpStatus::Ok);

    let mut small = [0.0; 3];
    assert_eq!(unsafe { hp_solution_points(sol, small.as_mut_ptr(), 3) }, HpStatus::BufferTooSmall);
    let vals = [1.0; 5];
    let mut app = ptr::null_mut();
    assert_eq!(unsafe { hp_approx_new(w, sol, vals.as_ptr(), 5, 7, &mut app) }, HpStatus::InvalidArgument);
    assert_eq!(unsafe { hp_approx_new(w, sol, vals.as_ptr(), 4, HP_FORM_I, &mut app) }, HpStatus::InvalidArgument);
    assert_eq!(unsafe { hp_solution_len(ptr::null()) }, 0);
    let mut y = 0.0;
    assert_eq!(unsafe { hp_approx_eval(ptr::null(), 0.0, &mut y) }, HpStatus::NullPointer);

    unsafe {
        hp_solution_free(sol);
        hp_weight_free(w);
        hp_weight_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(hp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hardy_points.h")).unwrap();
    for sym in [
        "hp_last_error_message",
        "hp_version",
        "hp_weight_new",
        "hp_weight_free",
        "hp_weight_d",
        "hp_weight_eval",
        "hp_solve",
        "hp_solution_free",
        "hp_solution_len",
        "hp_solution_points",
        "hp_solution_report",
        "hp_approx_new",
        "hp_approx_free",
        "hp_approx_eval",
        "HP_STATUS_NO_CONVERGENCE",
        "typedef struct HpWeight HpWeight",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}

/// Directory holding the library artifacts next to this test binary.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = artifact_dir().join("libhardy_points_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "hardy_points.h"

int main(void) {
    HpWeight *w = NULL;
    HpSolution *s = NULL;
    double pts[17];
    if (hp_weight_new("w3", 1e-10, &w) != HP_STATUS_OK) return 1;
    if (hp_solve(w, 17, 1, &s) != HP_STATUS_OK) return 2;
    if (hp_solution_len(s) != 17) return 3;
    if (hp_solution_points(s, pts, 17) != HP_STATUS_OK) return 4;
    if (pts[0] + pts[16] > 1e-12 || pts[0] + pts[16] < -1e-12) return 5;
    if (hp_weight_new("bogus", 1e-10, &w) != HP_STATUS_UNKNOWN_NAME) return 6;
    if (strstr(hp_last_error_message(), "bogus") == NULL) return 7;
    printf("%.6f\n", pts[16]);
    hp_solution_free(s);
    hp_weight_free(w);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = tmp.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).trim().parse::<f64>().unwrap() > 0.0);
}
