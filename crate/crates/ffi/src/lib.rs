//! C ABI for `hardy-points`.
//!
//! Objects are opaque handles created by `hp_*_new`/`hp_solve` and released
//! with the matching `hp_*_free`. Every fallible call returns an
//! [`HpStatus`]; on failure [`hp_last_error_message`] describes the error on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hardy_points::approx::{Approximant, Form};
use hardy_points::optimizer::{solve, SolveResult, SolverConfig};
use hardy_points::weights::{get_weight, Weight};
use hardy_points::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownName = 3,
    NoConvergence = 4,
    Numerical = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Formula selector for [`hp_approx_new`].
pub const HP_FORM_I: c_int = 1;
pub const HP_FORM_II: c_int = 2;

pub struct HpWeight(Weight);

pub struct HpSolution(SolveResult);

pub struct HpApproximant(Approximant);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> HpStatus {
    match err {
        Error::UnknownName { .. } => HpStatus::UnknownName,
        Error::NoConvergence { .. } | Error::Stall { .. } | Error::OrderingViolated { .. } => HpStatus::NoConvergence,
        e if e.is_usage() => HpStatus::InvalidArgument,
        _ => HpStatus::Numerical,
    }
}

fn fail(status: HpStatus, msg: impl Into<String>) -> HpStatus {
    set_last_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), HpStatus>) -> HpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            HpStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(HpStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: hardy_points::Result<T>) -> Result<T, HpStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, HpStatus> {
    // SAFETY: caller passes either null or a live handle from this library.
    unsafe { p.as_ref() }.ok_or_else(|| fail(HpStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), HpStatus> {
    if p.is_null() {
        Err(fail(HpStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a built-in weight by name (`"w1"` .. `"w7"`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_weight_new(name: *const c_char, epsilon: f64, out: *mut *mut HpWeight) -> HpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        if name.is_null() {
            return Err(fail(HpStatus::NullPointer, "name is null"));
        }
        // SAFETY: checked non-null; caller guarantees NUL termination.
        let name = unsafe { CStr::from_ptr(name) }
            .to_str()
            .map_err(|_| fail(HpStatus::InvalidArgument, "name is not UTF-8"))?;
        let wt = lib(get_weight(name, epsilon))?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(HpWeight(wt))) };
        Ok(())
    })
}

/// # Safety
/// `weight` must be null or a handle from [`hp_weight_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_weight_free(weight: *mut HpWeight) {
    if !weight.is_null() {
        // SAFETY: caller guarantees ownership.
        drop(unsafe { Box::from_raw(weight) });
    }
}

/// Strip half-width `d` of the weight.
///
/// # Safety
/// `weight` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_weight_d(weight: *const HpWeight, out: *mut f64) -> HpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let wt = unsafe { deref(weight, "weight")? };
        unsafe { *out = wt.0.d() };
        Ok(())
    })
}

/// Evaluates `w(x)`.
///
/// # Safety
/// `weight` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_weight_eval(weight: *const HpWeight, x: f64, out: *mut f64) -> HpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let wt = unsafe { deref(weight, "weight")? };
        unsafe { *out = wt.0.w(x) };
        Ok(())
    })
}

/// Computes the `n` optimal points. `damping = 0` takes full Newton steps.
///
/// # Safety
/// `weight` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_solve(weight: *const HpWeight, n: usize, damping: c_int, out: *mut *mut HpSolution) -> HpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let wt = unsafe { deref(weight, "weight")? };
        let cfg = SolverConfig {
            damping: damping != 0,
            ..SolverConfig::default()
        };
        let sol = lib(solve(&wt.0, n, &cfg))?;
        unsafe { *out = Box::into_raw(Box::new(HpSolution(sol))) };
        Ok(())
    })
}

/// # Safety
/// `solution` must be null or a handle from [`hp_solve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_solution_free(solution: *mut HpSolution) {
    if !solution.is_null() {
        // SAFETY: caller guarantees ownership.
        drop(unsafe { Box::from_raw(solution) });
    }
}

/// Number of points; 0 for a null handle.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hp_solution_len(solution: *const HpSolution) -> usize {
    // SAFETY: caller contract.
    unsafe { solution.as_ref() }.map_or(0, |s| s.0.points.len())
}

/// Copies the points into `buf`, which must hold at least `len` values.
///
/// # Safety
/// `solution` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hp_solution_points(solution: *const HpSolution, buf: *mut f64, len: usize) -> HpStatus {
    guard(|| {
        out_ptr(buf, "buf")?;
        let sol = unsafe { deref(solution, "solution")? };
        let pts = sol.0.points.as_slice();
        if len < pts.len() {
            return Err(fail(
                HpStatus::BufferTooSmall,
                format!("buffer holds {len} values, need {}", pts.len()),
            ));
        }
        // SAFETY: buf is valid for len >= pts.len() writes.
        unsafe { ptr::copy_nonoverlapping(pts.as_ptr(), buf, pts.len()) };
        Ok(())
    })
}

/// Energy constant `F` and certificate `exp(-F/n)`; either output may be null.
///
/// # Safety
/// `solution` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_solution_report(
    solution: *const HpSolution,
    f_d: *mut f64,
    certificate: *mut f64,
    iterations: *mut usize,
) -> HpStatus {
    guard(|| {
        let sol = unsafe { deref(solution, "solution")? };
        let rep = &sol.0.energy_report;
        unsafe {
            if let Some(p) = f_d.as_mut() {
                *p = rep.f_d;
            }
            if let Some(p) = certificate.as_mut() {
                *p = rep.certificate;
            }
            if let Some(p) = iterations.as_mut() {
                *p = sol.0.iterations;
            }
        }
        Ok(())
    })
}

/// Builds an interpolant from `values[i] = f(a_i)` at the solution points.
///
/// # Safety
/// Handles must be live, `values` valid for `len` reads, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_approx_new(
    weight: *const HpWeight,
    solution: *const HpSolution,
    values: *const f64,
    len: usize,
    form: c_int,
    out: *mut *mut HpApproximant,
) -> HpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let wt = unsafe { deref(weight, "weight")? };
        let sol = unsafe { deref(solution, "solution")? };
        if values.is_null() {
            return Err(fail(HpStatus::NullPointer, "values is null"));
        }
        let form = match form {
            HP_FORM_I => Form::I,
            HP_FORM_II => Form::II,
            other => return Err(fail(HpStatus::InvalidArgument, format!("unknown form {other}"))),
        };
        if len != sol.0.points.len() {
            return Err(fail(
                HpStatus::InvalidArgument,
                format!("{len} values for {} points", sol.0.points.len()),
            ));
        }
        // SAFETY: values is valid for len reads.
        let vals = unsafe { std::slice::from_raw_parts(values, len) }.to_vec();
        let app = lib(Approximant::from_values(&wt.0, &sol.0.points, vals, form))?;
        unsafe { *out = Box::into_raw(Box::new(HpApproximant(app))) };
        Ok(())
    })
}

/// # Safety
/// `approx` must be null or a handle from [`hp_approx_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_approx_free(approx: *mut HpApproximant) {
    if !approx.is_null() {
        // SAFETY: caller guarantees ownership.
        drop(unsafe { Box::from_raw(approx) });
    }
}

/// Evaluates the interpolant at `x`.
///
/// # Safety
/// `approx` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_approx_eval(approx: *const HpApproximant, x: f64, out: *mut f64) -> HpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let app = unsafe { deref(approx, "approx")? };
        let v = lib(app.0.eval(x))?;
        unsafe { *out = v };
        Ok(())
    })
}
