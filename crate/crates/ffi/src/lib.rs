//! C ABI over `motivic_hall`.
//!
//! Objects are opaque handles released with their `*_free` function. Every fallible call
//! returns an [`MhStatus`]; on failure [`mh_last_error`] describes the cause. Strings
//! returned through `char **` are owned by the caller and released with [`mh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use motivic_hall::hall::{HallAlgebra, HallElement};
use motivic_hall::integration::{Sign, WeightFunction};
use motivic_hall::motivic::MotivicClass;
use motivic_hall::quiver::{Quiver, RepModel, Window};
use motivic_hall::verify::{run_suite, SuiteOptions};
use motivic_hall::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NotRegular = 4,
    NotInRing = 5,
    BudgetExceeded = 6,
    WindowExceeded = 7,
    InterpolationMismatch = 8,
    UnstableLabels = 9,
    Io = 10,
    Panic = 11,
    Other = 12,
}

/// A motivic class.
pub struct MhClass(MotivicClass);

/// A Hall algebra context.
pub struct MhAlgebra {
    inner: HallAlgebra,
}

/// A Hall algebra element.
pub struct MhElement {
    inner: HallElement,
    num_vertices: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MhStatus {
    match e {
        Error::NotRegular(_) => MhStatus::NotRegular,
        Error::QuotientOutsideRing(_) | Error::DivisionByZero => MhStatus::NotInRing,
        Error::InvalidArgument(_) | Error::NotEnoughSamples { .. } | Error::SubmonoidViolation(_) => {
            MhStatus::InvalidArgument
        }
        Error::MismatchedAlgebras(_) => MhStatus::InvalidArgument,
        Error::BudgetExceeded { .. } => MhStatus::BudgetExceeded,
        Error::WindowExceeded(_) => MhStatus::WindowExceeded,
        Error::InterpolationMismatch(_) => MhStatus::InterpolationMismatch,
        Error::UnstableLabels(_) => MhStatus::UnstableLabels,
        Error::Parse(_) => MhStatus::Parse,
        Error::Io(_) => MhStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> Result<(), MhStatus>) -> MhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MhStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            MhStatus::Panic
        }
    }
}

fn lift<T>(r: motivic_hall::Result<T>) -> Result<T, MhStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, MhStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        Err(MhStatus::NullPointer)
    } else {
        Ok(&*p)
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, MhStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(MhStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        MhStatus::Parse
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), MhStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(MhStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), MhStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(MhStatus::NullPointer);
    }
    *out = CString::new(s).unwrap_or_default().into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn mh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The class of `GL_d`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_gl(d: i64, out: *mut *mut MhClass) -> MhStatus {
    guard(|| put(out, MhClass(lift(MotivicClass::gl_class(d))?)))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_from_json(json: *const c_char, out: *mut *mut MhClass) -> MhStatus {
    guard(|| {
        let s = read_str(json)?;
        let c: MotivicClass = lift(serde_json::from_str(s).map_err(Error::from))?;
        put(out, MhClass(c))
    })
}

/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_to_json(c: *const MhClass, out: *mut *mut c_char) -> MhStatus {
    guard(|| {
        let c = borrow(c)?;
        put_string(out, serde_json::to_string(&c.0).expect("serializable"))
    })
}

/// Human-readable form such as `L^2 - 1`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_to_string(c: *const MhClass, out: *mut *mut c_char) -> MhStatus {
    guard(|| put_string(out, borrow(c)?.0.to_string()))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_add(a: *const MhClass, b: *const MhClass, out: *mut *mut MhClass) -> MhStatus {
    guard(|| put(out, MhClass(&borrow(a)?.0 + &borrow(b)?.0)))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_mul(a: *const MhClass, b: *const MhClass, out: *mut *mut MhClass) -> MhStatus {
    guard(|| put(out, MhClass(&borrow(a)?.0 * &borrow(b)?.0)))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_equal(a: *const MhClass, b: *const MhClass, out: *mut bool) -> MhStatus {
    guard(|| {
        let eq = borrow(a)?.0 == borrow(b)?.0;
        if out.is_null() {
            set_error("null output pointer");
            return Err(MhStatus::NullPointer);
        }
        *out = eq;
        Ok(())
    })
}

/// Value at `L = q`, as a decimal fraction string.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_specialize(c: *const MhClass, q: i64, out: *mut *mut c_char) -> MhStatus {
    guard(|| {
        let v = lift(borrow(c)?.0.specialize_at(q))?;
        put_string(out, v.to_string())
    })
}

/// Euler characteristic; fails with `NotRegular` when the class has a pole at `L = 1`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_class_euler_characteristic(c: *const MhClass, out: *mut i64) -> MhStatus {
    guard(|| {
        let v = lift(borrow(c)?.0.euler_characteristic())?;
        let v = i64::try_from(v).map_err(|_| {
            set_error("Euler characteristic does not fit in 64 bits");
            MhStatus::Other
        })?;
        if out.is_null() {
            set_error("null output pointer");
            return Err(MhStatus::NullPointer);
        }
        *out = v;
        Ok(())
    })
}

/// # Safety
/// `c` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn mh_class_free(c: *mut MhClass) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Creates an algebra for a quiver given as JSON (`null` for A2), with window
/// "total dimension at most `max_total`" and the given sample fields.
///
/// # Safety
/// `quiver_json` must be null or NUL-terminated; `primes` must point to `num_primes` values.
#[no_mangle]
pub unsafe extern "C" fn mh_algebra_new(
    quiver_json: *const c_char,
    max_total: u32,
    primes: *const u32,
    num_primes: usize,
    budget: u64,
    out: *mut *mut MhAlgebra,
) -> MhStatus {
    guard(|| {
        let quiver = if quiver_json.is_null() {
            Quiver::linear(2)
        } else {
            lift(Quiver::from_json(read_str(quiver_json)?))?
        };
        if primes.is_null() && num_primes > 0 {
            set_error("null field list");
            return Err(MhStatus::NullPointer);
        }
        let primes = if num_primes == 0 {
            motivic_hall::hall::DEFAULT_PRIMES.to_vec()
        } else {
            std::slice::from_raw_parts(primes, num_primes).to_vec()
        };
        let alg = lift(HallAlgebra::new(
            RepModel::new(quiver, budget),
            Window::MaxTotal(max_total),
            primes,
        ))?;
        put(out, MhAlgebra { inner: alg })
    })
}

/// # Safety
/// `a` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn mh_algebra_free(a: *mut MhAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_algebra_unit(alg: *const MhAlgebra, out: *mut *mut MhElement) -> MhStatus {
    guard(|| {
        let alg = borrow(alg)?;
        put(
            out,
            MhElement {
                inner: alg.inner.unit(),
                num_vertices: alg.inner.num_vertices(),
            },
        )
    })
}

/// Parses `{"terms": [{"class": ..., "coeff": ...}]}` against the algebra's quiver.
///
/// # Safety
/// `alg` must be a live handle, `json` NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_element_from_json(
    alg: *const MhAlgebra,
    json: *const c_char,
    out: *mut *mut MhElement,
) -> MhStatus {
    guard(|| {
        let n = borrow(alg)?.inner.num_vertices();
        let x = lift(HallElement::from_json(read_str(json)?, n))?;
        put(out, MhElement { inner: x, num_vertices: n })
    })
}

/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_element_to_json(x: *const MhElement, out: *mut *mut c_char) -> MhStatus {
    guard(|| put_string(out, borrow(x)?.inner.to_json()))
}

/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_element_is_regular(x: *const MhElement, out: *mut bool) -> MhStatus {
    guard(|| {
        let r = HallAlgebra::is_regular(&borrow(x)?.inner);
        if out.is_null() {
            set_error("null output pointer");
            return Err(MhStatus::NullPointer);
        }
        *out = r;
        Ok(())
    })
}

/// # Safety
/// `x` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn mh_element_free(x: *mut MhElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

unsafe fn binary(
    alg: *const MhAlgebra,
    x: *const MhElement,
    y: *const MhElement,
    out: *mut *mut MhElement,
    op: fn(&HallAlgebra, &HallElement, &HallElement) -> motivic_hall::Result<HallElement>,
) -> MhStatus {
    guard(|| {
        let alg = borrow(alg)?;
        let (x, y) = (borrow(x)?, borrow(y)?);
        let n = alg.inner.num_vertices();
        if x.num_vertices != n || y.num_vertices != n {
            set_error("element belongs to a different quiver");
            return Err(MhStatus::InvalidArgument);
        }
        let z = lift(op(&alg.inner, &x.inner, &y.inner))?;
        put(out, MhElement { inner: z, num_vertices: n })
    })
}

/// Hall product, left factor the subobject.
///
/// # Safety
/// All handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_algebra_mul(
    alg: *const MhAlgebra,
    x: *const MhElement,
    y: *const MhElement,
    out: *mut *mut MhElement,
) -> MhStatus {
    binary(alg, x, y, out, HallAlgebra::mul)
}

/// `(x*y - y*x) / (L - 1)`.
///
/// # Safety
/// All handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mh_algebra_bracket(
    alg: *const MhAlgebra,
    x: *const MhElement,
    y: *const MhElement,
    out: *mut *mut MhElement,
) -> MhStatus {
    binary(alg, x, y, out, HallAlgebra::poisson_bracket)
}

/// Runs a verification suite. `weight` is "one" or "behrend", `sigma` is +1 or -1.
/// `passed` receives the verdict and `report` the JSON reports.
///
/// # Safety
/// `alg` must be a live handle, strings NUL-terminated, outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mh_verify(
    alg: *const MhAlgebra,
    suite: *const c_char,
    weight: *const c_char,
    sigma: i32,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> MhStatus {
    guard(|| {
        let alg = borrow(alg)?;
        let suite = read_str(suite)?;
        let weight = match read_str(weight)? {
            "one" => WeightFunction::ConstantOne,
            "behrend" => WeightFunction::Behrend,
            other => {
                set_error(&format!("unknown weight {other:?}"));
                return Err(MhStatus::InvalidArgument);
            }
        };
        let opts = SuiteOptions {
            weight,
            sigma: lift(Sign::from_value(i64::from(sigma)))?,
            ..SuiteOptions::default()
        };
        let reports = lift(run_suite(&alg.inner, suite, &opts))?;
        if passed.is_null() {
            set_error("null output pointer");
            return Err(MhStatus::NullPointer);
        }
        *passed = reports.iter().all(|r| r.passed());
        put_string(report, serde_json::to_string_pretty(&reports).expect("serializable"))
    })
}
