//! C interface to the lefschetz library.
//!
//! Scenarios are opaque handles. Reports come back as heap-allocated JSON
//! strings which the caller releases with `lz_string_free`. Every function
//! returns an `LzStatus`; on failure `lz_last_error` describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lefschetz::cli::{self, Output, Space};
use lefschetz::polycore::{BiForm1, BiPoly};
use lefschetz::scenario::Scenario;
use lefschetz::{bounds, Error};

/// Opaque scenario handle.
pub struct LzScenario {
    inner: Scenario,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LzStatus {
    Ok = 0,
    /// Input rejected: genericity, parsing, unknown labels.
    Invalid = 1,
    /// Internal inconsistency such as a contradictory table or lost track.
    Inconsistent = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(e: Error) -> LzStatus {
    set_error(e.to_json());
    if e.exit_code() == 2 {
        LzStatus::Inconsistent
    } else {
        LzStatus::Invalid
    }
}

fn guard(f: impl FnOnce() -> LzStatus) -> LzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error(r#"{"error":"Panic","message":"panic inside lefschetz"}"#.into());
            LzStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, LzStatus> {
    if p.is_null() {
        set_error(r#"{"error":"NullPointer","message":"null argument"}"#.into());
        return Err(LzStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(r#"{"error":"InvalidUtf8","message":"argument is not UTF-8"}"#.into());
        LzStatus::InvalidUtf8
    })
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> LzStatus {
    if out.is_null() {
        set_error(r#"{"error":"NullPointer","message":"null output pointer"}"#.into());
        return LzStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            LzStatus::Ok
        }
        Err(_) => fail(Error::Parse("output contains a NUL byte".into())),
    }
}

unsafe fn put_json(out: *mut *mut c_char, r: lefschetz::Result<Output>) -> LzStatus {
    match r.and_then(|o| Ok(serde_json::to_string(&o.json)?)) {
        Ok(s) => put_string(out, s),
        Err(e) => fail(e),
    }
}

unsafe fn scenario_ref<'a>(s: *const LzScenario) -> Result<&'a Scenario, LzStatus> {
    if s.is_null() {
        set_error(r#"{"error":"NullPointer","message":"null scenario"}"#.into());
        return Err(LzStatus::NullPointer);
    }
    Ok(&(*s).inner)
}

fn space(which: &str) -> Result<Space, LzStatus> {
    cli::parse_space(which).map_err(fail)
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Last error of this thread as JSON. Valid until the next call on the
/// same thread; do not free.
#[no_mangle]
pub extern "C" fn lz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn lz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn lz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a scenario JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lz_scenario_from_json(
    json: *const c_char,
    out: *mut *mut LzScenario,
) -> LzStatus {
    guard(|| {
        if out.is_null() {
            return LzStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = tri!(str_arg(json));
        match Scenario::from_json_str(text) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(LzScenario { inner: s }));
                LzStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Built-in generic scenario for (a, n).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lz_scenario_generate(
    a: usize,
    n: usize,
    out: *mut *mut LzScenario,
) -> LzStatus {
    guard(|| {
        if out.is_null() {
            return LzStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match Scenario::generate(a, n) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(LzScenario { inner: s }));
                LzStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must come from `lz_scenario_*` or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn lz_scenario_free(s: *mut LzScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Genericity report.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn lz_validation_report(
    s: *const LzScenario,
    out: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let s = tri!(scenario_ref(s));
        match serde_json::to_string(&s.validation_report()) {
            Ok(j) => put_string(out, j),
            Err(e) => fail(e.into()),
        }
    })
}

/// Labelled basis; `which` is one of "gR", "hS", "f", "fF".
///
/// # Safety
/// Valid handle, NUL-terminated `which`, valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn lz_basis(
    s: *const LzScenario,
    which: *const c_char,
    out: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let s = tri!(scenario_ref(s));
        let w = tri!(space(tri!(str_arg(which))));
        put_json(out, cli::cmd_basis(s, w))
    })
}

/// Intersection matrix with the table comparison.
///
/// # Safety
/// As `lz_basis`.
#[no_mangle]
pub unsafe extern "C" fn lz_gram(
    s: *const LzScenario,
    which: *const c_char,
    out: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let s = tri!(scenario_ref(s));
        let w = tri!(space(tri!(str_arg(which))));
        put_json(out, cli::cmd_gram(s, w))
    })
}

/// Monodromy operator of `value` ("c2", "t3", or "c1+c2" in dimension one).
/// With `oracle` nonzero the dimension-0 continuation check is included.
///
/// # Safety
/// As `lz_basis`, plus NUL-terminated `value`.
#[no_mangle]
pub unsafe extern "C" fn lz_monodromy(
    s: *const LzScenario,
    which: *const c_char,
    value: *const c_char,
    oracle: i32,
    out: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let s = tri!(scenario_ref(s));
        let w = tri!(space(tri!(str_arg(which))));
        let v = tri!(str_arg(value));
        put_json(out, cli::cmd_monodromy(s, v, w, oracle != 0, None))
    })
}

/// Orbit lattice of the cycle labelled `seed`.
///
/// # Safety
/// As `lz_monodromy`.
#[no_mangle]
pub unsafe extern "C" fn lz_orbit(
    s: *const LzScenario,
    which: *const c_char,
    seed: *const c_char,
    out: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let s = tri!(scenario_ref(s));
        let w = tri!(space(tri!(str_arg(which))));
        let seed = tri!(str_arg(seed));
        put_json(out, cli::cmd_orbit(s, seed, w))
    })
}

/// ker F_* report.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn lz_kernel_report(s: *const LzScenario, out: *mut *mut c_char) -> LzStatus {
    guard(|| {
        let s = tri!(scenario_ref(s));
        put_json(out, cli::cmd_kernel(s))
    })
}

/// Dynkin diagram in DOT.
///
/// # Safety
/// As `lz_basis`.
#[no_mangle]
pub unsafe extern "C" fn lz_dynkin_dot(
    s: *const LzScenario,
    which: *const c_char,
    out: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let s = tri!(scenario_ref(s));
        let w = tri!(space(tri!(str_arg(which))));
        match cli::cmd_dynkin(s, w) {
            Ok(o) => put_string(out, o.dot.unwrap_or_default()),
            Err(e) => fail(e),
        }
    })
}

/// Petrov decomposition of a form {"P":..,"Q":..} over a polynomial {"terms":..}.
///
/// # Safety
/// NUL-terminated JSON inputs and a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn lz_petrov_decompose(
    form: *const c_char,
    l: *const c_char,
    out: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let parsed = (|| -> lefschetz::Result<(BiForm1, BiPoly)> {
            let f = BiForm1::from_json(&serde_json::from_str(
                str_arg(form).map_err(|_| Error::Parse("form".into()))?,
            )?)?;
            let p = BiPoly::from_json(&serde_json::from_str(
                str_arg(l).map_err(|_| Error::Parse("l".into()))?,
            )?)?;
            Ok((f, p))
        })();
        match parsed {
            Ok((f, p)) => put_json(out, cli::decompose_output(&f, &p)),
            Err(e) => fail(e),
        }
    })
}

/// C for d = an+n−1.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lz_pullback_cyclicity(a: i64, n: i64, out: *mut i64) -> LzStatus {
    guard(|| {
        if out.is_null() {
            return LzStatus::NullPointer;
        }
        match bounds::pullback_cyclicity(a, n) {
            Ok(c) => {
                *out = c;
                LzStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
