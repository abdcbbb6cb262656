//! C ABI over `johnsonlab`.
//!
//! Every fallible function returns a [`JlStatus`]. On failure the message is
//! available from [`jl_last_error_message`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`jl_string_free`]; handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use johnsonlab::framing::{arf, FramingData};
use johnsonlab::goldman::{goldman_bracket, turaev_cobracket};
use johnsonlab::repring::irr_dimension;
use johnsonlab::serial::Json;
use johnsonlab::{genus1, CyclicPoly, Error};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    ModelMismatch = 5,
    Unsupported = 6,
    Overflow = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque cyclic polynomial.
pub struct JlCyclicPoly {
    inner: CyclicPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

fn status_of(e: &Error) -> JlStatus {
    match e {
        Error::Parse { .. } | Error::UnknownLetter(_) | Error::NotLie(_) => JlStatus::Parse,
        Error::ModelMismatch(_) | Error::AlphabetMismatch(..) => JlStatus::ModelMismatch,
        Error::InvalidArgument(_) | Error::InsufficientData(_) => JlStatus::InvalidArgument,
        Error::Unsupported(_) => JlStatus::Unsupported,
        Error::Invariant(_) | Error::Cache(_) => JlStatus::Internal,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (JlStatus, String)>) -> JlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            JlStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside johnsonlab");
            JlStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (JlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (JlStatus, String) {
    (JlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (JlStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (JlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (JlStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (JlStatus::Internal, "string contains nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Parses a cyclic polynomial from JSON.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_cyclic_from_json(json: *const c_char, out: *mut *mut JlCyclicPoly) -> JlStatus {
    guard(|| {
        let s = read_str(json, "json")?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let inner = CyclicPoly::from_json_str(s).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(JlCyclicPoly { inner }));
        Ok(())
    })
}

/// Canonical JSON text of a cyclic polynomial; free with `jl_string_free`.
///
/// # Safety
/// `poly` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_cyclic_to_json(poly: *const JlCyclicPoly, out: *mut *mut c_char) -> JlStatus {
    guard(|| {
        let p = poly.as_ref().ok_or_else(|| null("poly"))?;
        write_string(out, p.inner.to_json_string())
    })
}

/// # Safety
/// `poly` must come from this library or be null; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jl_cyclic_free(poly: *mut JlCyclicPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Goldman bracket `{x, y}` as a new handle.
///
/// # Safety
/// `x` and `y` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_goldman_bracket(
    x: *const JlCyclicPoly,
    y: *const JlCyclicPoly,
    out: *mut *mut JlCyclicPoly,
) -> JlStatus {
    guard(|| {
        let x = x.as_ref().ok_or_else(|| null("x"))?;
        let y = y.as_ref().ok_or_else(|| null("y"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let inner = goldman_bracket(&x.inner, &y.inner).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(JlCyclicPoly { inner }));
        Ok(())
    })
}

/// Turaev cobracket as JSON text; free with `jl_string_free`.
///
/// # Safety
/// `x` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_turaev_cobracket(x: *const JlCyclicPoly, out: *mut *mut c_char) -> JlStatus {
    guard(|| {
        let x = x.as_ref().ok_or_else(|| null("x"))?;
        let r = turaev_cobracket(&x.inner).map_err(lib_err)?;
        write_string(out, r.to_json_string())
    })
}

/// Evaluates Pollack relation 1 or 2; `*holds` is set to 1 if it vanishes.
///
/// # Safety
/// `holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_pollack_check(which: u8, holds: *mut u8) -> JlStatus {
    guard(|| {
        if holds.is_null() {
            return Err(null("holds"));
        }
        let (ok, _) = genus1::pollack_check(which).map_err(lib_err)?;
        *holds = ok as u8;
        Ok(())
    })
}

/// Dimension of the irreducible `Sp(2g)`-module with highest weight `parts[0..len]`.
///
/// # Safety
/// `parts` must point to `len` integers (or be null with `len == 0`); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn jl_irr_dimension(parts: *const u32, len: usize, genus: usize, out: *mut u64) -> JlStatus {
    guard(|| {
        if out.is_null() || (parts.is_null() && len > 0) {
            return Err(null("argument"));
        }
        let lambda: &[u32] = if len == 0 { &[] } else { std::slice::from_raw_parts(parts, len) };
        let d = irr_dimension(lambda, genus).map_err(lib_err)?;
        *out = u64::try_from(&d).map_err(|_| (JlStatus::Overflow, format!("dimension {d} exceeds 64 bits")))?;
        Ok(())
    })
}

/// Arf invariant of a framing given by `rot(a_j)`, `rot(b_j)` for `j < genus`.
///
/// # Safety
/// `rot_a` and `rot_b` must point to `genus` integers; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn jl_framing_arf(rot_a: *const i64, rot_b: *const i64, genus: usize, out: *mut u8) -> JlStatus {
    guard(|| {
        if rot_a.is_null() || rot_b.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let a = std::slice::from_raw_parts(rot_a, genus).to_vec();
        let b = std::slice::from_raw_parts(rot_b, genus).to_vec();
        let f = FramingData::new(a, b).map_err(lib_err)?;
        *out = arf(&f).map_err(lib_err)?;
        Ok(())
    })
}

/// Message of the last failure on this thread; empty after a success. The
/// pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn jl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn jl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
    Ok(s) => s,
    Err(_) => panic!("version string"),
};

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn jl_version() -> *const c_char {
    VERSION.as_ptr()
}
