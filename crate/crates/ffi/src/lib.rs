//! C ABI over the xprod library.
//!
//! Systems and elements are opaque handles released with their `_free`
//! function. Every fallible call returns an [`XpStatus`]; on failure the
//! message is available from [`xp_last_error_message`] on the same thread.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and released with [`xp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use xprod::algebra::Element;
use xprod::io::{element_from_json, element_to_json, function_to_json, parse_system};
use xprod::lab::{analyze, LabConfig};
use xprod::symbolic::{parse_word, ShiftSystem};
use xprod::Error;

/// Result codes of the C API.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    InvalidSystem = 4,
    Parse = 5,
    Resource = 6,
    UnsupportedMode = 7,
    Ambiguous = 8,
    Witness = 9,
    Internal = 10,
}

/// A shift system.
pub struct XpSystem {
    inner: Arc<ShiftSystem>,
}

/// A crossed-product element over a system.
pub struct XpElement {
    inner: Element,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(XpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Input(_) => XpStatus::InvalidInput,
            Error::InvalidSystem(_) => XpStatus::InvalidSystem,
            Error::Parse(_) => XpStatus::Parse,
            Error::Resource { .. } => XpStatus::Resource,
            Error::UnsupportedMode { .. } => XpStatus::UnsupportedMode,
            Error::Ambiguous { .. } => XpStatus::Ambiguous,
            Error::Witness(_) => XpStatus::Witness,
        };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(XpStatus::Parse, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> XpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            XpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            XpStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(XpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(XpStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn read_config(p: *const c_char) -> Result<LabConfig, Failure> {
    if p.is_null() {
        return Ok(LabConfig::default());
    }
    Ok(serde_json::from_str(read_str(p, "config")?)?)
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure(XpStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v)?)
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn xp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses `{"full_shift": d}` or `{"alphabet": d, "adjacency": [[...]]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xp_system_from_json(json: *const c_char, out: *mut *mut XpSystem) -> XpStatus {
    guard(|| {
        let sys = parse_system(read_str(json, "json")?)?;
        write_out(out, XpSystem { inner: Arc::new(sys) })
    })
}

/// # Safety
/// `sys` must come from [`xp_system_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn xp_system_free(sys: *mut XpSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xp_system_alphabet_size(sys: *const XpSystem, out: *mut usize) -> XpStatus {
    guard(|| {
        let sys = handle(sys, "system")?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = sys.inner.alphabet_size();
        Ok(())
    })
}

/// Writes the verdict to `is_free` and, when not free, the certificate
/// `{"k": .., "l": .., "w": ".."}` to `certificate` (null otherwise).
///
/// # Safety
/// `sys` must be a live handle; `is_free` and `certificate` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn xp_system_is_topologically_free(
    sys: *const XpSystem,
    is_free: *mut bool,
    certificate: *mut *mut c_char,
) -> XpStatus {
    guard(|| {
        let sys = handle(sys, "system")?;
        let flag = is_free.as_mut().ok_or_else(|| null("is_free"))?;
        if certificate.is_null() {
            return Err(null("certificate"));
        }
        let verdict = sys.inner.is_topologically_free();
        *flag = verdict.free;
        match verdict.certificate {
            Some(c) => write_string(certificate, serde_json::to_string(&c)?),
            None => {
                *certificate = ptr::null_mut();
                Ok(())
            }
        }
    })
}

/// Full analysis report as JSON. `config` may be null for the defaults or
/// a JSON object overriding some of them.
///
/// # Safety
/// `sys` must be a live handle, `config` null or a NUL-terminated string,
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xp_analyze(sys: *const XpSystem, config: *const c_char, out: *mut *mut c_char) -> XpStatus {
    guard(|| {
        let sys = handle(sys, "system")?;
        let report = analyze(&sys.inner, &read_config(config)?)?;
        write_string(out, pretty(&report)?)
    })
}

/// Relation residual reports as a JSON array.
///
/// # Safety
/// As for [`xp_analyze`].
#[no_mangle]
pub unsafe extern "C" fn xp_residuals(sys: *const XpSystem, config: *const c_char, out: *mut *mut c_char) -> XpStatus {
    guard(|| {
        let sys = handle(sys, "system")?;
        let reports = read_config(config)?.residuals(&sys.inner)?;
        write_string(out, pretty(&reports)?)
    })
}

/// Witness report for `f s^k (s*)^l f` with `f = 1_[word]`.
///
/// # Safety
/// As for [`xp_analyze`]; `word` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn xp_witness(
    sys: *const XpSystem,
    k: usize,
    l: usize,
    word: *const c_char,
    config: *const c_char,
    out: *mut *mut c_char,
) -> XpStatus {
    guard(|| {
        let sys = handle(sys, "system")?;
        let w = parse_word(read_str(word, "word")?, sys.inner.alphabet_size())?;
        let report = read_config(config)?.witness(&sys.inner, k, l, &w)?;
        write_string(out, pretty(&report)?)
    })
}

/// Parses `{"terms": [{"f": .., "k": .., "l": .., "g": ..}, ...]}`.
///
/// # Safety
/// `sys` must be a live handle, `json` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn xp_element_from_json(
    sys: *const XpSystem,
    json: *const c_char,
    out: *mut *mut XpElement,
) -> XpStatus {
    guard(|| {
        let sys = handle(sys, "system")?;
        let value: serde_json::Value = serde_json::from_str(read_str(json, "json")?)?;
        let e = element_from_json(&sys.inner, &value)?;
        write_out(out, XpElement { inner: e })
    })
}

/// The generator `s`.
///
/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xp_element_s(sys: *const XpSystem, out: *mut *mut XpElement) -> XpStatus {
    guard(|| {
        let sys = handle(sys, "system")?;
        write_out(out, XpElement { inner: Element::s(sys.inner.clone()) })
    })
}

/// # Safety
/// `a` and `b` must be live handles over equal systems; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn xp_element_multiply(
    a: *const XpElement,
    b: *const XpElement,
    out: *mut *mut XpElement,
) -> XpStatus {
    guard(|| {
        let (a, b) = (handle(a, "left factor")?, handle(b, "right factor")?);
        if a.inner.system() != b.inner.system() {
            return Err(Failure(XpStatus::InvalidInput, "factors live over different systems".into()));
        }
        write_out(out, XpElement { inner: a.inner.mul(&b.inner) })
    })
}

/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xp_element_adjoint(e: *const XpElement, out: *mut *mut XpElement) -> XpStatus {
    guard(|| {
        let e = handle(e, "element")?;
        write_out(out, XpElement { inner: e.inner.adjoint() })
    })
}

/// Serializes an element whose coefficients are all exact.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xp_element_to_json(e: *const XpElement, out: *mut *mut c_char) -> XpStatus {
    guard(|| {
        let e = handle(e, "element")?;
        write_string(out, serde_json::to_string(&element_to_json(&e.inner)?)?)
    })
}

/// The conditional expectation onto `C(X)` as a function in JSON form;
/// fails with `InvalidInput` when the result is not exact.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xp_element_conditional_expectation(e: *const XpElement, out: *mut *mut c_char) -> XpStatus {
    guard(|| {
        let e = handle(e, "element")?;
        let g = e.inner.conditional_expectation().normalized();
        let f = g
            .as_exact()
            .ok_or_else(|| Failure(XpStatus::InvalidInput, "expectation is not exact".into()))?;
        write_string(out, serde_json::to_string(&function_to_json(f))?)
    })
}

/// # Safety
/// `e` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn xp_element_free(e: *mut XpElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn xp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
