//! C ABI over the nfjd library. Models are opaque handles; results come
//! back as status codes plus JSON or DOT strings allocated by the
//! library and released with `nfjd_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use nfjd::decision::decide_equality;
use nfjd::error::Error;
use nfjd::export;
use nfjd::model::model_from_json;
use nfjd::reid_graph::{build_graph, Model};

/// Status codes; nonzero mirrors the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfjdStatus {
    Ok = 0,
    InvalidInput = 2,
    ModelInconsistency = 3,
    SearchCapExceeded = 4,
    NullPointer = 5,
}

/// Opaque model handle.
pub struct NfjdModel {
    inner: Model,
}

fn status_of(e: &Error) -> NfjdStatus {
    match e {
        Error::InvalidInput(_) | Error::EnumerationCap { .. } => NfjdStatus::InvalidInput,
        Error::ModelInconsistency(_) => NfjdStatus::ModelInconsistency,
        Error::SearchCapExceeded { .. } => NfjdStatus::SearchCapExceeded,
    }
}

fn emit(s: String, out: *mut *mut c_char) -> NfjdStatus {
    // JSON and DOT output never contain interior NULs
    let c = CString::new(s).expect("no interior NUL");
    unsafe { *out = c.into_raw() };
    NfjdStatus::Ok
}

/// Parses a JSON model into a handle. On success writes the handle to
/// `out_model` and returns Ok; the caller owns the handle and must
/// release it with `nfjd_model_free`.
///
/// # Safety
/// `json` must be a NUL-terminated UTF-8 string; `out_model` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nfjd_model_parse_json(
    json: *const c_char,
    out_model: *mut *mut NfjdModel,
) -> NfjdStatus {
    if json.is_null() || out_model.is_null() {
        return NfjdStatus::NullPointer;
    }
    *out_model = ptr::null_mut();
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return NfjdStatus::InvalidInput,
    };
    match model_from_json(text) {
        Ok((model, _)) => {
            *out_model = Box::into_raw(Box::new(NfjdModel { inner: model }));
            NfjdStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a model handle. Accepts NULL.
///
/// # Safety
/// `model` must be NULL or a handle returned by `nfjd_model_parse_json`
/// that has not already been freed.
#[no_mangle]
pub unsafe extern "C" fn nfjd_model_free(model: *mut NfjdModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Decides NF_n = NJD_n and writes the verdict (with certificates) as a
/// JSON string to `out_json`. `n = 0` lets the library pick the horizon;
/// `max_exponent = 0` uses the default search cap.
///
/// # Safety
/// `model` must be a live handle; `out_json` must be a valid pointer.
/// The returned string must be released with `nfjd_string_free`.
#[no_mangle]
pub unsafe extern "C" fn nfjd_decide_json(
    model: *const NfjdModel,
    n: u64,
    max_exponent: u64,
    out_json: *mut *mut c_char,
) -> NfjdStatus {
    if model.is_null() || out_json.is_null() {
        return NfjdStatus::NullPointer;
    }
    *out_json = ptr::null_mut();
    let horizon = if n == 0 { None } else { Some(n) };
    let cap = if max_exponent == 0 {
        nfjd::decision::DEFAULT_MAX_EXPONENT
    } else {
        max_exponent
    };
    match decide_equality(&(*model).inner, horizon, cap) {
        Ok(v) => emit(export::verdict_to_json(&v).to_string(), out_json),
        Err(e) => status_of(&e),
    }
}

/// Writes the Reidemeister orbit graph at horizon `n` as a JSON string.
///
/// # Safety
/// Same contract as `nfjd_decide_json`.
#[no_mangle]
pub unsafe extern "C" fn nfjd_graph_json(
    model: *const NfjdModel,
    n: u64,
    out_json: *mut *mut c_char,
) -> NfjdStatus {
    if model.is_null() || out_json.is_null() {
        return NfjdStatus::NullPointer;
    }
    *out_json = ptr::null_mut();
    match build_graph(&(*model).inner, n) {
        Ok(g) => emit(export::graph_to_json(&g).to_string(), out_json),
        Err(e) => status_of(&e),
    }
}

/// Writes the Reidemeister orbit graph at horizon `n` in DOT format.
///
/// # Safety
/// Same contract as `nfjd_decide_json`.
#[no_mangle]
pub unsafe extern "C" fn nfjd_graph_dot(
    model: *const NfjdModel,
    n: u64,
    out_dot: *mut *mut c_char,
) -> NfjdStatus {
    if model.is_null() || out_dot.is_null() {
        return NfjdStatus::NullPointer;
    }
    *out_dot = ptr::null_mut();
    match build_graph(&(*model).inner, n) {
        Ok(g) => emit(export::graph_to_dot(&g), out_dot),
        Err(e) => status_of(&e),
    }
}

/// Computes NF_n, the minimal number of n-periodic points.
///
/// # Safety
/// `model` must be a live handle; `out_nf` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nfjd_nf(model: *const NfjdModel, n: u64, out_nf: *mut u64) -> NfjdStatus {
    if model.is_null() || out_nf.is_null() {
        return NfjdStatus::NullPointer;
    }
    let result = build_graph(&(*model).inner, n).and_then(|g| g.nf_number());
    match result {
        Ok(nf) => {
            *out_nf = nf;
            NfjdStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a string returned by this library. Accepts NULL.
///
/// # Safety
/// `s` must be NULL or a string returned by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn nfjd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
