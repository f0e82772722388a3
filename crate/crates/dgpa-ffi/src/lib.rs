//! C bindings for the dgpa engine: opaque handles, integer status codes,
//! and JSON reports. Every entry point is panic-safe; `dgpa_last_error`
//! returns a message for the most recent failure on the calling thread.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dgpa_core::cohomology::cohomology;
use dgpa_core::dg::{CheckStatus, DGPAlgebra, DgPresentation};
use dgpa_core::envelope::{env_presented, smash_env};
use dgpa_core::io::{dims_to_json, fact, parse_algebra, serialize_dg, Report};
use dgpa_core::presentation::{TruncationParams, DEFAULT_WORD_CAP};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DgpaStatus {
    Ok = 0,
    /// The computation ran, but a check failed; the report has details.
    CheckFailed = 1,
    InvalidInput = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    InternalError = 5,
}

/// Opaque handle to a parsed (not yet verified) algebra.
pub struct DgpaAlgebra {
    inner: DGPAlgebra,
}

/// Opaque handle to a finished report.
pub struct DgpaReport {
    inner: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn window(max_degree: i64, max_length: usize) -> TruncationParams {
    TruncationParams::new(max_degree, max_length).with_word_cap(DEFAULT_WORD_CAP)
}

fn guard<F: FnOnce() -> DgpaStatus>(f: F) -> DgpaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".to_string());
            DgpaStatus::InternalError
        }
    }
}

/// The crate version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dgpa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn dgpa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Parses an algebra document (JSON, UTF-8). On success writes a handle
/// that must be released with `dgpa_algebra_free`.
#[no_mangle]
pub unsafe extern "C" fn dgpa_algebra_parse(
    json: *const c_char,
    out: *mut *mut DgpaAlgebra,
) -> DgpaStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            set_error("null argument".into());
            return DgpaStatus::NullArgument;
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("document is not UTF-8".into());
                return DgpaStatus::InvalidUtf8;
            }
        };
        let overrides = BTreeMap::new();
        match parse_algebra(text, "input", &overrides) {
            Ok((alg, _)) => {
                clear_error();
                unsafe {
                    *out = Box::into_raw(Box::new(DgpaAlgebra { inner: alg }));
                }
                DgpaStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                DgpaStatus::InvalidInput
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn dgpa_algebra_free(alg: *mut DgpaAlgebra) {
    if !alg.is_null() {
        drop(unsafe { Box::from_raw(alg) });
    }
}

fn finish_report(
    report: Report,
    out: *mut *mut DgpaReport,
) -> DgpaStatus {
    let ok = report.checks.iter().all(|c| c.status == CheckStatus::Pass);
    unsafe {
        *out = Box::into_raw(Box::new(DgpaReport { inner: report }));
    }
    if ok {
        clear_error();
        DgpaStatus::Ok
    } else {
        set_error("one or more checks failed; see the report".into());
        DgpaStatus::CheckFailed
    }
}

/// Runs the axiom battery within the window and writes a report handle.
/// Returns Ok when every check passed, CheckFailed otherwise.
#[no_mangle]
pub unsafe extern "C" fn dgpa_check(
    alg: *mut DgpaAlgebra,
    max_degree: i64,
    max_length: usize,
    out: *mut *mut DgpaReport,
) -> DgpaStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            set_error("null argument".into());
            return DgpaStatus::NullArgument;
        }
        let t = window(max_degree, max_length);
        let handle = unsafe { &mut *alg };
        match handle.inner.verify(&t) {
            Ok(report) => {
                let table = match handle.inner.presentation.build_table(&t) {
                    Ok(t) => t,
                    Err(e) => {
                        set_error(e.to_string());
                        return DgpaStatus::InvalidInput;
                    }
                };
                let (dims, exactness) = table.graded_dimension();
                let full = Report::from_axiom_report("check", report, dims_to_json(&dims, exactness));
                finish_report(full, out)
            }
            Err(e) => {
                set_error(e.to_string());
                DgpaStatus::InvalidInput
            }
        }
    })
}

fn envelope_report(
    dg: &DgPresentation,
    command: &str,
    t: &TruncationParams,
) -> Result<Report, dgpa_core::error::EngineError> {
    let verdicts = dg.verify_differential(t)?;
    let doc = serialize_dg(dg);
    Ok(Report::new(
        command,
        t,
        verdicts.checks,
        serde_json::json!({ "presentation": doc }),
    ))
}

/// Builds the universal envelope (generators-and-relations route when
/// `smash` is 0, smash-product route otherwise). The algebra must pass the
/// axiom check first; the report carries the serialized presentation.
#[no_mangle]
pub unsafe extern "C" fn dgpa_envelope(
    alg: *mut DgpaAlgebra,
    smash: c_int,
    max_degree: i64,
    max_length: usize,
    out: *mut *mut DgpaReport,
) -> DgpaStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            set_error("null argument".into());
            return DgpaStatus::NullArgument;
        }
        let t = window(max_degree, max_length);
        let handle = unsafe { &mut *alg };
        if handle.inner.verified.is_none() {
            match handle.inner.verify(&t) {
                Ok(report) if report.ok() => {}
                Ok(_) => {
                    set_error("algebra fails the axiom check".into());
                    return DgpaStatus::CheckFailed;
                }
                Err(e) => {
                    set_error(e.to_string());
                    return DgpaStatus::InvalidInput;
                }
            }
        }
        let built = if smash == 0 {
            env_presented(&handle.inner)
        } else {
            smash_env(&handle.inner)
        };
        match built.and_then(|env| envelope_report(&env.dg, "envelope", &t)) {
            Ok(report) => finish_report(report, out),
            Err(e) => {
                set_error(e.to_string());
                DgpaStatus::InvalidInput
            }
        }
    })
}

/// Cohomology dims and induced tables; requires d^2 = 0 in the window.
#[no_mangle]
pub unsafe extern "C" fn dgpa_cohomology(
    alg: *const DgpaAlgebra,
    max_degree: i64,
    max_length: usize,
    out: *mut *mut DgpaReport,
) -> DgpaStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            set_error("null argument".into());
            return DgpaStatus::NullArgument;
        }
        let t = window(max_degree, max_length);
        let handle = unsafe { &*alg };
        match cohomology(&handle.inner, &t) {
            Ok(h) => {
                let dims = h.dims();
                let output = serde_json::json!({
                    "dims": dims.iter().map(|(d, n)| serde_json::json!({"degree": d, "dim": n})).collect::<Vec<_>>(),
                    "edges": h.edges,
                    "induced_product": h.product,
                    "induced_bracket": h.bracket,
                });
                let report = Report::new(
                    "cohomology",
                    &t,
                    vec![fact("complex-d-squared-zero", true, None)],
                    output,
                );
                finish_report(report, out)
            }
            Err(e) => {
                set_error(e.to_string());
                DgpaStatus::InvalidInput
            }
        }
    })
}

/// 1 when every check in the report passed, 0 otherwise.
#[no_mangle]
pub unsafe extern "C" fn dgpa_report_ok(report: *const DgpaReport) -> c_int {
    if report.is_null() {
        return 0;
    }
    let r = unsafe { &*report };
    r.inner
        .checks
        .iter()
        .all(|c| c.status == CheckStatus::Pass) as c_int
}

/// The full report as a JSON string; release with `dgpa_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dgpa_report_json(report: *const DgpaReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    let r = unsafe { &*report };
    match CString::new(r.inner.to_json()) {
        Ok(s) => s.into_raw(),
        Err(_) => ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn dgpa_report_free(report: *mut DgpaReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

#[no_mangle]
pub unsafe extern "C" fn dgpa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
