//! C interface to `upq-core`.
//!
//! Every function returns a [`UpqStatus`]. On failure a message is kept per
//! thread and can be read with [`upq_last_error_message`]. Handles and strings
//! returned through out-pointers are owned by the caller and released with
//! the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use upq_core::screening::ScreeningReport;
use upq_core::{screen, Error, KTypeWeight, NuVector, Signature, ThetaDatum, Verdict};

/// Status codes. Parse, validation and guard match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpqStatus {
    Ok = 0,
    Parse = 2,
    Validation = 3,
    Guard = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpqVerdict {
    NoObstructionFound = 0,
    NonUnitaryByFpp = 1,
    NonUnitaryBySrvHull = 2,
    NonUnitaryByFundamentalGap = 3,
    InducedInGoodRange = 4,
}

/// Opaque θ-stable datum.
pub struct UpqThetaDatum(ThetaDatum);

/// Opaque screening report.
pub struct UpqReport(ScreeningReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: UpqStatus, msg: String) -> UpqStatus {
    set_error(msg);
    status
}

fn from_core(e: Error) -> UpqStatus {
    let status = match e.kind() {
        "parse" => UpqStatus::Parse,
        "guard" => UpqStatus::Guard,
        _ => UpqStatus::Validation,
    };
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> UpqStatus) -> UpqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(UpqStatus::Panic, "internal panic".into()))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, UpqStatus> {
    if s.is_null() {
        return Err(fail(UpqStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(UpqStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> UpqStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            UpqStatus::Ok
        }
        Err(e) => fail(UpqStatus::Panic, e.to_string()),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(UpqStatus::NullPointer, concat!("null argument: ", stringify!($p)).into());
        })+
    };
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn upq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn upq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a θ-stable datum from JSON (`{"p","q","blocks","nu"}`).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn upq_theta_datum_from_json(json: *const c_char, out: *mut *mut UpqThetaDatum) -> UpqStatus {
    guarded(|| {
        non_null!(out);
        let text = try_ffi!(read_str(json));
        let td: ThetaDatum = try_ffi!(serde_json::from_str(text).map_err(|e| fail(UpqStatus::Parse, e.to_string())));
        if let Err(e) = td.check() {
            return from_core(e);
        }
        *out = Box::into_raw(Box::new(UpqThetaDatum(td)));
        UpqStatus::Ok
    })
}

/// Builds the datum of the K-type `mu` (`"a,b|c,d"`). `nu_json` is a JSON list
/// of ν lists, one per block with `min(r,s) > 0`, or null for ν = 0.
///
/// # Safety
/// `mu` and a non-null `nu_json` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn upq_theta_datum_from_mu(
    p: usize,
    q: usize,
    mu: *const c_char,
    nu_json: *const c_char,
    out: *mut *mut UpqThetaDatum,
) -> UpqStatus {
    guarded(|| {
        non_null!(out);
        let mu_text = try_ffi!(read_str(mu));
        let nus: Vec<NuVector> = if nu_json.is_null() {
            Vec::new()
        } else {
            let text = try_ffi!(read_str(nu_json));
            try_ffi!(serde_json::from_str(text).map_err(|e| fail(UpqStatus::Parse, e.to_string())))
        };
        let built = Signature::new(p, q).and_then(|sig| {
            let w: KTypeWeight = mu_text.parse()?;
            w.check_signature(sig)?;
            ThetaDatum::from_mu(&w, sig, &nus)
        });
        match built {
            Ok(td) => {
                *out = Box::into_raw(Box::new(UpqThetaDatum(td)));
                UpqStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// # Safety
/// `td` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn upq_theta_datum_to_json(td: *const UpqThetaDatum, out: *mut *mut c_char) -> UpqStatus {
    guarded(|| {
        non_null!(td, out);
        write_string(out, serde_json::to_string(&(*td).0).expect("datum serializes"))
    })
}

/// # Safety
/// `td` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn upq_theta_datum_free(td: *mut UpqThetaDatum) {
    if !td.is_null() {
        drop(Box::from_raw(td));
    }
}

/// Runs every screening test on `td`.
///
/// # Safety
/// `td` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn upq_screen(td: *const UpqThetaDatum, out: *mut *mut UpqReport) -> UpqStatus {
    guarded(|| {
        non_null!(td, out);
        match screen(&(*td).0) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(UpqReport(r)));
                UpqStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// # Safety
/// `report` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn upq_report_verdict(report: *const UpqReport, out: *mut UpqVerdict) -> UpqStatus {
    guarded(|| {
        non_null!(report, out);
        *out = match (*report).0.verdict {
            Verdict::NoObstructionFound => UpqVerdict::NoObstructionFound,
            Verdict::NonUnitaryByFPP => UpqVerdict::NonUnitaryByFpp,
            Verdict::NonUnitaryBySRVHull => UpqVerdict::NonUnitaryBySrvHull,
            Verdict::NonUnitaryByFundamentalGap => UpqVerdict::NonUnitaryByFundamentalGap,
            Verdict::InducedInGoodRange => UpqVerdict::InducedInGoodRange,
        };
        UpqStatus::Ok
    })
}

/// Number of certificate K-type lists in the report.
///
/// # Safety
/// `report` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn upq_report_certificate_count(report: *const UpqReport, out: *mut usize) -> UpqStatus {
    guarded(|| {
        non_null!(report, out);
        *out = (*report).0.certificates.len();
        UpqStatus::Ok
    })
}

/// The report as the JSON the CLI prints.
///
/// # Safety
/// `report` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn upq_report_to_json(report: *const UpqReport, out: *mut *mut c_char) -> UpqStatus {
    guarded(|| {
        non_null!(report, out);
        write_string(out, serde_json::to_string(&(*report).0).expect("report serializes"))
    })
}

/// # Safety
/// `report` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn upq_report_free(report: *mut UpqReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn upq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
