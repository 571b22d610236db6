//! C ABI over `crclass-core`.
//!
//! Manifolds and reports are opaque handles created by
//! `crc_manifold_from_json` and `crc_classify` and released with the
//! matching `_free`. Every fallible call
//! returns a [`CrcStatus`]; on failure the message is available from
//! [`crc_last_error`] until the next failing call on the same thread.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`crc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crclass_core::classify::{classify, lie_hull_rank, ClassificationReport, DegenerateKind, Verdict};
use crclass_core::{load_manifold, report, CrError, ValidatedSpec};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Unsupported = 5,
    Internal = 6,
    Panic = 7,
}

/// Verdict of a classification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrcVerdict {
    ClassI = 0,
    ClassII = 1,
    ClassIII1 = 2,
    ClassIII2 = 3,
    ClassIV1 = 4,
    ClassIV2 = 5,
    LeviFlat = 6,
    DegenerateM3TimesR = 7,
    DegenerateM3TimesR2 = 8,
    DegenerateM4TimesR = 9,
    DegenerateM3TimesC = 10,
}

impl From<Verdict> for CrcVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::ClassI => CrcVerdict::ClassI,
            Verdict::ClassII => CrcVerdict::ClassII,
            Verdict::ClassIII1 => CrcVerdict::ClassIII1,
            Verdict::ClassIII2 => CrcVerdict::ClassIII2,
            Verdict::ClassIV1 => CrcVerdict::ClassIV1,
            Verdict::ClassIV2 => CrcVerdict::ClassIV2,
            Verdict::LeviFlat => CrcVerdict::LeviFlat,
            Verdict::DegenerateProduct(DegenerateKind::M3xR) => CrcVerdict::DegenerateM3TimesR,
            Verdict::DegenerateProduct(DegenerateKind::M3xR2) => CrcVerdict::DegenerateM3TimesR2,
            Verdict::DegenerateProduct(DegenerateKind::M4xR) => CrcVerdict::DegenerateM4TimesR,
            Verdict::DegenerateProduct(DegenerateKind::M3xC) => CrcVerdict::DegenerateM3TimesC,
        }
    }
}

/// A validated manifold.
pub struct CrcManifold {
    spec: ValidatedSpec,
}

/// A classification report.
pub struct CrcReport {
    report: ClassificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &CrError) -> CrcStatus {
    match e {
        CrError::Syntax { .. }
        | CrError::UnknownVariable { .. }
        | CrError::ExponentOverflow { .. }
        | CrError::Format(_) => CrcStatus::Parse,
        CrError::DimensionMismatch(_) | CrError::RankMismatch { .. } => CrcStatus::Unsupported,
        CrError::Internal(_) => CrcStatus::Internal,
        _ => CrcStatus::Validation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (CrcStatus, String)>) -> CrcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CrcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside crclass");
            CrcStatus::Panic
        }
    }
}

fn core_err(e: CrError) -> (CrcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (CrcStatus, String) {
    (CrcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (CrcStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CrcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (CrcStatus, String)> {
    if out.is_null() {
        return Err(null_err("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (CrcStatus::Internal, "output contains a nul byte".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn manifold_ref<'a>(m: *const CrcManifold) -> Result<&'a CrcManifold, (CrcStatus, String)> {
    m.as_ref().ok_or_else(|| null_err("manifold"))
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn crc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn crc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates a manifold JSON document
/// (`{"n": .., "c": .., "phi": [..], "point": {"z": [..], "u": [..]}}`).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crc_manifold_from_json(json: *const c_char, out: *mut *mut CrcManifold) -> CrcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("output pointer"));
        }
        let text = read_str(json, "json")?;
        let spec = load_manifold(text).map_err(core_err)?;
        *out = Box::into_raw(Box::new(CrcManifold { spec }));
        Ok(())
    })
}

/// # Safety
/// `m` must come from [`crc_manifold_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crc_manifold_free(m: *mut CrcManifold) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// CR dimension `n` and codimension `c`.
///
/// # Safety
/// `m` must be a live handle; `n` and `c` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn crc_manifold_dims(m: *const CrcManifold, n: *mut usize, c: *mut usize) -> CrcStatus {
    guard(|| {
        let m = manifold_ref(m)?;
        if n.is_null() || c.is_null() {
            return Err(null_err("output pointer"));
        }
        let d = m.spec.dims();
        *n = d.n;
        *c = d.c;
        Ok(())
    })
}

/// Classifies a manifold.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crc_classify(m: *const CrcManifold, out: *mut *mut CrcReport) -> CrcStatus {
    guard(|| {
        let m = manifold_ref(m)?;
        if out.is_null() {
            return Err(null_err("output pointer"));
        }
        let report = classify(&m.spec).map_err(core_err)?;
        *out = Box::into_raw(Box::new(CrcReport { report }));
        Ok(())
    })
}

/// # Safety
/// `r` must come from [`crc_classify`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crc_report_free(r: *mut CrcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crc_report_verdict(r: *const CrcReport, out: *mut CrcVerdict) -> CrcStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null_err("report"))?;
        if out.is_null() {
            return Err(null_err("output pointer"));
        }
        *out = r.report.verdict.into();
        Ok(())
    })
}

/// Whether some base-point rank is below its generic rank.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crc_report_sigma_flag(r: *const CrcReport, out: *mut bool) -> CrcStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null_err("report"))?;
        if out.is_null() {
            return Err(null_err("output pointer"));
        }
        *out = r.report.sigma_flag;
        Ok(())
    })
}

/// The report as the same JSON document `crclass classify --json` prints.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crc_report_json(r: *const CrcReport, out: *mut *mut c_char) -> CrcStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null_err("report"))?;
        write_string(out, report::to_json_string(&report::classification_json(&r.report)))
    })
}

/// Text rendering of the intrinsic frame.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crc_frame_text(m: *const CrcManifold, out: *mut *mut c_char) -> CrcStatus {
    guard(|| {
        let m = manifold_ref(m)?;
        write_string(out, report::frame_text(&m.spec).map_err(core_err)?)
    })
}

/// Levi matrix, determinant and kernel data as JSON (codimension 1 only).
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crc_levi_json(m: *const CrcManifold, out: *mut *mut c_char) -> CrcStatus {
    guard(|| {
        let m = manifold_ref(m)?;
        let l = report::levi_summary(&m.spec).map_err(core_err)?;
        write_string(out, report::to_json_string(&report::levi_json(&l)))
    })
}

/// Generic rank of the bracket filtration up to `max_depth`.
/// `stabilized_at` receives the stabilization depth, or 0 if none was seen.
///
/// # Safety
/// `m` must be a live handle; `rank` and `stabilized_at` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn crc_hull_rank(
    m: *const CrcManifold,
    max_depth: u32,
    rank: *mut usize,
    stabilized_at: *mut usize,
) -> CrcStatus {
    guard(|| {
        let m = manifold_ref(m)?;
        if rank.is_null() || stabilized_at.is_null() {
            return Err(null_err("output pointer"));
        }
        let h = lie_hull_rank(&m.spec, max_depth as usize).map_err(core_err)?;
        *rank = h.rank;
        *stabilized_at = h.stabilized_at.unwrap_or(0);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
