//! C ABI for the fahp decision engine: opaque handles for studies and
//! reports, status codes mirroring the CLI exit codes, and a thread-local
//! last-error message. All returned strings are owned by the caller and must
//! be released with `fahp_string_free`.

use fahp::{run_rank, RankError, ReportFormat, StudyError, StudyFile, TriangularFuzzyNumber};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

/// Status codes returned by fallible calls. `Ok` is zero; the error values
/// match the CLI exit codes where one exists.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FahpStatus {
    Ok = 0,
    /// The file could not be read.
    IoError = 1,
    /// The document was malformed or violated the study schema.
    SchemaError = 2,
    /// Strict-mode ranking found a matrix with CR >= 0.10.
    ConsistencyError = 3,
    /// A null pointer or otherwise invalid argument was passed.
    InvalidArgument = 4,
}

/// Opaque handle to a loaded, validated study.
pub struct FahpStudy {
    inner: StudyFile,
}

/// Opaque handle to the result of a ranking run.
pub struct FahpReport {
    inner: fahp::ReportBundle,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl std::fmt::Display) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(text).ok();
    });
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn study_status(error: &StudyError) -> FahpStatus {
    match error {
        StudyError::Io { .. } => FahpStatus::IoError,
        StudyError::Parse(_) | StudyError::Schema { .. } => FahpStatus::SchemaError,
    }
}

/// # Safety
/// `s` must be null or a NUL-terminated string valid for the duration of the
/// call.
unsafe fn require_str<'a>(s: *const c_char) -> Result<&'a str, FahpStatus> {
    if s.is_null() {
        set_last_error("null string argument");
        return Err(FahpStatus::InvalidArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|e| {
        set_last_error(format!("argument is not valid UTF-8: {e}"));
        FahpStatus::InvalidArgument
    })
}

fn export_string(text: String) -> *mut c_char {
    match CString::new(text.replace('\0', " ")) {
        Ok(s) => s.into_raw(),
        Err(_) => ptr::null_mut(),
    }
}

/// The most recent error message on this thread, or null if none. The caller
/// owns the returned string.
#[no_mangle]
pub extern "C" fn fahp_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(message) => message.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned by a `fahp_*` call and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fahp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Load and validate a study document from a file path.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fahp_study_load(
    path: *const c_char,
    out: *mut *mut FahpStudy,
) -> FahpStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return FahpStatus::InvalidArgument;
    }
    *out = ptr::null_mut();
    let path = match require_str(path) {
        Ok(path) => path,
        Err(status) => return status,
    };
    match StudyFile::load(Path::new(path)) {
        Ok(study) => {
            clear_last_error();
            *out = Box::into_raw(Box::new(FahpStudy { inner: study }));
            FahpStatus::Ok
        }
        Err(e) => {
            let status = study_status(&e);
            set_last_error(e);
            status
        }
    }
}

/// Parse and validate a study document from a JSON string.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fahp_study_parse(
    json: *const c_char,
    out: *mut *mut FahpStudy,
) -> FahpStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return FahpStatus::InvalidArgument;
    }
    *out = ptr::null_mut();
    let json = match require_str(json) {
        Ok(json) => json,
        Err(status) => return status,
    };
    match StudyFile::from_json(json) {
        Ok(study) => {
            clear_last_error();
            *out = Box::into_raw(Box::new(FahpStudy { inner: study }));
            FahpStatus::Ok
        }
        Err(e) => {
            let status = study_status(&e);
            set_last_error(e);
            status
        }
    }
}

/// Release a study handle.
///
/// # Safety
/// `study` must be null or a handle from `fahp_study_load`/`fahp_study_parse`
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fahp_study_free(study: *mut FahpStudy) {
    if !study.is_null() {
        drop(Box::from_raw(study));
    }
}

/// The study's goal as a caller-owned string, or null on null input.
///
/// # Safety
/// `study` must be null or a live study handle.
#[no_mangle]
pub unsafe extern "C" fn fahp_study_goal(study: *const FahpStudy) -> *mut c_char {
    match study.as_ref() {
        Some(study) => export_string(study.inner.goal.clone()),
        None => ptr::null_mut(),
    }
}

/// Run the ranking pipeline. With `strict` set, any comparison matrix with
/// CR >= 0.10 fails the call instead of producing a report.
///
/// # Safety
/// `study` must be a live study handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fahp_rank(
    study: *const FahpStudy,
    strict: bool,
    out: *mut *mut FahpReport,
) -> FahpStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return FahpStatus::InvalidArgument;
    }
    *out = ptr::null_mut();
    let study = match study.as_ref() {
        Some(study) => study,
        None => {
            set_last_error("null study handle");
            return FahpStatus::InvalidArgument;
        }
    };
    match run_rank(&study.inner, strict) {
        Ok(bundle) => {
            clear_last_error();
            *out = Box::into_raw(Box::new(FahpReport { inner: bundle }));
            FahpStatus::Ok
        }
        Err(e @ RankError::ConsistencyFailure { .. }) => {
            set_last_error(e);
            FahpStatus::ConsistencyError
        }
        Err(e) => {
            set_last_error(e);
            FahpStatus::SchemaError
        }
    }
}

/// Release a report handle.
///
/// # Safety
/// `report` must be null or a handle from `fahp_rank` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fahp_report_free(report: *mut FahpReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// The report as schema-stable JSON. Caller owns the string.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn fahp_report_json(report: *const FahpReport) -> *mut c_char {
    match report.as_ref() {
        Some(report) => export_string(fahp::emit_report(&report.inner, ReportFormat::Json)),
        None => ptr::null_mut(),
    }
}

/// The report rendered as markdown. Caller owns the string.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn fahp_report_markdown(report: *const FahpReport) -> *mut c_char {
    match report.as_ref() {
        Some(report) => export_string(fahp::emit_report(&report.inner, ReportFormat::Markdown)),
        None => ptr::null_mut(),
    }
}

/// Graded-mean defuzzification of the triangle `(l, m, u)`. Returns NaN when
/// the components are not ordered.
#[no_mangle]
pub extern "C" fn fahp_defuzzify(l: f64, m: f64, u: f64) -> f64 {
    match TriangularFuzzyNumber::new(l, m, u) {
        Ok(t) => t.defuzzify(),
        Err(_) => f64::NAN,
    }
}

/// Degree of possibility that triangle `a` is at least triangle `b`. Returns
/// NaN when either triple is not ordered.
#[no_mangle]
pub extern "C" fn fahp_possibility_degree(
    a_l: f64,
    a_m: f64,
    a_u: f64,
    b_l: f64,
    b_m: f64,
    b_u: f64,
) -> f64 {
    match (
        TriangularFuzzyNumber::new(a_l, a_m, a_u),
        TriangularFuzzyNumber::new(b_l, b_m, b_u),
    ) {
        (Ok(a), Ok(b)) => a.possibility_ge(&b),
        _ => f64::NAN,
    }
}

/// Kendall's coefficient of concordance over a row-major `raters x items`
/// grid of ranks (mid-ranks for ties). Writes W to `out_w`.
///
/// # Safety
/// `ranks` must point to `raters * items` doubles; `out_w` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fahp_kendalls_w(
    ranks: *const f64,
    raters: usize,
    items: usize,
    tie_correction: bool,
    out_w: *mut f64,
) -> FahpStatus {
    if ranks.is_null() || out_w.is_null() {
        set_last_error("null pointer argument");
        return FahpStatus::InvalidArgument;
    }
    let flat = std::slice::from_raw_parts(ranks, raters.saturating_mul(items));
    let rows: Vec<Vec<f64>> = flat.chunks(items.max(1)).map(|row| row.to_vec()).collect();
    match fahp::RaterMatrix::new(rows) {
        Ok(matrix) => {
            clear_last_error();
            *out_w = fahp::kendalls_w(&matrix, tie_correction);
            FahpStatus::Ok
        }
        Err(e) => {
            set_last_error(e);
            FahpStatus::InvalidArgument
        }
    }
}
