//! C ABI for `polyirr`.
//!
//! Every fallible function returns a [`PolyirrStatus`] and writes its result
//! through an out pointer. On failure a message is kept per thread and can be
//! read with [`polyirr_last_error_message`]. Handles are opaque and owned by
//! the caller, who releases them with the matching `_free` function. Strings
//! returned through `char **` are released with [`polyirr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use polyirr::criteria::{self, CriteriaError, Criterion, IrreducibilityCertificate, Verdict};
use polyirr::decomp::{brute_force_decomposable, DecompError, OracleBudget};
use polyirr::geometry::{newton_polytope, IntegralPolytope};
use polyirr::poly::{parse, Polynomial};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyirrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    BudgetExceeded = 5,
    VerificationFailed = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyirrVerdict {
    Irreducible = 0,
    Inconclusive = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyirrCriterion {
    None = 0,
    DegreeGcd = 1,
    FaceIndecomposable = 2,
    GaoDirect = 3,
}

/// Oracle limits. A `time_budget_ms` of 0 means no time limit.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyirrBudget {
    pub max_dim: usize,
    pub max_points: usize,
    pub max_nodes: u64,
    pub time_budget_ms: u64,
}

/// Opaque polynomial handle.
pub struct PolyirrPolynomial(Polynomial);

/// Opaque certificate handle.
pub struct PolyirrCertificate(IrreducibilityCertificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PolyirrStatus, String);

type FfiResult<T> = Result<T, Failure>;

impl From<CriteriaError> for Failure {
    fn from(e: CriteriaError) -> Self {
        let status = match e {
            CriteriaError::Verification(_) => PolyirrStatus::VerificationFailed,
            CriteriaError::Inconsistent(_) => PolyirrStatus::Internal,
            _ => PolyirrStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<DecompError> for Failure {
    fn from(e: DecompError) -> Self {
        let status = match e {
            DecompError::BudgetExceeded(_) => PolyirrStatus::BudgetExceeded,
            _ => PolyirrStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, records any failure or panic, and maps it to a status.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> PolyirrStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PolyirrStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PolyirrStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PolyirrStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PolyirrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_ref<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(PolyirrStatus::Internal, "interior NUL".into()))?;
    out.write(c.into_raw());
    Ok(())
}

unsafe fn read_budget(p: *const PolyirrBudget) -> OracleBudget {
    match p.as_ref() {
        None => OracleBudget::default(),
        Some(b) => OracleBudget {
            max_dim: b.max_dim,
            max_points: b.max_points,
            max_nodes: b.max_nodes,
            time_budget: (b.time_budget_ms > 0).then(|| Duration::from_millis(b.time_budget_ms)),
        },
    }
}

fn json<T: serde::Serialize + ?Sized>(v: &T) -> FfiResult<String> {
    serde_json::to_string(v).map_err(|e| Failure(PolyirrStatus::Internal, e.to_string()))
}

/// The default oracle limits.
#[no_mangle]
pub extern "C" fn polyirr_budget_default() -> PolyirrBudget {
    let b = OracleBudget::default();
    PolyirrBudget {
        max_dim: b.max_dim,
        max_points: b.max_points,
        max_nodes: b.max_nodes,
        time_budget_ms: 0,
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn polyirr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polyirr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial. `vars` is null for first-appearance order, or a
/// comma-separated variable list fixing the order and the ambient variables.
///
/// # Safety
/// `text` and `vars` must be null or NUL-terminated strings; `out` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_polynomial_parse(
    text: *const c_char,
    vars: *const c_char,
    out: *mut *mut PolyirrPolynomial,
) -> PolyirrStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let order: Option<Vec<String>> = if vars.is_null() {
            None
        } else {
            let list = read_str(vars, "vars")?;
            Some(list.split(',').map(|v| v.trim().to_string()).collect())
        };
        let p = parse(text, order.as_deref())
            .map_err(|e| Failure(PolyirrStatus::ParseError, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(PolyirrPolynomial(p))))
    })
}

/// Releases a polynomial. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polyirr_polynomial_free(p: *mut PolyirrPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of variables of `p`.
///
/// # Safety
/// `p` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_polynomial_num_vars(
    p: *const PolyirrPolynomial,
    out: *mut usize,
) -> PolyirrStatus {
    guard(|| write_out(out, read_ref(p, "polynomial")?.0.num_vars()))
}

/// Canonical text form of `p`; free with [`polyirr_string_free`].
///
/// # Safety
/// `p` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_polynomial_to_string(
    p: *const PolyirrPolynomial,
    out: *mut *mut c_char,
) -> PolyirrStatus {
    guard(|| write_string(out, read_ref(p, "polynomial")?.0.to_string()))
}

/// Newton polytope of `p` as `{"dim":..,"vertices":[..]}`.
///
/// # Safety
/// `p` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_newton_polytope_json(
    p: *const PolyirrPolynomial,
    out: *mut *mut c_char,
) -> PolyirrStatus {
    guard(|| {
        let p = read_ref(p, "polynomial")?;
        let np = newton_polytope(&p.0)
            .map_err(|e| Failure(PolyirrStatus::InvalidInput, e.to_string()))?;
        write_string(out, json(&np)?)
    })
}

/// Runs the criteria in order and returns the resulting certificate. An
/// inconclusive outcome is still `POLYIRR_STATUS_OK`; read the verdict.
///
/// # Safety
/// `p` must be null or a live handle; `budget` may be null for the defaults;
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_decide(
    p: *const PolyirrPolynomial,
    budget: *const PolyirrBudget,
    out: *mut *mut PolyirrCertificate,
) -> PolyirrStatus {
    guard(|| {
        let p = read_ref(p, "polynomial")?;
        let cert = criteria::decide(&p.0, &read_budget(budget))?;
        write_out(out, Box::into_raw(Box::new(PolyirrCertificate(cert))))
    })
}

/// Releases a certificate. Null is ignored.
///
/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polyirr_certificate_free(c: *mut PolyirrCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_certificate_verdict(
    c: *const PolyirrCertificate,
    out: *mut PolyirrVerdict,
) -> PolyirrStatus {
    guard(|| {
        let v = match read_ref(c, "certificate")?.0.verdict {
            Verdict::Irreducible => PolyirrVerdict::Irreducible,
            Verdict::Inconclusive => PolyirrVerdict::Inconclusive,
        };
        write_out(out, v)
    })
}

/// # Safety
/// `c` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_certificate_criterion(
    c: *const PolyirrCertificate,
    out: *mut PolyirrCriterion,
) -> PolyirrStatus {
    guard(|| {
        let v = match read_ref(c, "certificate")?.0.criterion {
            Criterion::None => PolyirrCriterion::None,
            Criterion::DegreeGcd => PolyirrCriterion::DegreeGcd,
            Criterion::FaceIndecomposable => PolyirrCriterion::FaceIndecomposable,
            Criterion::GaoDirect => PolyirrCriterion::GaoDirect,
        };
        write_out(out, v)
    })
}

/// Certificate as JSON; free with [`polyirr_string_free`].
///
/// # Safety
/// `c` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_certificate_to_json(
    c: *const PolyirrCertificate,
    out: *mut *mut c_char,
) -> PolyirrStatus {
    guard(|| write_string(out, read_ref(c, "certificate")?.0.to_json()))
}

/// Reads a certificate from JSON.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_certificate_from_json(
    text: *const c_char,
    out: *mut *mut PolyirrCertificate,
) -> PolyirrStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let cert = IrreducibilityCertificate::from_json(text)
            .map_err(|e| Failure(PolyirrStatus::ParseError, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(PolyirrCertificate(cert))))
    })
}

/// Checks that `c` is a valid certificate for `p`. Returns
/// `POLYIRR_STATUS_VERIFICATION_FAILED` if it is not.
///
/// # Safety
/// `c` and `p` must be null or live handles; `budget` may be null for the
/// defaults.
#[no_mangle]
pub unsafe extern "C" fn polyirr_certificate_verify(
    c: *const PolyirrCertificate,
    p: *const PolyirrPolynomial,
    budget: *const PolyirrBudget,
) -> PolyirrStatus {
    guard(|| {
        let c = read_ref(c, "certificate")?;
        let p = read_ref(p, "polynomial")?;
        c.0.verify(&p.0, &read_budget(budget)).map_err(|e| match e {
            CriteriaError::Inconsistent(m) => Failure(PolyirrStatus::VerificationFailed, m),
            e => e.into(),
        })
    })
}

/// Searches for a Minkowski decomposition of the polytope given as
/// `{"dim":..,"vertices":[..]}`. The result is
/// `{"decomposable":bool,"summands":[A,B]|null}`.
///
/// # Safety
/// `polytope_json` must be null or a NUL-terminated string; `budget` may be
/// null for the defaults; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyirr_oracle_json(
    polytope_json: *const c_char,
    budget: *const PolyirrBudget,
    out: *mut *mut c_char,
) -> PolyirrStatus {
    guard(|| {
        let text = read_str(polytope_json, "polytope_json")?;
        let pt: IntegralPolytope = serde_json::from_str(text).map_err(|e| {
            Failure(
                PolyirrStatus::ParseError,
                format!("invalid polytope JSON: {e}"),
            )
        })?;
        let r = brute_force_decomposable(&pt, &read_budget(budget))?;
        write_string(out, json(&r)?)
    })
}
