//! C interface to `tropical-marginal`.
//!
//! Matrices and transcripts are opaque handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`TmStatus`]; on failure [`tm_last_error`] describes what went wrong.
//! Strings returned by the library are released with [`tm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tropical_marginal::marginal::{verify_marginal, WordTemplate};
use tropical_marginal::protocols::{run_protocol, Protocol, ProtocolParams, ProtocolTranscript};
use tropical_marginal::wire::{self, SetFile};
use tropical_marginal::{Error, Matrix, Scalar, SemiringKind};

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NotMarginal = 4,
    SamplerExhausted = 5,
    NoDecomposition = 6,
    Protocol = 7,
    NotInteger = 8,
    Panic = 9,
}

/// Semiring selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmSemiring {
    MinPlus = 0,
    MaxPlus = 1,
}

/// Party selector for transcript keys.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmRole {
    Alice = 0,
    Bob = 1,
}

/// Opaque square matrix over a tropical semiring.
pub struct TmMatrix(Matrix);

/// Opaque record of one protocol run.
pub struct TmTranscript(ProtocolTranscript);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TmStatus {
    match e {
        Error::Parse(_) | Error::Encoding(_) => TmStatus::Parse,
        Error::NotMarginal => TmStatus::NotMarginal,
        Error::SamplerExhausted { .. } | Error::Infeasible => TmStatus::SamplerExhausted,
        Error::NoDecomposition => TmStatus::NoDecomposition,
        Error::Protocol(_) => TmStatus::Protocol,
        _ => TmStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (TmStatus, String)>) -> TmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TmStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TmStatus::Panic
        }
    }
}

fn lib(e: Error) -> (TmStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (TmStatus, String) {
    (TmStatus::NullPointer, format!("{name} is null"))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, (TmStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TmStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

unsafe fn out<T>(slot: *mut *mut T, value: T) {
    *slot = Box::into_raw(Box::new(value));
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a `dim × dim` matrix from row-major integer entries.
///
/// # Safety
/// `entries` must point to `dim * dim` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_new(
    semiring: TmSemiring,
    dim: usize,
    entries: *const i64,
    out_matrix: *mut *mut TmMatrix,
) -> TmStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        if out_matrix.is_null() {
            return Err(null("out_matrix"));
        }
        let len = dim
            .checked_mul(dim)
            .ok_or((TmStatus::InvalidArgument, "dimension overflows".into()))?;
        let data = std::slice::from_raw_parts(entries, len)
            .iter()
            .map(|&v| Scalar::int(v))
            .collect();
        let kind = match semiring {
            TmSemiring::MinPlus => SemiringKind::MinPlus,
            TmSemiring::MaxPlus => SemiringKind::MaxPlus,
        };
        let m = Matrix::new(kind, dim, data).map_err(lib)?;
        out(out_matrix, TmMatrix(m));
        Ok(())
    })
}

/// Parses a matrix document such as `{"semiring":"min-plus","rows":[[0]]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_from_json(json: *const c_char, out_matrix: *mut *mut TmMatrix) -> TmStatus {
    guard(|| {
        let s = text(json, "json")?;
        if out_matrix.is_null() {
            return Err(null("out_matrix"));
        }
        let m: Matrix = wire::from_text(s).map_err(lib)?;
        out(out_matrix, TmMatrix(m));
        Ok(())
    })
}

/// The matrix as a JSON document; free with [`tm_string_free`]. Null on a
/// null handle.
///
/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_to_json(m: *const TmMatrix) -> *mut c_char {
    match m.as_ref() {
        Some(m) => wire::to_text(&m.0).map_or(ptr::null_mut(), |s| c_string(s.trim_end().to_string())),
        None => ptr::null_mut(),
    }
}

/// Dimension of `m`, or 0 for a null handle.
///
/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_dim(m: *const TmMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// Entry `(i, j)` (0-based) as an integer. Fails with `NOT_INTEGER` for
/// infinite or fractional entries.
///
/// # Safety
/// `m` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_get(m: *const TmMatrix, i: usize, j: usize, value: *mut i64) -> TmStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("m"))?;
        if value.is_null() {
            return Err(null("value"));
        }
        let k = m.0.dim();
        if i >= k || j >= k {
            return Err((
                TmStatus::InvalidArgument,
                format!("({i}, {j}) is outside a {k}x{k} matrix"),
            ));
        }
        let v = m.0.get(i, j);
        *value = v
            .to_i64()
            .ok_or_else(|| (TmStatus::NotInteger, format!("entry ({i}, {j}) is {v}")))?;
        Ok(())
    })
}

unsafe fn binary(
    a: *const TmMatrix,
    b: *const TmMatrix,
    out_matrix: *mut *mut TmMatrix,
    op: fn(&Matrix, &Matrix) -> tropical_marginal::Result<Matrix>,
) -> TmStatus {
    guard(|| {
        let (a, b) = (
            a.as_ref().ok_or_else(|| null("a"))?,
            b.as_ref().ok_or_else(|| null("b"))?,
        );
        if out_matrix.is_null() {
            return Err(null("out_matrix"));
        }
        out(out_matrix, TmMatrix(op(&a.0, &b.0).map_err(lib)?));
        Ok(())
    })
}

/// `a ⊗ b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_mul(
    a: *const TmMatrix,
    b: *const TmMatrix,
    out_matrix: *mut *mut TmMatrix,
) -> TmStatus {
    binary(a, b, out_matrix, Matrix::mul)
}

/// `a ⊕ b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_add(
    a: *const TmMatrix,
    b: *const TmMatrix,
    out_matrix: *mut *mut TmMatrix,
) -> TmStatus {
    binary(a, b, out_matrix, Matrix::add)
}

/// Whether `a` and `b` are equal.
///
/// # Safety
/// `a`, `b` must be live handles or null.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_equal(a: *const TmMatrix, b: *const TmMatrix) -> bool {
    matches!((a.as_ref(), b.as_ref()), (Some(a), Some(b)) if a.0 == b.0)
}

/// # Safety
/// `m` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_free(m: *mut TmMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Checks every tuple of an encoded set against a word template and stores
/// the number of tuples that are not marginal in `failed`.
///
/// # Safety
/// Both strings must be nul-terminated and `failed` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_verify_set(
    word_json: *const c_char,
    set_json: *const c_char,
    failed: *mut usize,
) -> TmStatus {
    guard(|| {
        let word: WordTemplate = wire::from_text(text(word_json, "word_json")?).map_err(lib)?;
        let set: SetFile = wire::from_text(text(set_json, "set_json")?).map_err(lib)?;
        if failed.is_null() {
            return Err(null("failed"));
        }
        let mut bad = 0;
        for t in set.tuples().map_err(lib)? {
            if !verify_marginal(&word, &t).map_err(lib)? {
                bad += 1;
            }
        }
        *failed = bad;
        Ok(())
    })
}

/// Runs `protocol` (`"sidelnikov"`, `"one-sided"`, `"sandwich"` or
/// `"multiblock"`) on a parameter document.
///
/// # Safety
/// Both strings must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_run_protocol(
    protocol: *const c_char,
    params_json: *const c_char,
    out_transcript: *mut *mut TmTranscript,
) -> TmStatus {
    guard(|| {
        let protocol: Protocol = text(protocol, "protocol")?.parse().map_err(lib)?;
        let params: ProtocolParams = wire::from_text(text(params_json, "params_json")?).map_err(lib)?;
        if out_transcript.is_null() {
            return Err(null("out_transcript"));
        }
        let t = run_protocol(protocol, &params).map_err(lib)?;
        out(out_transcript, TmTranscript(t));
        Ok(())
    })
}

/// Whether both parties derived the same key. False for a null handle.
///
/// # Safety
/// `t` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tm_transcript_agreed(t: *const TmTranscript) -> bool {
    t.as_ref().is_some_and(|t| t.0.agreed)
}

/// A copy of one party's key.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_transcript_key(
    t: *const TmTranscript,
    role: TmRole,
    out_matrix: *mut *mut TmMatrix,
) -> TmStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("t"))?;
        if out_matrix.is_null() {
            return Err(null("out_matrix"));
        }
        let key = match role {
            TmRole::Alice => &t.0.key_a,
            TmRole::Bob => &t.0.key_b,
        };
        out(out_matrix, TmMatrix(key.clone()));
        Ok(())
    })
}

/// The transcript as a JSON document; free with [`tm_string_free`].
///
/// # Safety
/// `t` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tm_transcript_to_json(t: *const TmTranscript) -> *mut c_char {
    match t.as_ref() {
        Some(t) => wire::to_text(&t.0).map_or(ptr::null_mut(), |s| c_string(s.trim_end().to_string())),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `t` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tm_transcript_free(t: *mut TmTranscript) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
