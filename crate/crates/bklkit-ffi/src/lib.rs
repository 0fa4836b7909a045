// SPDX-License-Identifier: MIT OR Apache-2.0
//! C ABI for bklkit.
//!
//! Columns are exposed through the opaque handle [`BklColumn`]; every
//! fallible function returns a [`BklStatus`] and writes its result through an
//! out-pointer. The message of the most recent failure on the calling thread
//! is available from [`bkl_last_error`]. Strings returned to the caller must
//! be released with [`bkl_string_free`], handles with [`bkl_column_free`].
//! The C header `include/bklkit.h` is generated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bklkit::canonical::{bkl, column_with_check, BasisKind, Column};
use bklkit::characters::{character, CharacterKind};
use bklkit::combinat::{SignedSeq, SuperWeight, WeightFn};
use bklkit::fock::Window;
use bklkit::BklError;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BklStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument could not be parsed or is out of range.
    Usage = 3,
    /// An internal consistency check failed.
    Invariant = 4,
    /// Any other failure, including a caught panic.
    Internal = 5,
}

/// Opaque handle to a computed canonical or dual canonical column.
pub struct BklColumn(Column);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &BklError) -> BklStatus {
    if e.is_usage() {
        BklStatus::Usage
    } else if matches!(e, BklError::Invariant(_) | BklError::NonIntegral(_)) {
        BklStatus::Invariant
    } else {
        BklStatus::Internal
    }
}

/// Run `f`, recording errors and converting panics into [`BklStatus::Internal`].
fn guarded(f: impl FnOnce() -> Result<(), (BklStatus, String)>) -> BklStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BklStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside bklkit".into());
            BklStatus::Internal
        }
    }
}

fn lift(e: BklError) -> (BklStatus, String) {
    (status_of(&e), e.to_string())
}

/// # Safety
/// `p` must be null or point to a nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (BklStatus, String)> {
    if p.is_null() {
        return Err((BklStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: caller guarantees a valid nul-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| (BklStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> Result<*mut c_char, (BklStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (BklStatus::Internal, "result contains a nul byte".into()))
}

/// Compute the column of `f` over the sign sequence `seq`.
///
/// `seq` is a string of `0`/`1`, `f` a comma-separated list of integers,
/// `kind` either `"canonical"` or `"dual"`. A `window` of zero or less picks
/// the level automatically. On success `*out` receives a new handle.
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` must be null or
/// valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn bkl_column_new(
    seq: *const c_char,
    f: *const c_char,
    kind: *const c_char,
    window: i32,
    out: *mut *mut BklColumn,
) -> BklStatus {
    guarded(|| {
        if out.is_null() {
            return Err((BklStatus::NullPointer, "out is null".into()));
        }
        // SAFETY: forwarded caller guarantees.
        let (seq, f, kind) = unsafe { (read_str(seq, "seq")?, read_str(f, "f")?, read_str(kind, "kind")?) };
        let b: SignedSeq = seq.parse().map_err(lift)?;
        let f: WeightFn = f.parse().map_err(lift)?;
        let kind: BasisKind = kind.parse().map_err(lift)?;
        let col = if window > 0 {
            column_with_check(&Window::tensor(b, window), &f, kind, false)
        } else {
            bkl(&b, &f, kind)
        }
        .map_err(lift)?;
        // SAFETY: `out` is non-null and valid for writes.
        unsafe { *out = Box::into_raw(Box::new(BklColumn(col))) };
        Ok(())
    })
}

/// Number of nonzero entries of a column; zero for a null handle.
///
/// # Safety
/// `col` must be null or a live handle from [`bkl_column_new`].
#[no_mangle]
pub unsafe extern "C" fn bkl_column_len(col: *const BklColumn) -> usize {
    // SAFETY: caller guarantees the handle is live.
    unsafe { col.as_ref() }.map_or(0, |c| c.0.len())
}

/// Window level the column was computed at; zero for a null handle.
///
/// # Safety
/// `col` must be null or a live handle from [`bkl_column_new`].
#[no_mangle]
pub unsafe extern "C" fn bkl_column_window(col: *const BklColumn) -> i32 {
    // SAFETY: caller guarantees the handle is live.
    unsafe { col.as_ref() }.map_or(0, |c| c.0.window.k)
}

/// Serialize a column as JSON into a new string `*out`.
///
/// # Safety
/// `col` must be null or a live handle; `out` must be null or valid for one
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn bkl_column_to_json(col: *const BklColumn, out: *mut *mut c_char) -> BklStatus {
    guarded(|| {
        // SAFETY: caller guarantees the handle is live.
        let Some(col) = (unsafe { col.as_ref() }) else {
            return Err((BklStatus::NullPointer, "column is null".into()));
        };
        if out.is_null() {
            return Err((BklStatus::NullPointer, "out is null".into()));
        }
        let json = serde_json::to_string(&col.0).map_err(|e| (BklStatus::Internal, e.to_string()))?;
        let s = to_c_string(json)?;
        // SAFETY: `out` is non-null and valid for writes.
        unsafe { *out = s };
        Ok(())
    })
}

/// Release a column handle; null is ignored.
///
/// # Safety
/// `col` must be null or a handle from [`bkl_column_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bkl_column_free(col: *mut BklColumn) {
    if !col.is_null() {
        // SAFETY: the handle came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(col) });
    }
}

/// Compute an irreducible (`"irr"`) or tilting (`"tilt"`) character as JSON.
///
/// `lambda` is a comma-separated weight; a `window` of zero or less picks the
/// level automatically.
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` must be null or
/// valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn bkl_character_json(
    seq: *const c_char,
    lambda: *const c_char,
    kind: *const c_char,
    window: i32,
    out: *mut *mut c_char,
) -> BklStatus {
    guarded(|| {
        if out.is_null() {
            return Err((BklStatus::NullPointer, "out is null".into()));
        }
        // SAFETY: forwarded caller guarantees.
        let (seq, lambda, kind) = unsafe {
            (
                read_str(seq, "seq")?,
                read_str(lambda, "lambda")?,
                read_str(kind, "kind")?,
            )
        };
        let b: SignedSeq = seq.parse().map_err(lift)?;
        let lambda: SuperWeight = lambda.parse().map_err(lift)?;
        let kind: CharacterKind = kind.parse().map_err(lift)?;
        let e = character(&b, kind, &lambda, (window > 0).then_some(window)).map_err(lift)?;
        let json = serde_json::to_string(&e).map_err(|e| (BklStatus::Internal, e.to_string()))?;
        let s = to_c_string(json)?;
        // SAFETY: `out` is non-null and valid for writes.
        unsafe { *out = s };
        Ok(())
    })
}

/// Release a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bkl_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from `CString::into_raw` and is freed once.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message of the last failure on this thread, or null if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bkl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
