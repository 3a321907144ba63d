//! C ABI over the braid calculus toolkit: opaque handles, status codes, and
//! strings owned by the library. Every function is safe to call from any
//! thread; the last error message is thread-local.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use vassiliev::braid::{is_knot_closure, BraidWord, Orientation};
use vassiliev::error::Error;
use vassiliev::invariants::{conway, jones, Evaluator, InvariantId};
use vassiliev::moves::{bh_word, MoveSpec, SignConvention};
use vassiliev::verify::{check_symbolic, check_theorem};

/// Status code returned by fallible calls.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VsvStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
}

/// Sign convention selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VsvConvention {
    Additive = 0,
    Multiplicative = 1,
}

impl From<VsvConvention> for SignConvention {
    fn from(c: VsvConvention) -> Self {
        match c {
            VsvConvention::Additive => SignConvention::Additive,
            VsvConvention::Multiplicative => SignConvention::Multiplicative,
        }
    }
}

/// Invariant selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VsvInvariant {
    C2 = 0,
    C4 = 1,
    J2 = 2,
    J3 = 3,
    J4 = 4,
}

impl From<VsvInvariant> for InvariantId {
    fn from(i: VsvInvariant) -> Self {
        match i {
            VsvInvariant::C2 => InvariantId::C2,
            VsvInvariant::C4 => InvariantId::C4,
            VsvInvariant::J2 => InvariantId::J2,
            VsvInvariant::J3 => InvariantId::J3,
            VsvInvariant::J4 => InvariantId::J4,
        }
    }
}

/// Opaque braid word handle.
pub struct VsvWord(BraidWord);

/// Opaque evaluator handle holding the memo cache.
pub struct VsvEvaluator(Evaluator);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> VsvStatus {
    set_error(&err.to_string());
    match err {
        Error::MalformedToken(_) | Error::BadOrientation(_) => VsvStatus::ParseError,
        _ => VsvStatus::DomainError,
    }
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn import_str<'a>(ptr: *const c_char) -> Result<&'a str, VsvStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(VsvStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        VsvStatus::InvalidUtf8
    })
}

unsafe fn import_spec(
    k: usize,
    d: *const i8,
    d_len: usize,
    o: *const c_char,
) -> Result<MoveSpec, VsvStatus> {
    if d.is_null() {
        set_error("null d vector");
        return Err(VsvStatus::NullArgument);
    }
    let d = std::slice::from_raw_parts(d, d_len).to_vec();
    let o = Orientation::parse(import_str(o)?).map_err(|e| status_of(&e))?;
    MoveSpec::new(k, d, o).map_err(|e| status_of(&e))
}

/// Last error message for this thread; valid until the next failing call.
#[no_mangle]
pub extern "C" fn vsv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn vsv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a braid word over the orientation string; the strand count is the
/// orientation length. Returns null on error.
///
/// # Safety
/// `text` and `o` must be valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn vsv_word_parse(text: *const c_char, o: *const c_char) -> *mut VsvWord {
    let inner = || -> Result<BraidWord, VsvStatus> {
        let text = import_str(text)?;
        let o = Orientation::parse(import_str(o)?).map_err(|e| status_of(&e))?;
        BraidWord::parse(text, o.len(), o).map_err(|e| status_of(&e))
    };
    match inner() {
        Ok(w) => Box::into_raw(Box::new(VsvWord(w))),
        Err(_) => ptr::null_mut(),
    }
}

/// Builds the move word `BH_d^o(k)`. Returns null on error.
///
/// # Safety
/// `d` must point to `d_len` entries and `o` must be a valid string.
#[no_mangle]
pub unsafe extern "C" fn vsv_bh_word(
    k: usize,
    d: *const i8,
    d_len: usize,
    o: *const c_char,
) -> *mut VsvWord {
    match import_spec(k, d, d_len, o) {
        Ok(spec) => Box::into_raw(Box::new(VsvWord(bh_word(&spec)))),
        Err(_) => ptr::null_mut(),
    }
}

/// Renders a word back to grammar text. Free with `vsv_string_free`.
///
/// # Safety
/// `word` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vsv_word_render(word: *const VsvWord) -> *mut c_char {
    match word.as_ref() {
        Some(w) => export_string(w.0.render()),
        None => {
            set_error("null word handle");
            ptr::null_mut()
        }
    }
}

/// Whether the closure of the word is a knot.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsv_word_is_knot(word: *const VsvWord, out: *mut bool) -> VsvStatus {
    let (Some(w), Some(out)) = (word.as_ref(), out.as_mut()) else {
        set_error("null argument");
        return VsvStatus::NullArgument;
    };
    match is_knot_closure(&w.0) {
        Ok(v) => {
            *out = v;
            VsvStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `word` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn vsv_word_free(word: *mut VsvWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Expands a product of double crossings and renders the resulting sum as
/// JSON (`[{coeff, word}]`, canonical order). Free with `vsv_string_free`.
///
/// # Safety
/// `word` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsv_expand_json(
    word: *const VsvWord,
    max_sing: i64,
    conv: VsvConvention,
    out_json: *mut *mut c_char,
) -> VsvStatus {
    let (Some(w), Some(out)) = (word.as_ref(), out_json.as_mut()) else {
        set_error("null argument");
        return VsvStatus::NullArgument;
    };
    let max = if max_sing < 0 { None } else { Some(max_sing as usize) };
    match vassiliev::algebra::expand_word(&w.0, conv.into(), max) {
        Ok(sum) => {
            *out = export_string(sum.to_json().to_string());
            VsvStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Runs the symbolic identity check for one move spec.
///
/// # Safety
/// Pointer arguments as in `vsv_bh_word`; `out_equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsv_check_symbolic(
    k: usize,
    d: *const i8,
    d_len: usize,
    o: *const c_char,
    conv: VsvConvention,
    out_equal: *mut bool,
) -> VsvStatus {
    let Some(out) = out_equal.as_mut() else {
        set_error("null out_equal");
        return VsvStatus::NullArgument;
    };
    let spec = match import_spec(k, d, d_len, o) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match check_symbolic(&spec, conv.into()) {
        Ok(report) => {
            *out = report.equal;
            VsvStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Creates an evaluator with a fresh memo cache.
#[no_mangle]
pub extern "C" fn vsv_evaluator_new() -> *mut VsvEvaluator {
    Box::into_raw(Box::new(VsvEvaluator(Evaluator::new())))
}

/// # Safety
/// `ev` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn vsv_evaluator_free(ev: *mut VsvEvaluator) {
    if !ev.is_null() {
        drop(Box::from_raw(ev));
    }
}

/// Evaluates an invariant on a (possibly singular) word. The value is
/// written as an exact `p/q` string; free it with `vsv_string_free`.
///
/// # Safety
/// `ev` and `word` must be live handles; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsv_evaluate(
    ev: *const VsvEvaluator,
    id: VsvInvariant,
    word: *const VsvWord,
    out_value: *mut *mut c_char,
) -> VsvStatus {
    let (Some(ev), Some(w), Some(out)) = (ev.as_ref(), word.as_ref(), out_value.as_mut()) else {
        set_error("null argument");
        return VsvStatus::NullArgument;
    };
    match ev.0.evaluate(id.into(), &w.0) {
        Ok(v) => {
            *out = export_string(v.to_string());
            VsvStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The Jones polynomial of the closure, rendered in `t` (or in `sqrt(t)`
/// for links with half-integer powers). Free with `vsv_string_free`.
///
/// # Safety
/// `word` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsv_jones(
    word: *const VsvWord,
    out_value: *mut *mut c_char,
) -> VsvStatus {
    let (Some(w), Some(out)) = (word.as_ref(), out_value.as_mut()) else {
        set_error("null argument");
        return VsvStatus::NullArgument;
    };
    match jones(&w.0) {
        Ok(v) => {
            *out = export_string(v.to_string());
            VsvStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The Conway polynomial of a knot closure, rendered in `z`.
///
/// # Safety
/// `word` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsv_conway(
    word: *const VsvWord,
    out_value: *mut *mut c_char,
) -> VsvStatus {
    let (Some(w), Some(out)) = (word.as_ref(), out_value.as_mut()) else {
        set_error("null argument");
        return VsvStatus::NullArgument;
    };
    match conway(&w.0) {
        Ok(v) => {
            *out = export_string(v.display("z"));
            VsvStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Evaluates both sides of the difference formula and returns the full
/// check report as JSON. `out_equal` reports exact equality.
///
/// # Safety
/// Pointer arguments as above; `t` and `x` must be valid strings.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn vsv_check_theorem(
    ev: *const VsvEvaluator,
    k: usize,
    d: *const i8,
    d_len: usize,
    o: *const c_char,
    t: *const c_char,
    x: *const c_char,
    id: VsvInvariant,
    conv: VsvConvention,
    singular_rhs: bool,
    out_equal: *mut bool,
    out_json: *mut *mut c_char,
) -> VsvStatus {
    let (Some(ev), Some(out_equal), Some(out_json)) =
        (ev.as_ref(), out_equal.as_mut(), out_json.as_mut())
    else {
        set_error("null argument");
        return VsvStatus::NullArgument;
    };
    let spec = match import_spec(k, d, d_len, o) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let parse = |text: *const c_char| -> Result<BraidWord, VsvStatus> {
        let text = import_str(text)?;
        BraidWord::parse(text, spec.o.len(), spec.o.clone()).map_err(|e| status_of(&e))
    };
    let t = match parse(t) {
        Ok(w) => w,
        Err(s) => return s,
    };
    let x = match parse(x) {
        Ok(w) => w,
        Err(s) => return s,
    };
    match check_theorem(&ev.0, &spec, &t, &x, id.into(), conv.into(), singular_rhs) {
        Ok(report) => {
            *out_equal = report.equal;
            match serde_json::to_string_pretty(&report) {
                Ok(json) => {
                    *out_json = export_string(json);
                    VsvStatus::Ok
                }
                Err(e) => {
                    set_error(&e.to_string());
                    VsvStatus::DomainError
                }
            }
        }
        Err(e) => status_of(&e),
    }
}
