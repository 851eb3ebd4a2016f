//! C ABI for the resurgia library: opaque handles, integer error codes, and
//! JSON strings for structured results. The header is generated by cbindgen
//! into `include/resurgia.h`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use libc::{c_char, c_int, c_uint};

use resurgia::cli::{parse_family, parse_ideal};
use resurgia::families::GradedFamily;
use resurgia::monomials::MonomialIdeal;
use resurgia::reespkg::{rees_resurgence, symmetric_minors_family};
use resurgia::resurgence::{
    asymptotic_resurgence, duality_check, resurgence_search, waldschmidt,
};
use resurgia::Error;

/// Success.
pub const RESURGIA_OK: c_int = 0;
/// Invalid input or unsatisfied precondition.
pub const RESURGIA_ERR_INVALID: c_int = 1;
/// A computation budget or hard ceiling was exceeded.
pub const RESURGIA_ERR_BUDGET: c_int = 2;
/// A required pointer argument was null.
pub const RESURGIA_ERR_NULL: c_int = 3;
/// A string argument was not valid UTF-8.
pub const RESURGIA_ERR_UTF8: c_int = 4;
/// An internal invariant failed.
pub const RESURGIA_ERR_INTERNAL: c_int = 5;

/// Opaque monomial-ideal handle.
pub struct ResurgiaIdeal(MonomialIdeal);
/// Opaque graded-family handle.
pub struct ResurgiaFamily(GradedFamily);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn code_of(err: &Error) -> c_int {
    match err {
        Error::BudgetExceeded(_) => RESURGIA_ERR_BUDGET,
        _ => RESURGIA_ERR_INVALID,
    }
}

fn guard<F: FnOnce() -> c_int>(f: F) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            RESURGIA_ERR_INTERNAL
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(RESURGIA_ERR_NULL);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        RESURGIA_ERR_UTF8
    })
}

fn write_string(out: *mut *mut c_char, s: String) -> c_int {
    if out.is_null() {
        set_error("null output pointer");
        return RESURGIA_ERR_NULL;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            RESURGIA_OK
        }
        Err(_) => {
            set_error("result contained an interior nul byte");
            RESURGIA_ERR_INTERNAL
        }
    }
}

/// Message for the most recent error on this thread. The pointer stays valid
/// until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn resurgia_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by any `*_json` or value-returning function.
#[no_mangle]
pub unsafe extern "C" fn resurgia_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an ideal from the inline grammar (`vars=x,y; gens=x^2, y`) or JSON.
#[no_mangle]
pub unsafe extern "C" fn resurgia_ideal_parse(
    text: *const c_char,
    out: *mut *mut ResurgiaIdeal,
) -> c_int {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(code) => return code,
        };
        if out.is_null() {
            set_error("null output pointer");
            return RESURGIA_ERR_NULL;
        }
        match parse_ideal(text) {
            Ok(ideal) => {
                *out = Box::into_raw(Box::new(ResurgiaIdeal(ideal)));
                RESURGIA_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn resurgia_ideal_free(ideal: *mut ResurgiaIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Serializes an ideal to its JSON form.
#[no_mangle]
pub unsafe extern "C" fn resurgia_ideal_to_json(
    ideal: *const ResurgiaIdeal,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        let Some(ideal) = ideal.as_ref() else {
            set_error("null ideal handle");
            return RESURGIA_ERR_NULL;
        };
        write_string(out, ideal.0.to_json_value().to_string())
    })
}

/// Builds a graded family from the shorthand grammar (`powers:I`,
/// `symbolic:I`, `closure-powers:I`, `piecewise:a,b,g[:i=p,...]`,
/// `truncate:<family>:<n>`), with `I` bound to the given ideal.
#[no_mangle]
pub unsafe extern "C" fn resurgia_family_parse(
    shorthand: *const c_char,
    ideal: *const ResurgiaIdeal,
    out: *mut *mut ResurgiaFamily,
) -> c_int {
    guard(|| {
        let text = match read_str(shorthand) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let Some(ideal) = ideal.as_ref() else {
            set_error("null ideal handle");
            return RESURGIA_ERR_NULL;
        };
        if out.is_null() {
            set_error("null output pointer");
            return RESURGIA_ERR_NULL;
        }
        match parse_family(text, &ideal.0) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(ResurgiaFamily(f)));
                RESURGIA_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn resurgia_family_free(family: *mut ResurgiaFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

fn json_result<F>(out: *mut *mut c_char, f: F) -> c_int
where
    F: FnOnce() -> resurgia::Result<serde_json::Value>,
{
    match f() {
        Ok(v) => write_string(out, v.to_string()),
        Err(e) => {
            set_error(&e.to_string());
            code_of(&e)
        }
    }
}

/// Newton-Okounkov body of a family as JSON `{"status", "body"}`.
#[no_mangle]
pub unsafe extern "C" fn resurgia_okounkov_body_json(
    family: *const ResurgiaFamily,
    budget: c_uint,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        let Some(family) = family.as_ref() else {
            set_error("null family handle");
            return RESURGIA_ERR_NULL;
        };
        json_result(out, || Ok(family.0.okounkov_body(budget)?.to_json_value()))
    })
}

/// Asymptotic resurgence of a pair of families as a result JSON object.
#[no_mangle]
pub unsafe extern "C" fn resurgia_asymptotic_resurgence_json(
    a: *const ResurgiaFamily,
    b: *const ResurgiaFamily,
    budget: c_uint,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
            set_error("null family handle");
            return RESURGIA_ERR_NULL;
        };
        json_result(out, || Ok(asymptotic_resurgence(&a.0, &b.0, budget)?.to_json_value()))
    })
}

/// Finite (s, r) resurgence search as a result JSON object.
#[no_mangle]
pub unsafe extern "C" fn resurgia_resurgence_search_json(
    a: *const ResurgiaFamily,
    b: *const ResurgiaFamily,
    s_max: c_uint,
    r_max: c_uint,
    closure: c_int,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
            set_error("null family handle");
            return RESURGIA_ERR_NULL;
        };
        json_result(out, || {
            Ok(resurgence_search(&a.0, &b.0, s_max, r_max, closure != 0)?.to_json_value())
        })
    })
}

/// Skew Waldschmidt constant as a rational string `p/q`.
#[no_mangle]
pub unsafe extern "C" fn resurgia_waldschmidt(
    family: *const ResurgiaFamily,
    weights: *const c_uint,
    weights_len: c_uint,
    budget: c_uint,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        let Some(family) = family.as_ref() else {
            set_error("null family handle");
            return RESURGIA_ERR_NULL;
        };
        if weights.is_null() {
            set_error("null weights pointer");
            return RESURGIA_ERR_NULL;
        }
        let w: Vec<u32> =
            std::slice::from_raw_parts(weights, weights_len as usize).to_vec();
        match waldschmidt(&family.0, &w, budget) {
            Ok(v) => write_string(out, resurgia::rational::format_rational(&v)),
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

/// Alexander-duality invariance check; writes 1 or 0 into `out`.
#[no_mangle]
pub unsafe extern "C" fn resurgia_duality_check(
    ideal: *const ResurgiaIdeal,
    out: *mut c_int,
) -> c_int {
    guard(|| {
        let Some(ideal) = ideal.as_ref() else {
            set_error("null ideal handle");
            return RESURGIA_ERR_NULL;
        };
        if out.is_null() {
            set_error("null output pointer");
            return RESURGIA_ERR_NULL;
        }
        match duality_check(&ideal.0) {
            Ok(ok) => {
                *out = ok as c_int;
                RESURGIA_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

/// Rees-package resurgence of the builtin symmetric-minors family.
#[no_mangle]
pub unsafe extern "C" fn resurgia_symmetric_minors_resurgence_json(
    m: c_uint,
    budget: c_uint,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        json_result(out, || {
            let (pkg, vf) = symmetric_minors_family(m)?;
            Ok(rees_resurgence(&vf, &pkg, budget)?.to_json_value())
        })
    })
}
