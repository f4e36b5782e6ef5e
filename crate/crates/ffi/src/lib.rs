//! C interface to `inqdef`.
//!
//! Models and formulas are opaque heap handles released with their `_free`
//! functions. Functions return an [`InqdefStatus`]; on failure the message
//! is available from [`inqdef_last_error_message`] on the same thread.
//! Strings returned through out-parameters are owned by the caller and
//! released with [`inqdef_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use inqdef::cli::closure_report;
use inqdef::semantics::{canonical_dep_model, canonical_impl_model, equivalent_in};
use inqdef::syntax::Language;
use inqdef::verify::Theorem;
use inqdef::{parse_formula, parse_model, proposition, supports, Formula, Model, State};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InqdefStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    ComputationError = 5,
    Panic = 6,
}

pub const INQDEF_LANGUAGE_INQ: u32 = 0;
pub const INQDEF_LANGUAGE_INQ_TENSOR: u32 = 1;
pub const INQDEF_LANGUAGE_INQ_PLUS: u32 = 2;
pub const INQDEF_LANGUAGE_INQ_MINUS: u32 = 3;
pub const INQDEF_LANGUAGE_D: u32 = 4;
pub const INQDEF_LANGUAGE_D_PLUS: u32 = 5;
pub const INQDEF_LANGUAGE_ALL: u32 = 6;

pub const INQDEF_THEOREM_IMPLICATION: u32 = 0;
pub const INQDEF_THEOREM_GLOBALOR_D: u32 = 1;
pub const INQDEF_THEOREM_GLOBALOR_DPLUS: u32 = 2;

pub const INQDEF_MODEL_IMPLICATION: u32 = 0;
pub const INQDEF_MODEL_DEPENDENCE: u32 = 1;

/// Opaque model handle.
pub struct InqdefModel(Model);

/// Opaque formula handle.
pub struct InqdefFormula(Formula);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(InqdefStatus, String);

impl Failure {
    fn new(status: InqdefStatus, message: impl ToString) -> Self {
        Failure(status, message.to_string())
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> InqdefStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            InqdefStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            InqdefStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(InqdefStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(InqdefStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(InqdefStatus::NullArgument, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(InqdefStatus::NullArgument, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(InqdefStatus::ComputationError, e))?;
    write_out(out, c.into_raw())
}

fn language(code: u32) -> Result<Language, Failure> {
    let all = [
        Language::Inq,
        Language::InqTensor,
        Language::InqPlus,
        Language::InqMinus,
        Language::D,
        Language::DPlus,
        Language::All,
    ];
    all.get(code as usize)
        .copied()
        .ok_or_else(|| Failure::new(InqdefStatus::InvalidArgument, format!("unknown language code {code}")))
}

fn theorem(code: u32) -> Result<Theorem, Failure> {
    Theorem::ALL
        .get(code as usize)
        .copied()
        .ok_or_else(|| Failure::new(InqdefStatus::InvalidArgument, format!("unknown theorem code {code}")))
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure::new(InqdefStatus::ComputationError, e))
}

/// Parses a model from its JSON description.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_model_from_json(
    json: *const c_char,
    out: *mut *mut InqdefModel,
) -> InqdefStatus {
    guard(|| {
        let m = parse_model(text(json, "json")?).map_err(|e| Failure::new(InqdefStatus::ParseError, e))?;
        write_out(out, Box::into_raw(Box::new(InqdefModel(m))))
    })
}

/// One of the two canonical three-world models (`INQDEF_MODEL_*`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_model_canonical(which: u32, out: *mut *mut InqdefModel) -> InqdefStatus {
    guard(|| {
        let m = match which {
            INQDEF_MODEL_IMPLICATION => canonical_impl_model(),
            INQDEF_MODEL_DEPENDENCE => canonical_dep_model(),
            _ => return Err(Failure::new(InqdefStatus::InvalidArgument, format!("unknown model code {which}"))),
        };
        write_out(out, Box::into_raw(Box::new(InqdefModel(m))))
    })
}

/// # Safety
/// `model` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inqdef_model_free(model: *mut InqdefModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of worlds, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn inqdef_model_world_count(model: *const InqdefModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.world_count())
}

/// Parses a formula licensed by the given language (`INQDEF_LANGUAGE_*`).
///
/// # Safety
/// `source` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_formula_parse(
    source: *const c_char,
    lang: u32,
    out: *mut *mut InqdefFormula,
) -> InqdefStatus {
    guard(|| {
        let sig = language(lang)?.signature();
        let f = parse_formula(text(source, "formula")?, &sig)
            .map_err(|e| Failure::new(InqdefStatus::ParseError, e))?;
        write_out(out, Box::into_raw(Box::new(InqdefFormula(f))))
    })
}

/// # Safety
/// `formula` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inqdef_formula_free(formula: *mut InqdefFormula) {
    if !formula.is_null() {
        drop(Box::from_raw(formula));
    }
}

/// Canonical text of a formula.
///
/// # Safety
/// `formula` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_formula_render(
    formula: *const InqdefFormula,
    out: *mut *mut c_char,
) -> InqdefStatus {
    guard(|| write_string(out, handle(formula, "formula")?.0.to_string()))
}

fn check_state(m: &Model, state: u32) -> Result<State, Failure> {
    let full = m.full_state().index() as u32;
    if state & !full != 0 {
        return Err(Failure::new(InqdefStatus::InvalidArgument, "state mentions worlds outside the model"));
    }
    Ok(State::from_index(state as usize))
}

/// Whether the state (bit `i` set for world `i`) supports the formula.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_supports(
    model: *const InqdefModel,
    formula: *const InqdefFormula,
    state: u32,
    out: *mut bool,
) -> InqdefStatus {
    guard(|| {
        let m = &handle(model, "model")?.0;
        let f = &handle(formula, "formula")?.0;
        let s = check_state(m, state)?;
        write_out(out, supports(m, s, f))
    })
}

/// The proposition as maximal states, e.g. `{w1,w2},{w1,w3} ↓`.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_proposition_render(
    model: *const InqdefModel,
    formula: *const InqdefFormula,
    out: *mut *mut c_char,
) -> InqdefStatus {
    guard(|| {
        let m = &handle(model, "model")?.0;
        let f = &handle(formula, "formula")?.0;
        write_string(out, proposition(m, f).render(m))
    })
}

/// The proposition as JSON: `{"world_count": n, "maximal": [[world, ...], ...]}`.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_proposition_json(
    model: *const InqdefModel,
    formula: *const InqdefFormula,
    out: *mut *mut c_char,
) -> InqdefStatus {
    guard(|| {
        let m = &handle(model, "model")?.0;
        let f = &handle(formula, "formula")?.0;
        write_string(out, json(&proposition(m, f))?)
    })
}

/// Whether two formulas have the same proposition in the model.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_equivalent_in(
    model: *const InqdefModel,
    left: *const InqdefFormula,
    right: *const InqdefFormula,
    out: *mut bool,
) -> InqdefStatus {
    guard(|| {
        let m = &handle(model, "model")?.0;
        let (f, g) = (&handle(left, "left")?.0, &handle(right, "right")?.0);
        write_out(out, equivalent_in(m, f, g))
    })
}

/// Runs an undefinability harness (`INQDEF_THEOREM_*`) in its default
/// signature and writes the JSON report.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_verify_json(which: u32, out: *mut *mut c_char) -> InqdefStatus {
    guard(|| verify(which, None, out))
}

/// As [`inqdef_verify_json`], in the given signature.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_verify_in_json(which: u32, lang: u32, out: *mut *mut c_char) -> InqdefStatus {
    guard(|| verify(which, Some(language(lang)?), out))
}

unsafe fn verify(which: u32, lang: Option<Language>, out: *mut *mut c_char) -> Result<(), Failure> {
    let report = theorem(which)?
        .run(lang)
        .map_err(|e| Failure::new(InqdefStatus::ComputationError, e))?;
    write_string(out, json(&report)?)
}

/// Closure report as JSON. `left` and `right` may be null; with both null
/// only the constants seed the closure.
///
/// # Safety
/// Non-null handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn inqdef_closure_json(
    model: *const InqdefModel,
    lang: u32,
    left: *const InqdefFormula,
    right: *const InqdefFormula,
    out: *mut *mut c_char,
) -> InqdefStatus {
    guard(|| {
        let m = &handle(model, "model")?.0;
        let lang = language(lang)?;
        let (left, right) = (left.as_ref().map(|f| &f.0), right.as_ref().map(|f| &f.0));
        let report = closure_report(m, lang, left, right)
            .map_err(|e| Failure::new(InqdefStatus::ComputationError, e))?;
        write_string(out, json(&report)?)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inqdef_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after a
/// successful call. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn inqdef_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
