//! C ABI over the `cellauto` engine.
//!
//! Rules and configurations are opaque handles created by `*_new`/`*_parse`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`CellautoStatus`]; on failure the message is available from
//! [`cellauto_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with
//! [`cellauto_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cellauto::decision::{cycle_structure, pred, ubpred_zigzag, Verdict};
use cellauto::engine::{evolve_window, iterate_periodic, step_biperiodic};
use cellauto::io::{parse_config, parse_rule, resolve_rule, serialize_config};
use cellauto::{CaError, CaRule, Config, FinitePattern, Limits};

/// Status codes; the non-zero values match the command-line exit codes
/// where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellautoStatus {
    Ok = 0,
    InvalidInput = 3,
    ResourceLimit = 4,
    NullPointer = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellautoVerdict {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

/// A cellular automaton.
pub struct CellautoRule(CaRule);

/// A periodic, eventually bi-periodic or finite configuration.
pub struct CellautoConfig(Config);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(CellautoStatus, String);

impl From<CaError> for Failure {
    fn from(e: CaError) -> Self {
        let status = if e.exit_code() == 4 {
            CellautoStatus::ResourceLimit
        } else {
            CellautoStatus::InvalidInput
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CellautoStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CellautoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CellautoStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CellautoStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CellautoStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn cellauto_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cellauto_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a builtin rule (`rule110`, `zigzag:rule110`, ...) or reads a
/// rule file at that path.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cellauto_rule_builtin(name: *const c_char, out: *mut *mut CellautoRule) -> CellautoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let rule = resolve_rule(str_arg(name, "name")?)?;
        *out = Box::into_raw(Box::new(CellautoRule(rule)));
        Ok(())
    })
}

/// Parses a rule in the text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cellauto_rule_parse(text: *const c_char, out: *mut *mut CellautoRule) -> CellautoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let rule = parse_rule(str_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(CellautoRule(rule)));
        Ok(())
    })
}

/// # Safety
/// `rule` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cellauto_rule_free(rule: *mut CellautoRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `rule` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cellauto_rule_num_states(rule: *const CellautoRule) -> usize {
    rule.as_ref().map_or(0, |r| r.0.num_states())
}

/// Parses a configuration over the alphabet of `rule`.
///
/// # Safety
/// `rule` must be a live handle, `text` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cellauto_config_parse(
    rule: *const CellautoRule,
    text: *const c_char,
    out: *mut *mut CellautoConfig,
) -> CellautoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let rule = ref_arg(rule, "rule")?;
        let c = parse_config(str_arg(text, "text")?, &rule.0)?;
        *out = Box::into_raw(Box::new(CellautoConfig(c)));
        Ok(())
    })
}

/// # Safety
/// `config` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cellauto_config_free(config: *mut CellautoConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Advances `config` by `steps` steps in place. Finite patterns shrink by
/// the radius at every step. On failure the configuration is unchanged.
///
/// # Safety
/// `rule` and `config` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn cellauto_config_step(
    rule: *const CellautoRule,
    config: *mut CellautoConfig,
    steps: usize,
) -> CellautoStatus {
    guard(|| {
        let rule = &ref_arg(rule, "rule")?.0;
        let config = out_arg(config, "config")?;
        let next = match &config.0 {
            Config::Periodic(p) => Config::Periodic(iterate_periodic(rule, p, steps)?),
            Config::BiPeriodic(b) => {
                let mut cur = b.clone();
                for _ in 0..steps {
                    cur = step_biperiodic(rule, &cur)?;
                }
                Config::BiPeriodic(cur)
            }
            Config::Finite(u) => Config::Finite(evolve_window(rule, u, steps)?),
        };
        config.0 = next;
        Ok(())
    })
}

/// Writes the configuration in the text format to `*out`.
///
/// # Safety
/// `rule` and `config` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cellauto_config_to_text(
    rule: *const CellautoRule,
    config: *const CellautoConfig,
    out: *mut *mut c_char,
) -> CellautoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let rule = &ref_arg(rule, "rule")?.0;
        let config = &ref_arg(config, "config")?.0;
        let text = serialize_config(config, rule);
        *out = CString::new(text).map_err(|e| Failure(CellautoStatus::InvalidInput, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// Center state after `t` steps of a pattern of `len` cells covering the
/// radius `r·t` ball: a word of length `2rt+1` in 1D, or a square of that
/// side stored row by row from the south in 2D.
///
/// # Safety
/// `cells` must point to `len` readable states and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cellauto_pred(
    rule: *const CellautoRule,
    t: usize,
    cells: *const u32,
    len: usize,
    out: *mut u32,
) -> CellautoStatus {
    guard(|| {
        let rule = &ref_arg(rule, "rule")?.0;
        let out = out_arg(out, "out")?;
        if cells.is_null() {
            return Err(null("cells"));
        }
        let cells = std::slice::from_raw_parts(cells, len).to_vec();
        let u = if rule.dimension() == 2 {
            FinitePattern::new_2d(rule.radius() * t, cells)?
        } else {
            FinitePattern::new_1d(cells)?
        };
        *out = pred(rule, t, &u)?;
        Ok(())
    })
}

/// Transient and cycle length of the orbit of a periodic configuration.
///
/// # Safety
/// `rule` and `config` must be live handles; `transient` and `cycle`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cellauto_cycle_structure(
    rule: *const CellautoRule,
    config: *const CellautoConfig,
    transient: *mut u64,
    cycle: *mut u64,
) -> CellautoStatus {
    guard(|| {
        let rule = &ref_arg(rule, "rule")?.0;
        let (transient, cycle) = (out_arg(transient, "transient")?, out_arg(cycle, "cycle")?);
        let Config::Periodic(p) = &ref_arg(config, "config")?.0 else {
            return Err(Failure(CellautoStatus::InvalidInput, "configuration is not periodic".into()));
        };
        let info = cycle_structure(rule, p, &Limits::default())?;
        *transient = info.transient;
        *cycle = info.cycle;
        Ok(())
    })
}

/// Whether state `q` of the zigzag automaton over `inner` ever appears at
/// cell 0 of `config`. `config` holds zigzag states, e.g. parsed against
/// the rule `zigzag:<inner>`. `witness_time` receives the first time for a
/// yes answer and 0 otherwise; it may be null.
///
/// # Safety
/// `inner` and `config` must be live handles; `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn cellauto_ubpred_zigzag(
    inner: *const CellautoRule,
    config: *const CellautoConfig,
    q: u32,
    verdict: *mut CellautoVerdict,
    witness_time: *mut u64,
) -> CellautoStatus {
    guard(|| {
        let inner = &ref_arg(inner, "inner")?.0;
        let verdict = out_arg(verdict, "verdict")?;
        let Config::BiPeriodic(c) = &ref_arg(config, "config")?.0 else {
            return Err(Failure(CellautoStatus::InvalidInput, "configuration is not bi-periodic".into()));
        };
        let rep = ubpred_zigzag(inner, c, q, &Limits::default())?;
        *verdict = match rep.verdict {
            Verdict::Yes => CellautoVerdict::Yes,
            Verdict::No => CellautoVerdict::No,
            Verdict::Unknown => CellautoVerdict::Unknown,
        };
        if let Some(w) = witness_time.as_mut() {
            *w = rep.witness_time.unwrap_or(0);
        }
        Ok(())
    })
}
