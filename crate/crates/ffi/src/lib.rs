//! C ABI over `ccgrowth`. Handles are opaque and owned by the caller, who
//! releases them with the matching `*_free`. Every fallible call returns a
//! [`CcStatus`]; on failure [`cc_last_error`] describes it. Strings handed
//! out must be released with [`cc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ccgrowth::dehn::DehnContext;
use ccgrowth::metrics::{metric_for, n_norm_upper, HeisenbergElement, HeisenbergOracle, NormMode};
use ccgrowth::presentations::{check_small_cancellation, Presentation};
use ccgrowth::rips::{rips_presentation, RipsMode, RipsOutput, RipsScheme};
use ccgrowth::{CyclicWord, Error, Word};
use num_rational::Ratio;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed presentation or word text.
    Syntax = 3,
    /// Unknown generator or relator problems.
    Alphabet = 4,
    Parameter = 5,
    /// Needs a C'(1/6) presentation, or a rule the mode does not provide.
    Unsupported = 6,
    /// Budget or radius exceeded.
    Resource = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

/// Parsed finitely presented group.
pub struct CcPresentation(Presentation);
/// Rips construction `G` over a quotient `Q`.
pub struct CcRips(RipsOutput);
/// Dehn's algorithm over one presentation.
pub struct CcDehn(DehnContext);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(CcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } => CcStatus::Syntax,
            Error::Alphabet(_) | Error::DegenerateRelator(_) | Error::DuplicateRelator(..) => CcStatus::Alphabet,
            Error::Coverage(..) | Error::UnsupportedContext(_) => CcStatus::Unsupported,
            Error::Resource(_) | Error::RadiusExceeded { .. } => CcStatus::Resource,
            _ => CcStatus::Parameter,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            CcStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CcStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(CcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses presentation text (`gens a b ; rel [a,b]`).
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_presentation_parse(source: *const c_char, out: *mut *mut CcPresentation) -> CcStatus {
    guard(|| {
        let p = Presentation::parse(text(source, "source")?)?;
        put(out, Box::into_raw(Box::new(CcPresentation(p))), "out")
    })
}

/// # Safety
/// `p` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cc_presentation_free(p: *mut CcPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Normal-form text of the presentation; free with [`cc_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_presentation_to_text(p: *const CcPresentation, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        put(out, owned_string(p.0.to_text()), "out")
    })
}

/// Number of generators and relators.
///
/// # Safety
/// `p` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_presentation_shape(
    p: *const CcPresentation,
    generators: *mut usize,
    relators: *mut usize,
) -> CcStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        put(generators, p.0.alphabet().len(), "generators")?;
        put(relators, p.0.relators().len(), "relators")
    })
}

/// C'(num/den) check. Writes the verdict to `passed` and, when `report`
/// is not null, the JSON report.
///
/// # Safety
/// `p` must be a live handle; `passed` must be writable; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn cc_sc_check(
    p: *const CcPresentation,
    num: u64,
    den: u64,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        if den == 0 {
            return Err(Fail(CcStatus::Parameter, "lambda denominator is 0".into()));
        }
        let r = check_small_cancellation(&p.0, Ratio::new(num, den))?;
        put(passed, r.passed(), "passed")?;
        if !report.is_null() {
            let json = serde_json::to_string(&r).map_err(|e| Fail(CcStatus::Parameter, e.to_string()))?;
            report.write(owned_string(json));
        }
        Ok(())
    })
}

/// Rips construction with parameter `k`; `complete` adds y-rules.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_rips_new(q: *const CcPresentation, k: u32, complete: bool, out: *mut *mut CcRips) -> CcStatus {
    guard(|| {
        let q = handle(q, "presentation")?;
        let mode = if complete { RipsMode::Complete } else { RipsMode::XOnly };
        let r = rips_presentation(&q.0, RipsScheme::new(k, mode)?)?;
        put(out, Box::into_raw(Box::new(CcRips(r))), "out")
    })
}

/// # Safety
/// `r` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cc_rips_free(r: *mut CcRips) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// New presentation handle holding a copy of `G`.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_rips_g_presentation(r: *const CcRips, out: *mut *mut CcPresentation) -> CcStatus {
    guard(|| {
        let r = handle(r, "rips")?;
        put(out, Box::into_raw(Box::new(CcPresentation(r.0.g_presentation().clone()))), "out")
    })
}

/// Upper bound on `ln ||χ(q)^n(c)||` from count matrices along a geodesic
/// representative of `q^n`; `q_radius` sizes the exact Q metric.
///
/// # Safety
/// `r` must be a live handle; words must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_growth_ln_upper(
    r: *const CcRips,
    q_word: *const c_char,
    class: *const c_char,
    n: i64,
    q_radius: u32,
    out: *mut f64,
) -> CcStatus {
    guard(|| {
        let r = &handle(r, "rips")?.0;
        let g = r.g_presentation();
        let q = g.parse_word(text(q_word, "q_word")?)?;
        let c = CyclicWord::new(&g.parse_word(text(class, "class")?)?);
        let metric = metric_for(r.q_presentation(), q_radius)?;
        let est = n_norm_upper(r, &q, &c, n, metric.as_ref(), NormMode::Counts)?;
        put(out, est.ln_upper, "out")
    })
}

/// Dehn context over a copy of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_dehn_new(p: *const CcPresentation, out: *mut *mut CcDehn) -> CcStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        put(out, Box::into_raw(Box::new(CcDehn(DehnContext::new(p.0.clone())))), "out")
    })
}

/// # Safety
/// `d` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cc_dehn_free(d: *mut CcDehn) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Whether the presentation passed C'(1/6), which makes verdicts exact.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_dehn_sc_verified(d: *const CcDehn, out: *mut bool) -> CcStatus {
    guard(|| put(out, handle(d, "dehn")?.0.sc_verified(), "out"))
}

unsafe fn dehn_word<'a>(d: *const CcDehn, word: *const c_char) -> Result<(&'a DehnContext, Word), Fail> {
    let d = &handle(d, "dehn")?.0;
    let w = d.presentation().parse_word(text(word, "word")?)?;
    Ok((d, w))
}

/// Dehn-reduced form of `word`; free with [`cc_string_free`].
///
/// # Safety
/// `d` must be a live handle; `word` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_dehn_reduce(d: *const CcDehn, word: *const c_char, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let (ctx, w) = dehn_word(d, word)?;
        put(out, owned_string(ctx.presentation().format_word(&ctx.dehn_reduce(&w))), "out")
    })
}

/// Exact word problem; `Unsupported` unless the presentation is C'(1/6).
///
/// # Safety
/// `d` must be a live handle; `word` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_dehn_is_trivial(d: *const CcDehn, word: *const c_char, out: *mut bool) -> CcStatus {
    guard(|| {
        let (ctx, w) = dehn_word(d, word)?;
        put(out, ctx.is_trivial(&w)?, "out")
    })
}

/// `true` when Dehn's algorithm reaches the empty word, which proves
/// triviality in any presentation; `false` proves nothing by itself.
///
/// # Safety
/// `d` must be a live handle; `word` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_dehn_proves_trivial(d: *const CcDehn, word: *const c_char, out: *mut bool) -> CcStatus {
    guard(|| {
        let (ctx, w) = dehn_word(d, word)?;
        put(out, ctx.proves_trivial(&w), "out")
    })
}

/// Exact word length of `z^n` in the Heisenberg group, `z = [a,b]`, from a
/// ball of the given radius.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_heisenberg_z_power_length(radius: u32, n: i64, out: *mut u32) -> CcStatus {
    guard(|| {
        let oracle = HeisenbergOracle::new(radius)?;
        put(out, oracle.length(HeisenbergElement::z_power(n))?, "out")
    })
}
