//! C ABI over the kcover engine.
//!
//! Graphs and engines are opaque handles. Every function returns a
//! [`KcStatus`]; on failure, [`kc_last_error`] describes what went wrong on
//! the calling thread. Strings handed out by the library are released with
//! [`kc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kcover::covering::{find_covering, verify_certificate, CoverConfig, CoverOutcome};
use kcover::embed::{Engine, SearchConfig, Surface};
use kcover::graph::{parse_graph6, parse_name, write_graph6, Graph};
use kcover::obstruction::is_obstruction;
use kcover::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    BudgetExhausted = 5,
    /// The search finished without finding what was asked for.
    NotFound = 6,
    MalformedCertificate = 7,
    Internal = 8,
}

/// Opaque graph handle.
pub struct KcGraph(Graph);

/// Opaque engine handle (holds the memo cache; safe to share across threads).
pub struct KcEngine(Engine);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> KcStatus {
    match e {
        Error::MalformedGraph6(_) | Error::MalformedName { .. } | Error::PatternDoesNotFit(_) => KcStatus::Parse,
        Error::BudgetExhausted(_) => KcStatus::BudgetExhausted,
        Error::MalformedCertificate(_) => KcStatus::MalformedCertificate,
        _ => KcStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), KcStatus>) -> KcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            KcStatus::Internal
        }
    }
}

fn fail(e: Error) -> KcStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, KcStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(KcStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        KcStatus::InvalidUtf8
    })
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, KcStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        KcStatus::NullPointer
    })
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, KcStatus> {
    p.as_mut().ok_or_else(|| {
        set_error("null output pointer");
        KcStatus::NullPointer
    })
}

fn surface_arg(s: &str) -> Result<Surface, KcStatus> {
    s.parse().map_err(fail)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next kcover call on the same thread.
#[no_mangle]
pub extern "C" fn kc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a graph name (`K8-K3`, `K3,3`, `K9-2K2`, ...) or a graph6 string.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_parse(text: *const c_char, out: *mut *mut KcGraph) -> KcStatus {
    guard(|| {
        let text = str_arg(text)?;
        let out = out_arg(out)?;
        let g = parse_name(text).or_else(|e| parse_graph6(text).map_err(|_| e)).map_err(fail)?;
        *out = Box::into_raw(Box::new(KcGraph(g)));
        Ok(())
    })
}

/// Builds a graph from `edge_count` vertex pairs stored flat in `pairs`.
///
/// # Safety
/// `pairs` must point to `2 * edge_count` integers (may be NULL when
/// `edge_count` is 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_from_edges(
    order: usize,
    pairs: *const u32,
    edge_count: usize,
    out: *mut *mut KcGraph,
) -> KcStatus {
    guard(|| {
        let out = out_arg(out)?;
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else {
            if pairs.is_null() {
                set_error("null edge array");
                return Err(KcStatus::NullPointer);
            }
            std::slice::from_raw_parts(pairs, 2 * edge_count)
        };
        let edges: Vec<(usize, usize)> = flat.chunks(2).map(|p| (p[0] as usize, p[1] as usize)).collect();
        let g = Graph::from_edges(order, &edges).map_err(fail)?;
        *out = Box::into_raw(Box::new(KcGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_free(g: *mut KcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_order(g: *const KcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_edge_count(g: *const KcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// graph6 encoding; release with [`kc_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_to_graph6(g: *const KcGraph, out: *mut *mut c_char) -> KcStatus {
    guard(|| {
        let g = ref_arg(g)?;
        let out = out_arg(out)?;
        *out = into_c_string(write_graph6(&g.0));
        Ok(())
    })
}

/// New engine. `node_limit` caps each embedding search; 0 means unlimited.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kc_engine_new(node_limit: u64, out: *mut *mut KcEngine) -> KcStatus {
    guard(|| {
        let out = out_arg(out)?;
        let config = SearchConfig { node_limit: (node_limit > 0).then_some(node_limit), ..SearchConfig::default() };
        *out = Box::into_raw(Box::new(KcEngine(Engine::new(config))));
        Ok(())
    })
}

/// # Safety
/// `e` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn kc_engine_free(e: *mut KcEngine) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Whether `g` embeds in `surface` (`sphere`, `torus`, `n2`, `s3`, ...).
///
/// # Safety
/// Handles must be live, `surface` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kc_embeds(
    e: *const KcEngine,
    g: *const KcGraph,
    surface: *const c_char,
    out: *mut bool,
) -> KcStatus {
    guard(|| {
        let (e, g) = (ref_arg(e)?, ref_arg(g)?);
        let s = surface_arg(str_arg(surface)?)?;
        let out = out_arg(out)?;
        *out = e.0.embeds(&g.0, s).map_err(fail)?;
        Ok(())
    })
}

/// Whether `g` fails `surface` while every single-edge deletion embeds.
///
/// # Safety
/// Handles must be live, `surface` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kc_is_obstruction(
    e: *const KcEngine,
    g: *const KcGraph,
    surface: *const c_char,
    out: *mut bool,
) -> KcStatus {
    guard(|| {
        let (e, g) = (ref_arg(e)?, ref_arg(g)?);
        let s = surface_arg(str_arg(surface)?)?;
        let out = out_arg(out)?;
        *out = is_obstruction(&e.0, &g.0, s).map_err(fail)?.minimal;
        Ok(())
    })
}

/// Searches for a Kuratowski covering with parameter `gtilde` and returns the
/// certificate as JSON (release with [`kc_string_free`]). Returns
/// `NotFound` and leaves `out` NULL when there is none.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kc_find_covering(
    e: *const KcEngine,
    g: *const KcGraph,
    gtilde: u32,
    out: *mut *mut c_char,
) -> KcStatus {
    guard(|| {
        let (e, g) = (ref_arg(e)?, ref_arg(g)?);
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let config = CoverConfig { search: e.0.config().clone(), ..CoverConfig::default() };
        match find_covering(&e.0, &g.0, gtilde as usize, &config).map_err(fail)? {
            CoverOutcome::Found(cert) => {
                *out = into_c_string(cert.to_json());
                Ok(())
            }
            CoverOutcome::NoCovering { pool_size } | CoverOutcome::PoolLimitReached { pool_size } => {
                set_error(format!("no covering among {pool_size} Kuratowski subgraphs"));
                Err(KcStatus::NotFound)
            }
        }
    })
}

/// Re-checks a certificate with a cold engine. `out` receives the verdict;
/// malformed input yields `MalformedCertificate`.
///
/// # Safety
/// `json` must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kc_verify_certificate(json: *const c_char, out: *mut bool) -> KcStatus {
    guard(|| {
        let json = str_arg(json)?;
        let out = out_arg(out)?;
        let report = verify_certificate(json).map_err(fail)?;
        if !report.pass {
            set_error(report.violations.join("; "));
        }
        *out = report.pass;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn kc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
