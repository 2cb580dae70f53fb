//! C ABI for the revsynth engine.
//!
//! The surface is deliberately small: run one seeded search, and parse,
//! format, simulate, and verify netlists through an opaque handle.
//! Every fallible call returns an [`RsvStatus`]; on failure a
//! human-readable message is available from [`rsv_last_error_message`]
//! until the next call on the same thread. Strings returned by the API
//! are NUL-terminated and owned by the caller, to be released with
//! [`rsv_string_free`]; netlist handles are released with
//! [`rsv_netlist_free`]. The generated header lives in
//! `include/revsynth.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use revsynth::netlist::{extract, fanout_analysis, verify_parity, Netlist};
use revsynth::parity::ParityProblem;
use revsynth::rng::rng_from_seed;
use revsynth::search::{steady_state_search, SearchParams};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsvStatus {
    /// The call succeeded.
    RsvOk = 0,
    /// A required pointer argument was null.
    RsvNullPointer = 1,
    /// An argument was out of range (details via `rsv_last_error_message`).
    RsvInvalidArgument = 2,
    /// Netlist text did not parse (details via `rsv_last_error_message`).
    RsvParseError = 3,
    /// A string argument was not valid UTF-8.
    RsvUtf8Error = 4,
}

/// Opaque netlist handle.
pub struct RsvNetlist(Netlist);

/// Parameters of one evolutionary search run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct RsvSearchConfig {
    /// Parity arity (2..=16).
    pub k: u32,
    pub population_size: u32,
    /// Generation budget; one generation is `population_size` offspring.
    pub generations: u32,
    /// Fredkin genes per chromosome after the terminal prefix.
    pub code_len: u32,
    pub mutation_prob: f64,
    pub crossover_prob: f64,
    pub tournament_frac: f64,
    pub seed: u64,
}

/// Result summary of one search run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct RsvSearchOutcome {
    /// True iff a zero-error circuit was found.
    pub success: bool,
    /// Error count of the best expression (0 on success).
    pub best_fitness: u32,
    /// Generations consumed (0 if the initial population solved it).
    pub generations_used: u32,
    /// Gates in the extracted circuit; 0 when `success` is false.
    pub gate_count: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl Into<Vec<u8>>) {
    let cstring = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = cstring);
}

fn fail(status: RsvStatus, message: impl Into<Vec<u8>>) -> RsvStatus {
    set_last_error(message);
    status
}

/// Message describing the most recent failure on this thread. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rsv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rsv_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Search configuration prefilled with the general defaults (population
/// 1000, 50 generations, code length 10, mutation 0.2, crossover 0.9,
/// 1% tournament, seed 1).
#[no_mangle]
pub extern "C" fn rsv_search_config_default(k: u32) -> RsvSearchConfig {
    RsvSearchConfig {
        k,
        population_size: 1000,
        generations: 50,
        code_len: 10,
        mutation_prob: 0.2,
        crossover_prob: 0.9,
        tournament_frac: 0.01,
        seed: 1,
    }
}

/// Run one seeded search. On success (`outcome.success`), `*netlist_out`
/// receives the extracted, parity-verified circuit (pass NULL to skip
/// it); otherwise `*netlist_out` is set to NULL.
///
/// # Safety
/// `config` and `outcome` must be valid for reads/writes; `netlist_out`,
/// when non-null, must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsv_evolve(
    config: *const RsvSearchConfig,
    outcome: *mut RsvSearchOutcome,
    netlist_out: *mut *mut RsvNetlist,
) -> RsvStatus {
    if !netlist_out.is_null() {
        *netlist_out = ptr::null_mut();
    }
    if config.is_null() || outcome.is_null() {
        return fail(RsvStatus::RsvNullPointer, "config and outcome must be non-null");
    }
    let cfg = &*config;

    let problem = match ParityProblem::new(cfg.k) {
        Ok(p) => p,
        Err(e) => return fail(RsvStatus::RsvInvalidArgument, e.to_string()),
    };
    let params = SearchParams {
        population_size: cfg.population_size as usize,
        generations: cfg.generations as usize,
        code_len: cfg.code_len as usize,
        mutation_prob: cfg.mutation_prob,
        crossover_prob: cfg.crossover_prob,
        tournament_frac: cfg.tournament_frac,
        seed: cfg.seed,
    };
    if let Err(e) = params.validate() {
        return fail(RsvStatus::RsvInvalidArgument, e.to_string());
    }

    let mut rng = rng_from_seed(cfg.seed);
    let result = steady_state_search(&params, &problem, &mut rng);

    let mut gate_count = 0u32;
    if result.success {
        let netlist = extract(&result.best_chromosome, result.best_ref);
        debug_assert!(verify_parity(&netlist));
        gate_count = netlist.gate_count() as u32;
        if !netlist_out.is_null() {
            *netlist_out = Box::into_raw(Box::new(RsvNetlist(netlist)));
        }
    }
    *outcome = RsvSearchOutcome {
        success: result.success,
        best_fitness: result.best_fitness,
        generations_used: result.generations_used as u32,
        gate_count,
    };
    RsvStatus::RsvOk
}

/// Parse netlist text in the `revsynth-netlist v1` format into a new
/// handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn rsv_netlist_parse(
    text: *const c_char,
    out: *mut *mut RsvNetlist,
) -> RsvStatus {
    if text.is_null() || out.is_null() {
        return fail(RsvStatus::RsvNullPointer, "text and out must be non-null");
    }
    *out = ptr::null_mut();
    let text = match CStr::from_ptr(text).to_str() {
        Ok(t) => t,
        Err(e) => return fail(RsvStatus::RsvUtf8Error, e.to_string()),
    };
    match text.parse::<Netlist>() {
        Ok(netlist) => {
            *out = Box::into_raw(Box::new(RsvNetlist(netlist)));
            RsvStatus::RsvOk
        }
        Err(e) => fail(RsvStatus::RsvParseError, e.to_string()),
    }
}

/// Serialize a netlist to newly allocated text (release with
/// `rsv_string_free`).
///
/// # Safety
/// `netlist` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsv_netlist_format(
    netlist: *const RsvNetlist,
    out: *mut *mut c_char,
) -> RsvStatus {
    if netlist.is_null() || out.is_null() {
        return fail(RsvStatus::RsvNullPointer, "netlist and out must be non-null");
    }
    let text = (*netlist).0.to_string();
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            RsvStatus::RsvOk
        }
        Err(e) => fail(RsvStatus::RsvInvalidArgument, e.to_string()),
    }
}

/// Arity of the netlist's problem, or 0 for a null handle.
///
/// # Safety
/// `netlist`, when non-null, must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsv_netlist_arity(netlist: *const RsvNetlist) -> u32 {
    if netlist.is_null() {
        return 0;
    }
    (*netlist).0.k()
}

/// Number of Fredkin gates, or 0 for a null handle.
///
/// # Safety
/// `netlist`, when non-null, must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsv_netlist_gate_count(netlist: *const RsvNetlist) -> u32 {
    if netlist.is_null() {
        return 0;
    }
    (*netlist).0.gate_count() as u32
}

/// Largest number of gate argument slots fed by any single source, or 0
/// for a null handle.
///
/// # Safety
/// `netlist`, when non-null, must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsv_netlist_max_fanout(netlist: *const RsvNetlist) -> u32 {
    if netlist.is_null() {
        return 0;
    }
    fanout_analysis(&(*netlist).0).max_fanout as u32
}

/// Evaluate the netlist on one input assignment (`assignment_len` must
/// equal the arity); writes the output bit to `out`.
///
/// # Safety
/// `netlist` must be a live handle, `assignment` valid for
/// `assignment_len` reads, and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsv_netlist_simulate(
    netlist: *const RsvNetlist,
    assignment: *const bool,
    assignment_len: usize,
    out: *mut bool,
) -> RsvStatus {
    if netlist.is_null() || assignment.is_null() || out.is_null() {
        return fail(RsvStatus::RsvNullPointer, "netlist, assignment, and out must be non-null");
    }
    let n = &(*netlist).0;
    if assignment_len != n.k() as usize {
        return fail(
            RsvStatus::RsvInvalidArgument,
            format!("assignment length {assignment_len} does not match arity {}", n.k()),
        );
    }
    let assignment = std::slice::from_raw_parts(assignment, assignment_len);
    *out = revsynth::netlist::simulate(n, assignment);
    RsvStatus::RsvOk
}

/// Exhaustively check the netlist against even-k-parity; writes the
/// verdict to `out`.
///
/// # Safety
/// `netlist` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsv_netlist_verify_parity(
    netlist: *const RsvNetlist,
    out: *mut bool,
) -> RsvStatus {
    if netlist.is_null() || out.is_null() {
        return fail(RsvStatus::RsvNullPointer, "netlist and out must be non-null");
    }
    *out = verify_parity(&(*netlist).0);
    RsvStatus::RsvOk
}

/// Release a netlist handle (null is ignored).
///
/// # Safety
/// `netlist` must be null or a handle returned by this library, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn rsv_netlist_free(netlist: *mut RsvNetlist) {
    if !netlist.is_null() {
        drop(Box::from_raw(netlist));
    }
}

/// Release a string returned by this library (null is ignored).
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rsv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
