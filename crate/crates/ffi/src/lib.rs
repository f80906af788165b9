//! C ABI for `cdga-config`.
//!
//! Algebras are opaque handles created by `cdga_algebra_from_json` or
//! `cdga_algebra_from_preset` and released with `cdga_algebra_free`.
//! Every fallible call returns a `CdgaStatus`; on failure the message is
//! available from `cdga_last_error` until the next failing call on the same
//! thread. Strings returned through `char **` out-parameters are owned by
//! the caller and must be released with `cdga_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cdga_config::algebra::check_cdga;
use cdga_config::cohomology::cohomology;
use cdga_config::commands;
use cdga_config::io::AlgebraFile;
use cdga_config::poincare::PdAlgebra;
use cdga_config::presets;
use cdga_config::report::{Report, Status};

/// Status codes. The first four match the CLI exit statuses.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdgaStatus {
    Ok = 0,
    ParseError = 1,
    CheckFailed = 2,
    Precondition = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

impl From<Status> for CdgaStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => CdgaStatus::Ok,
            Status::ParseError => CdgaStatus::ParseError,
            Status::CheckFailed => CdgaStatus::CheckFailed,
            Status::Precondition => CdgaStatus::Precondition,
        }
    }
}

/// A Poincaré duality CDGA.
pub struct CdgaAlgebra {
    pd: PdAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn fail(status: CdgaStatus, msg: impl Into<String>) -> CdgaStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> CdgaStatus) -> CdgaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CdgaStatus::Internal, "internal error"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, CdgaStatus> {
    if p.is_null() {
        return Err(fail(CdgaStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CdgaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> CdgaStatus {
    if out.is_null() {
        return fail(CdgaStatus::NullArgument, "output pointer is null");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CdgaStatus::Ok
        }
        Err(_) => fail(CdgaStatus::Internal, "string contains NUL"),
    }
}

unsafe fn put_algebra(out: *mut *mut CdgaAlgebra, pd: PdAlgebra) -> CdgaStatus {
    if out.is_null() {
        return fail(CdgaStatus::NullArgument, "output pointer is null");
    }
    *out = Box::into_raw(Box::new(CdgaAlgebra { pd }));
    CdgaStatus::Ok
}

unsafe fn algebra<'a>(a: *const CdgaAlgebra) -> Result<&'a CdgaAlgebra, CdgaStatus> {
    a.as_ref().ok_or_else(|| fail(CdgaStatus::NullArgument, "algebra handle is null"))
}

/// Message of the last failing call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cdga_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses an algebra from JSON text and verifies Poincaré duality.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_from_json(json: *const c_char, out: *mut *mut CdgaAlgebra) -> CdgaStatus {
    guard(|| {
        let text = match str_arg(json, "json") {
            Ok(s) => s,
            Err(s) => return s,
        };
        match AlgebraFile::parse(text).and_then(|f| f.pd_algebra()) {
            Ok(pd) => put_algebra(out, pd),
            Err(e) => {
                let status = if e.is_parse_error() { CdgaStatus::ParseError } else { CdgaStatus::CheckFailed };
                fail(status, e.to_string())
            }
        }
    })
}

/// Loads a shipped preset such as `"s2xs3"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_from_preset(name: *const c_char, out: *mut *mut CdgaAlgebra) -> CdgaStatus {
    guard(|| {
        let name = match str_arg(name, "name") {
            Ok(s) => s,
            Err(s) => return s,
        };
        match presets::pd(name) {
            Some(pd) => put_algebra(out, pd),
            None => fail(CdgaStatus::ParseError, format!("unknown preset {name}")),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_free(a: *mut CdgaAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Total dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_dimension(a: *const CdgaAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.pd.algebra.dim())
}

/// Formal dimension `n`, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_formal_dimension(a: *const CdgaAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.pd.n)
}

/// Runs the exhaustive CDGA axiom check: `Ok` or `CheckFailed`.
///
/// # Safety
/// `a` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_check(a: *const CdgaAlgebra) -> CdgaStatus {
    guard(|| {
        let a = match algebra(a) {
            Ok(a) => a,
            Err(s) => return s,
        };
        match check_cdga(&a.pd.algebra).first_failure() {
            None => CdgaStatus::Ok,
            Some((axiom, w)) => fail(
                CdgaStatus::CheckFailed,
                format!("{axiom} fails at ({})", w.labels.join(", ")),
            ),
        }
    })
}

/// Betti numbers. Writes up to `cap` entries to `out` and the full length
/// to `len`; returns `BufferTooSmall` if `cap` is short. `out` may be null
/// when `cap` is 0.
///
/// # Safety
/// `a` must be a live handle, `out` valid for `cap` writes, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_betti(
    a: *const CdgaAlgebra,
    out: *mut usize,
    cap: usize,
    len: *mut usize,
) -> CdgaStatus {
    guard(|| {
        let a = match algebra(a) {
            Ok(a) => a,
            Err(s) => return s,
        };
        if len.is_null() || (out.is_null() && cap > 0) {
            return fail(CdgaStatus::NullArgument, "output pointer is null");
        }
        let betti = match cohomology(&a.pd.algebra.complex()) {
            Ok(h) => h.betti(),
            Err(e) => return fail(CdgaStatus::CheckFailed, e.to_string()),
        };
        *len = betti.len();
        if cap < betti.len() {
            return fail(CdgaStatus::BufferTooSmall, format!("need {} entries", betti.len()));
        }
        ptr::copy_nonoverlapping(betti.as_ptr(), out, betti.len());
        CdgaStatus::Ok
    })
}

/// The diagonal class as text, e.g. `"1⊗y - y⊗1"`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_diagonal(a: *const CdgaAlgebra, out: *mut *mut c_char) -> CdgaStatus {
    guard(|| {
        let a = match algebra(a) {
            Ok(a) => a,
            Err(s) => return s,
        };
        put_string(out, a.pd.square().algebra.format(&a.pd.diagonal()))
    })
}

/// The algebra serialized as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdga_algebra_to_json(a: *const CdgaAlgebra, out: *mut *mut c_char) -> CdgaStatus {
    guard(|| {
        let a = match algebra(a) {
            Ok(a) => a,
            Err(s) => return s,
        };
        put_string(out, AlgebraFile::from_pd(&a.pd).to_json())
    })
}

/// Runs a CLI command and returns its JSON report through `out`. `args`
/// holds `nargs` strings, as after the command name on the command line;
/// files may be paths or preset names. Supported: `check FILE`,
/// `diagonal FILE`, `betti-fm2 FILE`, `cxi FILE [XI]`, `check-table FILE`,
/// `product A B OUT`, `classify-example Q...`. The return value is the
/// report status; the report is written even when a check fails.
///
/// # Safety
/// `command` and each of `args[0..nargs]` must be NUL-terminated strings;
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdga_run_command(
    command: *const c_char,
    args: *const *const c_char,
    nargs: usize,
    out: *mut *mut c_char,
) -> CdgaStatus {
    guard(|| {
        let command = match str_arg(command, "command") {
            Ok(s) => s,
            Err(s) => return s,
        };
        if args.is_null() && nargs > 0 {
            return fail(CdgaStatus::NullArgument, "args is null");
        }
        let mut v = Vec::with_capacity(nargs);
        for i in 0..nargs {
            match str_arg(*args.add(i), "argument") {
                Ok(s) => v.push(s),
                Err(s) => return s,
            }
        }
        let report = match run(command, &v) {
            Ok(r) => r,
            Err(msg) => return fail(CdgaStatus::Precondition, msg),
        };
        if let Some(e) = report.data.get("errors").and_then(|e| e.get(0)).and_then(|e| e.as_str()) {
            set_error(e);
        }
        let status = CdgaStatus::from(report.status);
        match put_string(out, report.json()) {
            CdgaStatus::Ok => status,
            s => s,
        }
    })
}

fn run(command: &str, args: &[&str]) -> Result<Report, String> {
    let usage = || format!("wrong arguments for {command}");
    Ok(match (command, args) {
        ("check", [f]) => commands::check(f),
        ("diagonal", [f]) => commands::diagonal(f),
        ("betti-fm2", [f]) => commands::betti_fm2(f),
        ("cxi", [f]) => commands::cxi(f, None, None, None),
        ("cxi", [f, xi]) => commands::cxi(f, Some(xi), None, None),
        ("check-table", [f]) => commands::check_table(f),
        ("product", [a, b, o]) => commands::product(a, b, Some(std::path::Path::new(o))),
        ("classify-example", qs) if !qs.is_empty() => {
            let mut q = Vec::new();
            for s in qs {
                match cdga_config::expr::parse_rational(s) {
                    Ok(x) => q.push(x),
                    Err(e) => return Ok(Report::error(command, Status::ParseError, format!("{s}: {e}"))),
                }
            }
            commands::classify_example(&q)
        }
        ("check" | "diagonal" | "betti-fm2" | "cxi" | "check-table" | "product" | "classify-example", _) => {
            return Err(usage())
        }
        _ => return Err(format!("unknown command {command}")),
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cdga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
