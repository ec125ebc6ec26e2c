//! C interface to the proof checker.
//!
//! A `HottSession` owns a growing signature. Sources are checked into it one
//! at a time; each call returns a status code and leaves a line-per-declaration
//! report (and, on error, a message) that can be read back as C strings. The
//! returned pointers stay valid until the next call on the same session.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use hott_kernel::checker::{check_into, CheckOptions, Outcome, Report, Signature};
use hott_kernel::corpus::load_source;
use hott_kernel::surface::parse_source;

/// Result of a session call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HottStatus {
    Ok = 0,
    /// Some declaration failed to type-check.
    CheckFailed = 1,
    SyntaxError = 2,
    IoError = 3,
    /// A null pointer or invalid UTF-8 was passed in.
    InvalidArgument = 4,
    /// The checker panicked; the session should be freed.
    Internal = 5,
}

/// Opaque checking session.
pub struct HottSession {
    signature: Signature,
    options: CheckOptions,
    report: CString,
    error: CString,
    scratch: CString,
}

impl HottSession {
    fn new() -> HottSession {
        HottSession {
            signature: Signature::new(),
            options: CheckOptions::default(),
            report: CString::default(),
            error: CString::default(),
            scratch: CString::default(),
        }
    }

    fn set_error(&mut self, status: HottStatus, message: String) -> HottStatus {
        self.error = to_cstring(message);
        status
    }

    fn record(&mut self, report: &Report) -> HottStatus {
        let mut text = String::new();
        for e in &report.entries {
            match &e.outcome {
                Outcome::Ok => text.push_str(&format!("OK {}\n", e.name)),
                Outcome::Failed(msg) => text.push_str(&format!("FAIL {}: {msg}\n", e.name)),
            }
        }
        self.report = to_cstring(text);
        if report.all_ok() {
            HottStatus::Ok
        } else {
            let failed = report.entries.iter().filter(|e| !e.is_ok()).count();
            self.set_error(HottStatus::CheckFailed, format!("{failed} declaration(s) failed"))
        }
    }
}

fn to_cstring(s: String) -> CString {
    CString::new(s.replace('\0', "\\0")).expect("interior nuls replaced")
}

unsafe fn str_arg<'a>(p: *const c_char) -> Option<&'a str> {
    if p.is_null() {
        return None;
    }
    CStr::from_ptr(p).to_str().ok()
}

fn guarded(session: *mut HottSession, f: impl FnOnce(&mut HottSession) -> HottStatus) -> HottStatus {
    // SAFETY: the caller passes a pointer obtained from hott_session_new.
    let Some(s) = (unsafe { session.as_mut() }) else {
        return HottStatus::InvalidArgument;
    };
    s.error = CString::default();
    s.report = CString::default();
    match catch_unwind(AssertUnwindSafe(|| f(s))) {
        Ok(status) => status,
        Err(_) => {
            s.error = to_cstring("internal error".into());
            HottStatus::Internal
        }
    }
}

/// Create a new, empty session. Free it with `hott_session_free`.
#[no_mangle]
pub extern "C" fn hott_session_new() -> *mut HottSession {
    Box::into_raw(Box::new(HottSession::new()))
}

/// Free a session. Passing null is allowed.
///
/// # Safety
/// `session` must be null or a pointer from `hott_session_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hott_session_free(session: *mut HottSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Enable or disable η-rules in conversion for later checks.
///
/// # Safety
/// `session` must be a live session pointer.
#[no_mangle]
pub unsafe extern "C" fn hott_session_set_eta(session: *mut HottSession, enabled: bool) -> HottStatus {
    guarded(session, |s| {
        s.options.conv.eta = enabled;
        HottStatus::Ok
    })
}

/// Parse `source` and check its declarations into the session. `name` is
/// used in messages only.
///
/// # Safety
/// `session` must be a live session; `name` and `source` must be
/// nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn hott_check_source(
    session: *mut HottSession,
    name: *const c_char,
    source: *const c_char,
) -> HottStatus {
    let (name, source) = (str_arg(name), str_arg(source));
    guarded(session, |s| {
        let (Some(name), Some(source)) = (name, source) else {
            return s.set_error(HottStatus::InvalidArgument, "null or non-UTF-8 argument".into());
        };
        match parse_source(name, source) {
            Ok(module) => {
                let report = check_into(&mut s.signature, &[module], s.options);
                s.record(&report)
            }
            Err(e) => s.set_error(HottStatus::SyntaxError, format!("{name}: {e}")),
        }
    })
}

/// Read, parse and check a file into the session.
///
/// # Safety
/// `session` must be a live session; `path` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hott_check_file(session: *mut HottSession, path: *const c_char) -> HottStatus {
    let path = str_arg(path);
    guarded(session, |s| {
        let Some(path) = path else {
            return s.set_error(HottStatus::InvalidArgument, "null or non-UTF-8 path".into());
        };
        match load_source(Path::new(path)) {
            Ok(module) => {
                let report = check_into(&mut s.signature, &[module], s.options);
                s.record(&report)
            }
            Err(e @ hott_kernel::corpus::CorpusError::Io { .. }) => {
                s.set_error(HottStatus::IoError, e.to_string())
            }
            Err(e) => s.set_error(HottStatus::SyntaxError, e.to_string()),
        }
    })
}

/// Number of declarations checked successfully so far.
///
/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn hott_declaration_count(session: *const HottSession) -> usize {
    session.as_ref().map_or(0, |s| s.signature.len())
}

/// Report of the last check: one `OK <name>` or `FAIL <name>: <error>` line
/// per declaration. Never null for a live session.
///
/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn hott_last_report(session: *const HottSession) -> *const c_char {
    session.as_ref().map_or(ptr::null(), |s| s.report.as_ptr())
}

/// Message describing the last failure, or an empty string.
///
/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn hott_last_error(session: *const HottSession) -> *const c_char {
    session.as_ref().map_or(ptr::null(), |s| s.error.as_ptr())
}

/// Comma-separated axiom footprint of a checked declaration, or null if
/// no declaration has that name.
///
/// # Safety
/// `session` must be a live session; `name` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hott_footprint(session: *mut HottSession, name: *const c_char) -> *const c_char {
    let (Some(s), Some(name)) = (session.as_mut(), str_arg(name)) else {
        return ptr::null();
    };
    let Some(entry) = s.signature.get(name) else {
        return ptr::null();
    };
    let names: Vec<&str> = entry.footprint.iter().map(|a| &**a).collect();
    s.scratch = to_cstring(names.join(","));
    s.scratch.as_ptr()
}
