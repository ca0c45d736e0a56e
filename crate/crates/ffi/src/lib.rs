//! C interface to `ulrich-core`.
//!
//! Rings live behind an opaque `UlrichRing` handle. Every call returns an
//! `UlrichStatus`; on failure the message is kept per thread and read back with
//! `ulrich_last_error_message`. Strings handed out are released with
//! `ulrich_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use ulrich_core::cli::RingSpec;
use ulrich_core::ideals::{ring_profile, LocalRing};
use ulrich_core::ulrich::{enumerate_ulrich, is_ulrich, SearchOptions, UlrichCertificate};
use ulrich_core::Error;

/// Result codes of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UlrichStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    Domain = 5,
    BudgetExceeded = 6,
    PrecisionExhausted = 7,
    InvariantViolation = 8,
    IndexOutOfRange = 9,
    Panic = 10,
}

impl From<&Error> for UlrichStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => UlrichStatus::Parse,
            Error::Config(_) | Error::Io(_) => UlrichStatus::Config,
            Error::Domain(_)
            | Error::InvalidSemigroup(_)
            | Error::NotNormalizedByPowerSeries(_) => UlrichStatus::Domain,
            Error::BudgetExceeded { .. } => UlrichStatus::BudgetExceeded,
            Error::PrecisionExhausted { .. } => UlrichStatus::PrecisionExhausted,
            Error::InvariantViolation(_) => UlrichStatus::InvariantViolation,
        }
    }
}

/// A ring together with its lazily computed Ulrich ideals.
pub struct UlrichRing {
    ring: LocalRing,
    opts: SearchOptions,
    ulrich: OnceLock<Result<Vec<UlrichCertificate>, Error>>,
}

impl UlrichRing {
    fn certificates(&self) -> Result<&[UlrichCertificate], Error> {
        self.ulrich
            .get_or_init(|| enumerate_ulrich(&self.ring, &self.opts).map(|e| e.certificates))
            .as_deref()
            .map_err(Clone::clone)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(UlrichStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(UlrichStatus::from(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> UlrichStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => UlrichStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside ulrich-core".into());
            UlrichStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            UlrichStatus::NullArgument,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(UlrichStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a>(ring: *const UlrichRing) -> Result<&'a UlrichRing, Failure> {
    ring.as_ref()
        .ok_or_else(|| Failure(UlrichStatus::NullArgument, "ring handle is null".into()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            UlrichStatus::NullArgument,
            "output pointer is null".into(),
        ));
    }
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

/// Builds a ring from a JSON spec such as `{"field":2,"generators":["t^3","t^7"]}`.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ulrich_ring_new(
    spec_json: *const c_char,
    out: *mut *mut UlrichRing,
) -> UlrichStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let spec = RingSpec::from_json(text(spec_json, "spec_json")?)?;
        let ring = spec.build()?.value;
        let opts = spec.search_options(None);
        *out = Box::into_raw(Box::new(UlrichRing {
            ring,
            opts,
            ulrich: OnceLock::new(),
        }));
        Ok(())
    })
}

/// Releases a handle from `ulrich_ring_new`. Null is accepted.
///
/// # Safety
/// `ring` must come from `ulrich_ring_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ulrich_ring_free(ring: *mut UlrichRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Writes the ring's invariants as a JSON object.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ulrich_ring_profile_json(
    ring: *const UlrichRing,
    out: *mut *mut c_char,
) -> UlrichStatus {
    guard(|| {
        out_ptr(out)?;
        let r = handle(ring)?;
        let profile = ring_profile(&r.ring)?;
        let json = serde_json::to_string(&profile)
            .map_err(|e| Failure(UlrichStatus::InvariantViolation, e.to_string()))?;
        *out = owned_string(json);
        Ok(())
    })
}

/// Number of Ulrich ideals; the first call runs the enumeration.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ulrich_ring_ulrich_count(
    ring: *const UlrichRing,
    out: *mut usize,
) -> UlrichStatus {
    guard(|| {
        out_ptr(out)?;
        *out = handle(ring)?.certificates()?.len();
        Ok(())
    })
}

/// Generators of the `index`-th Ulrich ideal, as a JSON array of series strings.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ulrich_ring_ulrich_generators(
    ring: *const UlrichRing,
    index: usize,
    out: *mut *mut c_char,
) -> UlrichStatus {
    guard(|| {
        out_ptr(out)?;
        let r = handle(ring)?;
        let certs = r.certificates()?;
        let cert = certs.get(index).ok_or_else(|| {
            Failure(
                UlrichStatus::IndexOutOfRange,
                format!("index {index} but only {} Ulrich ideals", certs.len()),
            )
        })?;
        let gens = r.ring.render_generators(&cert.ideal)?;
        *out = owned_string(serde_json::Value::from(gens).to_string());
        Ok(())
    })
}

/// Tests the ideal generated by a comma-separated list of series.
/// `is_ulrich_out` receives 1 or 0.
///
/// # Safety
/// `ring` must be a live handle, `generators` NUL-terminated, `is_ulrich_out` valid.
#[no_mangle]
pub unsafe extern "C" fn ulrich_ring_check(
    ring: *const UlrichRing,
    generators: *const c_char,
    is_ulrich_out: *mut i32,
) -> UlrichStatus {
    guard(|| {
        out_ptr(is_ulrich_out)?;
        let r = handle(ring)?;
        let parsed = ulrich_core::cli::parse_generators(
            text(generators, "generators")?,
            r.ring.field(),
            Some(r.ring.trunc()),
        )?;
        let ideal = r.ring.ideal(&parsed.value)?;
        *is_ulrich_out = i32::from(is_ulrich(&r.ring, &ideal)?.is_ok());
        Ok(())
    })
}

/// Message of the last failure on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn ulrich_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is accepted.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ulrich_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn ulrich_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
