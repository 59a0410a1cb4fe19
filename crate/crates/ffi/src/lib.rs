//! C ABI for the toric open Gromov-Witten engine.
//!
//! The surface is aligned with the command-line interface: callers hand over
//! a manifest document, receive an opaque validated geometry handle, and get
//! results back as the same tab-separated machine records the CLI emits with
//! `--machine`, so one parser serves both transports. All functions return a
//! status code; string outputs are owned by the library and must be released
//! with [`ogw_string_free`]. A thread-local message with the details of the
//! most recent failure is available from [`ogw_last_error_message`].
//!
//! Every entry point catches panics at the boundary and reports
//! `OgwStatus::Panic` instead of unwinding into foreign frames.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use toric_ogw::gkz;
use toric_ogw::manifest::{parse_manifest, Manifest};
use toric_ogw::mirror::MirrorMap;
use toric_ogw::opengw::OpenGw;
use toric_ogw::render;
use toric_ogw::toric::ToricCYData;

/// Result codes for every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OgwStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The manifest failed to parse.
    ParseError = 3,
    /// The manifest parsed but violates a construction invariant.
    InvalidGeometry = 4,
    /// A computation rejected its input (for example an out-of-range ray, or
    /// a volume request needing a triangulation).
    ComputeError = 5,
    /// The GKZ check ran but at least one residual survived.
    ResidualFailure = 6,
    /// A panic was caught at the boundary.
    Panic = 7,
}

/// Opaque handle to a parsed, validated geometry.
pub struct OgwGeometry {
    manifest: Manifest,
    data: ToricCYData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let stored = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn guard(body: impl FnOnce() -> OgwStatus) -> OgwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".into());
            set_error(format!("internal panic: {message}"));
            OgwStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, OgwStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(OgwStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        OgwStatus::InvalidUtf8
    })
}

fn write_string(out: *mut *mut c_char, value: String) -> OgwStatus {
    if out.is_null() {
        set_error("null output pointer");
        return OgwStatus::NullPointer;
    }
    match CString::new(value) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            OgwStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            OgwStatus::ComputeError
        }
    }
}

unsafe fn geometry_ref<'a>(handle: *const OgwGeometry) -> Result<&'a OgwGeometry, OgwStatus> {
    if handle.is_null() {
        set_error("null geometry handle");
        return Err(OgwStatus::NullPointer);
    }
    Ok(&*handle)
}

/// Parse and validate a manifest document. On success `*out` owns a geometry
/// handle that must be released with [`ogw_geometry_free`].
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ogw_geometry_parse(
    text: *const c_char,
    out: *mut *mut OgwGeometry,
) -> OgwStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return OgwStatus::NullPointer;
        }
        let text = match read_utf8(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let manifest = match parse_manifest(text) {
            Ok(m) => m,
            Err(err) => {
                set_error(err.to_string());
                return OgwStatus::ParseError;
            }
        };
        let data = manifest.to_data();
        let report = data.validate();
        if !report.is_ok() {
            set_error(report.to_string());
            return OgwStatus::InvalidGeometry;
        }
        let handle = Box::new(OgwGeometry { manifest, data });
        *out = Box::into_raw(handle);
        OgwStatus::Ok
    })
}

/// Release a geometry handle. Null is accepted and ignored.
///
/// # Safety
/// `handle` must be null or a pointer previously returned by
/// [`ogw_geometry_parse`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ogw_geometry_free(handle: *mut OgwGeometry) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// The truncation order the manifest requests (the default when unset).
///
/// # Safety
/// `handle` must be a live geometry handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ogw_default_order(
    handle: *const OgwGeometry,
    out: *mut u32,
) -> OgwStatus {
    guard(|| {
        let geometry = match geometry_ref(handle) {
            Ok(g) => g,
            Err(status) => return status,
        };
        if out.is_null() {
            set_error("null output pointer");
            return OgwStatus::NullPointer;
        }
        *out = geometry.manifest.order;
        OgwStatus::Ok
    })
}

/// Open Gromov-Witten generating function as `GEN` records.
///
/// # Safety
/// `handle` must be a live geometry handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ogw_generating_function(
    handle: *const OgwGeometry,
    order: u32,
    out: *mut *mut c_char,
) -> OgwStatus {
    guard(|| {
        let geometry = match geometry_ref(handle) {
            Ok(g) => g,
            Err(status) => return status,
        };
        match OpenGw::compute(&geometry.data, order) {
            Ok(ogw) => write_string(
                out,
                render::series_records("GEN", None, ogw.generating_function()),
            ),
            Err(err) => {
                set_error(err.to_string());
                OgwStatus::ComputeError
            }
        }
    })
}

/// SYZ-map components as `SYZ` records (component index first).
///
/// # Safety
/// `handle` must be a live geometry handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ogw_syz_map(
    handle: *const OgwGeometry,
    order: u32,
    out: *mut *mut c_char,
) -> OgwStatus {
    guard(|| {
        let geometry = match geometry_ref(handle) {
            Ok(g) => g,
            Err(status) => return status,
        };
        match OpenGw::compute(&geometry.data, order) {
            Ok(ogw) => {
                let mut text = String::new();
                for (a, y_a) in ogw.syz_map().iter().enumerate() {
                    text.push_str(&render::series_records("SYZ", Some(a), y_a));
                }
                write_string(out, text)
            }
            Err(err) => {
                set_error(err.to_string());
                OgwStatus::ComputeError
            }
        }
    })
}

/// One correction series as `XI` records (ray index first).
///
/// # Safety
/// `handle` must be a live geometry handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ogw_xi(
    handle: *const OgwGeometry,
    ray: usize,
    order: u32,
    out: *mut *mut c_char,
) -> OgwStatus {
    guard(|| {
        let geometry = match geometry_ref(handle) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let z = match geometry.data.compactify() {
            Ok(z) => z,
            Err(err) => {
                set_error(err.to_string());
                return OgwStatus::ComputeError;
            }
        };
        if ray >= toric_ogw::toric::ToricGeometry::num_rays(&z) {
            set_error(format!("ray index {ray} out of range"));
            return OgwStatus::ComputeError;
        }
        let xi = toric_ogw::mirror::compute_xi(&z, ray, order);
        write_string(out, render::series_records("XI", Some(ray), &xi))
    })
}

/// Forward mirror-map series parts as `LOGQ` records (component index first;
/// the leading `log y_a` term is implicit).
///
/// # Safety
/// `handle` must be a live geometry handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ogw_mirror_map(
    handle: *const OgwGeometry,
    order: u32,
    out: *mut *mut c_char,
) -> OgwStatus {
    guard(|| {
        let geometry = match geometry_ref(handle) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let z = match geometry.data.compactify() {
            Ok(z) => z,
            Err(err) => {
                set_error(err.to_string());
                return OgwStatus::ComputeError;
            }
        };
        let mm = MirrorMap::new(&z, order);
        let mut text = String::new();
        for (a, logq) in mm.log_components().iter().enumerate() {
            text.push_str(&render::series_records("LOGQ", Some(a), &logq.series_part()));
        }
        write_string(out, text)
    })
}

/// Inverted mirror-map components as `INVMAP` records (component index first).
///
/// # Safety
/// `handle` must be a live geometry handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ogw_inverse_mirror_map(
    handle: *const OgwGeometry,
    order: u32,
    out: *mut *mut c_char,
) -> OgwStatus {
    guard(|| {
        let geometry = match geometry_ref(handle) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let z = match geometry.data.compactify() {
            Ok(z) => z,
            Err(err) => {
                set_error(err.to_string());
                return OgwStatus::ComputeError;
            }
        };
        let mm = MirrorMap::new(&z, order);
        let mut text = String::new();
        for (a, y_a) in mm.inverse().iter().enumerate() {
            text.push_str(&render::series_records("INVMAP", Some(a), y_a));
        }
        write_string(out, text)
    })
}

/// Normalized polytope volume (uses the manifest's cones when present).
///
/// # Safety
/// `handle` must be a live geometry handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ogw_volume(handle: *const OgwGeometry, out: *mut u64) -> OgwStatus {
    guard(|| {
        let geometry = match geometry_ref(handle) {
            Ok(g) => g,
            Err(status) => return status,
        };
        if out.is_null() {
            set_error("null output pointer");
            return OgwStatus::NullPointer;
        }
        match geometry
            .data
            .normalized_volume(geometry.manifest.cones.as_deref())
        {
            Ok(volume) => {
                *out = volume;
                OgwStatus::Ok
            }
            Err(err) => {
                set_error(err.to_string());
                OgwStatus::ComputeError
            }
        }
    })
}

/// Run the GKZ annihilation suite; `*out` receives `RESIDUAL` records
/// followed by the `VOLUME` record. Returns `ResidualFailure` (with `*out`
/// still populated) when any residual survives.
///
/// # Safety
/// `handle` must be a live geometry handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ogw_gkz_check(
    handle: *const OgwGeometry,
    order: u32,
    degree_bound: u32,
    out: *mut *mut c_char,
) -> OgwStatus {
    guard(|| {
        let geometry = match geometry_ref(handle) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let z = match geometry.data.compactify() {
            Ok(z) => z,
            Err(err) => {
                set_error(err.to_string());
                return OgwStatus::ComputeError;
            }
        };
        let report = match gkz::check_solutions(
            &z,
            order,
            degree_bound,
            geometry.manifest.cones.as_deref(),
        ) {
            Ok(report) => report,
            Err(err) => {
                set_error(err.to_string());
                return OgwStatus::ComputeError;
            }
        };
        let mut text = render::residual_records(&report);
        text.push_str(&render::volume_record(report.expected_solutions));
        let status = write_string(out, text);
        if status != OgwStatus::Ok {
            return status;
        }
        if report.all_passed() {
            OgwStatus::Ok
        } else {
            set_error(report.to_string());
            OgwStatus::ResidualFailure
        }
    })
}

/// Detail message for the most recent failure on this thread, or null when
/// the last call succeeded. The caller frees it with [`ogw_string_free`].
#[no_mangle]
pub extern "C" fn ogw_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(message) => message.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Release a string returned by this library. Null is accepted and ignored.
///
/// # Safety
/// `s` must be null or a string pointer returned by this library that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn ogw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
