//! C ABI for `leafstab`.
//!
//! Every function returns a [`LeafstabStatus`]; on failure a message is
//! kept per thread and can be read with [`leafstab_last_error_message`].
//! Reports are opaque handles created by the `*_analyze` functions and
//! released with [`leafstab_report_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use leafstab::cli::config::{Resolved, RunConfig};
use leafstab::cli::CliError;
use leafstab::numerics::{DefinitenessClass, SymMatrix};
use leafstab::spacecraft::{self, SpacecraftParams, SpacecraftStabilityReport};
use leafstab::underwater::{self, UnderwaterStabilityReport, VehicleParams};
use leafstab::{Error, Verdict};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafstabStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed configuration text.
    Config = 2,
    /// Parameters outside the model's domain (admissibility, chart, blow-up).
    Domain = 3,
    /// Internal inconsistency or a numerical routine that did not converge.
    Internal = 4,
    /// The call does not apply to this report.
    InvalidArgument = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafstabSystem {
    Spacecraft = 0,
    Underwater = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafstabVerdict {
    StableSufficient = 0,
    Inconclusive = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafstabDefiniteness {
    PositiveDefinite = 0,
    NegativeDefinite = 1,
    Indefinite = 2,
    Marginal = 3,
}

/// Spacecraft on a stationary orbit. Units: kg m^2, rad/s, 1/s^2.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LeafstabSpacecraftParams {
    pub inertia: [f64; 3],
    pub omega_t: f64,
    pub k: [f64; 3],
}

/// Underwater vehicle. Masses include added mass, inertias added inertia.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LeafstabVehicleParams {
    pub m: f64,
    pub g: f64,
    pub l: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub i11: f64,
    pub i12: f64,
    pub i22: f64,
    pub i3: f64,
}

enum Inner {
    Spacecraft(SpacecraftStabilityReport),
    Underwater(UnderwaterStabilityReport),
}

/// Opaque stability report.
pub struct LeafstabReport {
    inner: Inner,
}

impl LeafstabReport {
    fn hessian(&self) -> &SymMatrix {
        match &self.inner {
            Inner::Spacecraft(r) => &r.hessian,
            Inner::Underwater(r) => &r.hessian,
        }
    }

    fn eigenvalues(&self) -> &[f64] {
        match &self.inner {
            Inner::Spacecraft(r) => &r.eigenvalues,
            Inner::Underwater(r) => &r.eigenvalues,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> LeafstabStatus {
    match e {
        Error::InternalInconsistency(_) | Error::Convergence { .. } => LeafstabStatus::Internal,
        _ => LeafstabStatus::Domain,
    }
}

fn fail(status: LeafstabStatus, msg: impl Into<String>) -> LeafstabStatus {
    set_last_error(msg);
    status
}

fn from_cli(e: CliError) -> LeafstabStatus {
    let status = match &e {
        CliError::Config(_) => LeafstabStatus::Config,
        CliError::Domain(inner) => status_of(inner),
        CliError::Io(_) | CliError::Check(_) => LeafstabStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into [`LeafstabStatus::Panic`].
fn guard<F: FnOnce() -> LeafstabStatus + UnwindSafe>(f: F) -> LeafstabStatus {
    catch_unwind(f).unwrap_or_else(|_| fail(LeafstabStatus::Panic, "panic inside leafstab"))
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn emit(out: *mut *mut LeafstabReport, inner: Inner) -> LeafstabStatus {
    *out = Box::into_raw(Box::new(LeafstabReport { inner }));
    LeafstabStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn leafstab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len > 0`) and returns the buffer size the
/// full message needs, including the terminator. Returns 0 when there is
/// no message.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn leafstab_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Stability analysis of a spacecraft's relative equilibrium.
///
/// # Safety
/// `params` must point to a valid struct and `out` must be valid for a
/// pointer write. On success `*out` owns a report.
#[no_mangle]
pub unsafe extern "C" fn leafstab_spacecraft_analyze(
    params: *const LeafstabSpacecraftParams,
    out: *mut *mut LeafstabReport,
) -> LeafstabStatus {
    if params.is_null() || out.is_null() {
        return fail(LeafstabStatus::NullPointer, "null argument");
    }
    let p = *params;
    guard(move || {
        let params = SpacecraftParams { inertia: p.inertia, omega_t: p.omega_t, k: p.k };
        match spacecraft::stability_analysis(&params) {
            Ok(r) => emit(out, Inner::Spacecraft(r)),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Stability analysis of an underwater vehicle translating with impulse
/// `q2e` along its second axis.
///
/// # Safety
/// As [`leafstab_spacecraft_analyze`].
#[no_mangle]
pub unsafe extern "C" fn leafstab_underwater_analyze(
    params: *const LeafstabVehicleParams,
    q2e: f64,
    out: *mut *mut LeafstabReport,
) -> LeafstabStatus {
    if params.is_null() || out.is_null() {
        return fail(LeafstabStatus::NullPointer, "null argument");
    }
    let p = *params;
    guard(move || {
        let v = VehicleParams {
            m: p.m,
            g: p.g,
            l: p.l,
            m1: p.m1,
            m2: p.m2,
            m3: p.m3,
            i11: p.i11,
            i12: p.i12,
            i22: p.i22,
            i3: p.i3,
        };
        match underwater::stability_analysis(q2e, &v) {
            Ok(r) => emit(out, Inner::Underwater(r)),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Stability analysis of a JSON run configuration (the format the
/// command-line tool reads).
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` as above.
#[no_mangle]
pub unsafe extern "C" fn leafstab_analyze_config_json(
    json: *const c_char,
    out: *mut *mut LeafstabReport,
) -> LeafstabStatus {
    if json.is_null() || out.is_null() {
        return fail(LeafstabStatus::NullPointer, "null argument");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t.to_owned(),
        Err(_) => return fail(LeafstabStatus::Config, "config is not valid UTF-8"),
    };
    guard(move || {
        let resolved = match RunConfig::parse(&text).and_then(|c| c.resolve()) {
            Ok(r) => r,
            Err(e) => return from_cli(e),
        };
        let result = match resolved {
            Resolved::Spacecraft { params, .. } => spacecraft::stability_analysis(&params).map(Inner::Spacecraft),
            Resolved::Underwater { vehicle, q2e } => {
                underwater::stability_analysis(q2e, &vehicle).map(Inner::Underwater)
            }
        };
        match result {
            Ok(inner) => emit(out, inner),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `report` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_free(report: *mut LeafstabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

macro_rules! deref_or_fail {
    ($report:expr, $out:expr) => {{
        if $report.is_null() || $out.is_null() {
            return fail(LeafstabStatus::NullPointer, "null argument");
        }
        &*$report
    }};
}

/// # Safety
/// `report` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_system(
    report: *const LeafstabReport,
    out: *mut LeafstabSystem,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, out);
    *out = match r.inner {
        Inner::Spacecraft(_) => LeafstabSystem::Spacecraft,
        Inner::Underwater(_) => LeafstabSystem::Underwater,
    };
    LeafstabStatus::Ok
}

/// # Safety
/// `report` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_verdict(
    report: *const LeafstabReport,
    out: *mut LeafstabVerdict,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, out);
    let verdict = match &r.inner {
        Inner::Spacecraft(s) => s.verdict,
        Inner::Underwater(u) => u.verdict,
    };
    *out = match verdict {
        Verdict::StableSufficient => LeafstabVerdict::StableSufficient,
        Verdict::Inconclusive => LeafstabVerdict::Inconclusive,
    };
    LeafstabStatus::Ok
}

/// # Safety
/// `report` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_definiteness(
    report: *const LeafstabReport,
    out: *mut LeafstabDefiniteness,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, out);
    let class = match &r.inner {
        Inner::Spacecraft(s) => s.definiteness.class,
        Inner::Underwater(u) => u.definiteness.class,
    };
    *out = match class {
        DefinitenessClass::PositiveDefinite => LeafstabDefiniteness::PositiveDefinite,
        DefinitenessClass::NegativeDefinite => LeafstabDefiniteness::NegativeDefinite,
        DefinitenessClass::Indefinite => LeafstabDefiniteness::Indefinite,
        DefinitenessClass::Marginal => LeafstabDefiniteness::Marginal,
    };
    LeafstabStatus::Ok
}

/// Writes the 6x6 reduced Hessian in row-major order into `out`, which
/// must hold at least 36 doubles.
///
/// # Safety
/// `report` must be a live handle and `out` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_hessian(
    report: *const LeafstabReport,
    out: *mut f64,
    len: usize,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, out);
    let h = r.hessian();
    let n = h.dim();
    if len < n * n {
        return fail(LeafstabStatus::BufferTooSmall, format!("need {} doubles, got {len}", n * n));
    }
    for i in 0..n {
        for j in 0..n {
            *out.add(i * n + j) = h.get(i, j);
        }
    }
    LeafstabStatus::Ok
}

/// Writes the six Hessian eigenvalues in ascending order.
///
/// # Safety
/// `report` must be a live handle and `out` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_eigenvalues(
    report: *const LeafstabReport,
    out: *mut f64,
    len: usize,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, out);
    let ev = r.eigenvalues();
    if len < ev.len() {
        return fail(LeafstabStatus::BufferTooSmall, format!("need {} doubles, got {len}", ev.len()));
    }
    ptr::copy_nonoverlapping(ev.as_ptr(), out, ev.len());
    LeafstabStatus::Ok
}

/// Largest finite-difference gradient component at the equilibrium.
///
/// # Safety
/// `report` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_critical_residual(
    report: *const LeafstabReport,
    out: *mut f64,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, out);
    *out = match &r.inner {
        Inner::Spacecraft(s) => s.critical_residual,
        Inner::Underwater(u) => u.critical_residual,
    };
    LeafstabStatus::Ok
}

/// Stability conditions as a bit mask (bit `i` set when condition `i`
/// holds) and their number: three for a spacecraft, four for a vehicle
/// (`Q2 != 0`, `l > 0`, restoring margin, `m2 > m1`).
///
/// # Safety
/// `report` must be a live handle; `mask` and `count` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_conditions(
    report: *const LeafstabReport,
    mask: *mut u32,
    count: *mut usize,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, mask);
    if count.is_null() {
        return fail(LeafstabStatus::NullPointer, "null argument");
    }
    let flags: Vec<bool> = match &r.inner {
        Inner::Spacecraft(s) => vec![s.condition1, s.condition2, s.condition3],
        Inner::Underwater(u) => {
            let c = u.conditions;
            vec![c.q2_nonzero, c.offset_positive, c.restoring_margin, c.m2_exceeds_m1]
        }
    };
    *mask = flags.iter().enumerate().fold(0, |m, (i, &f)| m | (u32::from(f) << i));
    *count = flags.len();
    LeafstabStatus::Ok
}

/// Closed-form Hessian determinant; vehicle reports only.
///
/// # Safety
/// `report` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_determinant(
    report: *const LeafstabReport,
    out: *mut f64,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, out);
    match &r.inner {
        Inner::Underwater(u) => {
            *out = u.determinant_closed_form;
            LeafstabStatus::Ok
        }
        Inner::Spacecraft(_) => fail(LeafstabStatus::InvalidArgument, "no closed-form determinant for a spacecraft"),
    }
}

/// Serialises the report as JSON into a new string owned by the caller
/// and released with [`leafstab_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn leafstab_report_to_json(
    report: *const LeafstabReport,
    out: *mut *mut c_char,
) -> LeafstabStatus {
    let r = deref_or_fail!(report, out);
    let text = match &r.inner {
        Inner::Spacecraft(s) => serde_json::to_string(s),
        Inner::Underwater(u) => serde_json::to_string(u),
    };
    match text.map_err(|e| e.to_string()).and_then(|t| CString::new(t).map_err(|e| e.to_string())) {
        Ok(c) => {
            *out = c.into_raw();
            LeafstabStatus::Ok
        }
        Err(e) => fail(LeafstabStatus::Internal, e),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn leafstab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Stationary-orbit radii of the built-in 4769 Castalia model (m, ascending)
/// and their feasibility. `*count` receives the number of radii even when
/// `capacity` is too small.
///
/// # Safety
/// `radii` and `feasible` must point to `capacity` elements; `count` valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn leafstab_castalia_radii(
    radii: *mut f64,
    feasible: *mut bool,
    capacity: usize,
    count: *mut usize,
) -> LeafstabStatus {
    if radii.is_null() || feasible.is_null() || count.is_null() {
        return fail(LeafstabStatus::NullPointer, "null argument");
    }
    guard(move || {
        let found = match spacecraft::stationary_orbit_radii(&spacecraft::castalia_preset()) {
            Ok(f) => f,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        *count = found.len();
        if capacity < found.len() {
            return fail(LeafstabStatus::BufferTooSmall, format!("need {} slots, got {capacity}", found.len()));
        }
        for (i, o) in found.iter().enumerate() {
            *radii.add(i) = o.radius;
            *feasible.add(i) = o.feasible;
        }
        LeafstabStatus::Ok
    })
}
