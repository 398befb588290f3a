//! C ABI for the ncdirac library.
//!
//! Conventions, which also govern the generated `include/ncdirac.h`:
//!
//! * Every fallible entry point returns an [`NcdiracStatus`]; out-pointers
//!   are written only when the call returns `OK`.
//! * On any failure a human-readable message is stored in thread-local
//!   state; fetch it with [`ncdirac_last_error_message`] before the next
//!   failing call on the same thread.
//! * Handles are opaque, immutable once built, and must be released exactly
//!   once with their matching `_free` function. `const char *` values
//!   returned by accessors borrow from the handle and die with it.
//! * `alpha` parameters accept either a value in (0, 1] (direct mode) or
//!   NaN, which derives α from the constraint |θ||θ̄| = 4α²(1−α²). Passing
//!   a direct α together with two nonzero magnitudes is rejected unless the
//!   triple already satisfies the constraint.
//! * θ is given in m² and θ̄ in the mirrored area convention, both as
//!   magnitudes along the +z quantization axis, exactly like the CLI.
//! * Strings cross the boundary as NUL-terminated UTF-8.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ncdirac::dirac::energy;
use ncdirac::ncps::{corrections, spacings};
use ncdirac::report::{
    parse_config, render_levels, render_matrices, render_spacings, run, run_matrices, run_spacings,
};
use ncdirac::{AlphaShiftForm, CorrectionBreakdown, Error, PhysicalConstants, RunConfig, Spacing};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcdiracStatus {
    /// Success; out-pointers have been written.
    Ok = 0,
    /// Invalid configuration or argument: unknown level label, malformed
    /// config text, inconsistent α triple, index out of range.
    Config = 2,
    /// Domain failure in the physics: supercritical charge, divergent or
    /// non-convergent integral, non-finite intermediate.
    Domain = 3,
    /// A required pointer argument was NULL.
    NullArg = 4,
    /// A string argument was not valid UTF-8.
    Utf8 = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Functional form of the level-wide α shift; pass as the `form` argument.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcdiracAlphaForm {
    /// Quartic coupling (Ze²)² — the default used by the CLI.
    Quartic = 0,
    /// Cubic coupling Z²(e²)^(3/2).
    Cubic = 1,
}

/// Table selector; pass as the `table` argument of [`ncdirac_render`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcdiracTable {
    /// Per-sublevel level diagram.
    Levels = 0,
    /// The five n = 2 sublevel spacings.
    Spacings = 1,
    /// Secular matrices in natural units.
    Matrices = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").expect("empty"));
}

fn set_error(msg: &str) {
    // Interior NULs cannot appear in our own messages, but never panic here.
    let clean: String = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(clean).unwrap_or_default();
    });
}

fn fail(e: &Error) -> NcdiracStatus {
    set_error(&e.to_string());
    match e.exit_code() {
        2 => NcdiracStatus::Config,
        _ => NcdiracStatus::Domain,
    }
}

fn null_arg(name: &str) -> NcdiracStatus {
    set_error(&format!("argument {name:?} must not be NULL"));
    NcdiracStatus::NullArg
}

fn config_error(msg: &str) -> NcdiracStatus {
    set_error(msg);
    NcdiracStatus::Config
}

/// Runs `f` with a panic guard so unwinding never crosses the C boundary.
fn guard(f: impl FnOnce() -> NcdiracStatus) -> NcdiracStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic caught at the C boundary");
            NcdiracStatus::Panic
        }
    }
}

/// # Safety
/// `p` must be NULL or a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, NcdiracStatus> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("argument {name:?} is not valid UTF-8"));
        NcdiracStatus::Utf8
    })
}

fn alpha_form_of(form: i32) -> Result<AlphaShiftForm, NcdiracStatus> {
    match form {
        0 => Ok(AlphaShiftForm::Quartic),
        1 => Ok(AlphaShiftForm::Cubic),
        other => Err(config_error(&format!(
            "form must be 0 (quartic) or 1 (cubic), got {other}"
        ))),
    }
}

/// Assembles the same configuration the CLI would build from flags, so the
/// validation rules (α exclusivity, magnitude checks) match exactly.
fn build_config(
    labels: Vec<String>,
    z: f64,
    theta_m2: f64,
    thetabar: f64,
    alpha: f64,
    form: AlphaShiftForm,
) -> RunConfig {
    RunConfig {
        z,
        levels: labels,
        theta_m2,
        thetabar,
        alpha: if alpha.is_nan() { None } else { Some(alpha) },
        alpha_form: form,
        ..RunConfig::default()
    }
}

/// NUL-terminated library version string; static, never freed.
#[no_mangle]
pub extern "C" fn ncdirac_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the most recent failure on the calling thread, as a
/// NUL-terminated UTF-8 string. Empty until the first failure. The pointer
/// stays valid until the next failing `ncdirac_*` call on the same thread;
/// do not free it.
#[no_mangle]
pub extern "C" fn ncdirac_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Exact Dirac energy of one level in eV (rest mass included).
///
/// `label` is a spectroscopic label such as `"2P3/2"`; `z` is the nuclear
/// charge. On success writes the energy to `*out_ev`.
///
/// # Safety
/// `label` must be a NUL-terminated string valid for reads; `out_ev` must be
/// valid for writes or NULL (NULL is rejected with `NULL_ARG`).
#[no_mangle]
pub unsafe extern "C" fn ncdirac_level_energy_ev(
    label: *const c_char,
    z: f64,
    out_ev: *mut f64,
) -> NcdiracStatus {
    guard(|| {
        if out_ev.is_null() {
            return null_arg("out_ev");
        }
        let label = match read_str(label, "label") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let cfg = build_config(
            vec![label.to_string()],
            z,
            0.0,
            0.0,
            f64::NAN,
            AlphaShiftForm::Quartic,
        );
        let c = PhysicalConstants::new();
        let level = match cfg.parsed_levels() {
            Ok(mut ls) => ls.remove(0),
            Err(e) => return fail(&e),
        };
        match energy(&level, &c) {
            Ok(e) => {
                *out_ev = e;
                NcdiracStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Opaque handle: one level's correction breakdown plus its Dirac energy.
pub struct NcdiracBreakdown {
    e_dirac_ev: f64,
    inner: CorrectionBreakdown,
    level_label: CString,
    sublevel_labels: Vec<CString>,
}

/// Computes the correction breakdown of one level and returns it as an
/// opaque handle in `*out`.
///
/// `label` is a spectroscopic level label (`"2S1/2"`, `"2P3/2"`, …), `z` the
/// nuclear charge, `theta_m2` and `thetabar` the noncommutativity magnitudes
/// along +z (θ in m², θ̄ in the mirrored area convention), `alpha` either a
/// direct value in (0, 1] or NaN for constraint mode, and `form` an
/// [`NcdiracAlphaForm`] value. Free the handle with
/// [`ncdirac_breakdown_free`].
///
/// # Safety
/// `label` must be a NUL-terminated string valid for reads; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_new(
    label: *const c_char,
    z: f64,
    theta_m2: f64,
    thetabar: f64,
    alpha: f64,
    form: i32,
    out: *mut *mut NcdiracBreakdown,
) -> NcdiracStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let label = match read_str(label, "label") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let form = match alpha_form_of(form) {
            Ok(f) => f,
            Err(st) => return st,
        };
        let cfg = build_config(vec![label.to_string()], z, theta_m2, thetabar, alpha, form);
        let c = PhysicalConstants::new();
        let level = match cfg.parsed_levels() {
            Ok(mut ls) => ls.remove(0),
            Err(e) => return fail(&e),
        };
        let params = match cfg.nc_params(&c) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        let e_dirac_ev = match energy(&level, &c) {
            Ok(e) => e,
            Err(e) => return fail(&e),
        };
        let inner = match corrections(&level, &params, cfg.alpha_form, &c) {
            Ok(b) => b,
            Err(e) => return fail(&e),
        };
        let level_label = CString::new(level.label()).expect("labels contain no NUL");
        let sublevel_labels = inner
            .sublevels
            .iter()
            .map(|s| CString::new(s.label.as_str()).expect("labels contain no NUL"))
            .collect();
        let handle = Box::new(NcdiracBreakdown {
            e_dirac_ev,
            inner,
            level_label,
            sublevel_labels,
        });
        *out = Box::into_raw(handle);
        NcdiracStatus::Ok
    })
}

/// Canonical level label of a breakdown, borrowed from the handle; NULL if
/// `h` is NULL.
///
/// # Safety
/// `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_level_label(
    h: *const NcdiracBreakdown,
) -> *const c_char {
    match h.as_ref() {
        Some(h) => h.level_label.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Dirac energy of the level in eV; NaN if `h` is NULL.
///
/// # Safety
/// `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_e_dirac_ev(h: *const NcdiracBreakdown) -> f64 {
    match h.as_ref() {
        Some(h) => h.e_dirac_ev,
        None => f64::NAN,
    }
}

/// Level-wide α shift in eV; NaN if `h` is NULL.
///
/// # Safety
/// `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_delta_alpha_ev(h: *const NcdiracBreakdown) -> f64 {
    match h.as_ref() {
        Some(h) => h.inner.delta_e_alpha,
        None => f64::NAN,
    }
}

/// True when the level lies outside the closed-form-validated set and its
/// radial integrals came from quadrature alone; false if `h` is NULL.
///
/// # Safety
/// `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_beyond_validated(h: *const NcdiracBreakdown) -> bool {
    match h.as_ref() {
        Some(h) => h.inner.beyond_validated,
        None => false,
    }
}

/// Number of sublevels (2j + 1); 0 if `h` is NULL.
///
/// # Safety
/// `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_sublevel_count(h: *const NcdiracBreakdown) -> usize {
    match h.as_ref() {
        Some(h) => h.inner.sublevels.len(),
        None => 0,
    }
}

/// Label of sublevel `index` (descending j_z, e.g. `"jz=+3/2"`), borrowed
/// from the handle; NULL if `h` is NULL or `index` is out of range.
///
/// # Safety
/// `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_sublevel_label(
    h: *const NcdiracBreakdown,
    index: usize,
) -> *const c_char {
    match h.as_ref() {
        Some(h) => match h.sublevel_labels.get(index) {
            Some(s) => s.as_ptr(),
            None => std::ptr::null(),
        },
        None => std::ptr::null(),
    }
}

/// Correction values of sublevel `index` in eV: the θ term, the θ̄ term, and
/// their total including the level-wide α shift. The full sublevel energy is
/// `ncdirac_breakdown_e_dirac_ev(h) + *total_correction_ev`.
///
/// # Safety
/// `h` must be a live handle from [`ncdirac_breakdown_new`]; the three out
/// pointers must each be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_sublevel_values(
    h: *const NcdiracBreakdown,
    index: usize,
    e_theta_ev: *mut f64,
    e_thetabar_ev: *mut f64,
    total_correction_ev: *mut f64,
) -> NcdiracStatus {
    guard(|| {
        let h = match h.as_ref() {
            Some(h) => h,
            None => return null_arg("h"),
        };
        for (name, p) in [
            ("e_theta_ev", e_theta_ev),
            ("e_thetabar_ev", e_thetabar_ev),
            ("total_correction_ev", total_correction_ev),
        ] {
            if p.is_null() {
                return null_arg(name);
            }
        }
        let s = match h.inner.sublevels.get(index) {
            Some(s) => s,
            None => {
                return config_error(&format!(
                    "sublevel index {index} out of range (count {})",
                    h.inner.sublevels.len()
                ))
            }
        };
        *e_theta_ev = s.e_theta;
        *e_thetabar_ev = s.e_thetabar;
        *total_correction_ev = s.total;
        NcdiracStatus::Ok
    })
}

/// Releases a breakdown handle. NULL is a no-op. Label pointers obtained
/// from the handle are invalid afterwards.
///
/// # Safety
/// `h` must be NULL or a handle from [`ncdirac_breakdown_new`] that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn ncdirac_breakdown_free(h: *mut NcdiracBreakdown) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Opaque handle: the five n = 2 sublevel spacings.
pub struct NcdiracSpacings {
    rows: Vec<Spacing>,
    labels: Vec<CString>,
}

/// Computes the five n = 2 sublevel spacings and returns them as an opaque
/// handle in `*out`. Each spacing is the emission-ordered difference
/// A·|θ|/α³ + B·|θ̄|/α; the coefficients A and B depend only on `z`.
/// Parameters follow [`ncdirac_breakdown_new`]. Free the handle with
/// [`ncdirac_spacings_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ncdirac_spacings_new(
    z: f64,
    theta_m2: f64,
    thetabar: f64,
    alpha: f64,
    out: *mut *mut NcdiracSpacings,
) -> NcdiracStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let cfg = build_config(
            vec!["2S1/2".into()],
            z,
            theta_m2,
            thetabar,
            alpha,
            AlphaShiftForm::Quartic,
        );
        let c = PhysicalConstants::new();
        let params = match cfg.nc_params(&c) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        let rows = match spacings(&params, &c, z) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let labels = rows
            .iter()
            .map(|r| CString::new(r.label.as_str()).expect("labels contain no NUL"))
            .collect();
        *out = Box::into_raw(Box::new(NcdiracSpacings { rows, labels }));
        NcdiracStatus::Ok
    })
}

/// Number of spacings (always 5 for a live handle); 0 if `h` is NULL.
///
/// # Safety
/// `h` must be NULL or a live handle from [`ncdirac_spacings_new`].
#[no_mangle]
pub unsafe extern "C" fn ncdirac_spacings_count(h: *const NcdiracSpacings) -> usize {
    match h.as_ref() {
        Some(h) => h.rows.len(),
        None => 0,
    }
}

/// Transition label of spacing `index` (e.g.
/// `"2P1/2[jz=-1/2] -> 2S1/2[jz=-1/2]"`), borrowed from the handle; NULL if
/// `h` is NULL or `index` is out of range.
///
/// # Safety
/// `h` must be NULL or a live handle from [`ncdirac_spacings_new`].
#[no_mangle]
pub unsafe extern "C" fn ncdirac_spacings_label(
    h: *const NcdiracSpacings,
    index: usize,
) -> *const c_char {
    match h.as_ref() {
        Some(h) => match h.labels.get(index) {
            Some(s) => s.as_ptr(),
            None => std::ptr::null(),
        },
        None => std::ptr::null(),
    }
}

/// Coefficients and value of spacing `index`: A in eV per m² of θ, B in eV
/// per unit of θ̄ (mirrored area convention), and the evaluated gap in eV.
///
/// # Safety
/// `h` must be a live handle from [`ncdirac_spacings_new`]; the three out
/// pointers must each be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ncdirac_spacings_values(
    h: *const NcdiracSpacings,
    index: usize,
    a_ev_per_m2: *mut f64,
    b_ev_per_unit: *mut f64,
    value_ev: *mut f64,
) -> NcdiracStatus {
    guard(|| {
        let h = match h.as_ref() {
            Some(h) => h,
            None => return null_arg("h"),
        };
        for (name, p) in [
            ("a_ev_per_m2", a_ev_per_m2),
            ("b_ev_per_unit", b_ev_per_unit),
            ("value_ev", value_ev),
        ] {
            if p.is_null() {
                return null_arg(name);
            }
        }
        let r = match h.rows.get(index) {
            Some(r) => r,
            None => {
                return config_error(&format!(
                    "spacing index {index} out of range (count {})",
                    h.rows.len()
                ))
            }
        };
        *a_ev_per_m2 = r.a_ev_per_area;
        *b_ev_per_unit = r.b_ev_per_area;
        *value_ev = r.value_ev;
        NcdiracStatus::Ok
    })
}

/// Releases a spacings handle. NULL is a no-op.
///
/// # Safety
/// `h` must be NULL or a handle from [`ncdirac_spacings_new`] that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn ncdirac_spacings_free(h: *mut NcdiracSpacings) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Renders one output table from config text and returns it as a freshly
/// allocated NUL-terminated string in `*out_text`; free it with
/// [`ncdirac_string_free`].
///
/// `config_text` uses the same line-oriented `key = value` syntax as the
/// CLI's `--config` file (empty string = defaults; the `out` key is ignored
/// here). `table` selects the table as an [`NcdiracTable`] value; the
/// config's `format` key picks CSV or JSON.
///
/// # Safety
/// `config_text` must be a NUL-terminated string valid for reads; `out_text`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ncdirac_render(
    config_text: *const c_char,
    table: i32,
    out_text: *mut *mut c_char,
) -> NcdiracStatus {
    guard(|| {
        if out_text.is_null() {
            return null_arg("out_text");
        }
        let text = match read_str(config_text, "config_text") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let cfg = match parse_config(text) {
            Ok(cfg) => cfg,
            Err(e) => return fail(&e),
        };
        let c = PhysicalConstants::new();
        let rendered = match table {
            0 => run(&cfg, &c).map(|d| render_levels(&d, cfg.format)),
            1 => run_spacings(&cfg, &c).map(|t| render_spacings(&t, cfg.format)),
            2 => run_matrices(&cfg, &c).map(|t| render_matrices(&t, cfg.format)),
            other => {
                return config_error(&format!(
                    "table must be 0 (levels), 1 (spacings), or 2 (matrices), got {other}"
                ))
            }
        };
        match rendered {
            Ok(text) => {
                let owned = CString::new(text).expect("rendered tables contain no NUL");
                *out_text = owned.into_raw();
                NcdiracStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Frees a string returned by [`ncdirac_render`]. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a pointer from [`ncdirac_render`] that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn ncdirac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
