//! C ABI over `wignerneg`.
//!
//! Fields are handed out as opaque `WnField` pointers and must be released
//! with [`wn_field_free`]. Every function returns a [`WnStatus`]; on failure
//! [`wn_last_error`] describes the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wignerneg::protocols::{distill_sweep, DistillationConfig, WindowPolicy};
use wignerneg::states::{mean_photon_numeric, GridOverrides};
use wignerneg::{fidelity_to_pure, log_negativity, ResourceStateSpec, WignerError, WignerField};

/// Result codes shared by every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    InvalidGrid = 5,
    GridMismatch = 6,
    Unnormalized = 7,
    NonConvergence = 8,
    OutOfDomain = 9,
    DegenerateConditioning = 10,
    UndefinedState = 11,
    Unsupported = 12,
    Window = 13,
    Io = 14,
    BufferTooSmall = 15,
    Panic = 16,
}

/// Sampled Wigner function.
pub struct WnField {
    inner: WignerField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &WignerError) -> WnStatus {
    match err {
        WignerError::InvalidGrid(_) => WnStatus::InvalidGrid,
        WignerError::InvalidArgument(_)
        | WignerError::InvalidCovariance(_)
        | WignerError::Truncation { .. } => WnStatus::InvalidArgument,
        WignerError::GridMismatch(_) => WnStatus::GridMismatch,
        WignerError::NonNormalizable(_) | WignerError::Unnormalized { .. } => {
            WnStatus::Unnormalized
        }
        WignerError::NonConvergence { .. } => WnStatus::NonConvergence,
        WignerError::OutOfDomain { .. } => WnStatus::OutOfDomain,
        WignerError::DegenerateConditioning { .. } => WnStatus::DegenerateConditioning,
        WignerError::UndefinedState(_) => WnStatus::UndefinedState,
        WignerError::Unsupported(_) => WnStatus::Unsupported,
        WignerError::Parse { .. } => WnStatus::Parse,
        WignerError::Window(_) => WnStatus::Window,
        WignerError::Io(_) => WnStatus::Io,
    }
}

struct Failure(WnStatus, String);

impl From<WignerError> for Failure {
    fn from(e: WignerError) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WnStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WnStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
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
            WnStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(WnStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(WnStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref_field<'a>(p: *const WnField, what: &str) -> Result<&'a WignerField, Failure> {
    p.as_ref().map(|f| &f.inner).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn parse_spec(spec: &str) -> Result<ResourceStateSpec, Failure> {
    let parsed: ResourceStateSpec = spec.parse()?;
    parsed.validate()?;
    Ok(parsed)
}

/// Message for the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn wn_status_str(status: WnStatus) -> *const c_char {
    let s: &'static CStr = match status {
        WnStatus::Ok => c"ok",
        WnStatus::NullPointer => c"null pointer",
        WnStatus::InvalidUtf8 => c"invalid UTF-8",
        WnStatus::Parse => c"cannot parse state spec",
        WnStatus::InvalidArgument => c"invalid argument",
        WnStatus::InvalidGrid => c"invalid grid",
        WnStatus::GridMismatch => c"grid mismatch",
        WnStatus::Unnormalized => c"field not normalized",
        WnStatus::NonConvergence => c"quadrature did not converge",
        WnStatus::OutOfDomain => c"support left the grid",
        WnStatus::DegenerateConditioning => c"conditioning on a zero-probability outcome",
        WnStatus::UndefinedState => c"undefined state",
        WnStatus::Unsupported => c"unsupported",
        WnStatus::Window => c"window error",
        WnStatus::Io => c"io error",
        WnStatus::BufferTooSmall => c"buffer too small",
        WnStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Samples the state described by `spec` (e.g. `cubic:gamma=0.05,P=0,s=1`)
/// on its automatic grid.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wn_state_new(spec: *const c_char, out: *mut *mut WnField) -> WnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = parse_spec(text(spec, "spec")?)?;
        let grid = spec.default_grid()?;
        let inner = spec.wigner(&grid)?;
        write_out(out, Box::into_raw(Box::new(WnField { inner })))
    })
}

/// Samples `spec` on the grid `[-q_max, q_max] × [p_min, p_max]` with
/// `n_q × n_p` nodes.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wn_state_new_on_grid(
    spec: *const c_char,
    q_max: f64,
    n_q: usize,
    p_min: f64,
    p_max: f64,
    n_p: usize,
    out: *mut *mut WnField,
) -> WnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = parse_spec(text(spec, "spec")?)?;
        let overrides = GridOverrides {
            q_max: Some(q_max),
            n_q: Some(n_q),
            p_min: Some(p_min),
            p_max: Some(p_max),
            n_p: Some(n_p),
        };
        let grid = spec.grid_with(&overrides)?;
        let inner = spec.wigner(&grid)?;
        write_out(out, Box::into_raw(Box::new(WnField { inner })))
    })
}

/// Releases a field; null is ignored.
///
/// # Safety
/// `field` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wn_field_free(field: *mut WnField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Node counts of the q and p axes.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wn_field_dims(
    field: *const WnField,
    n_q: *mut usize,
    n_p: *mut usize,
) -> WnStatus {
    guard(|| {
        let f = field_ref(field)?;
        let mode = f.grid().mode(0);
        write_out(n_q, mode.q.len())?;
        write_out(n_p, mode.p.len())
    })
}

unsafe fn field_ref<'a>(p: *const WnField) -> Result<&'a WignerField, Failure> {
    let f = deref_field(p, "field")?;
    if f.mode_count() != 1 {
        return Err(Failure(
            WnStatus::Unsupported,
            "only single-mode fields are exposed".into(),
        ));
    }
    Ok(f)
}

/// Axis bounds `[q_min, q_max, p_min, p_max]`.
///
/// # Safety
/// `bounds` must point to four writable doubles.
#[no_mangle]
pub unsafe extern "C" fn wn_field_bounds(field: *const WnField, bounds: *mut f64) -> WnStatus {
    guard(|| {
        let f = field_ref(field)?;
        if bounds.is_null() {
            return Err(null("bounds"));
        }
        let mode = f.grid().mode(0);
        let vals = [mode.q.min(), mode.q.max(), mode.p.min(), mode.p.max()];
        ptr::copy_nonoverlapping(vals.as_ptr(), bounds, 4);
        Ok(())
    })
}

/// Copies the samples (row-major, p fastest) into `buf` of length `len`.
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn wn_field_samples(
    field: *const WnField,
    buf: *mut f64,
    len: usize,
) -> WnStatus {
    guard(|| {
        let f = deref_field(field, "field")?;
        let samples = f.samples();
        if buf.is_null() {
            return Err(null("buffer"));
        }
        if len < samples.len() {
            return Err(Failure(
                WnStatus::BufferTooSmall,
                format!("buffer holds {len} values, field has {}", samples.len()),
            ));
        }
        ptr::copy_nonoverlapping(samples.as_ptr(), buf, samples.len());
        Ok(())
    })
}

/// Quadrature of the field over its grid.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wn_field_integral(field: *const WnField, out: *mut f64) -> WnStatus {
    guard(|| write_out(out, deref_field(field, "field")?.integral()))
}

/// Logarithmic negativity `ln ∫|W|`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wn_log_negativity(field: *const WnField, out: *mut f64) -> WnStatus {
    guard(|| write_out(out, log_negativity(deref_field(field, "field")?)?))
}

/// Mean photon number by quadrature.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wn_mean_photon(field: *const WnField, out: *mut f64) -> WnStatus {
    guard(|| write_out(out, mean_photon_numeric(field_ref(field)?)?))
}

/// Fidelity `4π ∫ W W_target` of `field` with the pure state `target`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wn_fidelity(
    field: *const WnField,
    target: *const WnField,
    out: *mut f64,
) -> WnStatus {
    guard(|| {
        write_out(
            out,
            fidelity_to_pure(deref_field(field, "field")?, deref_field(target, "target")?)?,
        )
    })
}

/// Writes the field as CSV `q,p,w`.
///
/// # Safety
/// `path` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wn_field_save_csv(field: *const WnField, path: *const c_char) -> WnStatus {
    guard(|| Ok(deref_field(field, "field")?.save_csv(text(path, "path")?)?))
}

/// Aggregates of a distillation sweep.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct WnDistillSummary {
    pub p_suc: f64,
    pub avg_neg: f64,
    pub post_neg: f64,
    pub ini_neg: f64,
    pub window_lo: f64,
    pub window_hi: f64,
}

/// Runs the beam-splitter / homodyne distillation on `input` with
/// transmittance `t`, choosing the window with success probability `p_suc`
/// that maximizes the negativity.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wn_distill(
    input: *const WnField,
    t: f64,
    p_suc: f64,
    out: *mut WnDistillSummary,
) -> WnStatus {
    guard(|| {
        let input = field_ref(input)?;
        let outcome = distill_sweep(
            input,
            &DistillationConfig::new(t, WindowPolicy::TargetPsuc(p_suc)),
        )?;
        let w = outcome.window();
        write_out(
            out,
            WnDistillSummary {
                p_suc: outcome.p_suc(),
                avg_neg: outcome.avg_neg(),
                post_neg: outcome.post_neg(),
                ini_neg: outcome.ini_neg,
                window_lo: w.lo,
                window_hi: w.hi,
            },
        )
    })
}
