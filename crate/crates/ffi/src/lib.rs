//! C ABI over the dispersion calculator.
//!
//! Every call returns an [`SdStatus`]; on failure a description is available
//! from [`sd_last_error_message`] until the next call on the same thread.
//! Results are written through caller-provided pointers.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stark_dispersion::analysis::{crossover_field, equilibrium_distance, Stability};
use stark_dispersion::{DispersionModel, Error, FieldConfig, Geometry};

/// Opaque calculator handle.
pub struct SdCalculator {
    model: DispersionModel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Validity = 3,
    NoRoot = 4,
    NoCrossover = 5,
    OracleFailure = 6,
    Other = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdStability {
    Stable = 0,
    Unstable = 1,
    NotApplicable = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SdEnergy {
    /// Field-assisted component (J).
    pub field_component: f64,
    /// Van der Waals baseline (J).
    pub vdw: f64,
    /// Sum of the two (J).
    pub total: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SdStatus {
    match e {
        Error::Domain(_) | Error::UnsupportedBasis { .. } => SdStatus::Domain,
        Error::Validity { .. } => SdStatus::Validity,
        Error::NoRoot(_) => SdStatus::NoRoot,
        Error::NoCrossover(_) => SdStatus::NoCrossover,
        Error::OracleFailure(_) => SdStatus::OracleFailure,
        Error::Spec(_) | Error::Config(_) => SdStatus::Other,
    }
}

fn guard<F: FnOnce() -> Result<(), (SdStatus, String)>>(f: F) -> SdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SdStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            SdStatus::Panic
        }
    }
}

fn lift(e: Error) -> (SdStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn deref<'a>(calc: *const SdCalculator) -> Result<&'a SdCalculator, (SdStatus, String)> {
    // SAFETY: caller guarantees the pointer came from sd_calculator_new and is live.
    unsafe { calc.as_ref() }.ok_or((SdStatus::NullPointer, "calculator handle is null".to_string()))
}

fn null_out() -> (SdStatus, String) {
    (SdStatus::NullPointer, "output pointer is null".to_string())
}

/// New calculator with CODATA 2018 constants. Free with [`sd_calculator_free`].
#[no_mangle]
pub extern "C" fn sd_calculator_new() -> *mut SdCalculator {
    Box::into_raw(Box::new(SdCalculator { model: DispersionModel::default() }))
}

/// # Safety
/// `calc` must be null or a pointer returned by [`sd_calculator_new`] that
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sd_calculator_free(calc: *mut SdCalculator) {
    if !calc.is_null() {
        // SAFETY: see above.
        drop(unsafe { Box::from_raw(calc) });
    }
}

/// Interaction energy at separation `r` (m), angle `theta` (rad) and fields
/// `field`, `field_prime` (V/m).
///
/// # Safety
/// `calc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_total_energy(
    calc: *const SdCalculator,
    r: f64,
    theta: f64,
    field: f64,
    field_prime: f64,
    out: *mut SdEnergy,
) -> SdStatus {
    guard(|| {
        let c = unsafe { deref(calc) }?;
        if out.is_null() {
            return Err(null_out());
        }
        let b = c
            .model
            .total_energy(Geometry::new(r, theta), FieldConfig::new(field, field_prime))
            .map_err(lift)?;
        // SAFETY: checked non-null; caller guarantees validity.
        unsafe {
            *out = SdEnergy { field_component: b.field_component, vdw: b.vdw_component, total: b.total };
        }
        Ok(())
    })
}

/// Radial force (N); positive is repulsive.
///
/// # Safety
/// `calc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_radial_force(
    calc: *const SdCalculator,
    r: f64,
    theta: f64,
    field: f64,
    field_prime: f64,
    out: *mut f64,
) -> SdStatus {
    guard(|| {
        let c = unsafe { deref(calc) }?;
        if out.is_null() {
            return Err(null_out());
        }
        let f = c
            .model
            .radial_force(Geometry::new(r, theta), FieldConfig::new(field, field_prime))
            .map_err(lift)?;
        unsafe { *out = f };
        Ok(())
    })
}

/// Field ℰ = ℰ′ (V/m) at which the field term equals the baseline in size.
///
/// # Safety
/// `calc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_crossover_field(calc: *const SdCalculator, r: f64, theta: f64, out: *mut f64) -> SdStatus {
    guard(|| {
        let c = unsafe { deref(calc) }?;
        if out.is_null() {
            return Err(null_out());
        }
        let res = crossover_field(&c.model, r, theta).map_err(lift)?;
        unsafe { *out = res.value };
        Ok(())
    })
}

/// Smallest separation in `[r_lo, r_hi]` (m) where the radial force vanishes.
/// `out_stability` may be null.
///
/// # Safety
/// `calc` must be a live handle, `out_r` a valid pointer, `out_stability`
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn sd_equilibrium_distance(
    calc: *const SdCalculator,
    theta: f64,
    field: f64,
    field_prime: f64,
    r_lo: f64,
    r_hi: f64,
    out_r: *mut f64,
    out_stability: *mut SdStability,
) -> SdStatus {
    guard(|| {
        let c = unsafe { deref(calc) }?;
        if out_r.is_null() {
            return Err(null_out());
        }
        let res = equilibrium_distance(&c.model, theta, field, field_prime, (r_lo, r_hi)).map_err(lift)?;
        unsafe { *out_r = res.value };
        if !out_stability.is_null() {
            let s = match res.stability {
                Stability::Stable => SdStability::Stable,
                Stability::Unstable => SdStability::Unstable,
                Stability::NotApplicable => SdStability::NotApplicable,
            };
            unsafe { *out_stability = s };
        }
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
