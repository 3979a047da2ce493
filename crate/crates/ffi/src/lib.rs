//! C ABI for `fracorder`.
//!
//! Every function returns an [`FrStatus`]; results go through out-pointers.
//! On failure the message of the last error on the calling thread is
//! available from [`fr_last_error_message`]. Kernels and reports are
//! opaque handles owned by the caller and released with their `_free`
//! function. Panics never cross the boundary: they are reported as
//! [`FrStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fracorder::fracops::{rl_plus, FracOrder, GridFunction};
use fracorder::kernels::KernelSpec;
use fracorder::specfun::{airy_ai, bessel_k, gamma, m_wright, mittag_leffler, SeriesControl};
use fracorder::verify::{residual_or_failure, EquationId, EquationSpec, ResidualReport, TimeForm};
use fracorder::Error;

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrStatus {
    Ok = 0,
    InvalidArgument = 1,
    NonConvergence = 2,
    Quadrature = 3,
    ComplexResidue = 4,
    Divergent = 5,
    GridTooShort = 6,
    Singular = 7,
    NonFinite = 8,
    NullPointer = 9,
    Panic = 10,
}

impl From<&Error> for FrStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidArgument(_) => FrStatus::InvalidArgument,
            Error::NonConvergence { .. } => FrStatus::NonConvergence,
            Error::Quadrature { .. } => FrStatus::Quadrature,
            Error::ComplexResidue { .. } => FrStatus::ComplexResidue,
            Error::Divergent(_) => FrStatus::Divergent,
            Error::GridTooShort { .. } => FrStatus::GridTooShort,
            Error::Singular(_) => FrStatus::Singular,
            Error::NonFinite(_) => FrStatus::NonFinite,
        }
    }
}

/// Kernel families for [`fr_kernel_new`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrKernelKind {
    /// `p1 = ν`.
    H = 0,
    /// `p1 = ν`.
    L = 1,
    /// `p1 = ν`.
    Lamperti = 2,
    /// `p1 = ν1`, `p2 = ν2`.
    Compose = 3,
    /// `p1 = m`, `p2 = n` (integers).
    Umn = 4,
    /// `p1 = n`, `p2 = κ` (integers).
    Pseudo = 5,
    U1 = 6,
    U2 = 7,
    U3 = 8,
    /// `p1 = α`.
    FoldedStable = 9,
}

/// Governing equations for [`fr_verify_equation`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrEquation {
    /// `p1 = ν`.
    PdeH = 0,
    /// `p1 = ν`.
    PdeL = 1,
    /// `p1 = ν1`, `p2 = ν2`.
    PdeCompose = 2,
    /// `p1 = ν`, `p2 = n`.
    ThmL = 3,
    /// `p1 = ν`, `p2 = n`.
    ThmH = 4,
    /// `p1 = n`.
    CoroL = 5,
    /// `p1 = n`.
    CoroH = 6,
    /// `p1 = n`, `p2 = κ`.
    PdePseudo = 7,
    /// `p1 = m`, `p2 = n`.
    PdeUmn = 8,
}

/// A kernel with its parameters.
pub struct FrKernel(KernelSpec);

/// The outcome of a verification run.
pub struct FrReport {
    report: ResidualReport,
    line: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    let c = CString::new(s).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: &Error) -> FrStatus {
    set_error(e.to_string());
    FrStatus::from(e)
}

/// Runs `f`, turning panics into [`FrStatus::Panic`].
fn guard(f: impl FnOnce() -> FrStatus) -> FrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            FrStatus::Panic
        }
    }
}

fn null(what: &str) -> FrStatus {
    set_error(format!("{what} is null"));
    FrStatus::NullPointer
}

fn write_value(out: *mut f64, r: fracorder::Result<f64>) -> FrStatus {
    if out.is_null() {
        return null("out");
    }
    match r {
        Ok(v) => {
            // SAFETY: checked non-null; the caller guarantees it is writable.
            unsafe { *out = v };
            FrStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

fn integer(v: f64, name: &str) -> Result<i64, FrStatus> {
    if v.is_finite() && v == v.round() && v.abs() < 1e9 {
        Ok(v as i64)
    } else {
        set_error(format!("{name} = {v} must be an integer"));
        Err(FrStatus::InvalidArgument)
    }
}

fn positive_u32(v: f64, name: &str) -> Result<u32, FrStatus> {
    let k = integer(v, name)?;
    u32::try_from(k).map_err(|_| {
        set_error(format!("{name} = {v} must be non-negative"));
        FrStatus::InvalidArgument
    })
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len − 1` bytes) and returns the full message length, or 0
/// when there is no error.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn fr_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                // SAFETY: `buf` holds `len` bytes and `n < len`.
                unsafe {
                    ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                    *buf.add(n) = 0;
                }
            }
            bytes.len()
        }
    })
}

/// Clears the last error message of this thread.
#[no_mangle]
pub extern "C" fn fr_clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// `Γ(x)`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fr_gamma(x: f64, out: *mut f64) -> FrStatus {
    guard(|| {
        let v = gamma(x);
        let r = if v.is_nan() { Err(Error::NonFinite("gamma")) } else { Ok(v) };
        write_value(out, r)
    })
}

/// Generalized Mittag-Leffler function `E_{α,β}(z)`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fr_mittag_leffler(alpha: f64, beta: f64, z: f64, out: *mut f64) -> FrStatus {
    guard(|| write_value(out, mittag_leffler(alpha, beta, z, &SeriesControl::default()).map(|v| v.value)))
}

/// Mainardi function `M_ν(z)`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fr_m_wright(nu: f64, z: f64, out: *mut f64) -> FrStatus {
    guard(|| write_value(out, m_wright(nu, z, &SeriesControl::default()).map(|v| v.value)))
}

/// Modified Bessel function `K_ν(z)`, `z > 0`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fr_bessel_k(nu: f64, z: f64, out: *mut f64) -> FrStatus {
    guard(|| write_value(out, bessel_k(nu, z).map(|v| v.value)))
}

/// Airy function `Ai(z)`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fr_airy_ai(z: f64, out: *mut f64) -> FrStatus {
    guard(|| write_value(out, airy_ai(z).map(|v| v.value)))
}

/// Left Riemann–Liouville derivative of order `alpha` of the samples
/// `f[0..n]` (spacing `step`, first sample at 0), written to `out[0..n]`.
///
/// # Safety
/// `f` must point to `n` readable values and `out` to `n` writable ones.
#[no_mangle]
pub unsafe extern "C" fn fr_rl_derivative(f: *const f64, n: usize, step: f64, alpha: f64, out: *mut f64) -> FrStatus {
    guard(|| {
        if f.is_null() {
            return null("f");
        }
        if out.is_null() {
            return null("out");
        }
        // SAFETY: the caller guarantees `n` readable values.
        let samples = unsafe { std::slice::from_raw_parts(f, n) }.to_vec();
        let r = GridFunction::new(step, samples).and_then(|g| rl_plus(&g, FracOrder::new(alpha)?));
        match r {
            Ok(d) => {
                // SAFETY: the caller guarantees `n` writable values; the
                // result has exactly `n` samples.
                unsafe { ptr::copy_nonoverlapping(d.samples().as_ptr(), out, n) };
                FrStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

fn kernel_spec(kind: FrKernelKind, p1: f64, p2: f64) -> Result<KernelSpec, FrStatus> {
    let spec = match kind {
        FrKernelKind::H => KernelSpec::H { nu: p1 },
        FrKernelKind::L => KernelSpec::L { nu: p1 },
        FrKernelKind::Lamperti => KernelSpec::Lamperti { nu: p1 },
        FrKernelKind::Compose => KernelSpec::Compose { nu1: p1, nu2: p2 },
        FrKernelKind::Umn => KernelSpec::Umn {
            m: positive_u32(p1, "m")?,
            n: positive_u32(p2, "n")?,
        },
        FrKernelKind::Pseudo => KernelSpec::Pseudo {
            n: positive_u32(p1, "n")?,
            kappa: integer(p2, "kappa")? as i32,
        },
        FrKernelKind::U1 => KernelSpec::U1,
        FrKernelKind::U2 => KernelSpec::U2,
        FrKernelKind::U3 => KernelSpec::U3,
        FrKernelKind::FoldedStable => KernelSpec::FoldedStable { alpha: p1 },
    };
    spec.validate().map_err(|e| fail(&e))?;
    Ok(spec)
}

/// Creates a kernel handle; parameters not used by `kind` are ignored.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fr_kernel_new(kind: FrKernelKind, p1: f64, p2: f64, out: *mut *mut FrKernel) -> FrStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match kernel_spec(kind, p1, p2) {
            Ok(spec) => {
                // SAFETY: checked non-null.
                unsafe { *out = Box::into_raw(Box::new(FrKernel(spec))) };
                FrStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Evaluates a kernel at `(x, t)`; `error_estimate` may be null.
///
/// # Safety
/// `kernel` must come from [`fr_kernel_new`] and not be freed; `value` and
/// `error_estimate` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fr_kernel_eval(
    kernel: *const FrKernel,
    x: f64,
    t: f64,
    value: *mut f64,
    error_estimate: *mut f64,
) -> FrStatus {
    guard(|| {
        // SAFETY: the caller passes a live handle or null.
        let Some(k) = (unsafe { kernel.as_ref() }) else {
            return null("kernel");
        };
        if value.is_null() {
            return null("value");
        }
        match k.0.evaluate(x, t) {
            Ok(v) => {
                // SAFETY: checked non-null / optional out-pointers.
                unsafe {
                    *value = v.value;
                    if !error_estimate.is_null() {
                        *error_estimate = v.error_estimate;
                    }
                }
                FrStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a kernel handle; null is ignored.
///
/// # Safety
/// `kernel` must come from [`fr_kernel_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fr_kernel_free(kernel: *mut FrKernel) {
    if !kernel.is_null() {
        // SAFETY: the handle was created by `Box::into_raw`.
        drop(unsafe { Box::from_raw(kernel) });
    }
}

fn equation_id(eq: FrEquation, p1: f64, p2: f64) -> Result<EquationId, FrStatus> {
    Ok(match eq {
        FrEquation::PdeH => EquationId::PdeH { nu: p1 },
        FrEquation::PdeL => EquationId::PdeL { nu: p1 },
        FrEquation::PdeCompose => EquationId::PdeCompose { nu1: p1, nu2: p2 },
        FrEquation::ThmL => EquationId::ThmL {
            nu: p1,
            n: positive_u32(p2, "n")?,
        },
        FrEquation::ThmH => EquationId::ThmH {
            nu: p1,
            n: positive_u32(p2, "n")?,
        },
        FrEquation::CoroL => EquationId::CoroL { n: positive_u32(p1, "n")? },
        FrEquation::CoroH => EquationId::CoroH { n: positive_u32(p1, "n")? },
        FrEquation::PdePseudo => EquationId::PdePseudo {
            n: positive_u32(p1, "n")?,
            kappa: integer(p2, "kappa")? as i32,
        },
        FrEquation::PdeUmn => EquationId::PdeUmn {
            m: positive_u32(p1, "m")?,
            n: positive_u32(p2, "n")?,
        },
    })
}

/// Runs the grid-residual check of an equation on its default rectangle
/// with `nodes` nodes per axis (0 for the default of 64) and tolerance
/// `tol` (0 for the default of 10⁻³). A failed check still yields a
/// report; only invalid parameters return an error.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fr_verify_equation(
    eq: FrEquation,
    p1: f64,
    p2: f64,
    caputo: bool,
    nodes: usize,
    tol: f64,
    out: *mut *mut FrReport,
) -> FrStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let id = match equation_id(eq, p1, p2) {
            Ok(id) => id,
            Err(s) => return s,
        };
        let mut spec = EquationSpec::new(id);
        if caputo {
            spec = spec.with_form(TimeForm::Caputo);
        }
        if nodes > 0 {
            spec.grid.nx = nodes;
            spec.grid.nt = nodes;
        }
        if tol != 0.0 {
            spec = spec.with_tolerance(tol);
        }
        if let Err(e) = spec.validate() {
            return fail(&e);
        }
        let report = residual_or_failure(&spec);
        let line = CString::new(report.line()).unwrap_or_default();
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(FrReport { report, line })) };
        FrStatus::Ok
    })
}

/// Whether the check passed.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fr_report_passed(report: *const FrReport) -> bool {
    // SAFETY: the caller passes a live handle or null.
    unsafe { report.as_ref() }.is_some_and(|r| r.report.passed)
}

/// Largest residual on the refined grid (NaN for a null handle).
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fr_report_max_residual(report: *const FrReport) -> f64 {
    // SAFETY: the caller passes a live handle or null.
    unsafe { report.as_ref() }.map_or(f64::NAN, |r| r.report.max_abs_residual)
}

/// Residual decay factor under one halving (NaN for a null handle).
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fr_report_refinement_ratio(report: *const FrReport) -> f64 {
    // SAFETY: the caller passes a live handle or null.
    unsafe { report.as_ref() }.map_or(f64::NAN, |r| r.report.refinement_ratio)
}

/// The report line `<id> <max> <rms> <ratio> PASS|FAIL`, valid until the
/// report is freed (null for a null handle).
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fr_report_line(report: *const FrReport) -> *const c_char {
    // SAFETY: the caller passes a live handle or null.
    unsafe { report.as_ref() }.map_or(ptr::null(), |r| r.line.as_ptr())
}

/// Releases a report; null is ignored.
///
/// # Safety
/// `report` must come from [`fr_verify_equation`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fr_report_free(report: *mut FrReport) {
    if !report.is_null() {
        // SAFETY: the handle was created by `Box::into_raw`.
        drop(unsafe { Box::from_raw(report) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    fn last_error() -> String {
        let mut buf = [0 as c_char; 256];
        let n = unsafe { fr_last_error_message(buf.as_mut_ptr(), buf.len()) };
        assert!(n > 0);
        unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn special_functions() {
        let mut v = 0.0;
        assert_eq!(unsafe { fr_mittag_leffler(1.0, 1.0, 1.0, &mut v) }, FrStatus::Ok);
        assert!((v - std::f64::consts::E).abs() < 1e-14);
        assert_eq!(unsafe { fr_gamma(5.0, &mut v) }, FrStatus::Ok);
        assert!((v - 24.0).abs() < 1e-12);
        assert_eq!(unsafe { fr_airy_ai(0.0, &mut v) }, FrStatus::Ok);
        assert!((v - 0.355_028_053_887_817_2).abs() < 1e-14);
        assert_eq!(unsafe { fr_bessel_k(0.5, 1.0, ptr::null_mut()) }, FrStatus::NullPointer);
    }

    #[test]
    fn kernel_handle_round_trip() {
        let mut k = ptr::null_mut();
        assert_eq!(unsafe { fr_kernel_new(FrKernelKind::L, 0.5, 0.0, &mut k) }, FrStatus::Ok);
        let (mut v, mut e) = (0.0, -1.0);
        assert_eq!(unsafe { fr_kernel_eval(k, 0.0, 1.0, &mut v, &mut e) }, FrStatus::Ok);
        assert!((v - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!(e >= 0.0);
        unsafe { fr_kernel_free(k) };
    }

    #[test]
    fn invalid_parameters_set_the_message() {
        let mut k = ptr::null_mut();
        assert_eq!(unsafe { fr_kernel_new(FrKernelKind::H, 1.5, 0.0, &mut k) }, FrStatus::InvalidArgument);
        assert!(k.is_null());
        assert!(last_error().contains("nu"));
        assert_eq!(unsafe { fr_kernel_new(FrKernelKind::Pseudo, 2.0, -1.0, &mut k) }, FrStatus::Divergent);
        assert_eq!(unsafe { fr_kernel_new(FrKernelKind::Umn, 2.5, 2.0, &mut k) }, FrStatus::InvalidArgument);
        fr_clear_error();
        assert_eq!(unsafe { fr_last_error_message(ptr::null_mut(), 0) }, 0);
    }

    #[test]
    fn rl_derivative_of_a_line() {
        // D^{1/2} t = t^{1/2}/Γ(3/2)
        let n = 201;
        let h = 0.01;
        let f: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let mut d = vec![0.0; n];
        assert_eq!(unsafe { fr_rl_derivative(f.as_ptr(), n, h, 0.5, d.as_mut_ptr()) }, FrStatus::Ok);
        let expect = 2.0_f64.sqrt() / gamma(1.5);
        assert!((d[n - 1] - expect).abs() < 1e-2, "{}", d[n - 1]);
    }

    #[test]
    fn verify_report_handle() {
        let mut r = ptr::null_mut();
        let s = unsafe { fr_verify_equation(FrEquation::PdePseudo, 2.0, 1.0, false, 16, 0.0, &mut r) };
        assert_eq!(s, FrStatus::Ok);
        assert!(unsafe { fr_report_passed(r) });
        let line = unsafe { CStr::from_ptr(fr_report_line(r)) }.to_str().unwrap().to_string();
        assert!(line.starts_with("PDE_PSEUDO(2,+1) ") && line.ends_with("PASS"), "{line}");
        assert!(unsafe { fr_report_refinement_ratio(r) } > 1.5);
        unsafe { fr_report_free(r) };
        assert!(!unsafe { fr_report_passed(ptr::null()) });
        let s = unsafe { fr_verify_equation(FrEquation::ThmH, 0.5, 1.0, false, 0, 0.0, &mut r) };
        assert_eq!(s, FrStatus::InvalidArgument);
    }
}
