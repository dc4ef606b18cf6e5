//! C interface to `fermicorr`.
//!
//! States and solver settings live behind opaque handles that the caller
//! releases with the matching `*_free` function. Every call returns an
//! [`FcStatus`]; on failure [`fc_last_error`] describes what went wrong on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use fermicorr::bounds::wolf_bound_check;
use fermicorr::critical::{critical_distance, Method, Picture};
use fermicorr::fock::{DensityMatrix, FockBasis, ModePartition};
use fermicorr::hubbard::{analytic_spectrum, dissociated_mixture, dissociated_singlet, thermal_state, DimerParams};
use fermicorr::linalg::{CMat, C64};
use fermicorr::measures::mode_correlation;
use fermicorr::particle::{nonfreeness, quantum_nonfreeness};
use fermicorr::ree::{mode_entanglement, SolverConfig};
use fermicorr::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidState = 3,
    Unsupported = 4,
    SolverFailure = 5,
    BracketFailure = 6,
    BoundViolation = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcPicture {
    Mode = 0,
    Particle = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcMethod {
    Exact = 0,
    LowT = 1,
    Asymptotic = 2,
}

/// A fermionic density matrix.
pub struct FcState(DensityMatrix);

/// Settings for the entanglement minimization.
pub struct FcSolverConfig(SolverConfig);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FcStatus {
    match e {
        Error::InvalidState(_) => FcStatus::InvalidState,
        Error::UnsupportedStructure(_) => FcStatus::Unsupported,
        Error::SolverNonConvergence { .. } => FcStatus::SolverFailure,
        Error::BracketFailure { .. } => FcStatus::BracketFailure,
        Error::BoundViolation { .. } => FcStatus::BoundViolation,
        _ => FcStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (FcStatus, String)>) -> FcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FcStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn st(self) -> Result<T, (FcStatus, String)>;
}

impl<T> OrStatus<T> for fermicorr::Result<T> {
    fn st(self) -> Result<T, (FcStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (FcStatus, String) {
    (FcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (FcStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn state_ref<'a>(p: *const FcState) -> Result<&'a DensityMatrix, (FcStatus, String)> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| null("state"))
}

fn boxed_state(out: &mut *mut FcState, rho: DensityMatrix) {
    *out = Box::into_raw(Box::new(FcState(rho)));
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len > 0`) and returns the full message length
/// without the terminator; 0 when there is no error.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn fc_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            0
        }
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// The six dimer energies at distance `r`, ascending, into `energies[0..6]`.
///
/// # Safety
/// `energies` must be valid for six writes.
#[no_mangle]
pub unsafe extern "C" fn fc_dimer_spectrum(r: f64, energies: *mut f64) -> FcStatus {
    guard(|| {
        if energies.is_null() {
            return Err(null("energies"));
        }
        let p = DimerParams::from_distance(r).st()?;
        let e = analytic_spectrum(p.t()).st()?.energies;
        slice::from_raw_parts_mut(energies, 6).copy_from_slice(&e);
        Ok(())
    })
}

/// Canonical two-electron Gibbs state of the dimer; `temperature == 0`
/// gives the ground state.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fc_state_dimer_thermal(temperature: f64, r: f64, out: *mut *mut FcState) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let p = DimerParams::from_distance(r).st()?;
        boxed_state(out, thermal_state(&p, temperature).st()?);
        Ok(())
    })
}

/// `0`: the dissociated singlet, `1`: the equal covalent mixture.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fc_state_dissociated(which: u32, out: *mut *mut FcState) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let rho = match which {
            0 => dissociated_singlet(),
            1 => dissociated_mixture(),
            _ => return Err((FcStatus::InvalidArgument, format!("unknown dissociated state {which}"))),
        };
        boxed_state(out, rho);
        Ok(())
    })
}

/// State on the full Fock space of `modes` modes from row-major real and
/// imaginary parts, each `4^modes` long. `imag` may be null.
///
/// # Safety
/// `real` (and `imag` if non-null) must be valid for `4^modes` reads; `out`
/// for one write.
#[no_mangle]
pub unsafe extern "C" fn fc_state_from_matrix(
    modes: usize,
    real: *const f64,
    imag: *const f64,
    out: *mut *mut FcState,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if real.is_null() {
            return Err(null("real"));
        }
        if modes == 0 || modes > 12 {
            return Err((FcStatus::InvalidArgument, format!("modes must be in 1..=12, got {modes}")));
        }
        let d = 1usize << modes;
        let re = slice::from_raw_parts(real, d * d);
        let im = (!imag.is_null()).then(|| slice::from_raw_parts(imag, d * d));
        let m = CMat::from_fn(d, d, |i, j| C64::new(re[i * d + j], im.map_or(0.0, |v| v[i * d + j])));
        boxed_state(out, DensityMatrix::new(FockBasis::full(modes), m).st()?);
        Ok(())
    })
}

/// # Safety
/// `state` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_state_free(state: *mut FcState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of modes of `state`.
///
/// # Safety
/// `state` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fc_state_modes(state: *const FcState, out: *mut usize) -> FcStatus {
    guard(|| {
        *out_ref(out, "out")? = state_ref(state)?.modes();
        Ok(())
    })
}

unsafe fn partition(rho: &DensityMatrix, block_a: *const usize, len_a: usize) -> Result<ModePartition, (FcStatus, String)> {
    if block_a.is_null() && len_a > 0 {
        return Err(null("block_a"));
    }
    let a = if len_a == 0 { &[][..] } else { slice::from_raw_parts(block_a, len_a) };
    ModePartition::bipartition(rho.modes(), a).st()
}

/// Mutual information between the modes in `block_a` and the rest, after
/// the local-number projection when `ssr` is non-zero.
///
/// # Safety
/// `state` must be live, `block_a` valid for `len_a` reads, `out` for one
/// write.
#[no_mangle]
pub unsafe extern "C" fn fc_mode_correlation(
    state: *const FcState,
    block_a: *const usize,
    len_a: usize,
    ssr: i32,
    out: *mut f64,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let rho = state_ref(state)?;
        let part = partition(rho, block_a, len_a)?;
        *out = mode_correlation(rho, &part, ssr != 0).st()?.value();
        Ok(())
    })
}

/// A solver configuration with default settings.
#[no_mangle]
pub extern "C" fn fc_solver_config_new() -> *mut FcSolverConfig {
    Box::into_raw(Box::new(FcSolverConfig(SolverConfig::default())))
}

/// # Safety
/// `config` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fc_solver_config_free(config: *mut FcSolverConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Sets the initial component count, restart count, seed and stagnation
/// tolerance in one call.
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fc_solver_config_set(
    config: *mut FcSolverConfig,
    components: usize,
    restarts: usize,
    seed: u64,
    tol: f64,
) -> FcStatus {
    guard(|| {
        let c = &mut out_ref(config, "config")?.0;
        let next = SolverConfig { components, restarts, seed, tol, ..c.clone() };
        next.validate().st()?;
        *c = next;
        Ok(())
    })
}

/// Relative entropy of entanglement for the bipartition `block_a` vs the
/// rest. `config` may be null for the defaults.
///
/// # Safety
/// As for [`fc_mode_correlation`]; `config` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn fc_mode_entanglement(
    state: *const FcState,
    block_a: *const usize,
    len_a: usize,
    ssr: i32,
    config: *const FcSolverConfig,
    out: *mut f64,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let rho = state_ref(state)?;
        let part = partition(rho, block_a, len_a)?;
        let default = SolverConfig::default();
        let cfg = config.as_ref().map_or(&default, |c| &c.0);
        *out = mode_entanglement(rho, &part, ssr != 0, cfg).st()?.value();
        Ok(())
    })
}

/// # Safety
/// `state` must be live and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fc_nonfreeness(state: *const FcState, out: *mut f64) -> FcStatus {
    guard(|| {
        *out_ref(out, "out")? = nonfreeness(state_ref(state)?).value();
        Ok(())
    })
}

/// Only defined for two fermions in four modes.
///
/// # Safety
/// `state` must be live and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fc_quantum_nonfreeness(state: *const FcState, out: *mut f64) -> FcStatus {
    guard(|| {
        *out_ref(out, "out")? = quantum_nonfreeness(state_ref(state)?).st()?;
        Ok(())
    })
}

/// Critical distance of entanglement sudden death.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fc_critical_distance(
    picture: FcPicture,
    method: FcMethod,
    temperature: f64,
    out: *mut f64,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let picture = match picture {
            FcPicture::Mode => Picture::Mode,
            FcPicture::Particle => Picture::Particle,
        };
        let method = match method {
            FcMethod::Exact => Method::Exact,
            FcMethod::LowT => Method::LowT,
            FcMethod::Asymptotic => Method::Asymptotic,
        };
        *out = critical_distance(picture, method, temperature).st()?;
        Ok(())
    })
}

/// Mutual information of the grand-canonical dimer state and its bound
/// `2‖H_LR‖_F / T`. Both outputs are written even when the bound fails, in
/// which case the status is `BoundViolation`.
///
/// # Safety
/// `mutual_info` and `rhs` must be valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn fc_wolf_bound(temperature: f64, r: f64, mutual_info: *mut f64, rhs: *mut f64) -> FcStatus {
    guard(|| {
        let mi = out_ref(mutual_info, "mutual_info")?;
        let rhs = out_ref(rhs, "rhs")?;
        let rep = wolf_bound_check(temperature, r).st()?;
        *mi = rep.mutual_info;
        *rhs = rep.rhs;
        rep.into_result().map(|_| ()).st()
    })
}

/// Reads a NUL-terminated UTF-8 grid such as `"0:1:0.25"` and reports how
/// many points it holds.
///
/// # Safety
/// `spec` must be a valid C string; `count` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fc_grid_len(spec: *const c_char, count: *mut usize) -> FcStatus {
    guard(|| {
        let count = out_ref(count, "count")?;
        if spec.is_null() {
            return Err(null("spec"));
        }
        let s = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| (FcStatus::InvalidArgument, "grid is not UTF-8".to_string()))?;
        *count = fermicorr::cli::grid::parse_grid(s).st()?.len();
        Ok(())
    })
}
