//! C interface to `gtn-core`.
//!
//! Every function returns a [`GtnStatus`]; results come back through out
//! pointers. Scenarios and density operators are opaque handles that the
//! caller releases with the matching `*_free` function. On failure a
//! description is available from [`gtn_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gtn_core::analysis::{check_monogamy, critical_temperature};
use gtn_core::measures::chsh_max;
use gtn_core::quantum::DensityOperator;
use gtn_core::schwarzschild::{
    gte_formula, hawking_temperature, measures_catalog, reduced_state, svetlichny_formula,
    ReducedStateId, ScenarioParams,
};
use gtn_core::svetlichny::svetlichny_bruteforce;
use gtn_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    InvalidState = 3,
    /// The measure is not defined for the requested reduction.
    NotApplicable = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Reduced states of the five-mode system, named by the modes they keep.
#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtnReducedState {
    A_BI_CI = 0,
    A_BI_CII = 1,
    A_BII_CI = 2,
    A_BII_CII = 3,
    A_BI_BII = 4,
    A_CI_CII = 5,
    BI_BII = 6,
    CI_CII = 7,
    A_BI = 8,
    A_CI = 9,
    BI_CI = 10,
    BII_CII = 11,
    A_BII = 12,
    A_CII = 13,
    BI_CII = 14,
    BII_CI = 15,
}

impl From<GtnReducedState> for ReducedStateId {
    fn from(s: GtnReducedState) -> Self {
        use GtnReducedState as G;
        use ReducedStateId as R;
        match s {
            G::A_BI_CI => R::ABICI,
            G::A_BI_CII => R::ABICII,
            G::A_BII_CI => R::ABIICI,
            G::A_BII_CII => R::ABIICII,
            G::A_BI_BII => R::ABIBII,
            G::A_CI_CII => R::ACICII,
            G::BI_BII => R::BIBII,
            G::CI_CII => R::CICII,
            G::A_BI => R::ABI,
            G::A_CI => R::ACI,
            G::BI_CI => R::BICI,
            G::BII_CII => R::BIICII,
            G::A_BII => R::ABII,
            G::A_CII => R::ACII,
            G::BI_CII => R::BICII,
            G::BII_CI => R::BIICI,
        }
    }
}

/// Opaque scenario: α, ω and the Hawking temperature.
pub struct GtnScenario(ScenarioParams);

/// Opaque density operator on two or three qubits.
pub struct GtnDensity(DensityOperator);

/// Residuals of the monogamy relations at one scenario.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GtnMonogamy {
    pub linear_residual: f64,
    pub quadratic_residual: f64,
    pub weighted_residual: f64,
    /// Smallest CKW slack over the three focus modes; negative means violated.
    pub ckw_min_slack: f64,
    /// Nonzero when every relation above holds.
    pub all_hold: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> GtnStatus {
    match err {
        Error::InvalidParameter(_) | Error::InvalidGrid(_) => GtnStatus::InvalidParameter,
        _ => GtnStatus::InvalidState,
    }
}

fn fail(err: Error) -> GtnStatus {
    set_last_error(err.to_string());
    status_of(&err)
}

fn guard(f: impl FnOnce() -> GtnStatus) -> GtnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            GtnStatus::Panic
        }
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> GtnStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return GtnStatus::NullPointer;
    }
    out.write(value);
    GtnStatus::Ok
}

unsafe fn borrow<'a, T>(handle: *const T) -> Result<&'a T, GtnStatus> {
    handle.as_ref().ok_or_else(|| {
        set_last_error("null handle");
        GtnStatus::NullPointer
    })
}

/// Message for the most recent failure on this thread, or NULL.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gtn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Hawking temperature 1/(8πM).
///
/// # Safety
/// `out` must be null or valid for a write of one `double`.
#[no_mangle]
pub unsafe extern "C" fn gtn_hawking_temperature(mass: f64, out: *mut f64) -> GtnStatus {
    guard(|| match hawking_temperature(mass) {
        Ok(t) => write_out(out, t),
        Err(e) => fail(e),
    })
}

/// Creates a scenario from α, ω and a temperature (zero allowed).
///
/// # Safety
/// `out` must be null or valid for a write of one pointer.
#[no_mangle]
pub unsafe extern "C" fn gtn_scenario_new(
    alpha: f64,
    omega: f64,
    temperature: f64,
    out: *mut *mut GtnScenario,
) -> GtnStatus {
    guard(|| match ScenarioParams::new(alpha, omega, temperature) {
        Ok(p) => scenario_out(out, p),
        Err(e) => fail(e),
    })
}

/// Creates a scenario whose temperature follows from the black hole mass.
///
/// # Safety
/// `out` must be null or valid for a write of one pointer.
#[no_mangle]
pub unsafe extern "C" fn gtn_scenario_from_mass(
    alpha: f64,
    omega: f64,
    mass: f64,
    out: *mut *mut GtnScenario,
) -> GtnStatus {
    guard(|| match ScenarioParams::from_mass(alpha, omega, mass) {
        Ok(p) => scenario_out(out, p),
        Err(e) => fail(e),
    })
}

unsafe fn scenario_out(out: *mut *mut GtnScenario, p: ScenarioParams) -> GtnStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return GtnStatus::NullPointer;
    }
    out.write(Box::into_raw(Box::new(GtnScenario(p))));
    GtnStatus::Ok
}

/// # Safety
/// `scenario` must be null or come from a scenario constructor, and is
/// invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn gtn_scenario_free(scenario: *mut GtnScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Closed-form Svetlichny value of a three-qubit reduction.
///
/// # Safety
/// `scenario` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_svetlichny(
    scenario: *const GtnScenario,
    state: GtnReducedState,
    out: *mut f64,
) -> GtnStatus {
    tripartite(scenario, state, out, svetlichny_formula)
}

/// Closed-form genuine tripartite entanglement concurrence.
///
/// # Safety
/// `scenario` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_gte(
    scenario: *const GtnScenario,
    state: GtnReducedState,
    out: *mut f64,
) -> GtnStatus {
    tripartite(scenario, state, out, gte_formula)
}

unsafe fn tripartite(
    scenario: *const GtnScenario,
    state: GtnReducedState,
    out: *mut f64,
    f: fn(&ScenarioParams, ReducedStateId) -> Option<f64>,
) -> GtnStatus {
    guard(|| {
        let s = match borrow(scenario) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match f(&s.0, state.into()) {
            Some(v) => write_out(out, v),
            None => {
                set_last_error(format!("{state:?} is not a three-qubit reduction"));
                GtnStatus::NotApplicable
            }
        }
    })
}

/// Maximal CHSH value of a two-qubit reduction.
///
/// # Safety
/// `scenario` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_bell(
    scenario: *const GtnScenario,
    state: GtnReducedState,
    out: *mut f64,
) -> GtnStatus {
    pairwise(scenario, state, out, false)
}

/// Concurrence of a two-qubit reduction.
///
/// # Safety
/// `scenario` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_concurrence(
    scenario: *const GtnScenario,
    state: GtnReducedState,
    out: *mut f64,
) -> GtnStatus {
    pairwise(scenario, state, out, true)
}

unsafe fn pairwise(
    scenario: *const GtnScenario,
    state: GtnReducedState,
    out: *mut f64,
    concurrence: bool,
) -> GtnStatus {
    guard(|| {
        let s = match borrow(scenario) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let id = ReducedStateId::from(state);
        if id.is_tripartite() {
            set_last_error(format!("{state:?} is not a two-qubit reduction"));
            return GtnStatus::NotApplicable;
        }
        match measures_catalog(&s.0, None) {
            Ok(cat) => {
                let m = cat.pairwise(id);
                write_out(out, if concurrence { m.concurrence } else { m.bell })
            }
            Err(e) => fail(e),
        }
    })
}

/// Critical temperature at which the accessible Svetlichny value reaches 4.
///
/// `*exists` is set to 0 when no such temperature exists, in which case
/// `*out` is left untouched.
///
/// # Safety
/// `out` and `exists` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_critical_temperature(
    alpha: f64,
    omega: f64,
    out: *mut f64,
    exists: *mut i32,
) -> GtnStatus {
    guard(|| {
        if out.is_null() || exists.is_null() {
            set_last_error("null output pointer");
            return GtnStatus::NullPointer;
        }
        match critical_temperature(alpha, omega) {
            Ok(Some(tc)) => {
                out.write(tc.closed_form);
                exists.write(1);
                GtnStatus::Ok
            }
            Ok(None) => {
                exists.write(0);
                GtnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Monogamy residuals at one scenario.
///
/// # Safety
/// `scenario` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_monogamy(scenario: *const GtnScenario, out: *mut GtnMonogamy) -> GtnStatus {
    guard(|| {
        let s = match borrow(scenario) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match check_monogamy(&s.0) {
            Ok(r) => write_out(
                out,
                GtnMonogamy {
                    linear_residual: r.linear.residual(),
                    quadratic_residual: r.quadratic.residual(),
                    weighted_residual: r.weighted.residual(),
                    ckw_min_slack: r.ckw.iter().map(|c| c.slack()).fold(f64::INFINITY, f64::min),
                    all_hold: (r.linear_holds() && r.quadratic_holds() && r.weighted_holds() && r.ckw_holds())
                        as i32,
                },
            ),
            Err(e) => fail(e),
        }
    })
}

/// Reduced density operator obtained by partial trace.
///
/// # Safety
/// `scenario` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_reduced_state(
    scenario: *const GtnScenario,
    state: GtnReducedState,
    out: *mut *mut GtnDensity,
) -> GtnStatus {
    guard(|| {
        let s = match borrow(scenario) {
            Ok(s) => s,
            Err(status) => return status,
        };
        if out.is_null() {
            set_last_error("null output pointer");
            return GtnStatus::NullPointer;
        }
        match reduced_state(&s.0, state.into()) {
            Ok(rho) => {
                out.write(Box::into_raw(Box::new(GtnDensity(rho))));
                GtnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `density` must be null or come from [`gtn_reduced_state`], and is
/// invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn gtn_density_free(density: *mut GtnDensity) {
    if !density.is_null() {
        drop(Box::from_raw(density));
    }
}

/// Matrix dimension (2^qubits).
///
/// # Safety
/// `density` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_density_dim(density: *const GtnDensity, out: *mut usize) -> GtnStatus {
    guard(|| match borrow(density) {
        Ok(d) => write_out(out, d.0.dim()),
        Err(status) => status,
    })
}

/// Copies the matrix in row-major order into `re` and `im`, each holding
/// at least `len` doubles; `len` must be at least dim².
///
/// # Safety
/// `density` must be a live handle; `re` and `im` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn gtn_density_matrix(
    density: *const GtnDensity,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> GtnStatus {
    guard(|| {
        let d = match borrow(density) {
            Ok(d) => d,
            Err(status) => return status,
        };
        if re.is_null() || im.is_null() {
            set_last_error("null output pointer");
            return GtnStatus::NullPointer;
        }
        let m = d.0.matrix();
        let n = m.nrows();
        if len < n * n {
            set_last_error(format!("buffer holds {len} entries, need {}", n * n));
            return GtnStatus::BufferTooSmall;
        }
        for r in 0..n {
            for c in 0..n {
                re.add(r * n + c).write(m[(r, c)].re);
                im.add(r * n + c).write(m[(r, c)].im);
            }
        }
        GtnStatus::Ok
    })
}

/// Numerically optimised Svetlichny value of a three-qubit density operator.
///
/// # Safety
/// `density` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_density_svetlichny_bruteforce(
    density: *const GtnDensity,
    restarts: usize,
    seed: u64,
    out: *mut f64,
) -> GtnStatus {
    guard(|| {
        let d = match borrow(density) {
            Ok(d) => d,
            Err(status) => return status,
        };
        match svetlichny_bruteforce(&d.0, restarts, seed) {
            Ok(r) => write_out(out, r.value),
            Err(e) => fail(e),
        }
    })
}

/// Maximal CHSH value of a two-qubit density operator.
///
/// # Safety
/// `density` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gtn_density_chsh_max(density: *const GtnDensity, out: *mut f64) -> GtnStatus {
    guard(|| {
        let d = match borrow(density) {
            Ok(d) => d,
            Err(status) => return status,
        };
        match chsh_max(&d.0) {
            Ok(v) => write_out(out, v),
            Err(e) => fail(e),
        }
    })
}
