//! C interface to `epioptic`.
//!
//! Every fallible function returns an [`EpiStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`epi_last_error_message`] on the same thread. Trajectories are returned
//! as opaque handles that must be released with [`epi_trajectory_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use epioptic::cli::{cmd_solve, design_for, CliError, Scenario};
use epioptic::control::{control_value, ConstantControl, ControlDesign, ControlSignal};
use epioptic::objective::evaluate_J;
use epioptic::ode::{integrate, Method, Trajectory};
use epioptic::series::calibrated_u0;
use epioptic::special::{exp_integral_e1, exp_integral_ei};
use epioptic::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Divergence = 4,
    NoRealRoot = 5,
    NotBracketed = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpiMethod {
    ClassicalEuler = 0,
    Rk4 = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpiVariant {
    Controlled = 0,
    Uncontrolled = 1,
    Constant = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpiColumn {
    Time = 0,
    Susceptible = 1,
    Infected = 2,
    Removed = 3,
    Control = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpiScenario {
    pub beta: f64,
    pub mu: f64,
    pub s0: f64,
    pub i0: f64,
    pub r0: f64,
    pub t_horizon: f64,
    /// Attenuation of the control at half the horizon.
    pub q: f64,
    pub u_max: f64,
    pub step: f64,
    pub method: EpiMethod,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpiSummary {
    pub a: f64,
    pub u0: f64,
    pub decay_rate: f64,
    pub j_controlled: f64,
    pub j_uncontrolled: f64,
    pub j_constant_09: f64,
    pub admissible: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpiCost {
    pub infection_burden: f64,
    pub control_effort: f64,
    pub total: f64,
}

/// Opaque simulation result.
pub struct EpiTrajectory {
    inner: Trajectory,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: EpiStatus, message: impl Into<String>) -> EpiStatus {
    set_error(message.into());
    status
}

fn from_error(e: &Error) -> EpiStatus {
    let status = match e {
        Error::Domain(_) | Error::DegenerateDenominator => EpiStatus::Domain,
        Error::Configuration(_) => EpiStatus::InvalidArgument,
        Error::Divergence { .. } => EpiStatus::Divergence,
        Error::NoRealRoot { .. } => EpiStatus::NoRealRoot,
        Error::NotBracketed { .. } => EpiStatus::NotBracketed,
    };
    fail(status, e.to_string())
}

fn from_cli_error(e: &CliError) -> EpiStatus {
    match e {
        CliError::Computation(inner) => from_error(inner),
        other => fail(EpiStatus::InvalidArgument, other.to_string()),
    }
}

/// Runs `body`, turning panics into [`EpiStatus::Panic`].
fn guarded<F: FnOnce() -> EpiStatus>(body: F) -> EpiStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(EpiStatus::Panic, "internal panic"),
    }
}

/// Writes `value` through `out`, or reports a null pointer.
unsafe fn store<T>(out: *mut T, value: T) -> EpiStatus {
    if out.is_null() {
        return fail(EpiStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    EpiStatus::Ok
}

impl From<EpiMethod> for Method {
    fn from(m: EpiMethod) -> Self {
        match m {
            EpiMethod::ClassicalEuler => Method::ClassicalEuler,
            EpiMethod::Rk4 => Method::Rk4,
        }
    }
}

impl EpiScenario {
    fn to_scenario(self) -> Scenario {
        Scenario {
            beta: self.beta,
            mu: self.mu,
            s0: self.s0,
            i0: self.i0,
            r0: self.r0,
            t_horizon: self.t_horizon,
            q: self.q,
            u_max: self.u_max,
            step: self.step,
            method: self.method.into(),
            ..Scenario::default()
        }
    }
}

/// The reference outbreak scenario.
#[no_mangle]
pub extern "C" fn epi_scenario_default() -> EpiScenario {
    let s = Scenario::default();
    EpiScenario {
        beta: s.beta,
        mu: s.mu,
        s0: s.s0,
        i0: s.i0,
        r0: s.r0,
        t_horizon: s.t_horizon,
        q: s.q,
        u_max: s.u_max,
        step: s.step,
        method: EpiMethod::Rk4,
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn epi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `A = 8 ln(Q)^2 / T^2`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn epi_cost_weight(q: f64, t_horizon: f64, out: *mut f64) -> EpiStatus {
    guarded(|| match epioptic::control::cost_weight_from_attenuation(q, t_horizon) {
        Ok(a) => store(out, a),
        Err(e) => from_error(&e),
    })
}

/// Calibrated `U0` for a scenario; 0 when there is no outbreak.
///
/// # Safety
/// `scenario` must be null or point to a valid `EpiScenario`; `out` must be
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn epi_calibrate_u0(scenario: *const EpiScenario, out: *mut f64) -> EpiStatus {
    guarded(|| {
        let Some(s) = scenario.as_ref() else { return fail(EpiStatus::NullPointer, "scenario is null") };
        let s = s.to_scenario();
        if let Err(msg) = s.validate() {
            return fail(EpiStatus::InvalidArgument, msg);
        }
        match s.calibration_input().and_then(|input| calibrated_u0(&input)) {
            Ok(u0) => store(out, u0),
            Err(e) => from_error(&e),
        }
    })
}

/// `u(t) = U0 exp(-sqrt(A / 2) t)` with `A` calibrated from `q` and the horizon.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn epi_control_value(t: f64, q: f64, t_horizon: f64, u0: f64, out: *mut f64) -> EpiStatus {
    guarded(|| match ControlDesign::from_attenuation(q, t_horizon, u0).and_then(|d| control_value(t, &d)) {
        Ok(v) => store(out, v),
        Err(e) => from_error(&e),
    })
}

/// Exponential integral `Ei(x)`, `x != 0`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn epi_exp_integral_ei(x: f64, out: *mut f64) -> EpiStatus {
    guarded(|| match exp_integral_ei(x) {
        Ok(v) => store(out, v),
        Err(e) => from_error(&e),
    })
}

/// Exponential integral `E1(x)`, `x != 0`; negative `x` gives `-Ei(-x)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn epi_exp_integral_e1(x: f64, out: *mut f64) -> EpiStatus {
    guarded(|| match exp_integral_e1(x) {
        Ok(v) => store(out, v.value),
        Err(e) => from_error(&e),
    })
}

/// Calibrates the control and evaluates the cost of the controlled,
/// uncontrolled and `u = 0.9` runs.
///
/// # Safety
/// `scenario` must be null or point to a valid `EpiScenario`; `out` must be
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn epi_solve(scenario: *const EpiScenario, out: *mut EpiSummary) -> EpiStatus {
    guarded(|| {
        let Some(s) = scenario.as_ref() else { return fail(EpiStatus::NullPointer, "scenario is null") };
        match cmd_solve(&s.to_scenario()) {
            Ok(r) => store(
                out,
                EpiSummary {
                    a: r.a,
                    u0: r.u0,
                    decay_rate: r.decay_rate,
                    j_controlled: r.j_controlled,
                    j_uncontrolled: r.j_uncontrolled,
                    j_constant_09: r.j_constant_09,
                    admissible: r.admissible,
                },
            ),
            Err(e) => from_cli_error(&e),
        }
    })
}

/// Simulates one variant. `constant_u` is used only with
/// `EpiVariant::Constant`. On success `*out` receives a new handle.
///
/// # Safety
/// `scenario` must be null or point to a valid `EpiScenario`; `out` must be
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn epi_simulate(
    scenario: *const EpiScenario,
    variant: EpiVariant,
    constant_u: f64,
    out: *mut *mut EpiTrajectory,
) -> EpiStatus {
    guarded(|| {
        let Some(s) = scenario.as_ref() else { return fail(EpiStatus::NullPointer, "scenario is null") };
        if out.is_null() {
            return fail(EpiStatus::NullPointer, "output pointer is null");
        }
        let s = s.to_scenario();
        let design = match design_for(&s) {
            Ok((_, d)) => d,
            Err(e) => return from_cli_error(&e),
        };
        let constant = ConstantControl(constant_u);
        let control: Option<&dyn ControlSignal> = match variant {
            EpiVariant::Controlled => Some(&design),
            EpiVariant::Uncontrolled => None,
            EpiVariant::Constant if constant_u.is_finite() && constant_u >= 0.0 => Some(&constant),
            EpiVariant::Constant => {
                return fail(
                    EpiStatus::InvalidArgument,
                    format!("constant control must be nonnegative, got {constant_u}"),
                )
            }
        };
        match integrate(s.initial_state(), &s.params(), control, s.t_horizon, s.step, s.method) {
            Ok(tr) => store(out, Box::into_raw(Box::new(EpiTrajectory { inner: tr }))),
            Err(e) => from_error(&e),
        }
    })
}

/// Number of grid points, 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live handle from [`epi_simulate`].
#[no_mangle]
pub unsafe extern "C" fn epi_trajectory_len(handle: *const EpiTrajectory) -> usize {
    handle.as_ref().map_or(0, |h| h.inner.len())
}

/// Copies one column into `buffer`, which must hold at least
/// [`epi_trajectory_len`] values.
///
/// # Safety
/// `handle` must be null or a live handle; `buffer` must be null or valid
/// for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn epi_trajectory_copy_column(
    handle: *const EpiTrajectory,
    column: EpiColumn,
    buffer: *mut f64,
    capacity: usize,
) -> EpiStatus {
    guarded(|| {
        let Some(h) = handle.as_ref() else { return fail(EpiStatus::NullPointer, "trajectory is null") };
        if buffer.is_null() {
            return fail(EpiStatus::NullPointer, "buffer is null");
        }
        let tr = &h.inner;
        if capacity < tr.len() {
            return fail(EpiStatus::InvalidArgument, format!("buffer holds {capacity} values, need {}", tr.len()));
        }
        let dst = std::slice::from_raw_parts_mut(buffer, tr.len());
        match column {
            EpiColumn::Time => dst.copy_from_slice(&tr.times),
            EpiColumn::Control => dst.copy_from_slice(&tr.controls),
            EpiColumn::Susceptible => dst.iter_mut().zip(&tr.states).for_each(|(d, x)| *d = x.s),
            EpiColumn::Infected => dst.iter_mut().zip(&tr.states).for_each(|(d, x)| *d = x.i),
            EpiColumn::Removed => dst.iter_mut().zip(&tr.states).for_each(|(d, x)| *d = x.r),
        }
        EpiStatus::Ok
    })
}

/// `J = int [I + A u^2 / 2] dt` on the trajectory's grid.
///
/// # Safety
/// `handle` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn epi_trajectory_cost(handle: *const EpiTrajectory, a: f64, out: *mut EpiCost) -> EpiStatus {
    guarded(|| {
        let Some(h) = handle.as_ref() else { return fail(EpiStatus::NullPointer, "trajectory is null") };
        match evaluate_J(&h.inner, a) {
            Ok(c) => store(
                out,
                EpiCost { infection_burden: c.infection_burden, control_effort: c.control_effort, total: c.total },
            ),
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or a live handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn epi_trajectory_free(handle: *mut EpiTrajectory) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}
