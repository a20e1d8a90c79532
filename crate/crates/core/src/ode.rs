//! Fixed-step integration of the SIR system.

use std::fmt;
use std::str::FromStr;

use crate::control::{ControlDesign, ControlSignal};
use crate::error::{Error, Result};
use crate::model::{field, EpidemicParams, PopulationState};
use crate::series::CalibrationInput;

pub const DEFAULT_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Forward Euler.
    ClassicalEuler,
    Rk4,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClassicalEuler => "classical",
            Method::Rk4 => "rk4",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "classical" | "euler" | "classical-euler" => Ok(Method::ClassicalEuler),
            "rk4" => Ok(Method::Rk4),
            other => Err(Error::Configuration(format!("unknown method `{other}` (expected classical or rk4)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PopulationState>,
    /// Control applied at each grid time.
    pub controls: Vec<f64>,
    pub step: f64,
    pub method: Method,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn s(&self) -> Vec<f64> {
        self.states.iter().map(|x| x.s).collect()
    }

    pub fn i(&self) -> Vec<f64> {
        self.states.iter().map(|x| x.i).collect()
    }

    pub fn r(&self) -> Vec<f64> {
        self.states.iter().map(|x| x.r).collect()
    }

    /// Largest deviation of `s + i + r` from its initial value.
    pub fn conservation_drift(&self) -> f64 {
        let Some(first) = self.states.first() else { return 0.0 };
        let total = first.total();
        self.states.iter().map(|x| (x.total() - total).abs()).fold(0.0, f64::max)
    }

    /// State at the grid point closest to `t`.
    pub fn state_near(&self, t: f64) -> PopulationState {
        let last = (self.len() - 1) as f64;
        let k = ((t - self.times[0]) / self.step).round().clamp(0.0, last) as usize;
        self.states[k]
    }
}

/// Integrates from `t = 0` to `t_end` on a uniform grid. The step is shrunk
/// slightly when needed so that the grid ends exactly at `t_end`. With no
/// control the zero control is applied.
pub fn integrate(
    initial: PopulationState,
    params: &EpidemicParams,
    control: Option<&dyn ControlSignal>,
    t_end: f64,
    step: f64,
    method: Method,
) -> Result<Trajectory> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Configuration(format!("step must be positive, got {step}")));
    }
    if !(t_end >= step) || !t_end.is_finite() {
        return Err(Error::Configuration(format!("t_end ({t_end}) must be at least one step ({step})")));
    }
    if !initial.is_finite() || !initial.is_nonnegative() {
        return Err(Error::Configuration(format!("initial state must be finite and nonnegative: {initial:?}")));
    }

    let n = (t_end / step - 1e-9).ceil().max(1.0) as usize;
    let h = t_end / n as f64;
    let u = |t: f64| control.map_or(0.0, |c| c.value(t));

    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    let mut controls = Vec::with_capacity(n + 1);
    let mut x = initial;
    times.push(0.0);
    states.push(x);
    controls.push(u(0.0));

    for k in 0..n {
        let t = k as f64 * h;
        x = match method {
            Method::ClassicalEuler => x.advanced(&field(&x, params, u(t)), h),
            Method::Rk4 => {
                let u_mid = u(t + 0.5 * h);
                let k1 = field(&x, params, u(t));
                let k2 = field(&x.advanced(&k1, 0.5 * h), params, u_mid);
                let k3 = field(&x.advanced(&k2, 0.5 * h), params, u_mid);
                let k4 = field(&x.advanced(&k3, h), params, u(t + h));
                PopulationState {
                    s: x.s + h / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
                    i: x.i + h / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di),
                    r: x.r + h / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr),
                }
            }
        };
        let t_next = (k + 1) as f64 * h;
        if !x.is_finite() {
            return Err(Error::Divergence { t: t_next });
        }
        times.push(t_next);
        states.push(x);
        controls.push(u(t_next));
    }

    Ok(Trajectory { times, states, controls, step: h, method })
}

/// Runs the controlled system from `(S0, i0, 0)` under the design's control.
pub fn simulate_controlled(
    input: &CalibrationInput,
    design: &ControlDesign,
    step: f64,
    method: Method,
) -> Result<Trajectory> {
    let initial = PopulationState::new(input.s0, input.i0, 0.0);
    integrate(initial, &input.params, Some(design), input.t_horizon, step, method)
}

pub fn simulate_uncontrolled(input: &CalibrationInput, step: f64, method: Method) -> Result<Trajectory> {
    let initial = PopulationState::new(input.s0, input.i0, 0.0);
    integrate(initial, &input.params, None, input.t_horizon, step, method)
}
