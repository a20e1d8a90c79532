//! Forward-backward sweep for the Pontryagin conditions of the vaccination
//! problem, with Hamiltonian
//!
//! `H = I + A u^2 / 2 + lS (-b S I - u S) + lI (b S I - m I) + lR (m I + u S)`
//!
//! and zero terminal costates.

use crate::control::{GridControl, DEFAULT_U_MAX};
use crate::error::{Error, Result};
use crate::model::PopulationState;
use crate::objective::{evaluate_J, CostBreakdown};
use crate::ode::{integrate, Method, Trajectory, DEFAULT_STEP};
use crate::series::CalibrationInput;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmpOptions {
    pub u_max: f64,
    pub step: f64,
    /// Weight of the new stationary control in each update, in `(0, 1]`.
    pub damping: f64,
    pub max_sweeps: usize,
    /// Max-norm change of the control grid that counts as converged.
    pub tol: f64,
}

impl Default for PmpOptions {
    fn default() -> Self {
        Self { u_max: DEFAULT_U_MAX, step: DEFAULT_STEP, damping: 0.5, max_sweeps: 1000, tol: 1e-8 }
    }
}

impl PmpOptions {
    fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::Configuration(format!("damping must lie in (0, 1], got {}", self.damping)));
        }
        if !(self.u_max >= 0.0) || !self.u_max.is_finite() {
            return Err(Error::Configuration(format!("u_max must be finite and nonnegative, got {}", self.u_max)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Configuration(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.max_sweeps == 0 {
            return Err(Error::Configuration("max_sweeps must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PmpSolution {
    pub times: Vec<f64>,
    pub control_grid: Vec<f64>,
    /// `[lS, lI, lR]` per grid point.
    pub adjoints: Vec<[f64; 3]>,
    /// State trajectory under `control_grid`.
    pub trajectory: Trajectory,
    pub cost: CostBreakdown,
    pub converged: bool,
    pub sweeps: usize,
    /// `J` of the control entering each sweep, then of the final control.
    pub cost_history: Vec<f64>,
}

pub fn pmp_forward_backward_sweep(input: &CalibrationInput, options: &PmpOptions) -> Result<PmpSolution> {
    options.validate()?;
    let initial = PopulationState::new(input.s0, input.i0, 0.0);
    let forward = |values: &[f64], h: f64| {
        let control = GridControl { t0: 0.0, step: h, values: values.to_vec() };
        integrate(initial, &input.params, Some(&control), input.t_horizon, h, Method::Rk4)
    };

    // Grid shape is fixed by the first (uncontrolled) run.
    let mut trajectory = integrate(initial, &input.params, None, input.t_horizon, options.step, Method::Rk4)?;
    let h = trajectory.step;
    let mut control = vec![0.0; trajectory.len()];
    let mut cost_history = Vec::new();
    let mut adjoints = Vec::new();
    let mut converged = false;
    let mut sweeps = 0;

    while sweeps < options.max_sweeps {
        sweeps += 1;
        cost_history.push(evaluate_J(&trajectory, input.a)?.total);
        adjoints = backward_adjoints(input, &trajectory, &control, h);

        let mut change = 0.0f64;
        for (k, u) in control.iter_mut().enumerate() {
            let [ls, _, lr] = adjoints[k];
            let s = trajectory.states[k].s;
            let stationary = (s * (ls - lr) / input.a).clamp(0.0, options.u_max);
            let updated = (1.0 - options.damping) * *u + options.damping * stationary;
            change = change.max((updated - *u).abs());
            *u = updated;
        }
        trajectory = forward(&control, h)?;
        if change <= options.tol {
            converged = true;
            break;
        }
    }

    let cost = evaluate_J(&trajectory, input.a)?;
    cost_history.push(cost.total);
    Ok(PmpSolution {
        times: trajectory.times.clone(),
        control_grid: control,
        adjoints,
        trajectory,
        cost,
        converged,
        sweeps,
        cost_history,
    })
}

/// `-dH/d(S, I, R)` at one instant.
fn costate_rate(input: &CalibrationInput, x: &PopulationState, u: f64, l: [f64; 3]) -> [f64; 3] {
    let (b, m) = (input.params.beta, input.params.mu);
    let [ls, li, lr] = l;
    [(ls - li) * b * x.i + (ls - lr) * u, -1.0 + (ls - li) * b * x.s + (li - lr) * m, 0.0]
}

/// RK4 from `T` back to 0, with states and controls averaged at midpoints.
fn backward_adjoints(input: &CalibrationInput, tr: &Trajectory, control: &[f64], h: f64) -> Vec<[f64; 3]> {
    let n = tr.len();
    let mut out = vec![[0.0; 3]; n];
    let step = |l: [f64; 3], d: [f64; 3], c: f64| [l[0] + c * d[0], l[1] + c * d[1], l[2] + c * d[2]];
    for k in (0..n - 1).rev() {
        let (x1, x0) = (tr.states[k + 1], tr.states[k]);
        let xm = PopulationState::new(0.5 * (x0.s + x1.s), 0.5 * (x0.i + x1.i), 0.5 * (x0.r + x1.r));
        let (u1, u0) = (control[k + 1], control[k]);
        let um = 0.5 * (u0 + u1);
        let l = out[k + 1];
        let k1 = costate_rate(input, &x1, u1, l);
        let k2 = costate_rate(input, &xm, um, step(l, k1, -0.5 * h));
        let k3 = costate_rate(input, &xm, um, step(l, k2, -0.5 * h));
        let k4 = costate_rate(input, &x0, u0, step(l, k3, -h));
        out[k] = [
            l[0] - h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            l[1] - h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            l[2] - h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        ];
    }
    out
}
