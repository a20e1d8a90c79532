//! Cost functionals.
//!
//! `J(u) = int_0^T [I + A u^2 / 2] dt` is evaluated on simulated trajectories.
//! The surrogate `int_0^T [u'^2 + A u^2 / 2] dt` is the functional whose
//! Euler-Lagrange equation produces the exponential control family. Along
//! that family `u'^2 = (A/2) u^2`, so its integrand reduces to `A u^2`.

use std::f64::consts::SQRT_2;

use crate::control::{ControlDesign, ControlSignal};
use crate::error::{Error, Result};
use crate::ode::Trajectory;
use crate::quadrature::{simpson, simpson_samples};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    /// `int I dt`
    pub infection_burden: f64,
    /// `int A u^2 / 2 dt`
    pub control_effort: f64,
    pub total: f64,
}

impl CostBreakdown {
    fn new(infection_burden: f64, control_effort: f64) -> Self {
        Self { infection_burden, control_effort, total: infection_burden + control_effort }
    }
}

/// Simpson quadrature of `J` on the trajectory's own grid.
#[allow(non_snake_case)]
pub fn evaluate_J(trajectory: &Trajectory, a: f64) -> Result<CostBreakdown> {
    if !(a >= 0.0) {
        return Err(Error::Domain(format!("cost weight must be nonnegative, got {a}")));
    }
    if trajectory.len() < 3 {
        return Err(Error::Configuration(format!(
            "cost evaluation needs at least 3 grid points, got {}",
            trajectory.len()
        )));
    }
    let burden = simpson_samples(&trajectory.i(), trajectory.step)?;
    let effort: Vec<f64> = trajectory.controls.iter().map(|u| 0.5 * a * u * u).collect();
    let effort = simpson_samples(&effort, trajectory.step)?;
    Ok(CostBreakdown::new(burden, effort))
}

/// Intervals used by [`surrogate_functional_quadrature`].
pub const SURROGATE_INTERVALS: usize = 20_000;

pub fn surrogate_functional_quadrature(design: &ControlDesign) -> f64 {
    let a = design.a;
    simpson(
        |t| {
            let du = design.derivative(t);
            let u = design.value(t);
            du * du + 0.5 * a * u * u
        },
        0.0,
        design.t_horizon,
        SURROGATE_INTERVALS,
    )
}

/// `int_0^T A u^2 dt = sqrt(2) sqrt(A) U0^2 (1 - exp(-sqrt(2) sqrt(A) T)) / 2`.
pub fn surrogate_functional_closed(design: &ControlDesign) -> f64 {
    let r = SQRT_2 * design.a.sqrt();
    0.5 * r * design.u0 * design.u0 * (1.0 - (-r * design.t_horizon).exp())
}
