//! SIR dynamics with a vaccination control.
//!
//! Compartments are fractions of a normalized population. Vaccination moves
//! susceptibles straight to the removed class:
//!
//! ```text
//! S' = -beta S I - u S
//! I' =  beta S I - mu I
//! R' =  mu I + u S
//! ```

use crate::error::{ensure_finite, ensure_positive, Result};

/// Transmission and recovery rates, both per day.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpidemicParams {
    pub beta: f64,
    pub mu: f64,
}

impl EpidemicParams {
    pub fn new(beta: f64, mu: f64) -> Result<Self> {
        ensure_positive("beta", beta)?;
        ensure_positive("mu", mu)?;
        Ok(Self { beta, mu })
    }

    /// Builds parameters without the positivity check. Used for degenerate
    /// scenarios such as `beta = 0` (no transmission).
    pub fn new_unchecked(beta: f64, mu: f64) -> Self {
        Self { beta, mu }
    }
}

impl Default for EpidemicParams {
    fn default() -> Self {
        Self { beta: 0.2, mu: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PopulationState {
    pub s: f64,
    pub i: f64,
    pub r: f64,
}

impl PopulationState {
    pub fn new(s: f64, i: f64, r: f64) -> Self {
        Self { s, i, r }
    }

    pub fn total(&self) -> f64 {
        self.s + self.i + self.r
    }

    pub fn is_finite(&self) -> bool {
        self.s.is_finite() && self.i.is_finite() && self.r.is_finite()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.s >= 0.0 && self.i >= 0.0 && self.r >= 0.0
    }

    /// `self + h * d`, the increment used by explicit Runge-Kutta stages.
    pub fn advanced(&self, d: &StateDerivative, h: f64) -> Self {
        Self { s: self.s + h * d.ds, i: self.i + h * d.di, r: self.r + h * d.dr }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateDerivative {
    pub ds: f64,
    pub di: f64,
    pub dr: f64,
}

impl StateDerivative {
    pub fn sum(&self) -> f64 {
        self.ds + self.di + self.dr
    }
}

/// Right-hand side of the controlled system for a vaccination rate `u`.
///
/// States are not clamped; negative inputs are evaluated as given.
pub fn controlled_vector_field(state: &PopulationState, params: &EpidemicParams, u: f64) -> Result<StateDerivative> {
    ensure_finite("s", state.s)?;
    ensure_finite("i", state.i)?;
    ensure_finite("r", state.r)?;
    ensure_finite("u", u)?;
    Ok(field(state, params, u))
}

pub fn uncontrolled_vector_field(state: &PopulationState, params: &EpidemicParams) -> Result<StateDerivative> {
    controlled_vector_field(state, params, 0.0)
}

/// Unchecked evaluation for the integrator hot loop.
#[inline]
pub(crate) fn field(state: &PopulationState, params: &EpidemicParams, u: f64) -> StateDerivative {
    let infection = params.beta * state.s * state.i;
    let recovery = params.mu * state.i;
    let vaccination = u * state.s;
    StateDerivative { ds: -infection - vaccination, di: infection - recovery, dr: recovery + vaccination }
}
