//! The exponential control family `u(t) = U0 exp(-sqrt(2) sqrt(A) t / 2)`.
//!
//! It solves `A u - 2 u'' = 0` with `u(0) = U0` and decay at infinity. The
//! weight `A` is calibrated so that the control has dropped by a factor `Q`
//! at half the horizon.

use std::f64::consts::SQRT_2;

use crate::error::{ensure_finite, ensure_positive, Error, Result};

pub const DEFAULT_U_MAX: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlDesign {
    /// Attenuation at `t_horizon / 2`.
    pub q: f64,
    pub t_horizon: f64,
    /// Cost weight of the control effort.
    pub a: f64,
    /// Initial intensity.
    pub u0: f64,
    pub u_max: f64,
}

impl ControlDesign {
    /// Design whose weight is calibrated from the attenuation factor.
    pub fn from_attenuation(q: f64, t_horizon: f64, u0: f64) -> Result<Self> {
        let a = cost_weight_from_attenuation(q, t_horizon)?;
        Self::validated(Self { q, t_horizon, a, u0, u_max: DEFAULT_U_MAX })
    }

    /// Design with an explicit weight; `q` is back-computed.
    pub fn from_weight(a: f64, t_horizon: f64, u0: f64) -> Result<Self> {
        ensure_positive("a", a)?;
        ensure_positive("t_horizon", t_horizon)?;
        let q = (t_horizon * a.sqrt() / 8f64.sqrt()).exp();
        Self::validated(Self { q, t_horizon, a, u0, u_max: DEFAULT_U_MAX })
    }

    pub fn with_u_max(mut self, u_max: f64) -> Self {
        self.u_max = u_max;
        self
    }

    pub fn with_u0(mut self, u0: f64) -> Self {
        self.u0 = u0;
        self
    }

    fn validated(self) -> Result<Self> {
        ensure_positive("a", self.a)?;
        ensure_positive("t_horizon", self.t_horizon)?;
        ensure_finite("u0", self.u0)?;
        if !(self.q > 1.0) {
            return Err(Error::Domain(format!("q must exceed 1, got {}", self.q)));
        }
        Ok(self)
    }

    /// Exponent rate `sqrt(2) sqrt(A) / 2`, i.e. `sqrt(A / 2)`.
    pub fn decay_rate(&self) -> f64 {
        decay_rate(self.a)
    }

    /// Analytic time derivative of the control.
    pub fn derivative(&self, t: f64) -> f64 {
        -self.decay_rate() * self.u0 * (-self.decay_rate() * t).exp()
    }
}

pub fn decay_rate(a: f64) -> f64 {
    0.5 * SQRT_2 * a.sqrt()
}

pub fn control_value(t: f64, design: &ControlDesign) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    Ok(design.u0 * (-design.decay_rate() * t).exp())
}

/// `A = 8 ln(Q)^2 / T^2`.
pub fn cost_weight_from_attenuation(q: f64, t_horizon: f64) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::Domain(format!("q must exceed 1, got {q}")));
    }
    ensure_positive("t_horizon", t_horizon)?;
    let ln_q = q.ln();
    Ok(8.0 * ln_q * ln_q / (t_horizon * t_horizon))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Largest control value on `[0, T]`, attained at `t = 0`.
    pub peak: f64,
    pub u_max: f64,
    /// First time at which the bound is violated.
    pub violation_time: Option<f64>,
    pub reduction: &'static str,
}

const REDUCTION: &str = "u(t) = U0 exp(-k t) with k > 0 is monotone on [0, T], \
so 0 <= u(t) <= u_max for all t reduces to 0 <= U0 <= u_max";

pub fn check_admissible(design: &ControlDesign) -> AdmissibilityReport {
    let ok = design.u0 >= 0.0 && design.u0 <= design.u_max;
    AdmissibilityReport {
        admissible: ok,
        peak: design.u0,
        u_max: design.u_max,
        violation_time: if ok { None } else { Some(0.0) },
        reduction: REDUCTION,
    }
}

/// A time-dependent vaccination rate.
pub trait ControlSignal {
    fn value(&self, t: f64) -> f64;
}

impl ControlSignal for ControlDesign {
    fn value(&self, t: f64) -> f64 {
        self.u0 * (-self.decay_rate() * t).exp()
    }
}

impl<F: Fn(f64) -> f64> ControlSignal for F {
    fn value(&self, t: f64) -> f64 {
        self(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantControl(pub f64);

impl ControlSignal for ConstantControl {
    fn value(&self, _t: f64) -> f64 {
        self.0
    }
}

/// Control sampled on a uniform grid, linearly interpolated in between.
#[derive(Debug, Clone, PartialEq)]
pub struct GridControl {
    pub t0: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl ControlSignal for GridControl {
    fn value(&self, t: f64) -> f64 {
        let n = self.values.len();
        if n == 0 {
            return 0.0;
        }
        let x = ((t - self.t0) / self.step).max(0.0);
        let k = x.floor() as usize;
        if k + 1 >= n {
            return self.values[n - 1];
        }
        let w = x - k as f64;
        if w == 0.0 {
            self.values[k]
        } else {
            (1.0 - w) * self.values[k] + w * self.values[k + 1]
        }
    }
}
