//! Scenario configuration: flat `key = value` files with `#` comments.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::control::{cost_weight_from_attenuation, DEFAULT_U_MAX};
use crate::model::{EpidemicParams, PopulationState};
use crate::ode::{Method, DEFAULT_STEP};
use crate::series::CalibrationInput;

use super::output::format_float;

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub beta: f64,
    pub mu: f64,
    pub s0: f64,
    pub i0: f64,
    pub r0: f64,
    pub t_horizon: f64,
    pub q: f64,
    pub u_max: f64,
    pub step: f64,
    pub method: Method,
    pub output_dir: PathBuf,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            beta: 0.2,
            mu: 0.1,
            s0: 0.95,
            i0: 0.05,
            r0: 0.0,
            t_horizon: 100.0,
            q: 500.0,
            u_max: DEFAULT_U_MAX,
            step: DEFAULT_STEP,
            method: Method::Rk4,
            output_dir: PathBuf::from("."),
        }
    }
}

pub const CONFIG_FILE_NAME: &str = "scenario.cfg";

impl Scenario {
    /// Applies one `key = value` pair. Keys use `_` or `-` interchangeably.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        let num = || -> Result<f64, String> {
            value.parse::<f64>().map_err(|_| format!("`{key}`: expected a number, got `{value}`"))
        };
        match key.as_str() {
            "beta" => self.beta = num()?,
            "mu" => self.mu = num()?,
            "s0" => self.s0 = num()?,
            "i0" => self.i0 = num()?,
            "r0" => self.r0 = num()?,
            "t" => self.t_horizon = num()?,
            "q" => self.q = num()?,
            "u_max" => self.u_max = num()?,
            "step" => self.step = num()?,
            "method" => self.method = value.parse().map_err(|e: crate::Error| e.to_string())?,
            "out" => self.output_dir = PathBuf::from(value),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Parses a config file's contents on top of `self`.
    pub fn apply_config(&mut self, text: &str) -> Result<(), String> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`, got `{}`", n + 1, raw.trim()))?;
            self.set(key, value).map_err(|e| format!("line {}: {e}", n + 1))?;
        }
        Ok(())
    }

    pub fn from_config(text: &str) -> Result<Self, String> {
        let mut s = Self::default();
        s.apply_config(text)?;
        Ok(s)
    }

    /// Serializes every key; values reload bit-exactly.
    pub fn to_config(&self) -> String {
        let mut out = String::from("# epioptic scenario\n");
        for (key, value) in [
            ("beta", self.beta),
            ("mu", self.mu),
            ("s0", self.s0),
            ("i0", self.i0),
            ("r0", self.r0),
            ("t", self.t_horizon),
            ("q", self.q),
            ("u_max", self.u_max),
            ("step", self.step),
        ] {
            let _ = writeln!(out, "{key} = {}", format_float(value));
        }
        let _ = writeln!(out, "method = {}", self.method);
        let _ = writeln!(out, "out = {}", self.output_dir.display());
        out
    }

    pub fn validate(&self) -> Result<(), String> {
        let nonneg = [
            ("beta", self.beta),
            ("mu", self.mu),
            ("s0", self.s0),
            ("i0", self.i0),
            ("r0", self.r0),
            ("u_max", self.u_max),
        ];
        for (name, v) in nonneg {
            if !(v.is_finite() && v >= 0.0) {
                return Err(format!("{name} must be finite and nonnegative, got {v}"));
            }
        }
        if !(self.t_horizon.is_finite() && self.t_horizon > 0.0) {
            return Err(format!("t must be positive, got {}", self.t_horizon));
        }
        if !(self.q.is_finite() && self.q > 1.0) {
            return Err(format!("q must exceed 1, got {}", self.q));
        }
        if !(self.step > 0.0 && self.step <= self.t_horizon) {
            return Err(format!("step must lie in (0, t], got {}", self.step));
        }
        Ok(())
    }

    pub fn params(&self) -> EpidemicParams {
        EpidemicParams::new_unchecked(self.beta, self.mu)
    }

    pub fn initial_state(&self) -> PopulationState {
        PopulationState::new(self.s0, self.i0, self.r0)
    }

    pub fn cost_weight(&self) -> crate::Result<f64> {
        cost_weight_from_attenuation(self.q, self.t_horizon)
    }

    pub fn calibration_input(&self) -> crate::Result<CalibrationInput> {
        CalibrationInput::new(self.params(), self.s0, self.i0, self.t_horizon, self.cost_weight()?)
    }
}
