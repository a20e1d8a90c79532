//! Early-stage closed forms and truncated series for the calibration of `U0`.
//!
//! Along the control family the susceptible equation is reduced to pure
//! vaccination, `S' = -u(t) S`, which makes `S(t)` explicit and `I(t)` an
//! exponential-integral expression. The degree-4 Taylor polynomial of `I(t)`
//! is integrated over the horizon to give the cost `K(U0)`; its stationary
//! point has a closed form.
//!
//! Notation below: `r = sqrt(2) sqrt(A)`, `e = exp(-r T)`, `b = beta S0`.

use std::f64::consts::SQRT_2;

use crate::control::decay_rate;
use crate::error::{ensure_positive, Error, Result};
use crate::model::EpidemicParams;
use crate::special::exp_integral_e1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationInput {
    pub params: EpidemicParams,
    pub s0: f64,
    pub i0: f64,
    pub t_horizon: f64,
    /// Control cost weight `A`.
    pub a: f64,
}

impl CalibrationInput {
    pub fn new(params: EpidemicParams, s0: f64, i0: f64, t_horizon: f64, a: f64) -> Result<Self> {
        if !(params.beta >= 0.0 && params.mu >= 0.0) {
            return Err(Error::Domain("beta and mu must be nonnegative".into()));
        }
        if !(s0 >= 0.0 && i0 >= 0.0) {
            return Err(Error::Domain(format!("initial fractions must be nonnegative (s0 = {s0}, i0 = {i0})")));
        }
        ensure_positive("t_horizon", t_horizon)?;
        ensure_positive("a", a)?;
        Ok(Self { params, s0, i0, t_horizon, a })
    }

    /// The outbreak scenario used throughout: beta 0.2, mu 0.1, S0 0.95,
    /// i0 0.05, T 100 days, with the weight calibrated for Q = 500.
    pub fn reference() -> Self {
        let a = crate::control::cost_weight_from_attenuation(500.0, 100.0).unwrap();
        Self { params: EpidemicParams::new_unchecked(0.2, 0.1), s0: 0.95, i0: 0.05, t_horizon: 100.0, a }
    }

    pub fn with_params(mut self, beta: f64, mu: f64) -> Self {
        self.params = EpidemicParams::new_unchecked(beta, mu);
        self
    }

    pub fn with_i0(mut self, i0: f64) -> Self {
        self.i0 = i0;
        self
    }
}

/// Intermediate quantities of the series calibration at a given `U0`.
///
/// `I(t) ~ i0 + i0 (b - mu) t + c2 t^2 + (i0/12) c3 t^3 - (i0/48) c4 t^4`
/// (`c2` carries its own `i0`). `K(U0)` uses `e2..e5`, `dK/dU0` uses `f4, f5`.
/// `v` and `w` do not depend on `U0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesCoefficients {
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub e5: f64,
    pub f4: f64,
    pub f5: f64,
    pub v: f64,
    pub w: f64,
}

impl SeriesCoefficients {
    pub fn evaluate(input: &CalibrationInput, u0: f64) -> Self {
        let CalibrationInput { params: EpidemicParams { beta, mu }, s0, i0, t_horizon: t, a } = *input;
        let b = beta * s0;
        let r = SQRT_2 * a.sqrt();
        let e = (-r * t).exp();
        let (b2, b3, b4) = (b * b, b * b * b, b * b * b * b);
        let (m2, m3, m4) = (mu * mu, mu * mu * mu, mu * mu * mu * mu);
        let (u2, u3) = (u0 * u0, u0 * u0 * u0);

        let c2 = i0 * (-0.5 * b * u0 + 0.5 * b2 - b * mu + 0.5 * m2);
        let c3 = b * u0 * r + 2.0 * b * u2 - 6.0 * b2 * u0 + 6.0 * b * u0 * mu + 2.0 * b3 - 6.0 * b2 * mu
            + 6.0 * b * m2
            - 2.0 * m3;
        let c4 = b * u0 * a + 3.0 * b * u2 * r + 2.0 * b * u3 - 4.0 * b2 * u0 * r - 14.0 * b2 * u2
            + 4.0 * b * u0 * mu * r
            + 8.0 * b * u2 * mu
            + 12.0 * b3 * u0
            - 24.0 * b2 * u0 * mu
            + 12.0 * b * u0 * m2
            - 2.0 * b4
            + 8.0 * b3 * mu
            - 12.0 * b2 * m2
            + 8.0 * b * m3
            - 2.0 * m4;

        let e2 = 0.5 * i0 * (b - mu);
        let e3 = c2 / 3.0;
        let e4 = c3;
        let e5 = c4;

        let f4 = i0 / 48.0 * (b * r + 4.0 * b * u0 - 6.0 * b2 + 6.0 * b * mu);
        let f5 = b * a + 6.0 * b * u0 * r + 6.0 * b * u2 - 4.0 * b2 * r - 28.0 * b2 * u0
            + 4.0 * b * mu * r
            + 16.0 * b * u0 * mu
            + 12.0 * b3
            - 24.0 * b2 * mu
            + 12.0 * b * m2;

        let (t4, t5) = (t.powi(4), t.powi(5));
        let (t8, t9, t10) = (t.powi(8), t.powi(9), t.powi(10));
        let i02 = i0 * i0;

        let v = -14.0 * i0 * t5 * b2 + 3.0 * i0 * t5 * b * r + 8.0 * i0 * t5 * b * mu - 60.0 * r + 60.0 * r * e
            - 10.0 * i0 * t4 * b;

        let w = 960.0 * i0 * t5 * b * mu * r * e + 20.0 * i02 * t9 * b2 * mu - 1200.0 * r * e * i0 * t4 * b
            + 12.0 * i02 * t10 * b2 * a
            + 124.0 * i02 * t10 * b4
            + 100.0 * i02 * t9 * b3
            - 140.0 * i02 * t8 * b2
            + 7200.0 * a
            + 1200.0 * i0 * t4 * b * r
            + 1680.0 * i0 * t5 * b2 * r
            - 960.0 * i0 * t5 * b * mu * r
            - 14400.0 * a * e
            + 7200.0 * a * e * e
            - 60.0 * i02 * t10 * b3 * r
            - 80.0 * i02 * t10 * b3 * mu
            - 1680.0 * i0 * t5 * b2 * r * e
            + 24.0 * i02 * t10 * b2 * r * mu
            - 720.0 * i0 * t5 * b * a
            + 720.0 * i0 * t5 * b * a * e
            - 30.0 * i02 * t9 * b2 * r
            - 8.0 * i02 * t10 * b2 * m2;

        Self { c2, c3, c4, e2, e3, e4, e5, f4, f5, v, w }
    }
}

/// Exact susceptible fraction under pure vaccination with the control family.
pub fn susceptible_exact_earlystage(t: f64, s0: f64, u0: f64, a: f64) -> Result<f64> {
    ensure_positive("a", a)?;
    check_time(t)?;
    let k = decay_rate(a);
    Ok(s0 * (SQRT_2 * u0 * (-1.0 + (-k * t).exp()) / a.sqrt()).exp())
}

pub fn susceptible_series(t: f64, s0: f64, u0: f64, a: f64) -> f64 {
    s0 - s0 * u0 * t + s0 * (0.25 * SQRT_2 * u0 * a.sqrt() + 0.5 * u0 * u0) * t * t
}

/// Infected fraction solving `I' = (beta S(t) - mu) I` with the early-stage
/// `S(t)`, written with a difference of two `E1` values so that the branch
/// constants of the negative arguments cancel.
pub fn infected_exact(t: f64, input: &CalibrationInput, u0: f64) -> Result<f64> {
    check_time(t)?;
    if u0 == 0.0 || !u0.is_finite() {
        return Err(Error::Domain(format!(
            "exact infected curve needs a nonzero finite U0 (got {u0}); simulate the uncontrolled system instead"
        )));
    }
    let CalibrationInput { params: EpidemicParams { beta, mu }, s0, i0, a, .. } = *input;
    let sqrt_a = a.sqrt();
    let c = SQRT_2 * u0 / sqrt_a;
    let k = decay_rate(a);
    let at_t = exp_integral_e1(-c * (-k * t).exp())?.value;
    let at_0 = exp_integral_e1(-c)?.value;
    let exponent = (beta * s0 * SQRT_2 * (-c).exp() * (at_t - at_0) - mu * t * sqrt_a) / sqrt_a;
    Ok(i0 * exponent.exp())
}

/// Degree-4 Taylor polynomial of [`infected_exact`] at `t = 0`.
pub fn infected_series(t: f64, input: &CalibrationInput, u0: f64) -> f64 {
    let co = SeriesCoefficients::evaluate(input, u0);
    let CalibrationInput { params: EpidemicParams { beta, mu }, s0, i0, .. } = *input;
    let lin = i0 * (beta * s0 - mu);
    i0 + t * (lin + t * (co.c2 + t * (i0 / 12.0 * co.c3 - t * i0 / 48.0 * co.c4)))
}

/// `K(U0)`: the series infected curve plus the control effort, integrated
/// over the horizon in closed form.
pub fn surrogate_cost(u0: f64, input: &CalibrationInput) -> f64 {
    let co = SeriesCoefficients::evaluate(input, u0);
    let (i0, t, a) = (input.i0, input.t_horizon, input.a);
    let r = SQRT_2 * a.sqrt();
    i0 * t + co.e2 * t.powi(2) + co.e3 * t.powi(3) + i0 / 48.0 * co.e4 * t.powi(4) - i0 / 240.0 * co.e5 * t.powi(5)
        + 0.25 * u0 * u0 * r
        - 0.25 * r * u0 * u0 * (-r * t).exp()
}

/// `dK/dU0`, assembled from `F4` and `F5`.
pub fn stationarity_residual(u0: f64, input: &CalibrationInput) -> f64 {
    let co = SeriesCoefficients::evaluate(input, u0);
    let (i0, t, a) = (input.i0, input.t_horizon, input.a);
    let b = input.params.beta * input.s0;
    let r = SQRT_2 * a.sqrt();
    -i0 * b * t.powi(3) / 6.0 + co.f4 * t.powi(4) - i0 / 240.0 * co.f5 * t.powi(5) + 0.5 * u0 * r
        - 0.5 * r * u0 * (-r * t).exp()
}

/// `U0 = -(V - sqrt(W)) / (6 i0 T^5 beta S0)`, the larger root of the
/// quadratic stationarity condition.
pub fn optimal_u0_closed_form(input: &CalibrationInput) -> Result<f64> {
    let denom = 6.0 * input.i0 * input.t_horizon.powi(5) * input.params.beta * input.s0;
    if denom == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    let co = SeriesCoefficients::evaluate(input, 0.0);
    if co.w < 0.0 {
        return Err(Error::NoRealRoot { w: co.w });
    }
    Ok(-(co.v - co.w.sqrt()) / denom)
}

/// Closed form, falling back to `U0 = 0` when `i0 beta S0 = 0`: the
/// stationarity condition is then `sqrt(2) sqrt(A) (1 - e) U0 / 2 = 0`.
pub fn calibrated_u0(input: &CalibrationInput) -> Result<f64> {
    match optimal_u0_closed_form(input) {
        Err(Error::DegenerateDenominator) => Ok(0.0),
        other => other,
    }
}

// Toy SI model (susceptibles frozen at S0, control acting on infected).

pub fn toy_infected_exact(t: f64, beta: f64, s0: f64, i0: f64, u0: f64, a: f64) -> Result<f64> {
    ensure_positive("a", a)?;
    check_time(t)?;
    let sqrt_a = a.sqrt();
    let k = decay_rate(a);
    let num = -u0 * SQRT_2 + beta * s0 * t * sqrt_a + u0 * SQRT_2 * (-k * t).exp();
    Ok(i0 * (num / sqrt_a).exp())
}

pub fn toy_infected_linear(t: f64, beta: f64, s0: f64, i0: f64, u0: f64) -> f64 {
    i0 * (1.0 + beta * s0 * t - t * u0)
}

/// Cost of the toy model with the linearized infected curve.
pub fn toy_surrogate_cost(u0: f64, beta: f64, s0: f64, i0: f64, t_horizon: f64, a: f64) -> f64 {
    let t = t_horizon;
    let r = SQRT_2 * a.sqrt();
    i0 * t + 0.5 * i0 * t * t * beta * s0 - 0.5 * i0 * t * t * u0 + 0.25 * r * u0 * u0
        - 0.25 * r * u0 * u0 * (-r * t).exp()
}

pub fn toy_optimal_u0(_beta: f64, _s0: f64, i0: f64, t_horizon: f64, a: f64) -> f64 {
    let r = SQRT_2 * a.sqrt();
    -0.5 * i0 * t_horizon * t_horizon * SQRT_2 / (a.sqrt() * (-1.0 + (-r * t_horizon).exp()))
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and nonnegative, got {t}")))
    }
}

/// Sum of the absolute values of the terms of [`stationarity_residual`].
/// The terms are large and cancel near a root, so residual tolerances are
/// stated relative to this.
pub fn stationarity_scale(u0: f64, input: &CalibrationInput) -> f64 {
    let co = SeriesCoefficients::evaluate(input, u0);
    let (i0, t, a) = (input.i0, input.t_horizon, input.a);
    let b = input.params.beta * input.s0;
    let r = SQRT_2 * a.sqrt();
    let s = (i0 * b * t.powi(3) / 6.0).abs()
        + (co.f4 * t.powi(4)).abs()
        + (i0 / 240.0 * co.f5 * t.powi(5)).abs()
        + (0.5 * u0 * r).abs() * (1.0 + (-r * t).exp());
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const U0_REF: f64 = 0.3796479517;
    const A_REF: f64 = 0.03089708305;

    fn rk4_scalar<F: Fn(f64, f64) -> f64>(f: F, y0: f64, t_end: f64, steps: usize) -> f64 {
        let h = t_end / steps as f64;
        let mut y = y0;
        for n in 0..steps {
            let t = n as f64 * h;
            let k1 = f(t, y);
            let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
            let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
            let k4 = f(t + h, y + h * k3);
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        y
    }

    fn reference() -> CalibrationInput {
        CalibrationInput::reference()
    }

    #[test]
    fn reference_input_matches_scenario() {
        let p = reference();
        assert!((p.a - A_REF).abs() < 1e-11);
        assert!(CalibrationInput::new(p.params, -0.1, 0.05, 100.0, p.a).is_err());
        assert!(CalibrationInput::new(p.params, 0.95, 0.05, 100.0, 0.0).is_err());
    }

    #[test]
    fn susceptible_exact_limits() {
        assert_eq!(susceptible_exact_earlystage(0.0, 0.95, U0_REF, A_REF).unwrap(), 0.95);
        for t in [0.0, 1.0, 50.0] {
            assert_eq!(susceptible_exact_earlystage(t, 0.95, 0.0, A_REF).unwrap(), 0.95);
        }
        assert!(susceptible_exact_earlystage(1.0, 0.95, U0_REF, 0.0).is_err());
        let inf = susceptible_exact_earlystage(1e4, 0.95, U0_REF, A_REF).unwrap();
        let limit = 0.95 * (-SQRT_2 * U0_REF / A_REF.sqrt()).exp();
        assert!((inf - limit).abs() < 1e-15);
    }

    #[test]
    fn susceptible_exact_against_rk4() {
        let k = decay_rate(A_REF);
        let oracle = rk4_scalar(|t, s| -U0_REF * (-k * t).exp() * s, 0.95, 1.0, 2000);
        let v = susceptible_exact_earlystage(1.0, 0.95, U0_REF, A_REF).unwrap();
        assert!((v - oracle).abs() < 1e-8);
    }

    #[test]
    fn susceptible_series_is_taylor_polynomial() {
        let f = |t: f64| susceptible_exact_earlystage(t, 0.95, U0_REF, A_REF).unwrap();
        let h = 1e-3;
        let (f0, f1, f2, f3) = (f(0.0), f(h), f(2.0 * h), f(3.0 * h));
        // Second-order one-sided differences.
        let d1 = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
        let d2 = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
        let p = |t: f64| susceptible_series(t, 0.95, U0_REF, A_REF);
        assert_eq!(p(0.0), 0.95);
        let lin = (p(1.0) - p(-1.0)) / 2.0;
        let quad = (p(1.0) + p(-1.0) - 2.0 * p(0.0)) / 2.0;
        assert!(((lin - d1) / d1).abs() <= 1e-6, "{lin} vs {d1}");
        assert!(((quad - 0.5 * d2) / quad).abs() <= 1e-6, "{quad} vs {}", 0.5 * d2);
        assert_eq!(susceptible_series(3.0, 0.95, 0.0, A_REF), 0.95);
    }

    #[test]
    fn infected_exact_initial_value_and_errors() {
        let p = reference();
        let v = infected_exact(0.0, &p, U0_REF).unwrap();
        assert!((v - 0.05).abs() <= 1e-12 * 0.05);
        assert!(infected_exact(1.0, &p, 0.0).is_err());
        assert!(infected_exact(-1.0, &p, U0_REF).is_err());
        let fast_recovery = p.with_params(0.2, 10.0);
        assert!(infected_exact(1.0, &fast_recovery, U0_REF).unwrap() < 0.05);
    }

    #[test]
    fn infected_exact_against_rk4() {
        let p = reference();
        let k = decay_rate(p.a);
        let c = SQRT_2 * U0_REF / p.a.sqrt();
        let rhs = |t: f64, i: f64| {
            let s = p.s0 * (c * (-1.0 + (-k * t).exp())).exp();
            (p.params.beta * s - p.params.mu) * i
        };
        for t in [1.0, 5.0, 10.0] {
            let oracle = rk4_scalar(rhs, p.i0, t, (t * 2000.0) as usize);
            let v = infected_exact(t, &p, U0_REF).unwrap();
            assert!((v - oracle).abs() < 1e-7, "t = {t}: {v} vs {oracle}");
        }
    }

    #[test]
    fn infected_series_low_order() {
        let p = reference();
        assert_eq!(infected_series(0.0, &p, U0_REF), 0.05);
        let h = 1e-7;
        let slope = (infected_series(h, &p, U0_REF) - 0.05) / h;
        assert!((slope - 0.0045).abs() < 1e-8);
    }

    #[test]
    fn cost_without_infection_is_control_effort() {
        let p = reference().with_i0(0.0);
        let r = SQRT_2 * p.a.sqrt();
        for u0 in [0.1, 0.5, 0.9] {
            let expected = 0.25 * u0 * u0 * r * (1.0 - (-r * p.t_horizon).exp());
            assert!((surrogate_cost(u0, &p) - expected).abs() <= 1e-14);
            let res = 0.5 * SQRT_2 * u0 * p.a.sqrt() * (1.0 - (-r * p.t_horizon).exp());
            assert!((stationarity_residual(u0, &p) - res).abs() <= 1e-14);
        }
        assert_eq!(stationarity_residual(0.0, &p), 0.0);
    }

    #[test]
    fn cost_at_zero_control_is_series_integral() {
        let p = reference();
        let q = crate::quadrature::simpson(|t| infected_series(t, &p, 0.0), 0.0, p.t_horizon, 1000);
        let k = surrogate_cost(0.0, &p);
        assert!(((k - q) / k).abs() <= 1e-10, "{k} vs {q}");
    }

    #[test]
    fn cost_matches_quadrature_of_its_integrand() {
        let p = reference();
        for u0 in [0.05, U0_REF, 0.8] {
            let d = crate::control::ControlDesign::from_weight(p.a, p.t_horizon, u0).unwrap();
            let integrand = |t: f64| {
                let u = crate::control::ControlSignal::value(&d, t);
                infected_series(t, &p, u0) + 0.5 * p.a * u * u
            };
            let q = crate::quadrature::gauss_kronrod(integrand, 0.0, p.t_horizon, 0.0, 1e-14).unwrap();
            let k = surrogate_cost(u0, &p);
            assert!(((k - q) / k).abs() <= 1e-8, "u0 = {u0}: {k} vs {q}");
        }
    }

    #[test]
    fn residual_is_derivative_of_cost() {
        let p = reference();
        // Richardson-extrapolated centered difference; exact for a cubic in U0.
        let h = 1e-3;
        for k in 0..=30 {
            let u0 = 0.01 + k as f64 * (0.89 / 30.0);
            let d = |h: f64| (surrogate_cost(u0 + h, &p) - surrogate_cost(u0 - h, &p)) / (2.0 * h);
            let fd = (4.0 * d(h) - d(2.0 * h)) / 3.0;
            let res = stationarity_residual(u0, &p);
            let scale = stationarity_scale(u0, &p);
            assert!((fd - res).abs() <= 1e-6 * res.abs().max(scale), "u0 = {u0}: {fd} vs {res}");
        }
    }

    #[test]
    fn printed_optimum_is_stationary() {
        let p = CalibrationInput { a: A_REF, ..reference() };
        let res = stationarity_residual(U0_REF, &p);
        assert!(res.abs() <= 1e-6 * stationarity_scale(U0_REF, &p), "{res}");
    }

    #[test]
    fn closed_form_reproduces_reference_value() {
        let p = CalibrationInput { a: A_REF, ..reference() };
        let u0 = optimal_u0_closed_form(&p).unwrap();
        assert!((u0 - U0_REF).abs() < 1e-8, "{u0}");
        assert!(stationarity_residual(u0, &p).abs() <= 1e-9 * stationarity_scale(u0, &p));
    }

    #[test]
    fn closed_form_errors() {
        assert_eq!(optimal_u0_closed_form(&reference().with_i0(0.0)), Err(Error::DegenerateDenominator));
        assert_eq!(calibrated_u0(&reference().with_i0(0.0)), Ok(0.0));
        assert_eq!(calibrated_u0(&reference().with_params(0.0, 0.1)), Ok(0.0));
        match optimal_u0_closed_form(&reference().with_params(0.1, 0.05)) {
            Err(Error::NoRealRoot { w }) => assert!(w < 0.0),
            other => panic!("expected NoRealRoot, got {other:?}"),
        }
    }

    #[test]
    fn toy_exact_limits_and_rk4() {
        assert_eq!(toy_infected_exact(0.0, 0.2, 0.95, 0.05, 0.1, 0.03).unwrap(), 0.05);
        for t in [0.5, 3.0] {
            let v = toy_infected_exact(t, 0.2, 0.95, 0.05, 0.0, 0.03).unwrap();
            assert!((v - 0.05 * (0.19 * t).exp()).abs() < 1e-15);
        }
        let k = decay_rate(0.03);
        let oracle = rk4_scalar(|t, i| (0.2 * 0.95 - 0.1 * (-k * t).exp()) * i, 0.05, 2.0, 4000);
        let v = toy_infected_exact(2.0, 0.2, 0.95, 0.05, 0.1, 0.03).unwrap();
        assert!((v - oracle).abs() < 1e-9);
        assert!(toy_infected_exact(1.0, 0.2, 0.95, 0.05, 0.1, 0.0).is_err());
    }

    #[test]
    fn toy_linear() {
        assert_eq!(toy_infected_linear(0.0, 0.2, 0.95, 0.05, 0.3), 0.05);
        assert!((toy_infected_linear(7.0, 0.2, 0.95, 0.05, 0.19) - 0.05).abs() < 1e-15);
        let h = 1e-6;
        let f = |t| toy_infected_exact(t, 0.2, 0.95, 0.05, 0.1, 0.03).unwrap();
        let slope = (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h);
        let lin = toy_infected_linear(1.0, 0.2, 0.95, 0.05, 0.1) - 0.05;
        assert!((slope - lin).abs() < 1e-8);
    }

    #[test]
    fn toy_optimum() {
        assert_eq!(toy_optimal_u0(0.2, 0.95, 0.0, 100.0, A_REF), 0.0);
        let u = toy_optimal_u0(0.2, 0.95, 0.05, 100.0, A_REF);
        assert!(u > 0.0);
        let two = toy_optimal_u0(0.2, 0.95, 0.1, 100.0, A_REF);
        assert!((two - 2.0 * u).abs() <= 1e-12 * two);
        // The cost is quadratic in U0, so a unit step is exact up to roundoff.
        let h = 1.0;
        let cost = |x| toy_surrogate_cost(x, 0.2, 0.95, 0.05, 100.0, A_REF);
        let d = (cost(u + h) - cost(u - h)) / (2.0 * h);
        assert!(d.abs() <= 1e-8, "{d}");
    }
}
