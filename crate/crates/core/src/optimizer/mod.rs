//! Scalar solvers for the calibration of `U0`, and a Pontryagin sweep used as
//! an optimality reference.

mod pmp;

pub use pmp::{pmp_forward_backward_sweep, PmpOptions, PmpSolution};

use crate::error::{Error, Result};
use crate::series::{stationarity_residual, surrogate_cost, CalibrationInput};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub value: f64,
    /// Stationarity residual at `value`.
    pub residual: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

const MAX_ITERATIONS: usize = 400;

/// Bisection of `f` on `[lo, hi]` down to a bracket no wider than `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<RootResult> {
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(RootResult { value: lo, residual: 0.0, iterations: 0, bracket: (lo, lo) });
    }
    if f_hi == 0.0 {
        return Ok(RootResult { value: hi, residual: 0.0, iterations: 0, bracket: (hi, hi) });
    }
    if !(f_lo.signum() != f_hi.signum()) || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NotBracketed { lo, hi, what: "root" });
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let f_mid = f(mid);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    Ok(RootResult { value, residual: f(value), iterations, bracket: (lo, hi) })
}

/// Root of the stationarity condition `dK/dU0 = 0` inside `bracket`.
pub fn solve_u0_bisection(input: &CalibrationInput, bracket: (f64, f64), tol: f64) -> Result<RootResult> {
    bisect(|u| stationarity_residual(u, input), bracket.0, bracket.1, tol)
}

/// Subintervals of `[lo, hi]` (split into `n` cells) on which `f` changes sign.
pub fn scan_sign_changes<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let h = (hi - lo) / n as f64;
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for k in 1..=n {
        let x = if k == n { hi } else { lo + k as f64 * h };
        let fx = f(x);
        let crosses = f_prev != 0.0 && (fx == 0.0 || f_prev.signum() != fx.signum());
        if crosses || (k == 1 && f_prev == 0.0) {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[lo, hi]`. The interval must
/// bracket a minimum: `f` decreasing at `lo` and increasing at `hi`.
pub fn golden_section_minimize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (lo, hi) = (lo.min(hi), lo.max(hi));
    let probe = tol.max(1e-9 * (hi - lo));
    if !(f(lo + probe) < f(lo)) || !(f(hi - probe) < f(hi)) {
        return Err(Error::NotBracketed { lo, hi, what: "minimum" });
    }
    Ok(golden_unchecked(f, lo, hi, tol))
}

fn golden_unchecked<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_ITERATIONS {
        if b - a <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Direct minimization of `K(U0)` by golden section. Bracketing is judged by
/// the sign of `dK/dU0` at the endpoints.
#[allow(non_snake_case)]
pub fn minimize_K_golden(input: &CalibrationInput, interval: (f64, f64), tol: f64) -> Result<f64> {
    let (lo, hi) = (interval.0.min(interval.1), interval.0.max(interval.1));
    let falling_at_lo = stationarity_residual(lo, input) < 0.0;
    let rising_at_hi = stationarity_residual(hi, input) > 0.0;
    if !(falling_at_lo && rising_at_hi) {
        return Err(Error::NotBracketed { lo, hi, what: "minimum of K" });
    }
    Ok(golden_unchecked(|u| surrogate_cost(u, input), lo, hi, tol))
}
