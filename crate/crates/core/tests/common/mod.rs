#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

use epioptic::series::CalibrationInput;

/// Taylor coefficients at 0 of a smooth `f`, from a least-squares polynomial
/// of the given degree on Chebyshev nodes in `[0, t_max]`.
pub fn taylor_by_polyfit<F: Fn(f64) -> f64>(f: F, t_max: f64, degree: usize, nodes: usize) -> Vec<f64> {
    let xs: Vec<f64> = (0..nodes)
        .map(|k| 0.5 - 0.5 * ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * nodes) as f64).cos())
        .collect();
    let v = DMatrix::from_fn(nodes, degree + 1, |r, c| xs[r].powi(c as i32));
    let y = DVector::from_iterator(nodes, xs.iter().map(|x| f(x * t_max)));
    let d = v.svd(true, true).solve(&y, 1e-15).expect("least squares");
    d.iter().enumerate().map(|(k, dk)| dk / t_max.powi(k as i32)).collect()
}

pub fn rk4_scalar<F: Fn(f64, f64) -> f64>(f: F, y0: f64, t_end: f64, steps: usize) -> Vec<(f64, f64)> {
    let h = t_end / steps as f64;
    let mut y = y0;
    let mut out = vec![(0.0, y0)];
    for k in 0..steps {
        let t = k as f64 * h;
        let k1 = f(t, y);
        let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
        let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
        let k4 = f(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push(((k + 1) as f64 * h, y));
    }
    out
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// The 5x5 (beta, mu) perturbation grid around the reference scenario.
pub fn perturbation_grid() -> Vec<CalibrationInput> {
    let base = CalibrationInput::reference();
    let mut out = Vec::new();
    for beta in linspace(0.1, 0.4, 5) {
        for mu in linspace(0.05, 0.2, 5) {
            out.push(base.with_params(beta, mu));
        }
    }
    out
}

/// Coefficients of the degree-4 series polynomial, lowest order first.
pub fn series_coefficients(input: &CalibrationInput, u0: f64) -> [f64; 5] {
    let co = epioptic::series::SeriesCoefficients::evaluate(input, u0);
    let i0 = input.i0;
    let b = input.params.beta * input.s0;
    [i0, i0 * (b - input.params.mu), co.c2, i0 / 12.0 * co.c3, -i0 / 48.0 * co.c4]
}
