//! Composite Simpson on uniform samples and adaptive Gauss-Kronrod (7/15).

use crate::error::{Error, Result};

/// Composite Simpson over uniformly spaced samples. With an odd number of
/// intervals the last one is closed with the trapezoid rule.
pub fn simpson_samples(values: &[f64], step: f64) -> Result<f64> {
    let n = values.len();
    if n < 3 {
        return Err(Error::Configuration(format!("Simpson quadrature needs at least 3 samples, got {n}")));
    }
    let intervals = n - 1;
    let even = intervals - intervals % 2;
    let odd_sum: f64 = values[1..even].iter().step_by(2).sum();
    let even_sum: f64 = values[2..even].iter().step_by(2).sum();
    let mut total = step / 3.0 * (values[0] + values[even] + 4.0 * odd_sum + 2.0 * even_sum);
    if even < intervals {
        total += 0.5 * step * (values[even] + values[even + 1]);
    }
    Ok(total)
}

/// Composite Simpson of `f` on `[a, b]` with `intervals` (rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    let n = (intervals.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + k as f64 * h);
    }
    sum * h / 3.0
}

// Published nodes and weights, kept at full length.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Globally adaptive Gauss-Kronrod. Splits the interval with the largest error
/// estimate until the total estimate meets `max(abs_tol, rel_tol * |I|)`.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    const MAX_SEGMENTS: usize = 2000;
    let (v, e) = kronrod15(&f, a, b);
    let mut segs = vec![(a, b, v, e)];
    loop {
        let total: f64 = segs.iter().map(|s| s.2).sum();
        let err: f64 = segs.iter().map(|s| s.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(Error::Configuration(format!(
                "adaptive quadrature did not converge on [{a}, {b}] (error estimate {err:e})"
            )));
        }
        let worst = segs.iter().enumerate().max_by(|x, y| x.1 .3.total_cmp(&y.1 .3)).map(|(k, _)| k).unwrap();
        let (lo, hi, _, _) = segs.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod15(&f, lo, mid);
        let (v2, e2) = kronrod15(&f, mid, hi);
        segs.push((lo, mid, v1, e1));
        segs.push((mid, hi, v2, e2));
    }
}
