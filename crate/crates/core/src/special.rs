//! Real exponential integrals.
//!
//! `Ei(x) = -PV int_{-x}^inf e^{-t}/t dt` and `E1(x) = int_1^inf e^{-x t}/t dt`.
//! For negative arguments `E1` is continued as `E1(-y) = -Ei(y)`; the
//! imaginary `-i pi` of the principal branch is dropped and flagged.

use crate::error::{Error, Result};
use crate::quadrature::gauss_kronrod;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

/// `E1` uses its power series up to here and a continued fraction above.
pub const E1_SERIES_LIMIT: f64 = 1.0;
/// `Ei` uses its power series up to here and the asymptotic expansion above.
pub const EI_SERIES_LIMIT: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpIntegralValue {
    pub value: f64,
    /// Set when the argument was negative and only the real part of the
    /// principal branch is returned.
    pub branch_note: bool,
}

pub fn exp_integral_ei(x: f64) -> Result<f64> {
    check_argument(x)?;
    if x < 0.0 {
        Ok(-e1_positive(-x))
    } else {
        Ok(ei_positive(x))
    }
}

pub fn exp_integral_e1(x: f64) -> Result<ExpIntegralValue> {
    check_argument(x)?;
    if x > 0.0 {
        Ok(ExpIntegralValue { value: e1_positive(x), branch_note: false })
    } else {
        Ok(ExpIntegralValue { value: -ei_positive(-x), branch_note: true })
    }
}

fn check_argument(x: f64) -> Result<()> {
    if x == 0.0 {
        return Err(Error::Domain("exponential integral is singular at 0".into()));
    }
    if x.is_nan() {
        return Err(Error::Domain("exponential integral of NaN".into()));
    }
    Ok(())
}

fn e1_positive(x: f64) -> f64 {
    if x <= E1_SERIES_LIMIT {
        e1_series(x)
    } else {
        e1_continued_fraction(x)
    }
}

fn ei_positive(x: f64) -> f64 {
    if x <= EI_SERIES_LIMIT {
        ei_series(x)
    } else {
        ei_asymptotic(x)
    }
}

/// `-gamma - ln x - sum_{n>=1} (-x)^n / (n n!)`
pub(crate) fn e1_series(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..200 {
        term *= -x / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// Modified Lentz evaluation of the continued fraction for `E1`.
pub(crate) fn e1_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() <= f64::EPSILON {
            break;
        }
    }
    h * (-x).exp()
}

/// `gamma + ln x + sum_{n>=1} x^n / (n n!)`
pub(crate) fn ei_series(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..500 {
        term *= x / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// `e^x / x * sum_k k! / x^k`, truncated at the smallest term.
pub(crate) fn ei_asymptotic(x: f64) -> f64 {
    let mut sum = 1.0;
    let mut term: f64 = 1.0;
    for k in 1..200 {
        let prev = term;
        term *= k as f64 / x;
        if term >= prev {
            break;
        }
        sum += term;
        if term <= f64::EPSILON * 0.25 * sum {
            break;
        }
    }
    x.exp() / x * sum
}

/// `E1` by adaptive quadrature of `int_{ln x}^{ln(x+60)} exp(-e^v) dv`
/// (the substitution `t = e^v / x` of the defining integral). Positive `x` only.
pub fn e1_by_quadrature(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("quadrature E1 needs x > 0, got {x}")));
    }
    gauss_kronrod(|v| (-v.exp()).exp(), x.ln(), (x + 60.0).ln(), 0.0, 1e-14)
}

/// Principal value `Ei` by quadrature. For `x > 0` the symmetric part of the
/// principal-value integral around the pole is folded into
/// `2 int_0^x sinh(u)/u du`, leaving `Ei(x) = -E1(x) + 2 Shi(x)`.
pub fn ei_by_quadrature(x: f64) -> Result<f64> {
    if x == 0.0 || x.is_nan() {
        return Err(Error::Domain("quadrature Ei needs x != 0".into()));
    }
    if x < 0.0 {
        return Ok(-e1_by_quadrature(-x)?);
    }
    let shi = gauss_kronrod(|u| if u == 0.0 { 1.0 } else { u.sinh() / u }, 0.0, x, 0.0, 1e-15)?;
    Ok(2.0 * shi - e1_by_quadrature(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn quadrature_oracles_reproduce_tabulated_values() {
        // A&S 5.1: E1(1) = 0.219383934395520, Ei(1) = 1.895117816355937
        assert!(rel(e1_by_quadrature(1.0).unwrap(), 0.219_383_934_395_520_3) < 1e-13);
        assert!(rel(ei_by_quadrature(1.0).unwrap(), 1.895_117_816_355_936_8) < 1e-13);
    }

    #[test]
    fn agrees_with_quadrature_at_one() {
        assert!(rel(exp_integral_ei(1.0).unwrap(), ei_by_quadrature(1.0).unwrap()) < 1e-10);
        assert!(rel(exp_integral_e1(1.0).unwrap().value, e1_by_quadrature(1.0).unwrap()) < 1e-10);
    }

    #[test]
    fn small_argument_logarithm() {
        let x = 1e-8;
        let d = exp_integral_ei(x).unwrap() - (EULER_GAMMA + x.ln());
        assert!(d.abs() < 1e-7);
    }

    #[test]
    fn reflection_identity() {
        let y = 2.0;
        let lhs = exp_integral_e1(y).unwrap().value;
        let rhs = -exp_integral_ei(-y).unwrap();
        assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn negative_argument_is_flagged() {
        let v = exp_integral_e1(-0.5).unwrap();
        assert!(v.branch_note);
        assert_eq!(v.value, -exp_integral_ei(0.5).unwrap());
        assert!(!exp_integral_e1(0.5).unwrap().branch_note);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(exp_integral_ei(0.0).is_err());
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_ei(f64::NAN).is_err());
    }

    #[test]
    fn large_argument_asymptotics() {
        // Alternating asymptotic series truncated at its smallest term; the
        // error is bounded by the first omitted term.
        let x: f64 = 25.0;
        let mut sum = 0.0;
        let mut term: f64 = 1.0;
        let mut k = 0;
        let omitted = loop {
            sum += term;
            let next = -term * (k + 1) as f64 / x;
            if next.abs() >= term.abs() {
                break next;
            }
            term = next;
            k += 1;
        };
        let asym = (-x).exp() / x * sum;
        let bound = (-x).exp() / x * omitted.abs();
        let v = exp_integral_e1(x).unwrap().value;
        assert!((v - asym).abs() <= bound + 1e-16 * v);
        assert!(rel(v, asym) < 1e-10);
    }

    #[test]
    fn derivative_of_e1() {
        let h = 1e-6;
        for k in 0..50 {
            let x = 0.1 + k as f64 * (9.9 / 49.0);
            let fd = (exp_integral_e1(x + h).unwrap().value - exp_integral_e1(x - h).unwrap().value) / (2.0 * h);
            let exact = -(-x).exp() / x;
            assert!(rel(fd, exact) <= 1e-6, "x = {x}: {fd} vs {exact}");
        }
    }

    #[test]
    fn branch_switch_continuity() {
        let x = E1_SERIES_LIMIT;
        assert!(rel(e1_series(x), e1_continued_fraction(x)) <= 1e-12);
        let below = exp_integral_e1(x * (1.0 - 1e-15)).unwrap().value;
        let above = exp_integral_e1(x * (1.0 + 1e-15)).unwrap().value;
        assert!(rel(below, above) <= 1e-12);

        let x = EI_SERIES_LIMIT;
        assert!(rel(ei_series(x), ei_asymptotic(x)) <= 1e-12);
        let below = exp_integral_ei(x * (1.0 - 1e-15)).unwrap();
        let above = exp_integral_ei(x * (1.0 + 1e-15)).unwrap();
        assert!(rel(below, above) <= 1e-12);
    }

    #[test]
    fn log_grid_against_quadrature() {
        for k in 0..100 {
            let m = 10f64.powf(-4.0 + k as f64 * (40f64.log10() + 4.0) / 99.0);
            for x in [m, -m] {
                let e1 = exp_integral_e1(x).unwrap().value;
                let e1q = if x > 0.0 { e1_by_quadrature(x).unwrap() } else { -ei_by_quadrature(-x).unwrap() };
                assert!(rel(e1, e1q) <= 1e-10, "E1({x}): {e1} vs {e1q}");
                let ei = exp_integral_ei(x).unwrap();
                let eiq = ei_by_quadrature(x).unwrap();
                assert!(rel(ei, eiq) <= 1e-10, "Ei({x}): {ei} vs {eiq}");
            }
        }
    }
}
