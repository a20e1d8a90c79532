mod common;

use common::perturbation_grid;
use epioptic::optimizer::{bisect, minimize_K_golden, scan_sign_changes, solve_u0_bisection};
use epioptic::series::{optimal_u0_closed_form, stationarity_residual, surrogate_cost, CalibrationInput};
use epioptic::Error;

fn roots(p: &CalibrationInput) -> Vec<f64> {
    let f = |u| stationarity_residual(u, p);
    scan_sign_changes(f, 1e-3, 10.0, 20_000).into_iter().map(|(a, b)| bisect(f, a, b, 1e-14).unwrap().value).collect()
}

#[test]
fn closed_form_and_bisection_agree_on_grid() {
    // Cells without a real closed-form root also have no sign change of the
    // residual, so the two oracles agree on existence as well.
    let mut with_root = 0;
    for p in perturbation_grid() {
        let found = roots(&p);
        match optimal_u0_closed_form(&p) {
            Ok(closed) => {
                with_root += 1;
                let nearest = found.iter().map(|r| (r - closed).abs()).fold(f64::INFINITY, f64::min);
                assert!(nearest <= 1e-9, "beta {} mu {}: {closed} vs {found:?}", p.params.beta, p.params.mu);
            }
            Err(Error::NoRealRoot { .. }) => assert!(found.is_empty(), "{:?}: {found:?}", p.params),
            Err(e) => panic!("{e}"),
        }
    }
    assert_eq!(with_root, 19);
}

#[test]
fn residual_roots_pair_up_as_min_then_max() {
    for p in perturbation_grid() {
        let found = roots(&p);
        if found.is_empty() {
            continue;
        }
        assert_eq!(found.len(), 2, "{:?}", p.params);
        let closed = optimal_u0_closed_form(&p).unwrap();
        assert!((found[1] - closed).abs() <= 1e-9);
        // dK/dU0 goes - to + at the smaller root and + to - at the closed form.
        let h = 1e-4 * found[0];
        assert!(stationarity_residual(found[0] - h, &p) < 0.0 && stationarity_residual(found[0] + h, &p) > 0.0);
        let h = 1e-4 * closed;
        assert!(stationarity_residual(closed - h, &p) > 0.0 && stationarity_residual(closed + h, &p) < 0.0);
    }
}

#[test]
fn golden_section_converges_to_the_local_minimum() {
    for p in perturbation_grid() {
        let found = roots(&p);
        if found.len() != 2 {
            continue;
        }
        let u = minimize_K_golden(&p, (0.5 * found[0], 0.5 * (found[0] + found[1])), 1e-10).unwrap();
        assert!((u - found[0]).abs() <= 1e-8, "{:?}: {u} vs {}", p.params, found[0]);
        assert!(surrogate_cost(u, &p) < surrogate_cost(found[1], &p));
    }
}

#[test]
fn bisection_bracket_and_residual() {
    let p = CalibrationInput::reference();
    let r = solve_u0_bisection(&p, (0.2, 0.9), 1e-12).unwrap();
    assert!(r.bracket.0 <= r.value && r.value <= r.bracket.1);
    assert!(r.bracket.1 - r.bracket.0 <= 1e-12);
    let scale = epioptic::series::stationarity_scale(r.value, &p);
    assert!(r.residual.abs() <= 1e-9 * scale, "{} vs scale {scale}", r.residual);
}
