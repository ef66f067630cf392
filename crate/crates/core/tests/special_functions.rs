mod common;

use epl_core::special::{incomplete_beta, incomplete_beta_raised, log_gamma, polylog};
use epl_core::{Error, SeriesConfig};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn polylog_low_orders() {
    let cfg = SeriesConfig::default();
    assert!((polylog(0, 0.5, &cfg).unwrap() - 1.0).abs() < 1e-12);
    assert!((polylog(1, 0.5, &cfg).unwrap() - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn dilog_at_one_half_matches_brute_force() {
    let oracle = common::polylog_brute(2, 0.5);
    assert!((oracle - 0.58224052646501251).abs() < 1e-15);
    let v = polylog(2, 0.5, &SeriesConfig::default()).unwrap();
    assert!(rel(v, oracle) < 1e-9);
}

#[test]
fn polylog_matches_brute_force_on_a_grid() {
    let cfg = SeriesConfig::default();
    for n in 0..=5 {
        for z in [0.01, 0.2, 0.5, 0.8, 0.95] {
            let v = polylog(n, z, &cfg).unwrap();
            let o = common::polylog_brute(n as i32, z);
            assert!(rel(v, o) < 1e-9, "L_{n}({z}) = {v}, oracle {o}");
        }
    }
}

#[test]
fn polylog_order_one_is_minus_log() {
    let cfg = SeriesConfig::default();
    for k in 1..=99 {
        let z = k as f64 / 100.0;
        let v = polylog(1, z, &cfg).unwrap();
        assert!((v + (1.0 - z).ln()).abs() < 1e-10, "z = {z}");
    }
}

#[test]
fn polylog_decreases_with_order() {
    let cfg = SeriesConfig::default();
    for z in [0.05, 0.5, 0.99] {
        let mut prev = polylog(0, z, &cfg).unwrap();
        for n in 1..=6 {
            let v = polylog(n, z, &cfg).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }
}

#[test]
fn polylog_domain_and_non_convergence() {
    let cfg = SeriesConfig::default();
    assert!(matches!(polylog(2, 0.0, &cfg), Err(Error::Domain { .. })));
    assert!(matches!(polylog(2, 1.0, &cfg), Err(Error::Domain { .. })));
    let short = SeriesConfig::new(1e-12, 50).unwrap();
    assert!(matches!(polylog(2, 0.999, &short), Err(Error::SeriesNotConverged { .. })));
}

#[test]
fn incomplete_beta_raised_exponent_values() {
    assert!((incomplete_beta_raised(0.5, 1.0, 1.0).unwrap() - 0.125).abs() < 1e-15);
    assert!((incomplete_beta_raised(1.0 - 1e-12, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-11);
    let oracle = common::tanh_sinh(|t| t * t * (1.0 - t) * (1.0 - t), 0.0, 0.8, 1e-14);
    assert!((oracle - 0.031402666666666667).abs() < 1e-15);
    let v = incomplete_beta_raised(0.8, 2.0, 3.0).unwrap();
    assert!(rel(v, oracle) < 1e-9);
}

#[test]
fn incomplete_beta_against_quadrature() {
    for (x, a, b) in [(0.3, 0.5, 0.7), (0.9, 2.5, 1.5), (0.6, 4.0, 9.0), (0.99, 1.0, 0.5)] {
        let oracle = common::tanh_sinh(|t: f64| t.powf(a) * (1.0 - t).powf(b - 1.0), 0.0, x, 1e-13);
        let conv = common::tanh_sinh(|t: f64| t.powf(a - 1.0) * (1.0 - t).powf(b - 1.0), 0.0, x, 1e-13);
        assert!(rel(incomplete_beta_raised(x, a, b).unwrap(), oracle) < 1e-9, "{x} {a} {b}");
        assert!(rel(incomplete_beta(x, a, b).unwrap(), conv) < 1e-9, "{x} {a} {b}");
    }
}

#[test]
fn incomplete_beta_increases_in_x() {
    let mut prev = 0.0;
    for k in 1..100 {
        let v = incomplete_beta_raised(k as f64 / 100.0, 1.7, 2.3).unwrap();
        assert!(v > prev);
        prev = v;
    }
}

#[test]
fn incomplete_beta_domain() {
    assert!(incomplete_beta_raised(0.0, 1.0, 1.0).is_err());
    assert!(incomplete_beta_raised(0.5, 0.0, 1.0).is_err());
    assert!(incomplete_beta_raised(0.5, 1.0, -1.0).is_err());
}

#[test]
fn log_gamma_values() {
    assert_eq!(log_gamma(1.0).unwrap(), 0.0);
    assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-14);
    assert!((log_gamma(0.5).unwrap() - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
    assert!(log_gamma(0.0).is_err());
    assert!(log_gamma(-1.5).is_err());
}
