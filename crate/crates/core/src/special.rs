//! Special functions behind the closed forms: polylogarithm, incomplete
//! beta (two conventions), log-gamma, the regularized incomplete gamma
//! function and the standard normal quantile.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};
use crate::series::{sum_series, CompensatedSum, SeriesConfig};

/// Polylogarithm `L_n(z) = Σ_{j≥1} z^j / j^n` for real `z ∈ (0, 1)`.
///
/// The series is summed directly under `cfg`; hitting `cfg.max_terms` before
/// the tolerance is an error rather than a silently truncated value.
pub fn polylog(n: u32, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(domain("z", z));
    }
    let n = n as i32;
    let mut zj = 1.0;
    sum_series(cfg, 1, |j| {
        zj *= z;
        zj / (j as f64).powi(n)
    })
    .into_result()
}

/// Dilogarithm `L_2(z)` on `(0, 1)` using the reflection formula above 1/2,
/// so it always converges in a few dozen terms.
pub fn dilog(z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(domain("z", z));
    }
    if z <= 0.5 {
        Ok(dilog_series(z))
    } else {
        let w = 1.0 - z;
        Ok(PI * PI / 6.0 - z.ln() * w.ln() - dilog_series(w))
    }
}

fn dilog_series(z: f64) -> f64 {
    let mut acc = CompensatedSum::default();
    let mut zk = 1.0;
    for k in 1..200 {
        zk *= z;
        let t = zk / (k * k) as f64;
        acc.add(t);
        if t < 1e-18 * acc.value() {
            break;
        }
    }
    acc.value()
}

/// `log Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("x", x));
    }
    Ok(libm::lgamma(x))
}

/// `log B(a, b)` for positive arguments.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b)
}

/// Binomial coefficient as a float, by the multiplicative formula.
pub fn choose(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 1..=k {
        c = c * (n - k + i) as f64 / i as f64;
    }
    c
}

/// The incomplete beta function with the exponent convention
/// `B_x(a, b) = ∫_0^x t^a (1 - t)^{b-1} dt` (note `t^a`, not `t^{a-1}`).
pub fn incomplete_beta_raised(x: f64, a: f64, b: f64) -> Result<f64> {
    check_beta_args(x, a, b)?;
    Ok(lower_beta(x, a + 1.0, b))
}

/// The conventional (unregularized) incomplete beta function
/// `B_x(a, b) = ∫_0^x t^{a-1} (1 - t)^{b-1} dt`.
pub fn incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    check_beta_args(x, a, b)?;
    Ok(lower_beta(x, a, b))
}

fn check_beta_args(x: f64, a: f64, b: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain("x", x));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("a", a));
    }
    if !(b > 0.0) || !b.is_finite() {
        return Err(domain("b", b));
    }
    Ok(())
}

/// `∫_0^x t^{a-1}(1-t)^{b-1} dt` for `a > 0`, `x ∈ (0, 1)`. Because `x < 1`
/// the integral is finite for every real `b`; the symmetry route is only
/// taken when `b > 0`.
pub(crate) fn lower_beta(x: f64, a: f64, b: f64) -> f64 {
    if b > 0.0 && x > (a + 1.0) / (a + b + 2.0) {
        ln_beta(a, b).exp() - lower_beta_series(1.0 - x, b, a)
    } else {
        lower_beta_series(x, a, b)
    }
}

/// `B_x(a, b) = x^a (1-x)^b / a · Σ_k (a+b)_k / (a+1)_k x^k`.
fn lower_beta_series(x: f64, a: f64, b: f64) -> f64 {
    let (sum, _) = hypergeometric_tail(x, a, b);
    (a * x.ln() + b * (-x).ln_1p() - a.ln()).exp() * sum
}

/// `log B_x(a, b)`, for callers that only need the logarithm (tiny values).
pub(crate) fn ln_lower_beta_series(x: f64, a: f64, b: f64) -> f64 {
    let (sum, _) = hypergeometric_tail(x, a, b);
    a * x.ln() + b * (-x).ln_1p() - a.ln() + sum.ln()
}

fn hypergeometric_tail(x: f64, a: f64, b: f64) -> (f64, usize) {
    let mut acc = CompensatedSum::default();
    let mut t = 1.0;
    acc.add(t);
    let mut k = 0usize;
    while k < 200_000 {
        let kf = k as f64;
        let ratio = (a + b + kf) * x / (a + 1.0 + kf);
        t *= ratio;
        acc.add(t);
        k += 1;
        // The term ratio is monotone in k with limit x, so once it is below
        // one the tail is dominated by a geometric series.
        let r = ratio.abs().max(x);
        if r < 1.0 && t.abs() * r / (1.0 - r) <= 1e-17 * acc.value().abs() {
            break;
        }
    }
    (acc.value(), k)
}

/// Regularized lower incomplete gamma function `P(a, x)`.
pub fn gamma_p(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("a", a));
    }
    if !(x >= 0.0) {
        return Err(domain("x", x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    if x < a + 1.0 {
        Ok(gamma_p_series(a, x))
    } else {
        Ok(1.0 - gamma_q_fraction(a, x))
    }
}

/// Regularized upper incomplete gamma function `Q(a, x) = 1 - P(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("a", a));
    }
    if !(x >= 0.0) {
        return Err(domain("x", x));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < a + 1.0 {
        Ok(1.0 - gamma_p_series(a, x))
    } else {
        Ok(gamma_q_fraction(a, x))
    }
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut del = 1.0 / a;
    let mut sum = del;
    for _ in 0..10_000 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum * (-x + a * x.ln() - libm::lgamma(a)).exp()
}

/// Modified Lentz evaluation of the continued fraction for `Q(a, x)`.
fn gamma_q_fraction(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + a * x.ln() - libm::lgamma(a)).exp() * h
}

/// Standard normal quantile `Φ^{-1}(p)` (Wichura's AS 241, about 16 digits).
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain("p", p));
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        let num = ((((((r * 2509.0809287301226727 + 33430.575583588128105) * r
            + 67265.770927008700853)
            * r
            + 45921.953931549871457)
            * r
            + 13731.693765509461125)
            * r
            + 1971.5909503065514427)
            * r
            + 133.14166789178437745)
            * r
            + 3.387132872796366608;
        let den = ((((((r * 5226.495278852545925 + 28729.085735721942674) * r
            + 39307.89580009271061)
            * r
            + 21213.794301586595867)
            * r
            + 5394.1960214247511077)
            * r
            + 687.1870074920579083)
            * r
            + 42.313330701600911252)
            * r
            + 1.0;
        return Ok(q * num / den);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let val = if r <= 5.0 {
        r -= 1.6;
        let num = ((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r
            + 0.24178072517745061177)
            * r
            + 1.27045825245236838258)
            * r
            + 3.64784832476320460504)
            * r
            + 5.7694972214606914055)
            * r
            + 4.6303378461565452959)
            * r
            + 1.42343711074968357734;
        let den = ((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r
            + 0.0151986665636164571966)
            * r
            + 0.14810397642748007459)
            * r
            + 0.68976733498510000455)
            * r
            + 1.6763848301838038494)
            * r
            + 2.05319162663775882187)
            * r
            + 1.0;
        num / den
    } else {
        r -= 5.0;
        let num = ((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r
            + 0.0012426609473880784386)
            * r
            + 0.026532189526576123093)
            * r
            + 0.29656057182850489123)
            * r
            + 1.7848265399172913358)
            * r
            + 5.4637849111641143699)
            * r
            + 6.6579046435011037772;
        let den = ((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r
            + 1.8463183175100546818e-5)
            * r
            + 7.868691311456132591e-4)
            * r
            + 0.0148753612908506148525)
            * r
            + 0.13692988092273580531)
            * r
            + 0.59983220655588793769)
            * r
            + 1.0;
        num / den
    };
    Ok(if q < 0.0 { -val } else { val })
}

/// Standard normal distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / core::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn polylog_low_orders_have_closed_forms() {
        let cfg = SeriesConfig::default();
        assert!(close(polylog(0, 0.5, &cfg).unwrap(), 1.0, 1e-12));
        assert!(close(polylog(1, 0.5, &cfg).unwrap(), core::f64::consts::LN_2, 1e-12));
        // π²/12 − ln²2 / 2
        let li2_half = PI * PI / 12.0 - 0.5 * core::f64::consts::LN_2.powi(2);
        assert!(close(polylog(2, 0.5, &cfg).unwrap(), li2_half, 1e-12));
    }

    #[test]
    fn polylog_rejects_out_of_domain_arguments() {
        let cfg = SeriesConfig::default();
        for z in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(matches!(polylog(2, z, &cfg), Err(Error::Domain { what: "z", .. })));
        }
    }

    #[test]
    fn polylog_flags_non_convergence() {
        let cfg = SeriesConfig::new(1e-12, 20).unwrap();
        assert!(matches!(polylog(1, 0.99, &cfg), Err(Error::SeriesNotConverged { .. })));
    }

    #[test]
    fn dilog_matches_series_on_both_branches() {
        let cfg = SeriesConfig::new(1e-16, 100_000).unwrap();
        for z in [0.05, 0.3, 0.5, 0.7, 0.95] {
            assert!(close(dilog(z).unwrap(), polylog(2, z, &cfg).unwrap(), 1e-13), "z = {z}");
        }
    }

    #[test]
    fn incomplete_beta_raised_exponent() {
        // ∫_0^x t dt = x² / 2
        assert!(close(incomplete_beta_raised(0.5, 1.0, 1.0).unwrap(), 0.125, 1e-14));
        assert!(close(incomplete_beta_raised(1.0 - 1e-12, 1.0, 1.0).unwrap(), 0.5, 1e-11));
        // ∫_0^0.8 t²(1-t)² dt
        assert!(close(incomplete_beta_raised(0.8, 2.0, 3.0).unwrap(), 0.031402666666666667, 1e-13));
    }

    #[test]
    fn incomplete_beta_conventions_differ_by_one_in_the_first_argument() {
        for (x, a, b) in [(0.3, 0.7, 2.5), (0.9, 3.0, 0.4), (0.5, 1.5, 1.5)] {
            let raised = incomplete_beta_raised(x, a, b).unwrap();
            let conv = incomplete_beta(x, a + 1.0, b).unwrap();
            assert!(close(raised, conv, 1e-14));
        }
    }

    #[test]
    fn incomplete_beta_domain_errors() {
        assert!(incomplete_beta_raised(0.0, 1.0, 1.0).is_err());
        assert!(incomplete_beta_raised(1.0, 1.0, 1.0).is_err());
        assert!(incomplete_beta_raised(0.5, 0.0, 1.0).is_err());
        assert!(incomplete_beta_raised(0.5, 1.0, -1.0).is_err());
    }

    #[test]
    fn lower_beta_accepts_negative_b_below_one() {
        // ∫_0^0.5 (1-t)^{-1.5} dt = 2((0.5)^{-1/2} − 1)
        let expect = 2.0 * (0.5f64.powf(-0.5) - 1.0);
        assert!(close(lower_beta(0.5, 1.0, -0.5), expect, 1e-13));
    }

    #[test]
    fn log_gamma_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(close(log_gamma(5.0).unwrap(), 24f64.ln(), 1e-14));
        assert!(close(log_gamma(0.5).unwrap(), 0.5 * PI.ln(), 1e-14));
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.0).is_err());
    }

    #[test]
    fn incomplete_gamma_reduces_to_exponential_for_unit_shape() {
        for x in [0.1, 1.0, 3.0, 20.0] {
            assert!(close(gamma_p(1.0, x).unwrap(), -(-x).exp_m1(), 1e-14));
            assert!(close(gamma_q(1.0, x).unwrap(), (-x).exp(), 1e-13));
        }
    }

    #[test]
    fn normal_quantile_known_values() {
        assert!(close(normal_quantile(0.975).unwrap(), 1.959963984540054, 1e-14));
        assert!(normal_quantile(0.5).unwrap().abs() < 1e-16);
        assert!(close(normal_quantile(1e-10).unwrap(), -6.361340902404056, 1e-13));
        for p in [1e-8, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-8] {
            let z = normal_quantile(p).unwrap();
            assert!((normal_cdf(z) - p).abs() < 1e-14 * p.max(1e-3) * 100.0, "p = {p}");
        }
        assert!(normal_quantile(0.0).is_err());
        assert!(normal_quantile(1.0).is_err());
    }

    #[test]
    fn binomial_coefficients() {
        assert_eq!(choose(20, 10), 184756.0);
        assert_eq!(choose(5, 0), 1.0);
        assert_eq!(choose(5, 6), 0.0);
    }
}
