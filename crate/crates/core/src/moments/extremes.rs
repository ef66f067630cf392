//! Simulation check of the limiting laws of the sample extremes.
//!
//! For the minimum, `F(tx)/F(t) → x` as `t → 0+`, so `c_n X_{1:n}` tends to
//! the unit exponential with `c_n = n f(0+)` (the reciprocal of the `1/n`
//! quantile to first order). For the maximum, `S(t+x)/S(t) → e^{−βx}` and
//! `X_{n:n} − b_n` tends to the Gumbel law `exp(−e^{−βx})` with
//! `b_n = F^{−1}(1 − 1/n)`.
//!
//! Both extremes are drawn exactly from their finite-`n` distributions, so a
//! trial costs one root solve regardless of `n`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dist::EplParams;
use crate::error::{domain, Result};
use crate::gof::ks_distance;
use crate::rng;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeValueReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// `c_n = n f(0+)`.
    pub min_scale: f64,
    /// `b_n = F^{−1}(1 − 1/n)`.
    pub max_location: f64,
    /// KS distance of `c_n X_{1:n}` from `1 − e^{−x}`.
    pub min_ks: f64,
    /// KS distance of `βn X_{1:n}` from `1 − e^{−x}`; this scaling has the
    /// wrong constant unless `f(0+) = β`, so the distance does not vanish.
    pub min_ks_rate_scaled: f64,
    /// KS distance of `X_{n:n} − b_n` from `exp(−e^{−βx})`.
    pub max_ks: f64,
}

/// Simulates `trials` minima and maxima of samples of size `n` (`n ≥ 100`,
/// `trials ≥ 1000`) and measures their distance from the limiting laws.
///
/// Uniforms for trial `k` come from one generator seeded by `seed`, so two
/// calls with the same seed and different `n` use common random numbers.
pub fn extreme_value_check(n: usize, p: &EplParams, trials: usize, seed: u64) -> Result<ExtremeValueReport> {
    if n < 100 {
        return Err(domain("n", n as f64));
    }
    if trials < 1000 {
        return Err(domain("trials", trials as f64));
    }
    let beta = p.beta();
    let nf = n as f64;
    let min_scale = nf * p.density_at_origin();
    let max_location = p.inverse_survival(1.0 / nf)?;

    let mut g = rng::generator(seed);
    let mut minima = Vec::with_capacity(trials);
    let mut maxima = Vec::with_capacity(trials);
    for _ in 0..trials {
        let u1 = rng::open_unit(&mut g);
        let u2 = rng::open_unit(&mut g);
        // P(X_{1:n} > x) = S(x)^n and P(X_{n:n} ≤ x) = F(x)^n
        let x_min = p.quantile(-(u1.ln() / nf).exp_m1())?;
        let x_max = p.inverse_survival(-(u2.ln() / nf).exp_m1())?;
        minima.push(x_min);
        maxima.push(x_max - max_location);
    }

    let exp_cdf = |x: f64| if x <= 0.0 { 0.0 } else { -(-x).exp_m1() };
    let scaled: Vec<f64> = minima.iter().map(|x| x * min_scale).collect();
    let min_ks = ks_distance(&scaled, exp_cdf)?;
    let rate_scaled: Vec<f64> = minima.iter().map(|x| x * beta * nf).collect();
    let min_ks_rate_scaled = ks_distance(&rate_scaled, exp_cdf)?;
    let max_ks = ks_distance(&maxima, |x| (-(-beta * x).exp()).exp())?;

    Ok(ExtremeValueReport {
        n,
        trials,
        seed,
        min_scale,
        max_location,
        min_ks,
        min_ks_rate_scaled,
        max_ks,
    })
}
