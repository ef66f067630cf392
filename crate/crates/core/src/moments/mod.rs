//! Moment generating function, raw moments and summary statistics, plus
//! order statistics ([`order`]) and extreme-value simulation ([`extremes`]).

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dist::EplParams;
use crate::error::{domain, Result};
use crate::series::{sum_series, SeriesConfig};
use crate::special::{dilog, log_gamma, polylog};

pub mod extremes;
pub mod order;

pub use extremes::{extreme_value_check, ExtremeValueReport};
pub use order::{order_stat_moment, order_stat_moment_quadrature, order_stat_pdf, OrderStatMoment, OrderStatSpec};

/// `M(t) = E(e^{-tX})` for `t > -β` (note the sign convention), from
///
/// `M(t) = βθ²/(1+3θ+θ²) Σ_{j≥0} C(j+2, 2) (1+θ)^{-(j+1)}
///         [(3+θ)/(β(j+1)+t) − 1/(β(j+2)+t)]`.
pub fn mgf(t: f64, p: &EplParams, cfg: &SeriesConfig) -> Result<f64> {
    let beta = p.beta();
    if !(t > -beta) || !t.is_finite() {
        return Err(domain("t", t));
    }
    let theta = p.theta();
    let z = 1.0 / (1.0 + theta);
    let mut zj = 1.0;
    let s = sum_series(cfg, 0, |j| {
        zj *= z;
        let jf = j as f64;
        let c = 0.5 * (jf + 1.0) * (jf + 2.0);
        c * zj * ((3.0 + theta) / (beta * (jf + 1.0) + t) - 1.0 / (beta * (jf + 2.0) + t))
    })
    .into_result()?;
    Ok(beta * p.weight() * s)
}

/// `E(X^r) = r! θ² / (β^r (1+3θ+θ²)) · {L_{r−1}(z) + (2+θ) L_r(z)}` with
/// `z = 1/(1+θ)`.
pub fn raw_moment(r: u32, p: &EplParams, cfg: &SeriesConfig) -> Result<f64> {
    if r == 0 {
        return Err(domain("r", 0.0));
    }
    let theta = p.theta();
    let z = 1.0 / (1.0 + theta);
    let lower = if r == 1 { 1.0 / theta } else { polylog(r - 1, z, cfg)? };
    let upper = polylog(r, z, cfg)?;
    let ln_scale = log_gamma(r as f64 + 1.0)? - r as f64 * p.beta().ln();
    Ok(ln_scale.exp() * p.weight() * (lower + (2.0 + theta) * upper))
}

/// `log(1 + 1/θ) = L_1(1/(1+θ))`.
fn log1p_recip(theta: f64) -> f64 {
    (1.0 / theta).ln_1p()
}

/// `L_2(1/(1+θ))`, exact at the `θ → 0` endpoint.
fn dilog_at(theta: f64) -> f64 {
    let z = 1.0 / (1.0 + theta);
    if z < 1.0 {
        dilog(z).expect("argument lies in (0, 1)")
    } else {
        PI * PI / 6.0
    }
}

/// `E(X) = θ/(β(1+3θ+θ²)) · [1 + θ(2+θ) log(1 + 1/θ)]`.
pub fn mean(p: &EplParams) -> f64 {
    let t = p.theta();
    let lead = 1.0 / (p.beta() * (t + 3.0 + 1.0 / t));
    lead * (1.0 + t * (2.0 + t) * log1p_recip(t))
}

/// `Var(X) / E(X)²`, the squared coefficient of variation:
///
/// `2(1+3θ+θ²)[log(1+1/θ) + (2+θ)L_2(1/(1+θ))] / [1 + θ(2+θ)log(1+1/θ)]² − 1`.
pub fn cv_ratio(p: &EplParams) -> f64 {
    let t = p.theta();
    let l1 = log1p_recip(t);
    let m = 1.0 + t * (2.0 + t) * l1;
    2.0 * p.norm() * (l1 + (2.0 + t) * dilog_at(t)) / (m * m) - 1.0
}

/// `Var(X) = E(X)² · cv_ratio`.
pub fn variance(p: &EplParams) -> f64 {
    let m = mean(p);
    m * m * cv_ratio(p)
}
