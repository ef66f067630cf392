//! Rényi entropy `I_R(α) = (1−α)^{−1} log ∫ f^α`, by series and by
//! quadrature.
//!
//! Expanding `(1+θ−e^{−βx})^{−3α}` binomially gives
//!
//! ```text
//! I_R(α) = −log β + (1−α)^{−1} {2α log(θ(1+θ)) − log Γ(3α) − α log(1+3θ+θ²)}
//!        + (1−α)^{−1} log Σ_{j≥0} Γ(3α+j)/j! · (3+θ)^{2α+j} / (1+θ)^{3α+j} · b_j
//! ```
//!
//! with `b_j = ∫_{(2+θ)/(3+θ)}^{1} t^α (1−t)^{α+j−1} dt
//!           = B_{1/(3+θ)}(α+j, α+1)` (conventional incomplete beta).
//! Writing `b_j` instead as `1 − B_x(α, α+j−1)` with `x = (2+θ)/(3+θ)`
//! (under either incomplete-beta convention) does not give a convergent
//! series; those readings are kept in [`BetaReading`] so that the
//! difference can be demonstrated.

#[allow(unused_imports)]
use num_traits::Float;

use crate::dist::EplParams;
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_to_infinity, QuadConfig};
use crate::series::{sum_series, SeriesConfig};
use crate::special::{ln_lower_beta_series, log_gamma, lower_beta};

/// The bracket `b_j` multiplying term `j` of the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaReading {
    /// `B_{1/(3+θ)}(α+j, α+1)`, the tail integral over `[(2+θ)/(3+θ), 1]`.
    #[default]
    ComplementTail,
    /// `1 − ∫_0^x t^α (1−t)^{α+j−2} dt`, `x = (2+θ)/(3+θ)`.
    RaisedExponent,
    /// `1 − ∫_0^x t^{α−1} (1−t)^{α+j−2} dt`, `x = (2+θ)/(3+θ)`.
    Conventional,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() || alpha == 1.0 {
        return Err(domain("alpha", alpha));
    }
    Ok(())
}

/// Rényi entropy by the series with the convergent bracket.
pub fn renyi_entropy_series(alpha: f64, p: &EplParams, cfg: &SeriesConfig) -> Result<f64> {
    renyi_entropy_series_with(alpha, p, cfg, BetaReading::ComplementTail)
}

/// Rényi entropy by the series under the chosen bracket reading.
///
/// Errors with [`Error::NegativeBetaFactor`] if a bracket is negative (its
/// logarithm is undefined; it is never clamped) and with
/// [`Error::SeriesNotConverged`] if the terms do not decay.
pub fn renyi_entropy_series_with(alpha: f64, p: &EplParams, cfg: &SeriesConfig, reading: BetaReading) -> Result<f64> {
    check_alpha(alpha)?;
    let t = p.theta();
    let l3 = (3.0 + t).ln();
    let l1 = t.ln_1p();
    let lg3a = log_gamma(3.0 * alpha)?;
    let x = (2.0 + t) / (3.0 + t);
    let tail = 1.0 / (3.0 + t);

    // Terms are scaled by exp(−shift) where shift is the log of term 0, so
    // that only the ratio to the leading term is ever exponentiated.
    let mut failure = None;
    let mut shift = f64::NAN;
    let s = sum_series(cfg, 0, |j| {
        let jf = j as f64;
        let ln_gamma_ratio = libm::lgamma(3.0 * alpha + jf) - libm::lgamma(jf + 1.0);
        let ln_geom = (2.0 * alpha + jf) * l3 - (3.0 * alpha + jf) * l1;
        let ln_bracket = match reading {
            BetaReading::ComplementTail => ln_lower_beta_series(tail, alpha + jf, alpha + 1.0),
            BetaReading::RaisedExponent | BetaReading::Conventional => {
                let a = if reading == BetaReading::RaisedExponent { alpha + 1.0 } else { alpha };
                let b = 1.0 - lower_beta(x, a, alpha + jf - 1.0);
                if !(b > 0.0) {
                    failure.get_or_insert(Error::NegativeBetaFactor(b));
                    return f64::NAN;
                }
                b.ln()
            }
        };
        let ln_term = ln_gamma_ratio + ln_geom + ln_bracket;
        if j == 0 {
            shift = ln_term;
        }
        (ln_term - shift).exp()
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let sum = s.into_result()?;
    let inv = 1.0 / (1.0 - alpha);
    let lead = 2.0 * alpha * (t.ln() + l1) - lg3a - alpha * p.ln_norm();
    Ok(-p.beta().ln() + inv * lead + inv * (sum.ln() + shift))
}

/// Rényi entropy by adaptive quadrature of `f^α` (relative tolerance 1e-10),
/// evaluated in log space on the `βx` scale.
pub fn renyi_entropy_quadrature(alpha: f64, p: &EplParams) -> Result<f64> {
    check_alpha(alpha)?;
    let integral = integrate_to_infinity(
        |y| {
            let u = (-y).exp();
            let v = -(-y).exp_m1();
            let w = p.density_uv(u, v);
            if w == 0.0 {
                0.0
            } else {
                (alpha * w.ln()).exp()
            }
        },
        0.0,
        &QuadConfig::with_rel_tol(1e-10),
    )?;
    Ok(integral.value.ln() / (1.0 - alpha) - p.beta().ln())
}
