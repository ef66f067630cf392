//! Log-likelihood, score, information and maximum-likelihood fitting.
//!
//! With `u_i = e^{−βx_i}` and `v_i = 1 − u_i`,
//!
//! ```text
//! ℓ(β, θ) = n log β + 2n log θ + 2n log(1+θ) − n log(1+3θ+θ²) − β Σx_i
//!         + Σ log(2+θ+v_i) − 3 Σ log(θ+v_i)
//! ```
//!
//! Fitting maximizes `ℓ` over `(log β, log θ)`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dist::{DataSet, EplParams};
use crate::error::{domain, Error, Result};
use crate::linalg::Matrix2;
use crate::optim::{bfgs, nelder_mead, OptimOptions, OptimResult};
use crate::quadrature::QuadConfig;
use crate::series::CompensatedSum;
use crate::special::normal_quantile;

/// Optimization algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Optimizer {
    /// BFGS driven by the analytic score (finite differences for the
    /// competing families).
    #[default]
    QuasiNewton,
    /// Nelder–Mead. It cannot resolve the gradient much below
    /// `sqrt(ε)` times the curvature, so pair it with a looser `grad_tol`.
    Simplex,
}

/// Which information matrix is inverted for the covariance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Information {
    /// `K_n`, with the expectations evaluated by quadrature.
    #[default]
    Expected,
    /// Negative Hessian of `ℓ` at the estimate.
    Observed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    /// Single starting point; `None` runs the default multi-start.
    pub init: Option<EplParams>,
    pub grad_tol: f64,
    pub max_iters: usize,
    pub optimizer: Optimizer,
    pub information: Information,
    pub record_trace: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            init: None,
            grad_tol: 1e-8,
            max_iters: 500,
            optimizer: Optimizer::QuasiNewton,
            information: Information::Expected,
            record_trace: false,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.grad_tol > 0.0 && self.grad_tol.is_finite()) {
            return Err(Error::InvalidParameter { what: "grad_tol", value: self.grad_tol });
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter { what: "max_iters", value: 0.0 });
        }
        Ok(())
    }
}

/// A two-parameter point with named components.
pub trait ParameterVector: Copy {
    fn values(&self) -> [f64; 2];
}

impl ParameterVector for EplParams {
    fn values(&self) -> [f64; 2] {
        [self.beta(), self.theta()]
    }
}

/// Outcome of a maximum-likelihood fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult<P> {
    pub params: P,
    pub loglik: f64,
    /// Gradient norm (on the optimizer's transformed scale) below
    /// `grad_tol`.
    pub converged: bool,
    pub iterations: usize,
    /// Norm of the gradient of `ℓ` on the transformed scale at `params`.
    pub score_norm: f64,
    /// Inverse information at the estimate; `None` if the information
    /// matrix is not positive definite there.
    pub covariance: Option<Matrix2>,
    pub std_errors: Option<[f64; 2]>,
    /// `(params, ℓ)` per iteration of the winning start, when requested.
    pub trace: Vec<(P, f64)>,
}

/// `ℓ(β, θ)`; `−∞` if the sum is not finite.
pub fn log_likelihood(data: &DataSet, p: &EplParams) -> f64 {
    let n = data.len() as f64;
    let (beta, t) = (p.beta(), p.theta());
    let mut acc = CompensatedSum::default();
    for &x in data.values() {
        let (_, v) = p.uv(x);
        acc.add(-beta * x + (2.0 + t + v).ln() - 3.0 * (t + v).ln());
    }
    let l = n * (beta.ln() + 2.0 * (t.ln() + t.ln_1p()) - p.ln_norm()) + acc.value();
    if l.is_finite() {
        l
    } else {
        f64::NEG_INFINITY
    }
}

/// `(∂ℓ/∂β, ∂ℓ/∂θ)`.
pub fn score(data: &DataSet, p: &EplParams) -> [f64; 2] {
    let n = data.len() as f64;
    let (beta, t) = (p.beta(), p.theta());
    let mut sb = CompensatedSum::default();
    let mut st = CompensatedSum::default();
    for &x in data.values() {
        let (u, v) = p.uv(x);
        let k = 1.0 / (2.0 + t + v) - 3.0 / (t + v);
        sb.add(-x + x * u * k);
        st.add(k);
    }
    let db = n / beta + sb.value();
    let dt = n * (2.0 * (1.0 + 2.0 * t) / (t * (1.0 + t)) - (3.0 + 2.0 * t) / p.norm()) + st.value();
    [db, dt]
}

/// Per-observation constant part of `κ_θθ`:
/// `2(1+2θ+2θ²)/(θ²(1+θ)²) − (7+6θ+2θ²)/(1+3θ+θ²)²`.
fn theta_theta_constant(p: &EplParams) -> f64 {
    let t = p.theta();
    let d = p.norm();
    2.0 * (1.0 / (t * t) + 1.0 / ((1.0 + t) * (1.0 + t))) - ((7.0 + t * (6.0 + 2.0 * t)) / d) / d
}

/// Per-observation contributions `(ββ, θθ, θβ)` to the negative Hessian,
/// excluding the constant terms.
fn hessian_terms(p: &EplParams, x: f64) -> [f64; 3] {
    let t = p.theta();
    let (u, v) = p.uv(x);
    let a = 1.0 / (2.0 + t + v);
    let b = 1.0 / (t + v);
    let (a2, b2) = (a * a, b * b);
    let xu = x * u;
    [
        x * xu * ((3.0 + t) * a2 - 3.0 * (1.0 + t) * b2),
        a2 - 3.0 * b2,
        xu * (a2 - 3.0 * b2),
    ]
}

/// Observed information `−∇²ℓ` at `p`.
pub fn observed_information(data: &DataSet, p: &EplParams) -> Matrix2 {
    let n = data.len() as f64;
    let mut acc = [CompensatedSum::default(); 3];
    for &x in data.values() {
        for (a, h) in acc.iter_mut().zip(hessian_terms(p, x)) {
            a.add(h);
        }
    }
    let bb = n / (p.beta() * p.beta()) + acc[0].value();
    let tt = n * theta_theta_constant(p) + acc[1].value();
    Matrix2::symmetric(bb, acc[2].value(), tt)
}

/// Expected information `K_n = n κ(β, θ)` with
///
/// ```text
/// κ_ββ = 1/β² + (3+θ) E[X²e^{−βX}/(2+θ+V)²] − 3(1+θ) E[X²e^{−βX}/(θ+V)²]
/// κ_θθ = 2(1+2θ+2θ²)/(θ²(1+θ)²) − (7+6θ+2θ²)/(1+3θ+θ²)² + E[1/(2+θ+V)²] − 3E[1/(θ+V)²]
/// κ_θβ = E[Xe^{−βX}/(2+θ+V)²] − 3E[Xe^{−βX}/(θ+V)²]
/// ```
///
/// evaluated by quadrature. Errors if the result is not positive definite.
pub fn fisher_information(p: &EplParams, n: usize) -> Result<Matrix2> {
    if n == 0 {
        return Err(domain("n", 0.0));
    }
    let cfg = QuadConfig::with_rel_tol(1e-12);
    let e_bb = p.expect(|x| hessian_terms(p, x)[0], &cfg)?;
    let e_tt = p.expect(|x| hessian_terms(p, x)[1], &cfg)?;
    let e_tb = p.expect(|x| hessian_terms(p, x)[2], &cfg)?;
    let bb = 1.0 / (p.beta() * p.beta()) + e_bb;
    let tt = theta_theta_constant(p) + e_tt;
    let k = Matrix2::symmetric(bb, e_tb, tt).scale(n as f64);
    if !k.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(k)
}

/// Residuals `|quadrature − closed form|` of the two expectations that make
/// the expected score vanish:
///
/// ```text
/// E[1/(3+θ−e^{−βX}) − 3/(1+θ−e^{−βX})] = (3+2θ)/(1+3θ+θ²) − 2(1+2θ)/(θ(1+θ))
/// E[X e^{−βX} (1/(3+θ−e^{−βX}) − 3/(1+θ−e^{−βX}))] = E(X) − 1/β
/// ```
pub fn score_expectation_identities(p: &EplParams) -> Result<[f64; 2]> {
    let cfg = QuadConfig::with_rel_tol(1e-12);
    let t = p.theta();
    let k = |x: f64| {
        let (u, v) = p.uv(x);
        (u, 1.0 / (2.0 + t + v) - 3.0 / (t + v))
    };
    let lhs1 = p.expect(|x| k(x).1, &cfg)?;
    let lhs2 = p.expect(
        |x| {
            let (u, kx) = k(x);
            x * u * kx
        },
        &cfg,
    )?;
    let rhs1 = (3.0 + 2.0 * t) / p.norm() - 2.0 * (1.0 + 2.0 * t) / (t * (1.0 + t));
    let rhs2 = crate::moments::mean(p) - 1.0 / p.beta();
    Ok([(lhs1 - rhs1).abs(), (lhs2 - rhs2).abs()])
}

/// Default starting shapes of the multi-start.
pub const THETA_STARTS: [f64; 3] = [0.5, 1.0, 5.0];

/// Maximum-likelihood fit of EPL to `data`.
///
/// Without `cfg.init`, starts from `β₀ = 1/x̄` and each `θ₀` in
/// [`THETA_STARTS`]; the highest final `ℓ` wins, ties going to the smaller
/// `θ̂`. Non-convergence is reported through `converged`, not as an error.
pub fn fit_mle(data: &DataSet, cfg: &FitConfig) -> Result<FitResult<EplParams>> {
    cfg.validate()?;
    if data.all_equal() {
        return Err(Error::DegenerateData);
    }
    let starts: Vec<EplParams> = match cfg.init {
        Some(p) => vec![p],
        None => {
            let b0 = 1.0 / data.mean();
            THETA_STARTS.iter().map(|&t| EplParams::new(b0, t)).collect::<Result<_>>()?
        }
    };
    let to_params = |z: &[f64]| EplParams::new(z[0].exp(), z[1].exp());
    let objective = |z: &[f64]| -> (f64, Vec<f64>) {
        match to_params(z) {
            Ok(p) => {
                let s = score(data, &p);
                (-log_likelihood(data, &p), vec![-s[0] * p.beta(), -s[1] * p.theta()])
            }
            Err(_) => (f64::INFINITY, vec![f64::NAN; 2]),
        }
    };
    let opts = OptimOptions { grad_tol: cfg.grad_tol, max_iters: cfg.max_iters, record_trace: cfg.record_trace };

    let mut best: Option<(OptimResult, EplParams)> = None;
    for s in starts {
        let z0 = [s.beta().ln(), s.theta().ln()];
        let mut r = match cfg.optimizer {
            Optimizer::QuasiNewton => bfgs(objective, &z0, &opts),
            Optimizer::Simplex => nelder_mead(|z| objective(z).0, &z0, 0.5, &opts),
        };
        let p = match to_params(&r.x) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let (_, g) = objective(&r.x);
        r.converged = norm(&g) < cfg.grad_tol;
        r.grad = g;
        let better = match &best {
            None => true,
            Some((b, bp)) => {
                let tie = (r.f - b.f).abs() <= 1e-10 * b.f.abs().max(1.0);
                if tie {
                    p.theta() < bp.theta()
                } else {
                    r.f < b.f
                }
            }
        };
        if better {
            best = Some((r, p));
        }
    }
    let (r, params) = best.ok_or(Error::NotConverged)?;
    let information = match cfg.information {
        Information::Expected => fisher_information(&params, data.len()),
        Information::Observed => Ok(observed_information(data, &params)),
    };
    let covariance = information.and_then(|k| k.inverse_spd()).ok();
    let trace = r
        .trace
        .iter()
        .filter_map(|(z, f)| to_params(z).ok().map(|p| (p, -f)))
        .collect();
    Ok(FitResult {
        params,
        loglik: -r.f,
        converged: r.converged,
        iterations: r.iterations,
        score_norm: norm(&r.grad),
        std_errors: covariance.map(|c| c.diagonal_sqrt()),
        covariance,
        trace,
    })
}

pub(crate) fn norm(g: &[f64]) -> f64 {
    g.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Wald intervals `θ̂_k ± z_{(1+level)/2} se_k` for both parameters.
pub fn confidence_intervals<P: ParameterVector>(fit: &FitResult<P>, level: f64) -> Result<[(f64, f64); 2]> {
    if !(level > 0.0 && level < 1.0) {
        return Err(domain("level", level));
    }
    if !fit.converged {
        return Err(Error::NotConverged);
    }
    let cov = fit.covariance.ok_or(Error::NotPositiveDefinite)?;
    if !cov.is_positive_semidefinite() {
        return Err(Error::NotPositiveDefinite);
    }
    let z = normal_quantile(0.5 * (1.0 + level))?;
    let se = cov.diagonal_sqrt();
    let v = fit.params.values();
    Ok([(v[0] - z * se[0], v[0] + z * se[0]), (v[1] - z * se[1], v[1] + z * se[1])])
}
