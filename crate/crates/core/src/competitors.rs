//! Competing two-parameter lifetime families and their maximum-likelihood
//! fits.
//!
//! Every model is written as `(β, s)` with a rate `β > 0` and a shape `s`,
//! and `u = e^{−βx}`, `v = 1 − u`:
//!
//! | family | shape | density |
//! |---|---|---|
//! | exponential-geometric | `p ∈ (0,1)` | `β(1−p) u / (1−pu)²` |
//! | exponential-Poisson | `λ > 0` | `λβ e^{−λ−βx+λu} / (1−e^{−λ})` |
//! | exponential-logarithmic | `p ∈ (0,1)` | `β(1−p) u / (−log p · (1−(1−p)u))` |
//! | Weibull | `α > 0` | `αβ^α x^{α−1} e^{−(βx)^α}` |
//! | Weibull, printed form | `α > 0` | `αβ^α x^{α−1} e^{−βx}` (not normalized) |
//! | gamma | `γ > 0` | `β^γ x^{γ−1} e^{−βx} / Γ(γ)` |
//!
//! Fits use BFGS on `(log β, log s)` (logit for `p`) with a five-point
//! finite-difference gradient, and the covariance is the inverse of a
//! finite-difference observed information.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dist::DataSet;
use crate::error::{domain, Error, Result};
use crate::estimation::{norm, FitConfig, FitResult, Optimizer, ParameterVector};
use crate::linalg::Matrix2;
use crate::optim::{bfgs, nelder_mead, OptimOptions, OptimResult};
use crate::series::CompensatedSum;
use crate::special::{gamma_p, log_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ExpGeometric,
    ExpPoisson,
    ExpLogarithmic,
    Weibull,
    /// `αβ^α x^{α−1} e^{−βx}`; integrates to `Γ(α+1)`, so it is a density
    /// only at `α = 1`.
    WeibullPrinted,
    Gamma,
}

impl Family {
    /// The five comparison families (standard Weibull).
    pub const COMPARISON: [Family; 5] =
        [Family::ExpGeometric, Family::ExpPoisson, Family::ExpLogarithmic, Family::Weibull, Family::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            Family::ExpGeometric => "EG",
            Family::ExpPoisson => "EP",
            Family::ExpLogarithmic => "EL",
            Family::Weibull => "Weibull",
            Family::WeibullPrinted => "Weibull (printed form)",
            Family::Gamma => "Gamma",
        }
    }

    pub fn shape_name(self) -> &'static str {
        match self {
            Family::ExpGeometric | Family::ExpLogarithmic => "p",
            Family::ExpPoisson => "lambda",
            Family::Weibull | Family::WeibullPrinted => "alpha",
            Family::Gamma => "gamma",
        }
    }

    fn shape_in_unit_interval(self) -> bool {
        matches!(self, Family::ExpGeometric | Family::ExpLogarithmic)
    }

    fn shape_starts(self) -> [f64; 3] {
        match self {
            Family::ExpGeometric | Family::ExpLogarithmic => [0.2, 0.5, 0.8],
            Family::ExpPoisson => [0.5, 1.0, 3.0],
            Family::Weibull | Family::WeibullPrinted | Family::Gamma => [0.5, 1.0, 2.0],
        }
    }

    fn to_unconstrained(self, s: f64) -> f64 {
        if self.shape_in_unit_interval() {
            (s / (1.0 - s)).ln()
        } else {
            s.ln()
        }
    }

    fn from_unconstrained(self, z: f64) -> f64 {
        if self.shape_in_unit_interval() {
            1.0 / (1.0 + (-z).exp())
        } else {
            z.exp()
        }
    }

    /// `ds/dz` of the shape transform.
    fn shape_jacobian(self, s: f64) -> f64 {
        if self.shape_in_unit_interval() {
            s * (1.0 - s)
        } else {
            s
        }
    }
}

/// A member of one of the competing families: rate `beta` and `shape`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompetitorModel {
    family: Family,
    beta: f64,
    shape: f64,
}

impl CompetitorModel {
    pub fn new(family: Family, beta: f64, shape: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter { what: "beta", value: beta });
        }
        let ok = if family.shape_in_unit_interval() {
            shape > 0.0 && shape < 1.0
        } else {
            shape > 0.0 && shape.is_finite()
        };
        if !ok {
            return Err(Error::InvalidParameter { what: family.shape_name(), value: shape });
        }
        Ok(Self { family, beta, shape })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub(crate) fn ln_pdf_unchecked(&self, x: f64) -> f64 {
        let (b, s) = (self.beta, self.shape);
        let bx = b * x;
        let u = (-bx).exp();
        match self.family {
            Family::ExpGeometric => b.ln() + (-s).ln_1p() - bx - 2.0 * (-s * u).ln_1p(),
            Family::ExpPoisson => {
                let v = -(-bx).exp_m1();
                // −λ + λu = −λv
                s.ln() + b.ln() - (-(-s).exp_m1()).ln() - bx - s * v
            }
            Family::ExpLogarithmic => {
                -(-s.ln()).ln() + b.ln() + (-s).ln_1p() - bx - (-(1.0 - s) * u).ln_1p()
            }
            Family::Weibull => s.ln() + s * b.ln() + (s - 1.0) * x.ln() - bx.powf(s),
            Family::WeibullPrinted => s.ln() + s * b.ln() + (s - 1.0) * x.ln() - bx,
            Family::Gamma => s * b.ln() - libm::lgamma(s) + (s - 1.0) * x.ln() - bx,
        }
    }

    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(domain("x", x));
        }
        Ok(self.ln_pdf_unchecked(x))
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.ln_pdf(x)?.exp())
    }

    /// Distribution function. For [`Family::WeibullPrinted`] this is the
    /// integral of the printed density, `Γ(α+1) P(α, βx)`, which is not a
    /// distribution function unless `α = 1`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(domain("x", x));
        }
        if x.is_infinite() {
            return match self.family {
                Family::WeibullPrinted => Ok(log_gamma(self.shape + 1.0)?.exp()),
                _ => Ok(1.0),
            };
        }
        let (b, s) = (self.beta, self.shape);
        let bx = b * x;
        let u = (-bx).exp();
        let v = -(-bx).exp_m1();
        Ok(match self.family {
            Family::ExpGeometric => v / (1.0 - s * u),
            Family::ExpPoisson => (-s * v).exp_m1() / (-s).exp_m1(),
            Family::ExpLogarithmic => 1.0 - (-(1.0 - s) * u).ln_1p() / s.ln(),
            Family::Weibull => -(-bx.powf(s)).exp_m1(),
            Family::WeibullPrinted => log_gamma(s + 1.0)?.exp() * gamma_p(s, bx)?,
            Family::Gamma => gamma_p(s, bx)?,
        })
    }
}

impl ParameterVector for CompetitorModel {
    fn values(&self) -> [f64; 2] {
        [self.beta, self.shape]
    }
}

pub fn log_likelihood(data: &DataSet, m: &CompetitorModel) -> f64 {
    let mut acc = CompensatedSum::default();
    for &x in data.values() {
        acc.add(m.ln_pdf_unchecked(x));
    }
    let l = acc.value();
    if l.is_finite() {
        l
    } else {
        f64::NEG_INFINITY
    }
}

const FD_STEP: f64 = 1e-3;

fn model_at(family: Family, z: &[f64]) -> Result<CompetitorModel> {
    CompetitorModel::new(family, z[0].exp(), family.from_unconstrained(z[1]))
}

/// Five-point central difference gradient.
fn fd_gradient<F: FnMut(&[f64]) -> f64>(f: &mut F, z: &[f64]) -> Vec<f64> {
    let h = FD_STEP;
    (0..z.len())
        .map(|i| {
            let mut at = |k: f64| {
                let mut w = z.to_vec();
                w[i] += k * h;
                f(&w)
            };
            (-at(2.0) + 8.0 * at(1.0) - 8.0 * at(-1.0) + at(-2.0)) / (12.0 * h)
        })
        .collect()
}

/// Central-difference Hessian.
fn fd_hessian<F: FnMut(&[f64]) -> f64>(f: &mut F, z: &[f64]) -> Matrix2 {
    let h = FD_STEP;
    let mut at = |a: f64, b: f64| f(&[z[0] + a * h, z[1] + b * h]);
    let f0 = at(0.0, 0.0);
    let d00 = (at(1.0, 0.0) - 2.0 * f0 + at(-1.0, 0.0)) / (h * h);
    let d11 = (at(0.0, 1.0) - 2.0 * f0 + at(0.0, -1.0)) / (h * h);
    let d01 = (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) / (4.0 * h * h);
    Matrix2::symmetric(d00, d01, d11)
}

/// Maximum-likelihood fit of a competing family.
///
/// Starts from `β₀ = 1/x̄` (`γ₀/x̄` for the gamma) and each of three
/// shape values; the highest final `ℓ` wins. `cfg.init` and
/// `cfg.information` do not apply.
///
/// [`Family::WeibullPrinted`] has no maximum: along `β = α/x̄` its `ℓ`
/// grows like `nα log α`, so it is rejected with
/// [`Error::UnboundedLikelihood`].
pub fn fit_competitor(data: &DataSet, family: Family, cfg: &FitConfig) -> Result<FitResult<CompetitorModel>> {
    cfg.validate()?;
    if data.all_equal() {
        return Err(Error::DegenerateData);
    }
    if family == Family::WeibullPrinted {
        return Err(Error::UnboundedLikelihood);
    }
    let mut negll = |z: &[f64]| match model_at(family, z) {
        Ok(m) => -log_likelihood(data, &m),
        Err(_) => f64::INFINITY,
    };
    let opts = OptimOptions { grad_tol: cfg.grad_tol, max_iters: cfg.max_iters, record_trace: cfg.record_trace };
    let mean = data.mean();
    let mut best: Option<OptimResult> = None;
    for s0 in family.shape_starts() {
        let b0 = if family == Family::Gamma { s0 / mean } else { 1.0 / mean };
        let z0 = [b0.ln(), family.to_unconstrained(s0)];
        let mut r = match cfg.optimizer {
            Optimizer::QuasiNewton => bfgs(
                |z| {
                    let f = negll(z);
                    let g = if f.is_finite() { fd_gradient(&mut negll, z) } else { vec![f64::NAN; 2] };
                    (f, g)
                },
                &z0,
                &opts,
            ),
            Optimizer::Simplex => nelder_mead(&mut negll, &z0, 0.5, &opts),
        };
        if !r.f.is_finite() {
            continue;
        }
        r.grad = fd_gradient(&mut negll, &r.x);
        r.converged = norm(&r.grad) < cfg.grad_tol;
        if best.as_ref().is_none_or(|b| r.f < b.f) {
            best = Some(r);
        }
    }
    let r = best.ok_or(Error::NotConverged)?;
    let params = model_at(family, &r.x)?;
    let covariance = fd_hessian(&mut negll, &r.x)
        .inverse_spd()
        .ok()
        .map(|c| c.congruence_diag([params.beta, family.shape_jacobian(params.shape)]));
    let trace = r
        .trace
        .iter()
        .filter_map(|(z, f)| model_at(family, z).ok().map(|m| (m, -f)))
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation() {
        assert!(CompetitorModel::new(Family::ExpGeometric, 1.0, 1.0).is_err());
        assert!(CompetitorModel::new(Family::ExpLogarithmic, 1.0, 0.0).is_err());
        assert!(CompetitorModel::new(Family::ExpPoisson, 1.0, 5.0).is_ok());
        assert!(CompetitorModel::new(Family::Gamma, -1.0, 5.0).is_err());
    }

    #[test]
    fn shape_one_reduces_to_exponential() {
        for f in [Family::Weibull, Family::WeibullPrinted, Family::Gamma] {
            let m = CompetitorModel::new(f, 2.0, 1.0).unwrap();
            for x in [0.1, 1.0, 3.0] {
                let e = 2.0 * (-2.0 * x as f64).exp();
                assert!((m.pdf(x).unwrap() - e).abs() < 1e-13 * e);
                assert!((m.cdf(x).unwrap() - (1.0 - (-2.0 * x as f64).exp())).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn distribution_functions_start_at_zero_and_end_at_one() {
        for f in Family::COMPARISON {
            let m = CompetitorModel::new(f, 1.5, 0.4).unwrap();
            assert_eq!(m.cdf(0.0).unwrap(), 0.0);
            assert!((m.cdf(1e6).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn transforms_round_trip() {
        for f in [Family::ExpGeometric, Family::Gamma] {
            for s in [0.1, 0.5, 0.9] {
                assert!((f.from_unconstrained(f.to_unconstrained(s)) - s).abs() < 1e-15);
            }
        }
    }
}
