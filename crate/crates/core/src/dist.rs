//! The EPL distribution: density, distribution and survival functions,
//! hazard, quantile, sampling and mean residual life.
//!
//! Internally every function is written in terms of `u = e^{-βx}` and
//! `v = 1 - u` (computed with `expm1`), and the θ-dependent rational factors
//! are arranged as ratios that stay `O(1)`:
//!
//! ```text
//! A = θ² / (1 + 3θ + θ²)        B = (1 + θ) / (θ + v)        C = (2 + θ + v) / (θ + v)
//! f(x) = β u A B² C
//! S(x) = u A (B + 2 + θ) / (θ + v)
//! F(x) = v B² [θ(2 + θ) + (1 + θ) v] / (1 + 3θ + θ²)
//! h(x) = β B C (1 + θ) / (B + 2 + θ)
//! ```
//!
//! so there is no overflow for large θ or βx and no cancellation in `F`
//! near the origin or in `S` in the upper tail.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_to_infinity, QuadConfig};
use crate::rng;
use crate::roots::brent;

/// Parameters `(β, θ)` of an EPL distribution; both strictly positive and
/// finite. `β` is a rate (1/time), `θ` the Poisson-Lindley shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EplParams {
    beta: f64,
    theta: f64,
}

/// Which algebraic form of a closed-form expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// Transcribed exactly as originally published.
    AsPrinted,
    /// Re-derived from the distribution function.
    Corrected,
}

impl EplParams {
    pub fn new(beta: f64, theta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter { what: "beta", value: beta });
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParameter { what: "theta", value: theta });
        }
        Ok(Self { beta, theta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `1 + 3θ + θ²`; overflows to infinity only for θ beyond 1e154.
    pub(crate) fn norm(&self) -> f64 {
        let t = self.theta;
        1.0 + t * (3.0 + t)
    }

    pub(crate) fn ln_norm(&self) -> f64 {
        let t = self.theta;
        if t < 1.0 {
            (t * (3.0 + t)).ln_1p()
        } else {
            2.0 * t.ln() + ((3.0 + 1.0 / t) / t).ln_1p()
        }
    }

    /// `θ² / (1 + 3θ + θ²)`.
    pub(crate) fn weight(&self) -> f64 {
        let t = self.theta;
        if t < 1.0 {
            t * t / self.norm()
        } else {
            1.0 / (1.0 + (3.0 + 1.0 / t) / t)
        }
    }

    pub(crate) fn ln_weight(&self) -> f64 {
        2.0 * self.theta.ln() - self.ln_norm()
    }

    /// `(u, v) = (e^{-βx}, 1 - e^{-βx})`.
    #[inline]
    pub(crate) fn uv(&self, x: f64) -> (f64, f64) {
        let bx = self.beta * x;
        ((-bx).exp(), -(-bx).exp_m1())
    }

    #[inline]
    fn b_factor(&self, v: f64) -> f64 {
        (1.0 + self.theta) / (self.theta + v)
    }

    #[inline]
    fn c_factor(&self, v: f64) -> f64 {
        (2.0 + self.theta + v) / (self.theta + v)
    }

    /// `F` as a function of `v = 1 - e^{-βx}`.
    #[inline]
    pub(crate) fn cdf_v(&self, v: f64) -> f64 {
        let t = self.theta;
        let b = self.b_factor(v);
        let lead = (2.0 + t) / (1.0 / t + 3.0 + t);
        let g = lead + v * (1.0 + t) / self.norm();
        (v * b * b * g).min(1.0)
    }

    /// `S` as a function of `u = e^{-βx}`.
    #[inline]
    pub(crate) fn survival_u(&self, u: f64) -> f64 {
        let v = 1.0 - u;
        let t = self.theta;
        (u * self.weight() * (self.b_factor(v) + 2.0 + t) / (t + v)).min(1.0)
    }

    /// `f(x) / β` as a function of `(u, v)`.
    #[inline]
    pub(crate) fn density_uv(&self, u: f64, v: f64) -> f64 {
        let b = self.b_factor(v);
        u * self.weight() * b * b * self.c_factor(v)
    }

    #[inline]
    pub(crate) fn pdf_unchecked(&self, x: f64) -> f64 {
        let (u, v) = self.uv(x);
        self.beta * self.density_uv(u, v)
    }

    #[inline]
    pub(crate) fn ln_pdf_unchecked(&self, x: f64) -> f64 {
        let (_, v) = self.uv(x);
        let b = self.b_factor(v);
        self.beta.ln() - self.beta * x + self.ln_weight() + 2.0 * b.ln() + self.c_factor(v).ln()
    }

    #[inline]
    pub(crate) fn cdf_unchecked(&self, x: f64) -> f64 {
        let (_, v) = self.uv(x);
        self.cdf_v(v)
    }

    #[inline]
    pub(crate) fn survival_unchecked(&self, x: f64) -> f64 {
        let (u, _) = self.uv(x);
        self.survival_u(u)
    }

    #[inline]
    pub(crate) fn ln_survival_unchecked(&self, x: f64) -> f64 {
        let (_, v) = self.uv(x);
        let t = self.theta;
        -self.beta * x + self.ln_weight() + (self.b_factor(v) + 2.0 + t).ln() - (t + v).ln()
    }

    #[inline]
    pub(crate) fn hazard_unchecked(&self, x: f64) -> f64 {
        let (_, v) = self.uv(x);
        let b = self.b_factor(v);
        let t = self.theta;
        self.beta * b * self.c_factor(v) * (1.0 + t) / (b + 2.0 + t)
    }

    /// Probability density `f(x)` for `x > 0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        Ok(self.pdf_unchecked(x))
    }

    /// `log f(x)`, finite for every `x > 0` even where `f` underflows.
    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        Ok(self.ln_pdf_unchecked(x))
    }

    /// Distribution function `F(x)` for `x ≥ 0`; `F(∞) = 1`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_non_negative(x)?;
        if x.is_infinite() {
            return Ok(1.0);
        }
        Ok(self.cdf_unchecked(x))
    }

    /// Survival function `S(x) = 1 - F(x)` for `x ≥ 0`.
    pub fn survival(&self, x: f64) -> Result<f64> {
        check_non_negative(x)?;
        if x.is_infinite() {
            return Ok(0.0);
        }
        Ok(self.survival_unchecked(x))
    }

    pub fn ln_survival(&self, x: f64) -> Result<f64> {
        check_non_negative(x)?;
        Ok(self.ln_survival_unchecked(x))
    }

    /// Failure rate `h(x) = f(x) / S(x)` for `x > 0`. Tends to `β` as
    /// `x → ∞` (also for `x = ∞`).
    pub fn hazard(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        if x.is_infinite() {
            return Ok(self.beta);
        }
        Ok(self.hazard_unchecked(x))
    }

    /// `lim_{x→0+} f(x) = lim_{x→0+} h(x) = β(1+θ)²(2+θ) / (θ(1+3θ+θ²))`.
    pub fn density_at_origin(&self) -> f64 {
        self.hazard_unchecked(0.0)
    }

    /// Quantile `F^{-1}(p)` for `p ∈ (0, 1)` by bracketed root finding.
    ///
    /// Lower half: solve `F(v) = p` for `v ∈ (0, 1)`, then `x = -log(1 - v)/β`.
    /// Upper half: delegate to [`inverse_survival`](Self::inverse_survival).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(domain("p", p));
        }
        if p > 0.5 {
            return self.inverse_survival(1.0 - p);
        }
        let v = brent(|v| self.cdf_v(v) - p, 0.0, 1.0, 0.0, 200)?;
        Ok(-(-v).ln_1p() / self.beta)
    }

    /// `S^{-1}(s)` for `s ∈ (0, 1)`, accurate for tiny upper-tail
    /// probabilities. Solves `S(u) = s` for `u = e^{-βx} ∈ (0, 1)`.
    pub fn inverse_survival(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s < 1.0) {
            return Err(domain("s", s));
        }
        if s > 0.5 {
            return self.quantile(1.0 - s);
        }
        let u = brent(|u| self.survival_u(u) - s, 0.0, 1.0, 0.0, 200)?;
        Ok(-u.ln() / self.beta)
    }

    /// Quantile from the explicit root of the quadratic in `u = e^{-βx}`
    /// with `a = (1+3θ+θ²)/θ²`, `b = 3+4θ+θ²` and discriminant `Δ_U`.
    ///
    /// [`ClosedForm::AsPrinted`] evaluates
    /// `log{[a(1+θ)(U-1) + (b+√Δ_U)/2] / [2+θ+a(1-U)]}^{-1/β}` literally;
    /// its argument is often negative and it does not invert `F`.
    /// [`ClosedForm::Corrected`] takes the root
    /// `u = [a(1+θ)(1-U) + (b-√Δ_U)/2] / [2+θ+a(1-U)]`, evaluated as
    /// `2C / (B + √Δ_U)` to avoid cancellation.
    pub fn quantile_closed_form(&self, p: f64, form: ClosedForm) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(domain("p", p));
        }
        let t = self.theta;
        let a = self.norm() / (t * t);
        let b = 3.0 + 4.0 * t + t * t;
        let c = 1.0 - p;
        let denom = 2.0 + t + a * c;
        let lin = b + 2.0 * a * c * (1.0 + t);
        let cst = a * c * (1.0 + t) * (1.0 + t);
        let disc = lin * lin - 4.0 * denom * cst;
        if disc < 0.0 {
            return Err(domain("discriminant", disc));
        }
        let u = match form {
            ClosedForm::AsPrinted => {
                (a * (1.0 + t) * (p - 1.0) + 0.5 * (b + disc.sqrt())) / denom
            }
            ClosedForm::Corrected => 2.0 * cst / (lin + disc.sqrt()),
        };
        if !(u > 0.0) {
            return Err(domain("logarithm argument", u));
        }
        Ok(-u.ln() / self.beta)
    }

    /// `g_i(x) = {(1+θ)e^{βx} − 1}^{−i}` for `i = 1, 2, 3`, in that order.
    pub fn density_components(&self, x: f64) -> Result<[f64; 3]> {
        check_positive(x)?;
        let (u, v) = self.uv(x);
        let g1 = u / (self.theta + v);
        Ok([g1, g1 * g1, g1 * g1 * g1])
    }

    /// The density rebuilt as a positive combination of the `g_i`.
    ///
    /// [`ClosedForm::Corrected`]: `βθ²/(1+3θ+θ²) · [(3+θ)g₁ + (5+θ)g₂ + 2g₃]`,
    /// which equals `f`. [`ClosedForm::AsPrinted`]:
    /// `βθ²(1+θ)/(1+3θ+θ²) · [g₁ + 3g₂ + g₃]`, which does not.
    pub fn density_from_components(&self, x: f64, form: ClosedForm) -> Result<f64> {
        let [g1, g2, g3] = self.density_components(x)?;
        let t = self.theta;
        let s = self.beta * self.weight();
        Ok(match form {
            ClosedForm::Corrected => s * ((3.0 + t) * g1 + (5.0 + t) * g2 + 2.0 * g3),
            ClosedForm::AsPrinted => s * (1.0 + t) * (g1 + 3.0 * g2 + g3),
        })
    }

    /// `n` draws by inverse transform from `rng`.
    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n)
            .map(|_| {
                let u = rng::open_unit(rng);
                self.quantile(u).expect("open-interval uniform is a valid probability")
            })
            .collect()
    }

    /// `n ≥ 1` i.i.d. draws by inverse transform, reproducible from `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<DataSet> {
        if n == 0 {
            return Err(Error::EmptyData);
        }
        let mut g = rng::generator(seed);
        let values = self.sample_with(&mut g, n);
        DataSet::new(values, format!("EPL({}, {}) sample, seed {}", self.beta, self.theta, seed))
    }

    /// `E[g(X)] = ∫_0^∞ g(x) f(x) dx` by adaptive quadrature on the
    /// dimensionless scale `βx`.
    pub fn expect<G>(&self, mut g: G, cfg: &QuadConfig) -> Result<f64>
    where
        G: FnMut(f64) -> f64,
    {
        let beta = self.beta;
        integrate_to_infinity(
            |y| {
                let x = y / beta;
                let (u, v) = ((-y).exp(), -(-y).exp_m1());
                let w = self.density_uv(u, v);
                if w == 0.0 {
                    0.0
                } else {
                    g(x) * w
                }
            },
            0.0,
            cfg,
        )
        .map(|r| r.value)
    }

    /// Mean residual life `m(x₀) = E[X - x₀ | X > x₀] = ∫_{x₀}^∞ S / S(x₀)`,
    /// by quadrature of the survival ratio (evaluated in log space so that
    /// large `x₀` does not underflow).
    pub fn mean_residual_life(&self, x0: f64) -> Result<f64> {
        check_non_negative(x0)?;
        if x0.is_infinite() {
            return Err(domain("x0", x0));
        }
        let base = self.ln_survival_unchecked(x0);
        let beta = self.beta;
        let r = integrate_to_infinity(
            |y| (self.ln_survival_unchecked(x0 + y / beta) - base).exp(),
            0.0,
            &QuadConfig::with_rel_tol(1e-12),
        )?;
        Ok(r.value / beta)
    }

    /// Closed-form mean residual life
    ///
    /// `m(x₀) = {1 − (2+θ)(1+θ−e^{−βx₀}) log[1 − c e^{−βx₀}] e^{βx₀}}
    ///          / (β[2+θ + (1+θ)(1+θ−e^{−βx₀})^{−1}])`
    ///
    /// with `c = (1−θ)^{−1}` ([`ClosedForm::AsPrinted`]) or
    /// `c = (1+θ)^{−1}` ([`ClosedForm::Corrected`]). The printed variant is
    /// undefined when the logarithm's argument is not positive.
    pub fn mean_residual_life_closed_form(&self, x0: f64, form: ClosedForm) -> Result<f64> {
        check_non_negative(x0)?;
        let t = self.theta;
        let (u0, v0) = self.uv(x0);
        let w = t + v0;
        let log_over_u = match form {
            ClosedForm::Corrected => {
                let c = 1.0 / (1.0 + t);
                if u0 == 0.0 {
                    -c
                } else {
                    (-c * u0).ln_1p() / u0
                }
            }
            ClosedForm::AsPrinted => {
                let arg = 1.0 - u0 / (1.0 - t);
                if !(arg > 0.0) || !arg.is_finite() || u0 == 0.0 {
                    return Err(domain("logarithm argument", arg));
                }
                arg.ln() / u0
            }
        };
        let numer = 1.0 - (2.0 + t) * w * log_over_u;
        let denom = self.beta * (2.0 + t + (1.0 + t) / w);
        Ok(numer / denom)
    }
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(domain("x", x))
    }
}

fn check_non_negative(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(domain("x", x))
    }
}

/// An ordered collection of strictly positive failure times with a
/// provenance label.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    values: Vec<f64>,
    label: String,
}

impl DataSet {
    pub fn new(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyData);
        }
        if let Some(&bad) = values.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidObservation(bad));
        }
        Ok(Self { values, label: label.into() })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always `false`; a data set holds at least one value.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.len() as f64
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn all_equal(&self) -> bool {
        self.values.iter().all(|&x| x == self.values[0])
    }

    /// The same observations multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|x| x * c).collect(), self.label.clone())
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}
