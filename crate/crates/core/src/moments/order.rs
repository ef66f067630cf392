//! Order statistics: density and moments of `X_{i:n}`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::dist::EplParams;
use alloc::vec;
use alloc::vec::Vec;

use twofloat::TwoFloat;

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_to_infinity, QuadConfig};
use crate::series::{SeriesConfig, Truncation};
use crate::special::log_gamma;

/// Rank `i`, sample size `n` and moment order `r` of an order-statistic
/// moment `E(X_{i:n}^r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderStatSpec {
    i: u32,
    n: u32,
    r: u32,
}

impl OrderStatSpec {
    pub fn new(i: u32, n: u32, r: u32) -> Result<Self> {
        check_rank(i, n)?;
        if r == 0 {
            return Err(domain("r", 0.0));
        }
        Ok(Self { i, n, r })
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

fn check_rank(i: u32, n: u32) -> Result<()> {
    if n == 0 {
        return Err(domain("n", 0.0));
    }
    if i == 0 || i > n {
        return Err(domain("i", i as f64));
    }
    Ok(())
}

/// `log f_{i:n}(x)`, evaluated term by term in log space:
///
/// `f_{i:n} = n!/((i−1)!(n−i)!) F^{i−1} S^{n−i} f`, with `S` and `f` written
/// through `θ + v`, `2 + θ + v` and `1 + 3θ + θ² + (2+θ)v`.
pub fn ln_order_stat_pdf(x: f64, i: u32, n: u32, p: &EplParams) -> Result<f64> {
    check_rank(i, n)?;
    if !(x > 0.0) {
        return Err(domain("x", x));
    }
    if x.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    let (t, beta) = (p.theta(), p.beta());
    let (_, v) = p.uv(x);
    let m = (n - i + 1) as f64;
    let lnd = p.ln_norm();
    let ln_tail = lnd + ((2.0 + t) * v / p.norm()).ln_1p();
    let ln_f = if i == 1 { 0.0 } else { (i - 1) as f64 * p.cdf_v(v).ln() };
    let comb = log_gamma(n as f64 + 1.0)? - log_gamma(m)? - log_gamma(i as f64)?;
    Ok(comb + beta.ln() + 2.0 * t.ln_1p() + 2.0 * m * t.ln() - beta * x * m + (2.0 + t + v).ln()
        - m * lnd
        - (2.0 * (m - 1.0) + 3.0) * (t + v).ln()
        + (m - 1.0) * ln_tail
        + ln_f)
}

/// Density of the `i`th order statistic of a sample of size `n`.
pub fn order_stat_pdf(x: f64, i: u32, n: u32, p: &EplParams) -> Result<f64> {
    Ok(ln_order_stat_pdf(x, i, n, p)?.exp())
}

/// Result of the triple-series evaluation of `E(X_{i:n}^r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderStatMoment {
    pub value: f64,
    /// Largest absolute `(k, l)` term of the alternating outer sum.
    pub max_term: f64,
    /// Set when `max_term > 10^6 · |value|`.
    pub cancellation_warning: bool,
    /// Largest inner index `j` reached.
    pub last_index: usize,
}

/// `m · 2^e` with a double-double mantissa, `|m| ∈ [1/2, 1)` or zero.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    m: TwoFloat,
    e: i32,
}

/// `x · 2^k`, exact while the result stays normal.
fn scale2(x: TwoFloat, k: i32) -> TwoFloat {
    let k = k.clamp(-2100, 2100);
    let h = k / 2;
    x * libm::ldexp(1.0, h) * libm::ldexp(1.0, k - h)
}

impl Scaled {
    fn new(m: TwoFloat) -> Self {
        Self { m, e: 0 }.normalized()
    }

    fn normalized(self) -> Self {
        let hi = self.m.hi();
        if hi == 0.0 || !hi.is_finite() {
            return self;
        }
        let (_, k) = libm::frexp(hi);
        Self { m: scale2(self.m, -k), e: self.e + k }
    }

    fn mul(self, o: Self) -> Self {
        Self { m: self.m * o.m, e: self.e + o.e }.normalized()
    }

    fn powi(self, mut n: u32) -> Self {
        let mut acc = Scaled::new(TwoFloat::from(1.0));
        let mut base = self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }

    /// Mantissa expressed in units of `2^e0`.
    fn in_units(self, e0: i32) -> TwoFloat {
        scale2(self.m, self.e - e0)
    }

    fn to_f64(self) -> f64 {
        libm::ldexp(self.m.hi() + self.m.lo(), self.e)
    }
}

fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

/// `a / b` to double-double accuracy: one correction step on the f64
/// quotient. `TwoFloat`'s own division forms its residual without FMA and is
/// only good to f64 precision.
fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q0 = a.hi() / b.hi();
    let r = a - b * q0;
    let q1 = r.hi() / b.hi();
    let q = TwoFloat::new_add(q0, q1);
    let r = a - b * q;
    q + r.hi() / b.hi()
}

/// `C(n, k)` as a running product.
fn binomial(n: u32, k: u32) -> Scaled {
    let k = k.min(n - k);
    let mut acc = Scaled::new(dd(1.0));
    for m in 1..=k {
        acc = acc.mul(Scaled::new(div(dd((n - k + m) as f64), dd(m as f64))));
    }
    acc
}

/// `E(X_{i:n}^r)` by the series
///
/// ```text
/// r!/β^r Σ_{k=n−i+1}^{n} Σ_{l=0}^{k} (−1)^{k−n+i+l−1} C(k−1, n−i) C(n, k) C(k, l)
///     θ^{2k} (3+θ)^{k−l} (2+θ)^l / ((1+θ)^{l+k} (1+3θ+θ²)^k)
///     Σ_{j≥0} C(j+2k−1, 2k−1) (1+θ)^{−j} / (k+l+j)^r
/// ```
///
/// The inner series over `j` follows `cfg`; [`SeriesConfig::table_reproduction`]
/// stops it at `j = 100`. For `i < n` the outer sum alternates with terms many
/// orders of magnitude above the result (about `10^{12}` times for `i = 10`,
/// `n = 20`), so every term is carried in double-double arithmetic. In
/// adaptive mode the inner series are first summed to `cfg.rel_tol`, then
/// resummed with the tolerance divided by the observed cancellation ratio.
pub fn order_stat_moment(spec: OrderStatSpec, p: &EplParams, cfg: &SeriesConfig) -> Result<OrderStatMoment> {
    let first = triple_sum(spec, p, cfg, cfg.rel_tol)?;
    let ratio = first.max_term / first.value.abs();
    if cfg.truncation == Truncation::Fixed || !(ratio > 1.0) {
        return Ok(first);
    }
    let tol = (cfg.rel_tol / ratio).max(1e-32);
    triple_sum(spec, p, cfg, tol)
}

fn triple_sum(spec: OrderStatSpec, p: &EplParams, cfg: &SeriesConfig, inner_tol: f64) -> Result<OrderStatMoment> {
    let OrderStatSpec { i, n, r } = spec;
    let (t, beta) = (p.theta(), p.beta());
    let adaptive = cfg.truncation == Truncation::Adaptive;
    let lead = (log_gamma(r as f64 + 1.0)? - r as f64 * beta.ln()).exp();

    let one_t = TwoFloat::new_add(1.0, t);
    let norm = dd(1.0) + TwoFloat::new_mul(3.0, t) + TwoFloat::new_mul(t, t);
    let (s_t, s_3t, s_2t) = (Scaled::new(dd(t)), Scaled::new(TwoFloat::new_add(3.0, t)), Scaled::new(TwoFloat::new_add(2.0, t)));
    let s_inv_1t = Scaled::new(div(dd(1.0), one_t));
    let s_inv_norm = Scaled::new(div(dd(1.0), norm));
    let q = div(dd(1.0), one_t);

    let mut terms: Vec<(bool, Scaled)> = Vec::new();
    let mut last_index = 0;
    for k in (n - i + 1)..=n {
        let kk = k as usize;
        // inner sums for every l at once, in units of 2^e
        let mut acc = vec![dd(0.0); kk + 1];
        let mut prev = vec![f64::NAN; kk + 1];
        let mut w = dd(1.0);
        let mut e = 0i32;
        let mut j = 0usize;
        loop {
            let mut done = adaptive;
            for (l, a) in acc.iter_mut().enumerate() {
                let term = div(w, dd((kk + l + j) as f64).powi(r as i32));
                *a += term;
                let (at, s) = (term.hi().abs(), a.hi().abs());
                let bound = inner_tol * s;
                let small = if at == 0.0 {
                    prev[l] == 0.0
                } else {
                    let rho = at / prev[l].abs();
                    at <= bound && rho < 1.0 && at * rho / (1.0 - rho) <= bound
                };
                done &= small;
                prev[l] = at;
            }
            if !a_finite(&acc) {
                return Err(Error::SeriesNotConverged { terms: j, partial: f64::NAN });
            }
            if done {
                break;
            }
            if j >= cfg.max_terms {
                if adaptive {
                    return Err(Error::SeriesNotConverged { terms: j, partial: f64::NAN });
                }
                break;
            }
            w = div(w * dd((j + 2 * kk) as f64), dd((j + 1) as f64)) * q;
            if w.hi().abs() > 1e150 {
                w = scale2(w, -500);
                for a in acc.iter_mut() {
                    *a = scale2(*a, -500);
                }
                e += 500;
            }
            j += 1;
        }
        last_index = last_index.max(j);

        let block = binomial(k - 1, n - i)
            .mul(binomial(n, k))
            .mul(s_t.powi(2 * k))
            .mul(s_inv_norm.powi(k))
            .mul(s_inv_1t.powi(k));
        for (l, a) in acc.iter().enumerate() {
            let l32 = l as u32;
            let coef = block
                .mul(binomial(k, l32))
                .mul(s_3t.powi(k - l32))
                .mul(s_2t.powi(l32))
                .mul(s_inv_1t.powi(l32));
            let mut inner = Scaled::new(*a);
            inner.e += e;
            let negative = (k + l32 + i - n - 1) % 2 == 1;
            terms.push((negative, coef.mul(inner)));
        }
    }

    let top = terms.iter().map(|(_, s)| s.e).max().unwrap_or(0);
    let mut total = dd(0.0);
    let mut max_term = 0.0f64;
    for (negative, s) in &terms {
        let v = s.in_units(top);
        total = if *negative { total - v } else { total + v };
        max_term = max_term.max(s.to_f64().abs());
    }
    let value = Scaled { m: total, e: top }.normalized().to_f64() * lead;
    let max_term = max_term * lead;
    Ok(OrderStatMoment {
        value,
        max_term,
        cancellation_warning: max_term > 1e6 * value.abs(),
        last_index,
    })
}

fn a_finite(acc: &[TwoFloat]) -> bool {
    acc.iter().all(|a| a.hi().is_finite())
}

/// `E(X_{i:n}^r) = ∫_0^∞ x^r f_{i:n}(x) dx` by adaptive quadrature.
pub fn order_stat_moment_quadrature(spec: OrderStatSpec, p: &EplParams) -> Result<f64> {
    let OrderStatSpec { i, n, r } = spec;
    let beta = p.beta();
    let rf = r as f64;
    let integral = integrate_to_infinity(
        |y| {
            if y <= 0.0 {
                return 0.0;
            }
            let x = y / beta;
            match ln_order_stat_pdf(x, i, n, p) {
                Ok(lf) => (rf * x.ln() + lf).exp() / beta,
                Err(_) => 0.0,
            }
        },
        0.0,
        &QuadConfig::with_rel_tol(1e-11),
    )?;
    Ok(integral.value)
}
