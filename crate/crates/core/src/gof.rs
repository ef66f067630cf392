//! Kolmogorov–Smirnov goodness of fit.
//!
//! The one-sample statistic is
//! `D_n = max_i max(i/n − F(x_(i)), F(x_(i)) − (i−1)/n)` over the sorted
//! sample. Two p-values are offered:
//!
//! * [`PValueMethod::Asymptotic`] (default): the Kolmogorov limit law
//!   `P(√n D_n > λ) ≈ 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}`;
//! * [`PValueMethod::Exact`]: the finite-`n` null distribution of `D_n`
//!   (Marsaglia, Tsang and Wang 2003), for small samples.
//!
//! When the model parameters were estimated from the same data neither
//! p-value accounts for that, and both are anti-conservative.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dist::DataSet;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PValueMethod {
    #[default]
    Asymptotic,
    Exact,
}

/// One-sample KS test with the asymptotic p-value.
pub fn ks_test<F>(data: &DataSet, cdf: F) -> Result<KsResult>
where
    F: FnMut(f64) -> f64,
{
    ks_test_with(data, cdf, PValueMethod::Asymptotic)
}

pub fn ks_test_with<F>(data: &DataSet, cdf: F, method: PValueMethod) -> Result<KsResult>
where
    F: FnMut(f64) -> f64,
{
    let statistic = ks_distance(data.values(), cdf)?;
    let n = data.len();
    let p_value = match method {
        PValueMethod::Asymptotic => kolmogorov_sf(statistic * (n as f64).sqrt()),
        PValueMethod::Exact => ks_exact_sf(n, statistic),
    };
    Ok(KsResult { statistic, p_value, n })
}

/// `D_n` for arbitrary real `values` against `cdf`.
///
/// Fails if `cdf` leaves `[0, 1]` or decreases (beyond 1e-12) along the
/// sorted sample.
pub fn ks_distance<F>(values: &[f64], mut cdf: F) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut xs = values.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    let mut prev = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::CdfOutOfRange(f));
        }
        if f < prev - 1e-12 {
            return Err(Error::CdfDecreasing);
        }
        prev = f;
        let i = i as f64;
        d = d.max((i + 1.0) / n - f).max(f - i / n);
    }
    Ok(d)
}

/// Kolmogorov survival function `Q(λ) = P(K > λ)`.
///
/// Uses the alternating series for `λ ≥ 1` and the Jacobi-transformed
/// series `1 − √(2π)/λ Σ e^{−(2k−1)²π²/(8λ²)}` below, truncated once terms
/// fall under 1e-12.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if !(lambda > 0.0) {
        return 1.0;
    }
    if lambda < 1.0 {
        let c = -PI * PI / (8.0 * lambda * lambda);
        let mut s = 0.0;
        for k in 1..100 {
            let m = (2 * k - 1) as f64;
            let t = (c * m * m).exp();
            s += t;
            if t < 1e-12 {
                break;
            }
        }
        return (1.0 - (2.0 * PI).sqrt() / lambda * s).clamp(0.0, 1.0);
    }
    let mut s = 0.0;
    let mut sign = 1.0;
    for k in 1..100 {
        let kf = k as f64;
        let t = (-2.0 * kf * kf * lambda * lambda).exp();
        s += sign * t;
        sign = -sign;
        if t < 1e-12 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

/// `P(D_n ≥ d)` under the null, exactly for finite `n`.
///
/// Cost is `O(m³ log n)` with `m ≈ 2nd`; intended for samples up to a few
/// thousand.
pub fn ks_exact_sf(n: usize, d: f64) -> f64 {
    (1.0 - ks_exact_cdf(n, d)).clamp(0.0, 1.0)
}

/// `P(D_n < d)` by the Marsaglia–Tsang–Wang matrix power.
pub fn ks_exact_cdf(n: usize, d: f64) -> f64 {
    let nf = n as f64;
    if n == 0 || d <= 0.5 / nf {
        return if d <= 0.5 / nf { 0.0 } else { 1.0 };
    }
    if d >= 1.0 {
        return 1.0;
    }
    let k = (nf * d).floor() as usize + 1;
    let m = 2 * k - 1;
    let h = k as f64 - nf * d;

    let mut hm = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            if i + 1 >= j {
                hm[i * m + j] = 1.0;
            }
        }
    }
    let mut hp = 1.0;
    for i in 0..m {
        hp *= h;
        hm[i * m] -= hp;
    }
    for i in 0..m {
        hm[(m - 1) * m + i] -= h.powi((m - i) as i32);
    }
    if 2.0 * h - 1.0 > 0.0 {
        hm[(m - 1) * m] += (2.0 * h - 1.0).powi(m as i32);
    }
    for i in 0..m {
        for j in 0..m {
            if i + 1 > j {
                let mut f = 1.0;
                for g in 1..=(i + 1 - j) {
                    f *= g as f64;
                }
                hm[i * m + j] /= f;
            }
        }
    }
    let (q, mut eq) = matrix_power(&hm, m, n);
    let mut s = q[(k - 1) * m + k - 1];
    for i in 1..=n {
        s = s * i as f64 / nf;
        if s < 1e-140 {
            s *= 1e140;
            eq -= 140;
        }
    }
    s * 10f64.powi(eq)
}

fn matrix_multiply(a: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    let mut c = vec![0.0; m * m];
    for i in 0..m {
        for l in 0..m {
            let ail = a[i * m + l];
            if ail == 0.0 {
                continue;
            }
            for j in 0..m {
                c[i * m + j] += ail * b[l * m + j];
            }
        }
    }
    c
}

/// `A^n` with a decimal exponent carried alongside to avoid overflow.
fn matrix_power(a: &[f64], m: usize, n: usize) -> (Vec<f64>, i32) {
    if n == 1 {
        return (a.to_vec(), 0);
    }
    let (half, e_half) = matrix_power(a, m, n / 2);
    let mut v = matrix_multiply(&half, &half, m);
    let mut e = 2 * e_half;
    if n % 2 == 1 {
        v = matrix_multiply(a, &v, m);
    }
    if v[(m / 2) * m + m / 2] > 1e140 {
        for x in v.iter_mut() {
            *x *= 1e-140;
        }
        e += 140;
    }
    (v, e)
}

/// Two-sample KS test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSampleKsResult {
    pub statistic: f64,
    /// Asymptotic p-value at `λ = √(n₁n₂/(n₁+n₂)) D`.
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<TwoSampleKsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyData);
    }
    if let Some(&bad) = a.iter().chain(b).find(|x| x.is_nan()) {
        return Err(domain("observation", bad));
    }
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(f64::total_cmp);
    xb.sort_by(f64::total_cmp);
    let (na, nb) = (xa.len(), xb.len());
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < na && j < nb {
        let x = xa[i].min(xb[j]);
        while i < na && xa[i] <= x {
            i += 1;
        }
        while j < nb && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    let en = (na as f64 * nb as f64 / (na + nb) as f64).sqrt();
    Ok(TwoSampleKsResult { statistic: d, p_value: kolmogorov_sf(en * d), n1: na, n2: nb })
}
