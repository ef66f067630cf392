//! Independent reference implementations used as test oracles. None of
//! these call into the library's numerics.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;

/// Density transcribed directly: `βθ²(1+θ)² e^{−βx}(3+θ−e^{−βx}) / (D (1+θ−e^{−βx})³)`.
pub fn pdf(x: f64, beta: f64, theta: f64) -> f64 {
    let e = (-beta * x).exp();
    let d = 1.0 + 3.0 * theta + theta * theta;
    beta * theta * theta * (1.0 + theta).powi(2) * e / d * (3.0 + theta - e) / (1.0 + theta - e).powi(3)
}

/// Survival function transcribed directly.
pub fn survival(x: f64, beta: f64, theta: f64) -> f64 {
    let e = (-beta * x).exp();
    let d = 1.0 + 3.0 * theta + theta * theta;
    let w = 1.0 + theta - e;
    theta * theta * e / d * (1.0 + theta + (2.0 + theta) * w) / (w * w)
}

pub fn cdf(x: f64, beta: f64, theta: f64) -> f64 {
    1.0 - survival(x, beta, theta)
}

/// Tanh-sinh quadrature on a finite interval, refining the step until two
/// successive levels agree to `tol` relative.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let node = |t: f64| {
        let s = 0.5 * PI * t.sinh();
        let w = 0.5 * PI * t.cosh() / s.cosh().powi(2);
        // distance from the nearer endpoint, without cancellation
        let d = 2.0 * half / (1.0 + (2.0 * s.abs()).exp());
        let x = if s >= 0.0 { b - d } else { a + d };
        (x, w)
    };
    let eval = |t: f64| {
        let (x, w) = node(t);
        if x <= a || x >= b || w == 0.0 {
            return 0.0;
        }
        let v = f(x) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let tmax = 6.5;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = half * h * sum;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= tmax {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let next = half * h * sum;
        if (next - estimate).abs() <= tol * next.abs() {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// `∫_a^∞ f` through `x = a + t/(1−t)`.
pub fn tanh_sinh_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> f64 {
    tanh_sinh(
        |t| {
            let s = 1.0 - t;
            f(a + t / s) / (s * s)
        },
        0.0,
        1.0,
        tol,
    )
}

/// `Σ_{j=1}^{10^6} z^j / j^n`, Kahan-summed.
pub fn polylog_brute(n: i32, z: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    let mut zj = 1.0;
    for j in 1..=1_000_000u32 {
        zj *= z;
        if zj == 0.0 {
            break;
        }
        let y = zj / (j as f64).powi(n) - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Quantile by bisection on the transcribed distribution function.
pub fn quantile_bisection(p: f64, beta: f64, theta: f64) -> f64 {
    let mut hi = 1.0 / beta;
    while cdf(hi, beta, theta) < p {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if cdf(m, beta, theta) < p {
            lo = m;
        } else {
            hi = m;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// `n!/((i−1)!(n−i)!) F^{i−1} (1−F)^{n−i} f`.
pub fn order_stat_pdf(x: f64, i: u32, n: u32, beta: f64, theta: f64) -> f64 {
    let c = (ln_factorial(n) - ln_factorial(i - 1) - ln_factorial(n - i)).exp();
    let f = cdf(x, beta, theta);
    c * f.powi(i as i32 - 1) * (1.0 - f).powi((n - i) as i32) * pdf(x, beta, theta)
}

/// Draw from the compounding construction: `N` from the zero-truncated
/// Poisson-Lindley law, then the minimum of `N` exponential(β) lifetimes,
/// simulated literally.
pub fn compounding_draw<R: Rng>(rng: &mut R, beta: f64, theta: f64) -> f64 {
    let d = 1.0 + 3.0 * theta + theta * theta;
    let u: f64 = rng.random();
    let mut n = 1u64;
    let mut acc = 0.0;
    loop {
        acc += theta * theta / d * (2.0 + theta + n as f64) / (1.0 + theta).powi(n as i32);
        if u < acc || n > 100_000 {
            break;
        }
        n += 1;
    }
    let mut m = f64::INFINITY;
    for _ in 0..n {
        let e: f64 = rng.random();
        m = m.min(-(1.0 - e).ln() / beta);
    }
    m
}

/// `sup_x |F_n(x) − F(x)|` approximated on a dense grid spanning the data.
pub fn ks_grid<F: Fn(f64) -> f64>(data: &[f64], cdf: F, points: usize) -> f64 {
    let mut xs = data.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let lo = xs[0] * 0.5;
    let hi = xs[xs.len() - 1] * 1.5;
    let ecdf = |x: f64| xs.partition_point(|v| *v <= x) as f64 / n;
    let mut d = 0.0f64;
    for k in 0..=points {
        let x = lo + (hi - lo) * k as f64 / points as f64;
        d = d.max((ecdf(x) - cdf(x)).abs());
    }
    d
}
