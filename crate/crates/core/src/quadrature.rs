//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals and
//! on `[a, ∞)`.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Tolerances for adaptive quadrature. The requested accuracy is
/// `max(abs_tol, rel_tol · |I|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { abs_tol: 0.0, rel_tol: 1e-10, max_intervals: 4000 }
    }
}

impl QuadConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&mut f, a, b);
    let mut evaluations = 15;
    let mut value = first.value;
    let mut error = first.error;
    heap.push(first);
    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureFailed { estimate: value, error });
        }
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= target {
            return Ok(Integral { value, error, evaluations });
        }
        if heap.len() >= cfg.max_intervals {
            return Err(Error::QuadratureFailed { estimate: value, error });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval can no longer be split in floating point
            return Err(Error::QuadratureFailed { estimate: value, error });
        }
        let left = kronrod(&mut f, worst.a, mid);
        let right = kronrod(&mut f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum occasionally so the running totals do not drift.
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
}

/// Integrates `f` over `[a, ∞)` through the map `x = a + t / (1 - t)`.
pub fn integrate_to_infinity<F>(mut f: F, a: f64, cfg: &QuadConfig) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    integrate(
        |t| {
            let s = 1.0 - t;
            let x = a + t / s;
            let fx = f(x);
            if fx == 0.0 {
                0.0
            } else {
                fx / (s * s)
            }
        },
        0.0,
        1.0,
        cfg,
    )
}
