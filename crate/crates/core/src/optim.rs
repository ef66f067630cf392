//! Unconstrained minimization: BFGS with a strong-Wolfe line search, and
//! Nelder–Mead.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimOptions {
    /// Stop when the Euclidean norm of the gradient falls below this.
    pub grad_tol: f64,
    pub max_iters: usize,
    pub record_trace: bool,
}

impl Default for OptimOptions {
    fn default() -> Self {
        Self { grad_tol: 1e-8, max_iters: 500, record_trace: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimResult {
    pub x: Vec<f64>,
    pub f: f64,
    /// Gradient at `x`; empty for Nelder–Mead.
    pub grad: Vec<f64>,
    pub iterations: usize,
    /// BFGS: gradient norm below tolerance. Nelder–Mead: simplex collapsed.
    pub converged: bool,
    /// `(x, f)` after each iteration, when requested.
    pub trace: Vec<(Vec<f64>, f64)>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(x: &[f64], a: f64, d: &[f64]) -> Vec<f64> {
    x.iter().zip(d).map(|(xi, di)| xi + a * di).collect()
}

/// Minimizes `f`, which returns the value and gradient at a point.
/// Non-finite values are treated as `+∞` by the line search.
pub fn bfgs<F>(mut f: F, x0: &[f64], opts: &OptimOptions) -> OptimResult
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let (mut fx, mut g) = f(&x);
    let mut h = identity(n);
    let mut trace = Vec::new();
    if opts.record_trace {
        trace.push((x.clone(), fx));
    }
    let mut iterations = 0;
    let mut fresh = true;
    while iterations < opts.max_iters {
        if !fx.is_finite() || norm(&g) < opts.grad_tol {
            break;
        }
        let mut d: Vec<f64> = (0..n).map(|i| -dot(&h[i], &g)).collect();
        if dot(&d, &g) >= 0.0 {
            h = identity(n);
            d = g.iter().map(|gi| -gi).collect();
        }
        let a0 = if fresh { (1.0 / norm(&g)).min(1.0) } else { 1.0 };
        let step = match line_search(&mut f, &x, fx, &g, &d, a0) {
            Some(s) => s,
            None if !fresh => {
                // retry once from steepest descent before giving up
                h = identity(n);
                fresh = true;
                continue;
            }
            None => break,
        };
        iterations += 1;
        let (a, f_new, g_new) = step;
        let s: Vec<f64> = d.iter().map(|di| a * di).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * norm(&s) * norm(&y) {
            if fresh {
                let scale = sy / dot(&y, &y);
                h = identity(n);
                for (i, row) in h.iter_mut().enumerate() {
                    row[i] = scale;
                }
            }
            h = bfgs_update(&h, &s, &y, sy);
            fresh = false;
        }
        x = axpy(&x, a, &d);
        fx = f_new;
        g = g_new;
        if opts.record_trace {
            trace.push((x.clone(), fx));
        }
    }
    let converged = fx.is_finite() && norm(&g) < opts.grad_tol;
    OptimResult { x, f: fx, grad: g, iterations, converged, trace }
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0.0; n];
            r[i] = 1.0;
            r
        })
        .collect()
}

/// `H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ`, `ρ = 1/(yᵀs)`.
fn bfgs_update(h: &[Vec<f64>], s: &[f64], y: &[f64], sy: f64) -> Vec<Vec<f64>> {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy: Vec<f64> = (0..n).map(|i| dot(&h[i], y)).collect();
    let yhy = dot(y, &hy);
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = h[i][j] - rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
    out
}

type Step = (f64, f64, Vec<f64>);

/// Band within which two objective values are indistinguishable from
/// rounding. Inside it the line search switches to the approximate Wolfe
/// test of Hager and Zhang (2005), which uses only the directional
/// derivative: `C2·φ'(0) ≤ φ'(a) ≤ (1 − 2δ)|φ'(0)|`.
fn noise_band(f0: f64) -> f64 {
    1e-12 * (1.0 + f0.abs())
}

fn approx_wolfe(phi: f64, dphi: f64, f0: f64, dphi0: f64) -> bool {
    const C2: f64 = 0.9;
    const DELTA: f64 = 0.1;
    phi <= f0 + noise_band(f0) && dphi >= C2 * dphi0 && dphi <= -(1.0 - 2.0 * DELTA) * dphi0
}

/// Strong-Wolfe line search (Nocedal and Wright, Alg. 3.5/3.6) with
/// safeguarded quadratic interpolation in the zoom phase.
fn line_search<F>(f: &mut F, x: &[f64], f0: f64, g0: &[f64], d: &[f64], a_init: f64) -> Option<Step>
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    const C1: f64 = 1e-4;
    const C2: f64 = 0.9;
    let dphi0 = dot(g0, d);
    let mut eval = |a: f64| {
        let (v, g) = f(&axpy(x, a, d));
        let v = if v.is_finite() { v } else { f64::INFINITY };
        let dv = dot(&g, d);
        (v, if dv.is_finite() { dv } else { f64::NAN }, g)
    };
    let mut a_prev = 0.0;
    let mut phi_prev = f0;
    let mut dphi_prev = dphi0;
    let mut a = a_init;
    for i in 0..40 {
        let (phi, dphi, g) = eval(a);
        if approx_wolfe(phi, dphi, f0, dphi0) {
            return Some((a, phi, g));
        }
        if phi > f0 + C1 * a * dphi0 || (i > 0 && phi >= phi_prev) || dphi.is_nan() {
            return zoom(&mut eval, f0, dphi0, (a_prev, phi_prev, dphi_prev), (a, phi));
        }
        if dphi.abs() <= -C2 * dphi0 {
            return Some((a, phi, g));
        }
        if dphi >= 0.0 {
            return zoom(&mut eval, f0, dphi0, (a, phi, dphi), (a_prev, phi_prev));
        }
        a_prev = a;
        phi_prev = phi;
        dphi_prev = dphi;
        a *= 2.0;
    }
    None
}

fn zoom<E>(eval: &mut E, f0: f64, dphi0: f64, lo: (f64, f64, f64), hi: (f64, f64)) -> Option<Step>
where
    E: FnMut(f64) -> (f64, f64, Vec<f64>),
{
    const C1: f64 = 1e-4;
    const C2: f64 = 0.9;
    let (mut a_lo, mut phi_lo, mut dphi_lo) = lo;
    let (mut a_hi, mut phi_hi) = hi;
    let mut best: Option<Step> = None;
    for _ in 0..60 {
        let width = a_hi - a_lo;
        let mut frac = 0.5;
        if phi_hi.is_finite() {
            let denom = 2.0 * (phi_hi - phi_lo - dphi_lo * width);
            if denom > 0.0 {
                frac = (-dphi_lo * width / denom).clamp(0.1, 0.9);
            }
        }
        let a = a_lo + frac * width;
        let (phi, dphi, g) = eval(a);
        if approx_wolfe(phi, dphi, f0, dphi0) {
            return Some((a, phi, g));
        }
        let armijo_fails = phi > f0 + C1 * a * dphi0 || phi >= phi_lo;
        // inside the rounding band the slope, not the value, locates the minimum
        let noisy = phi <= f0 + noise_band(f0) && !dphi.is_nan();
        if noisy && armijo_fails {
            if dphi * (a_hi - a_lo) >= 0.0 {
                a_hi = a;
                phi_hi = phi;
            } else {
                a_lo = a;
                phi_lo = phi;
                dphi_lo = dphi;
            }
        } else if armijo_fails || dphi.is_nan() {
            a_hi = a;
            phi_hi = phi;
        } else {
            if dphi.abs() <= -C2 * dphi0 {
                return Some((a, phi, g));
            }
            if dphi * (a_hi - a_lo) >= 0.0 {
                a_hi = a_lo;
                phi_hi = phi_lo;
            }
            a_lo = a;
            phi_lo = phi;
            dphi_lo = dphi;
            best = Some((a, phi, g));
        }
        if (a_hi - a_lo).abs() <= 1e-16 * a_lo.abs().max(1e-300) {
            break;
        }
    }
    // sufficient decrease without the curvature condition is still progress
    best.filter(|s| s.1 < f0)
}

/// Minimizes `f` with the Nelder–Mead simplex (reflection 1, expansion 2,
/// contraction and shrink 1/2). `step` sets the initial simplex edge along
/// each axis. Converges when both the spread of function values and the
/// simplex diameter fall below `1e-13 (1 + |f|)` and `1e-10` respectively.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], step: f64, opts: &OptimOptions) -> OptimResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut eval = |x: &[f64]| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x);
        simplex.push((x, v));
    }
    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= 1e-13 * (1.0 + best.abs()) && diameter <= 1e-10 {
            converged = true;
            break;
        }
        iterations += 1;
        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64).collect();
        let toward = |c: f64| -> Vec<f64> { centroid.iter().zip(&simplex[n].0).map(|(m, w)| m + c * (m - w)).collect() };
        let xr = toward(1.0);
        let fr = eval(&xr);
        if fr < best {
            let xe = toward(2.0);
            let fe = eval(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst {
                let xc = toward(0.5);
                let fc = eval(&xc);
                (xc, fc)
            } else {
                let xc = toward(-0.5);
                let fc = eval(&xc);
                (xc, fc)
            };
            if fc < fr.min(worst) {
                simplex[n] = (xc, fc);
            } else {
                let x_best = simplex[0].0.clone();
                for (x, v) in simplex.iter_mut().skip(1) {
                    for (xi, bi) in x.iter_mut().zip(&x_best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    *v = eval(x);
                }
            }
        }
        if opts.record_trace {
            let b = simplex.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("simplex is non-empty");
            trace.push((b.0.clone(), b.1));
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    OptimResult { x, f: fx, grad: Vec::new(), iterations, converged, trace }
}
