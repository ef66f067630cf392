//! Truncation policy for the infinite series used throughout the crate.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// How a series is cut off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Stop once the estimated tail falls below `rel_tol` times the partial
    /// sum; reaching `max_terms` first is reported as non-convergence.
    Adaptive,
    /// Sum every index up to and including `max_terms`, nothing more. Used to
    /// reproduce published tables that were computed with a hard cut-off.
    Fixed,
}

/// Truncation and tolerance policy for series evaluations.
///
/// `max_terms` caps the summation index `j`: no term with `j > max_terms` is
/// ever evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub truncation: Truncation,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 10_000,
            truncation: Truncation::Adaptive,
        }
    }
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidParameter { what: "rel_tol", value: rel_tol });
        }
        if max_terms < 1 {
            return Err(Error::InvalidParameter { what: "max_terms", value: 0.0 });
        }
        Ok(Self { rel_tol, max_terms, truncation: Truncation::Adaptive })
    }

    /// Sum exactly the indices `0..=last` (or `1..=last`).
    pub fn fixed(last: usize) -> Self {
        Self { rel_tol: 1e-12, max_terms: last.max(1), truncation: Truncation::Fixed }
    }

    /// Hard cut-off at `j = 100`, the truncation behind the published
    /// order-statistic moment table.
    pub fn table_reproduction() -> Self {
        Self::fixed(100)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms.max(1);
        self
    }
}

/// Neumaier's compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Outcome of [`sum_series`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: f64,
    pub last_index: usize,
    pub converged: bool,
}

impl SeriesSum {
    pub(crate) fn into_result(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::SeriesNotConverged { terms: self.last_index, partial: self.value })
        }
    }
}

/// Sums `term(j)` for `j = start, start + 1, …` under `cfg`.
///
/// In adaptive mode the tail after index `j` is estimated from the ratio of
/// the last two terms, `|t_j| ρ / (1 - ρ)`, and summation stops once both that
/// estimate and `|t_j|` fall below `rel_tol · |sum|`. A non-finite term or
/// partial sum ends the summation as non-converged.
pub(crate) fn sum_series<F>(cfg: &SeriesConfig, start: usize, mut term: F) -> SeriesSum
where
    F: FnMut(usize) -> f64,
{
    let mut acc = CompensatedSum::default();
    let mut prev = f64::NAN;
    let mut j = start;
    loop {
        let t = term(j);
        acc.add(t);
        let s = acc.value();
        if !t.is_finite() || !s.is_finite() {
            return SeriesSum { value: s, last_index: j, converged: false };
        }
        if cfg.truncation == Truncation::Adaptive {
            let at = t.abs();
            let bound = cfg.rel_tol * s.abs();
            if at == 0.0 && prev == 0.0 {
                return SeriesSum { value: s, last_index: j, converged: true };
            }
            if at <= bound && prev.is_finite() && prev != 0.0 {
                let rho = at / prev.abs();
                if rho < 1.0 && at * rho / (1.0 - rho) <= bound {
                    return SeriesSum { value: s, last_index: j, converged: true };
                }
            }
        }
        if j >= cfg.max_terms {
            let converged = cfg.truncation == Truncation::Fixed;
            return SeriesSum { value: s, last_index: j, converged };
        }
        prev = t;
        j += 1;
    }
}
